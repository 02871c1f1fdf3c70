//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Maximum matching of a bipartite graph given as left-vertex adjacency into `0..right`.
#[derive(Debug, Clone)]
pub struct Matching {
    /// `left[u]` is the right vertex matched to `u`.
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    pub size: usize,
}

/// Neighbours are tried in the order given, so ties resolve toward earlier entries.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Matching {
    let left_n = adj.len();
    let mut match_l = vec![NIL; left_n];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0usize; left_n];
    let mut size = 0;

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..left_n {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &r in &adj[u] {
                let w = match_r[r];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..left_n {
            if match_l[u] == NIL && augment(u, adj, &mut match_l, &mut match_r, &mut dist) {
                size += 1;
            }
        }
    }

    Matching {
        left: match_l
            .into_iter()
            .map(|r| (r != NIL).then_some(r))
            .collect(),
        right: match_r
            .into_iter()
            .map(|u| (u != NIL).then_some(u))
            .collect(),
        size,
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &r in &adj[u] {
        let w = match_r[r];
        let ok = if w == NIL {
            true
        } else if dist[w] == dist[u] + 1 {
            augment(w, adj, match_l, match_r, dist)
        } else {
            false
        };
        if ok {
            match_l[u] = r;
            match_r[r] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Left vertices reachable from unmatched left vertices by alternating paths.
///
/// When the matching is maximum and not left-perfect this set `X` violates
/// Hall's condition: `|N(X)| = |X| - (left unmatched count)`.
pub fn hall_violator(adj: &[Vec<usize>], matching: &Matching) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut queue: VecDeque<usize> = (0..adj.len())
        .filter(|&u| matching.left[u].is_none())
        .collect();
    for &u in &queue {
        seen[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &r in &adj[u] {
            if let Some(w) = matching.right[r] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (0..adj.len()).filter(|&u| seen[u]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_max(adj: &[Vec<usize>], right: usize) -> usize {
        fn go(u: usize, adj: &[Vec<usize>], used: &mut [bool]) -> usize {
            if u == adj.len() {
                return 0;
            }
            let mut best = go(u + 1, adj, used);
            for &r in &adj[u] {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(u + 1, adj, used));
                    used[r] = false;
                }
            }
            best
        }
        go(0, adj, &mut vec![false; right])
    }

    #[test]
    fn perfect_and_deficient() {
        let adj = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
        let m = hopcroft_karp(&adj, 3);
        assert_eq!(m.size, 3);
        assert_eq!(m.left, vec![Some(0), Some(1), Some(2)]);

        let adj = vec![vec![0, 1], vec![0, 1], vec![0, 1]];
        let m = hopcroft_karp(&adj, 2);
        assert_eq!(m.size, 2);
        let x = hall_violator(&adj, &m);
        assert_eq!(x, vec![0, 1, 2]);
    }

    #[test]
    fn matches_brute_force_on_small_instances() {
        let mut rng = crate::rng::SplitMix64::new(8);
        for _ in 0..500 {
            let left = 1 + rng.below(6) as usize;
            let right = 1 + rng.below(6) as usize;
            let adj: Vec<Vec<usize>> = (0..left)
                .map(|_| (0..right).filter(|_| rng.below(3) == 0).collect())
                .collect();
            let m = hopcroft_karp(&adj, right);
            assert_eq!(m.size, brute_force_max(&adj, right));
            for (u, r) in m.left.iter().enumerate() {
                if let Some(r) = r {
                    assert!(adj[u].contains(r));
                    assert_eq!(m.right[*r], Some(u));
                }
            }
            let x = hall_violator(&adj, &m);
            let mut nx: Vec<usize> = x.iter().flat_map(|&u| adj[u].iter().copied()).collect();
            nx.sort_unstable();
            nx.dedup();
            assert_eq!(x.len() - nx.len(), left - m.size);
        }
    }
}
