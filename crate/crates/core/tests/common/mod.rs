//! Helpers shared by the integration tests: an isomorph-free graph stream and
//! brute-force oracles that share no code with the library's solvers.

#![allow(dead_code)]

use listcolour::bounds::IntegralQuery;
use listcolour::io::to_graph6;
use listcolour::{Graph, ListAssignment, SplitMix64};

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 1..n {
        for u in 0..v {
            out.push((u, v));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative per isomorphism class of graphs on `n` vertices, as
/// edge bitmasks over [`pairs`], keeping the smallest mask in each class.
fn classes(n: usize) -> Vec<u32> {
    let pairs = pairs(n);
    let index = |u: usize, v: usize| {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == (u, v)).unwrap()
    };
    let perms = permutations(n);
    // For each permutation, where each pair bit goes.
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let total = 1u32 << pairs.len();
    let mut seen = vec![false; total as usize];
    let mut reps = Vec::new();
    for mask in 0..total {
        if seen[mask as usize] {
            continue;
        }
        reps.push(mask);
        for map in &maps {
            let mut image = 0u32;
            for (bit, &target) in map.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    image |= 1 << target;
                }
            }
            seen[image as usize] = true;
        }
    }
    reps
}

/// Every graph on `1..=max_n` vertices up to isomorphism, by increasing order.
pub fn all_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs = pairs(n);
        for mask in classes(n) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &(u, v))| (u as u32, v as u32));
            out.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    out
}

/// The same graphs as a graph6 stream, one per line.
pub fn graph6_stream(max_n: usize) -> String {
    all_graphs(max_n)
        .iter()
        .map(|g| to_graph6(g) + "\n")
        .collect()
}

/// Tries every combination of one colour per list.
pub fn brute_force_colourable(g: &Graph, l: &ListAssignment) -> bool {
    let n = g.n();
    let mut choice = vec![0usize; n];
    loop {
        let colour = |v: u32| l.list(v)[choice[v as usize]];
        if g.edges().all(|(u, v)| colour(u) != colour(v)) {
            return true;
        }
        let mut v = 0;
        loop {
            if v == n {
                return false;
            }
            choice[v] += 1;
            if choice[v] < l.list(v as u32).len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

/// Is `g` properly colourable with `c` colours? Plain enumeration of `c^n` maps.
pub fn brute_force_k_colourable(g: &Graph, c: u32) -> bool {
    let lists: Vec<Vec<u32>> = (0..g.n()).map(|_| (1..=c).collect()).collect();
    let l = ListAssignment::from_lists(c as usize, c, &lists).unwrap();
    brute_force_colourable(g, &l)
}

pub fn is_cycle(g: &Graph) -> bool {
    g.n() >= 3
        && g.edge_count() == g.n()
        && (0..g.n() as u32).all(|v| g.degree(v) == 2)
        && g.is_connected()
}

/// Draws `(s, n, α, β)` with `s ∈ [2, 10³]`, `n ∈ [s, 10⁹]` and `1 - α - β/log s >= 0.05`.
pub fn random_integral_query(rng: &mut SplitMix64) -> IntegralQuery {
    let s = 2.0 + rng.below(999) as f64;
    let n = (s.ln() + rng.next_f64() * (1e9f64.ln() - s.ln()))
        .exp()
        .round()
        .clamp(s, 1e9);
    let alpha = 0.01 + rng.next_f64() * 0.93;
    let beta_max = (1.0 - alpha - 0.05) * s.ln();
    let beta = beta_max * (1.0 - rng.next_f64()).max(1e-9);
    IntegralQuery { s, n, alpha, beta }
}
