//! The graph `B(G, L)` of dangerous edges: edges whose endpoint lists meet.
//!
//! Only dangerous edges can be monochromatic under a list colouring, so each
//! component of `B` can be coloured on its own.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lists::{intersects, ListAssignment};

#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Dangerous edges of a host graph with their component partition.
#[derive(Debug, Clone)]
pub struct DangerousSubgraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    /// Components sorted internally, ordered by smallest vertex.
    components: Vec<Vec<u32>>,
    component_of: Vec<u32>,
}

impl DangerousSubgraph {
    pub fn n(&self) -> usize {
        self.component_of.len()
    }

    /// Dangerous neighbours of `v`, sorted.
    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.neighbours(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component_of(&self, v: u32) -> usize {
        self.component_of[v as usize] as usize
    }

    pub fn max_order(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `B` as a standalone graph.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n(), self.edges()).expect("dangerous subgraph is simple")
    }

    /// `B[U]` relabelled to `0..U.len()` in the order of `vertices`.
    pub fn induced(&self, vertices: &[u32]) -> Vec<Vec<usize>> {
        let mut sorted: Vec<(u32, usize)> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        sorted.sort_unstable();
        let local = |w: u32| {
            sorted
                .binary_search_by_key(&w, |&(v, _)| v)
                .ok()
                .map(|p| sorted[p].1)
        };
        vertices
            .iter()
            .map(|&v| {
                let mut adj: Vec<usize> = self
                    .neighbours(v)
                    .iter()
                    .filter_map(|&w| local(w))
                    .collect();
                adj.sort_unstable();
                adj
            })
            .collect()
    }
}

/// Computes `B(G, L)`.
pub fn dangerous_subgraph(g: &Graph, l: &ListAssignment) -> Result<DangerousSubgraph> {
    let n = g.n();
    if l.n() != n {
        return Err(Error::SizeMismatch {
            graph: n,
            lists: l.n(),
        });
    }
    let mut offsets = Vec::with_capacity(n + 1);
    let mut targets = Vec::new();
    let mut uf = UnionFind::new(n);
    offsets.push(0);
    for u in 0..n as u32 {
        let lu = l.list(u);
        for &v in g.neighbours(u) {
            if intersects(lu, l.list(v)) {
                targets.push(v);
                if v > u {
                    uf.union(u, v);
                }
            }
        }
        offsets.push(targets.len());
    }

    let mut root_index = vec![u32::MAX; n];
    let mut components: Vec<Vec<u32>> = Vec::new();
    let mut component_of = vec![0u32; n];
    for v in 0..n as u32 {
        let root = uf.find(v) as usize;
        if root_index[root] == u32::MAX {
            root_index[root] = components.len() as u32;
            components.push(Vec::new());
        }
        let c = root_index[root];
        components[c as usize].push(v);
        component_of[v as usize] = c;
    }

    Ok(DangerousSubgraph {
        offsets,
        targets,
        components,
        component_of,
    })
}

/// Component orders in descending order; they sum to `n`.
pub fn component_profile(d: &DangerousSubgraph) -> Vec<usize> {
    let mut sizes: Vec<usize> = d.components.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, disjoint_cliques, path};

    #[test]
    fn identical_lists_keep_every_edge() {
        let g = disjoint_cliques(10, 3).unwrap();
        let l = ListAssignment::uniform(10, 5, &[1, 2]).unwrap();
        let b = dangerous_subgraph(&g, &l).unwrap();
        assert_eq!(b.edge_count(), g.edge_count());
        assert_eq!(b.components().len(), g.components().len());
        assert_eq!(component_profile(&b), vec![4, 4, 1, 1]);
    }

    #[test]
    fn disjoint_lists_keep_nothing() {
        let g = complete(4);
        let l = ListAssignment::from_lists(2, 8, [[1, 2], [3, 4], [5, 6], [7, 8]]).unwrap();
        let b = dangerous_subgraph(&g, &l).unwrap();
        assert_eq!(b.edge_count(), 0);
        assert_eq!(component_profile(&b), vec![1, 1, 1, 1]);
    }

    #[test]
    fn path_example() {
        let g = path(3);
        let l = ListAssignment::from_lists(2, 5, [[1, 2], [2, 3], [4, 5]]).unwrap();
        let b = dangerous_subgraph(&g, &l).unwrap();
        assert_eq!(b.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(b.components(), &[vec![0, 1], vec![2]]);
        assert_eq!(component_profile(&b), vec![2, 1]);
        assert_eq!(b.max_order(), 2);
    }

    #[test]
    fn connected_profile() {
        let g = cycle(6).unwrap();
        let l = ListAssignment::uniform(6, 3, &[1, 2]).unwrap();
        assert_eq!(
            component_profile(&dangerous_subgraph(&g, &l).unwrap()),
            vec![6]
        );
    }

    #[test]
    fn size_mismatch() {
        let l = ListAssignment::uniform(3, 3, &[1]).unwrap();
        assert!(matches!(
            dangerous_subgraph(&complete(4), &l),
            Err(Error::SizeMismatch { graph: 4, lists: 3 })
        ));
    }

    #[test]
    fn induced_relabels() {
        let g = cycle(5).unwrap();
        let l = ListAssignment::uniform(5, 2, &[1, 2]).unwrap();
        let b = dangerous_subgraph(&g, &l).unwrap();
        let local = b.induced(&[4, 0, 1]);
        assert_eq!(local, vec![vec![1], vec![0, 2], vec![1]]);
    }
}
