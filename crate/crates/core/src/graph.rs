//! Immutable simple graphs, the generators used by the experiments, and
//! subgraph tests for forbidden cliques, stars and cycles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
    edge_count: usize,
    max_degree: u32,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if n > i32::MAX as usize {
            return Err(Error::invalid(format!(
                "{n} vertices is above the supported 2^31"
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::invalid(format!(
                    "edge {u}-{v} out of range for n = {n}"
                )));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        Ok(Graph::from_adjacency(adjacency))
    }

    fn from_adjacency(mut adjacency: Vec<Vec<u32>>) -> Graph {
        let mut degree_sum = 0;
        let mut max_degree = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
            max_degree = max_degree.max(list.len() as u32);
        }
        Graph {
            adjacency,
            edge_count: degree_sum / 2,
            max_degree,
        }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_adjacency(vec![Vec::new(); n])
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[u32]) -> Graph {
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let adjacency = vertices
            .iter()
            .map(|&v| {
                self.neighbours(v)
                    .iter()
                    .filter_map(|&w| {
                        let lw = local[w as usize];
                        (lw != u32::MAX).then_some(lw)
                    })
                    .collect()
            })
            .collect();
        Graph::from_adjacency(adjacency)
    }

    /// Vertex-disjoint union; `other` is relabelled to follow `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n() as u32;
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|list| list.iter().map(|&w| w + offset).collect()),
        );
        Graph::from_adjacency(adjacency)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start as u32];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in self.neighbours(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }
}

// Named small graphs.

pub fn complete(n: usize) -> Graph {
    let n32 = n as u32;
    Graph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))))
        .expect("complete graph is valid")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let n32 = n as u32;
    Graph::from_edges(n, (0..n32).map(|i| (i, (i + 1) % n32)))
}

pub fn path(n: usize) -> Graph {
    let n32 = n as u32;
    Graph::from_edges(n, (1..n32).map(|i| (i - 1, i))).expect("path is valid")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let (a32, b32) = (a as u32, b as u32);
    Graph::from_edges(
        a + b,
        (0..a32).flat_map(|u| (0..b32).map(move |v| (u, a32 + v))),
    )
    .expect("complete bipartite graph is valid")
}

pub fn petersen() -> Graph {
    let outer = (0..5u32).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5u32).map(|i| (i, i + 5));
    let inner = (0..5u32).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("Petersen graph is valid")
}

/// The `r`-th power of the `n`-cycle: `i` is adjacent to `i±1, …, i±r (mod n)`.
pub fn cycle_power(n: usize, r: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle power needs n >= 3, got {n}")));
    }
    if r < 1 || 2 * r >= n {
        return Err(Error::invalid(format!(
            "cycle power radius must satisfy 1 <= r < n/2, got r = {r}, n = {n}"
        )));
    }
    let (n32, r32) = (n as u32, r as u32);
    Graph::from_edges(
        n,
        (0..n32).flat_map(|i| (1..=r32).map(move |d| (i, (i + d) % n32))),
    )
}

/// `⌊n/(Δ+1)⌋` disjoint copies of `K_{Δ+1}` in consecutive index blocks, then isolated vertices.
pub fn disjoint_cliques(n: usize, delta: usize) -> Result<Graph> {
    if n < 1 || delta >= n {
        return Err(Error::invalid(format!(
            "disjoint cliques need n >= 1 and 0 <= delta < n, got n = {n}, delta = {delta}"
        )));
    }
    let size = delta + 1;
    let copies = n / size;
    let mut edges = Vec::with_capacity(copies * size * delta / 2);
    for c in 0..copies {
        let base = (c * size) as u32;
        for u in 0..size as u32 {
            for v in u + 1..size as u32 {
                edges.push((base + u, base + v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// The `d`-blow-up of `g0`.
#[derive(Debug, Clone)]
pub struct BlowUp {
    pub graph: Graph,
    /// `origin[v]` is the vertex of `g0` that `v` copies.
    pub origin: Vec<u32>,
}

/// Replaces every vertex by `d` independent copies and every edge by a complete
/// bipartite join. Copy `j` of origin `v` gets index `v·d + j`.
pub fn blow_up(g0: &Graph, d: usize) -> Result<BlowUp> {
    if d < 1 {
        return Err(Error::invalid("blow-up multiplicity must be at least 1"));
    }
    let n = g0.n() * d;
    let d32 = d as u32;
    let mut edges = Vec::with_capacity(g0.edge_count() * d * d);
    for (u, v) in g0.edges() {
        for a in 0..d32 {
            for b in 0..d32 {
                edges.push((u * d32 + a, v * d32 + b));
            }
        }
    }
    let origin = (0..n as u32).map(|x| x / d32).collect();
    Ok(BlowUp {
        graph: Graph::from_edges(n, edges)?,
        origin,
    })
}

/// `K_{s*r}`: `parts` independent sets of `part_size` vertices, fully joined across parts.
pub fn complete_multipartite(part_size: usize, parts: usize) -> Result<Graph> {
    if part_size < 1 || parts < 1 {
        return Err(Error::invalid(
            "complete multipartite graph needs part_size, parts >= 1",
        ));
    }
    let n = part_size * parts;
    let s = part_size as u32;
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if u / s != v / s {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// A forbidden subgraph (non-induced).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "size", rename_all = "lowercase")]
pub enum ForbiddenSpec {
    /// `K_t`.
    Clique(u32),
    /// `C_ℓ`.
    Cycle(u32),
    /// `K_{1,s}`.
    Star(u32),
}

impl ForbiddenSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ForbiddenSpec::Clique(t) if t < 2 => Err(Error::invalid(format!(
                "forbidden clique needs t >= 2, got {t}"
            ))),
            ForbiddenSpec::Cycle(l) if l < 3 => Err(Error::invalid(format!(
                "forbidden cycle needs length >= 3, got {l}"
            ))),
            ForbiddenSpec::Star(s) if s < 1 => {
                Err(Error::invalid("forbidden star needs at least one leaf"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ForbiddenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenSpec::Clique(t) => write!(f, "clique:{t}"),
            ForbiddenSpec::Cycle(l) => write!(f, "cycle:{l}"),
            ForbiddenSpec::Star(s) => write!(f, "star:{s}"),
        }
    }
}

impl std::str::FromStr for ForbiddenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, size) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("forbidden spec `{s}` is not kind:size")))?;
        let size: u32 = size
            .parse()
            .map_err(|_| Error::invalid(format!("bad size in forbidden spec `{s}`")))?;
        let spec = match kind {
            "clique" | "K" => ForbiddenSpec::Clique(size),
            "cycle" | "C" => ForbiddenSpec::Cycle(size),
            "star" => ForbiddenSpec::Star(size),
            _ => return Err(Error::invalid(format!("unknown forbidden kind `{kind}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// True iff `g` contains `h` as a (not necessarily induced) subgraph.
///
/// Cycle search is a depth-limited DFS rooted at each cycle's smallest
/// vertex; meant for small patterns on hosts of at most a few thousand vertices.
pub fn contains_forbidden(g: &Graph, h: ForbiddenSpec) -> Result<bool> {
    h.validate()?;
    Ok(match h {
        ForbiddenSpec::Clique(t) => has_clique(g, t as usize),
        ForbiddenSpec::Cycle(l) => has_cycle_of_length(g, l as usize),
        ForbiddenSpec::Star(s) => g.max_degree() >= s,
    })
}

pub fn is_h_free(g: &Graph, forbidden: &[ForbiddenSpec]) -> Result<bool> {
    for &h in forbidden {
        if contains_forbidden(g, h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn has_clique(g: &Graph, t: usize) -> bool {
    if t <= 1 {
        return g.n() >= t;
    }
    fn extend(g: &Graph, candidates: &[u32], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if candidates.len() < need {
            return false;
        }
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<u32> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            if extend(g, &next, need - 1) {
                return true;
            }
        }
        false
    }
    (0..g.n() as u32).any(|v| {
        let higher: Vec<u32> = g.neighbours(v).iter().copied().filter(|&w| w > v).collect();
        extend(g, &higher, t - 1)
    })
}

fn has_cycle_of_length(g: &Graph, len: usize) -> bool {
    fn dfs(g: &Graph, root: u32, v: u32, depth: usize, len: usize, on_path: &mut [bool]) -> bool {
        if depth == len {
            return g.has_edge(v, root);
        }
        for &w in g.neighbours(v) {
            if w > root && !on_path[w as usize] {
                on_path[w as usize] = true;
                let found = dfs(g, root, w, depth + 1, len, on_path);
                on_path[w as usize] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    let mut on_path = vec![false; g.n()];
    (0..g.n() as u32).any(|root| {
        on_path[root as usize] = true;
        let found = dfs(g, root, root, 1, len, &mut on_path);
        on_path[root as usize] = false;
        found
    })
}
