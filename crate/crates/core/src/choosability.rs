//! Exact chromatic and choice numbers of small graphs, and certification of
//! `g(H, k)` (the largest order up to which every `H`-free graph is
//! `k`-choosable) over an enumerated graph stream.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{is_h_free, ForbiddenSpec, Graph};
use crate::io::{to_graph6, Graph6Reader};
use crate::lists::ListAssignment;
use crate::solver::colour_local;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoosabilityConfig {
    /// Largest `k`-core enumerated when `k <= 3`.
    pub core_cap_small_k: usize,
    /// Largest `k`-core enumerated when `k > 3`.
    pub core_cap_large_k: usize,
    /// Largest graph handed to [`chromatic_number`].
    pub chromatic_cap: usize,
}

impl Default for ChoosabilityConfig {
    fn default() -> Self {
        ChoosabilityConfig {
            core_cap_small_k: 8,
            core_cap_large_k: 6,
            chromatic_cap: 16,
        }
    }
}

impl ChoosabilityConfig {
    fn core_cap(&self, k: usize) -> usize {
        if k <= 3 {
            self.core_cap_small_k
        } else {
            self.core_cap_large_k
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoosabilityReport {
    /// graph6 encoding of the tested graph.
    pub graph: String,
    pub n: usize,
    pub k: usize,
    pub choosable: bool,
    /// A `k`-list-assignment admitting no proper colouring.
    pub bad_assignment: Option<ListAssignment>,
    /// Palette size of the enumeration, `k·n`.
    pub universe: u32,
}

fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n() as u32)
        .map(|v| g.neighbours(v).iter().map(|&w| w as usize).collect())
        .collect()
}

fn max_clique(adj: &[Vec<usize>]) -> usize {
    fn grow(adj: &[Vec<usize>], size: usize, candidates: &[usize], best: &mut usize) {
        if candidates.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + candidates.len() <= *best {
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if size + candidates.len() - i <= *best {
                return;
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|w| adj[v].contains(w))
                .collect();
            grow(adj, size + 1, &next, best);
        }
    }
    let mut best = 0;
    let all: Vec<usize> = (0..adj.len()).collect();
    grow(adj, 0, &all, &mut best);
    best
}

/// DSATUR greedy colouring; returns the number of colours used.
fn dsatur_greedy(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    let mut colour = vec![usize::MAX; n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by_key(|&v| {
                let mut seen: Vec<usize> = adj[v]
                    .iter()
                    .filter_map(|&w| (colour[w] != usize::MAX).then_some(colour[w]))
                    .collect();
                seen.sort_unstable();
                seen.dedup();
                (seen.len(), adj[v].len(), std::cmp::Reverse(v))
            })
            .expect("uncoloured vertex");
        let c = (0..)
            .find(|c| adj[v].iter().all(|&w| colour[w] != *c))
            .unwrap();
        colour[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// Can `adj` be properly coloured with `c` colours? Colours are introduced in
/// order, so permuted colourings are never revisited.
fn k_colourable(adj: &[Vec<usize>], c: usize) -> bool {
    fn search(
        adj: &[Vec<usize>],
        c: usize,
        colour: &mut [usize],
        opened: usize,
        left: usize,
    ) -> bool {
        if left == 0 {
            return true;
        }
        let mut best: Option<(usize, usize)> = None;
        for v in 0..adj.len() {
            if colour[v] != usize::MAX {
                continue;
            }
            let blocked: Vec<usize> = {
                let mut b: Vec<usize> = adj[v]
                    .iter()
                    .filter_map(|&w| (colour[w] != usize::MAX).then_some(colour[w]))
                    .collect();
                b.sort_unstable();
                b.dedup();
                b
            };
            if blocked.len() >= c {
                return false;
            }
            let sat = blocked.len();
            if best.is_none_or(|(_, s)| sat > s) {
                best = Some((v, sat));
            }
        }
        let (v, _) = best.expect("uncoloured vertex");
        for col in 0..(opened + 1).min(c) {
            if adj[v].iter().any(|&w| colour[w] == col) {
                continue;
            }
            colour[v] = col;
            if search(adj, c, colour, opened.max(col + 1), left - 1) {
                return true;
            }
            colour[v] = usize::MAX;
        }
        false
    }
    let mut colour = vec![usize::MAX; adj.len()];
    search(adj, c, &mut colour, 0, adj.len())
}

/// Exact `χ(G)` by branch and bound between the clique number and a DSATUR colouring.
pub fn chromatic_number(g: &Graph, cfg: &ChoosabilityConfig) -> Result<usize> {
    if g.n() > cfg.chromatic_cap {
        return Err(Error::GraphTooLarge {
            size: g.n(),
            cap: cfg.chromatic_cap,
        });
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let adj = adjacency(g);
    let lower = max_clique(&adj).max(1);
    let upper = dsatur_greedy(&adj);
    Ok((lower..upper)
        .find(|&c| k_colourable(&adj, c))
        .unwrap_or(upper))
}

/// Vertices surviving repeated deletion of vertices of degree below `k`.
/// Deleted vertices can always be coloured last from a `k`-list.
pub fn k_core(g: &Graph, k: usize) -> Vec<u32> {
    let mut alive = vec![true; g.n()];
    let mut degree: Vec<usize> = (0..g.n() as u32).map(|v| g.degree(v)).collect();
    let mut stack: Vec<u32> = (0..g.n() as u32)
        .filter(|&v| degree[v as usize] < k)
        .collect();
    for &v in &stack {
        alive[v as usize] = false;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbours(v) {
            if alive[w as usize] {
                degree[w as usize] -= 1;
                if degree[w as usize] < k {
                    alive[w as usize] = false;
                    stack.push(w);
                }
            }
        }
    }
    (0..g.n() as u32).filter(|&v| alive[v as usize]).collect()
}

struct ListSearch<'a> {
    k: usize,
    /// Neighbours of `order[i]` as positions in `order`.
    adj: &'a [Vec<usize>],
    /// Does position `i` have a neighbour at a later position?
    has_later: Vec<bool>,
    lists: Vec<Vec<u32>>,
    used: u32,
}

impl ListSearch<'_> {
    fn prefix_colourable(&self, len: usize) -> bool {
        let adj: Vec<Vec<usize>> = self.adj[..len]
            .iter()
            .map(|list| list.iter().copied().filter(|&w| w < len).collect())
            .collect();
        let lists: Vec<&[u32]> = self.lists[..len].iter().map(Vec::as_slice).collect();
        colour_local(&adj, &lists).is_some()
    }

    /// Assigns lists from position `idx` on; true once some prefix is not colourable.
    fn run(&mut self, idx: usize) -> bool {
        if idx == self.adj.len() {
            return false;
        }
        let pool: Vec<u32> = if self.has_later[idx] {
            (0..self.used).collect()
        } else {
            // A colour absent from every neighbour acts like a fresh one.
            let mut p: Vec<u32> = self.adj[idx]
                .iter()
                .filter(|&&w| w < idx)
                .flat_map(|&w| self.lists[w].iter().copied())
                .collect();
            p.sort_unstable();
            p.dedup();
            p
        };
        for reuse in (0..=self.k.min(pool.len())).rev() {
            let fresh = (self.k - reuse) as u32;
            let mut chooser = Combinations::new(pool.len(), reuse);
            while let Some(pick) = chooser.next_combination() {
                let mut list: Vec<u32> = pick.iter().map(|&i| pool[i]).collect();
                list.extend(self.used..self.used + fresh);
                self.lists[idx] = list;
                self.used += fresh;
                if !self.prefix_colourable(idx + 1) || self.run(idx + 1) {
                    return true;
                }
                self.used -= fresh;
            }
        }
        false
    }
}

struct Combinations {
    n: usize,
    indices: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, r: usize) -> Self {
        Combinations {
            n,
            indices: (0..r).collect(),
            started: false,
            done: r > n,
        }
    }

    fn next_combination(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.indices);
        }
        let r = self.indices.len();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if self.indices[i] != i + self.n - r {
                self.indices[i] += 1;
                for j in i + 1..r {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                return Some(&self.indices);
            }
        }
        self.done = true;
        None
    }
}

/// Searches one connected vertex set for a bad `k`-list-assignment, colours
/// numbered from 0. Returns lists aligned with `vertices`.
fn bad_lists_for(g: &Graph, vertices: &[u32], k: usize) -> Option<Vec<Vec<u32>>> {
    // BFS order from the smallest vertex keeps every prefix connected.
    let sub = g.induced(vertices);
    let mut order = vec![0u32];
    let mut seen = vec![false; sub.n()];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in sub.neighbours(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                order.push(w);
            }
        }
    }
    let mut position = vec![0usize; sub.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i;
    }
    let adj: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| {
            let mut list: Vec<usize> = sub
                .neighbours(v)
                .iter()
                .map(|&w| position[w as usize])
                .collect();
            list.sort_unstable();
            list
        })
        .collect();
    let has_later = adj
        .iter()
        .enumerate()
        .map(|(i, list)| list.iter().any(|&w| w > i))
        .collect();
    let mut search = ListSearch {
        k,
        adj: &adj,
        has_later,
        lists: vec![Vec::new(); order.len()],
        used: 0,
    };
    if !search.run(0) {
        return None;
    }
    // Positions past the failing prefix keep stale or empty lists; give them fresh colours.
    let mut lists = search.lists;
    let mut next = search.used;
    let mut failing = 1;
    while search_prefix_colourable(&adj, &lists, failing) {
        failing += 1;
    }
    for list in lists.iter_mut().skip(failing) {
        *list = (next..next + k as u32).collect();
        next += k as u32;
    }
    let mut aligned = vec![Vec::new(); order.len()];
    for (i, &v) in order.iter().enumerate() {
        aligned[v as usize] = std::mem::take(&mut lists[i]);
    }
    Some(aligned)
}

fn search_prefix_colourable(adj: &[Vec<usize>], lists: &[Vec<u32>], len: usize) -> bool {
    let adj: Vec<Vec<usize>> = adj[..len]
        .iter()
        .map(|list| list.iter().copied().filter(|&w| w < len).collect())
        .collect();
    let lists: Vec<&[u32]> = lists[..len].iter().map(Vec::as_slice).collect();
    colour_local(&adj, &lists).is_some()
}

/// Decides `k`-choosability by enumerating `k`-list-assignments up to colour
/// renaming over a universe of `k·n` colours.
///
/// Vertices of degree below `k` are peeled off first and components of the
/// remaining core are searched separately; the core size is capped.
pub fn is_k_choosable(g: &Graph, k: usize, cfg: &ChoosabilityConfig) -> Result<ChoosabilityReport> {
    if k == 0 {
        return Err(Error::invalid("list size k must be at least 1"));
    }
    let n = g.n();
    let universe = (k * n) as u32;
    let mut report = ChoosabilityReport {
        graph: to_graph6(g),
        n,
        k,
        choosable: true,
        bad_assignment: None,
        universe,
    };
    let core = k_core(g, k);
    let cap = cfg.core_cap(k);
    if core.len() > cap {
        return Err(Error::GraphTooLarge {
            size: core.len(),
            cap,
        });
    }
    if core.is_empty() {
        return Ok(report);
    }
    let core_graph = g.induced(&core);
    for component in core_graph.components() {
        let vertices: Vec<u32> = component.iter().map(|&i| core[i as usize]).collect();
        if let Some(local) = bad_lists_for(g, &vertices, k) {
            let mut lists: Vec<Option<Vec<u32>>> = vec![None; n];
            let mut next = 0;
            for (&v, list) in vertices.iter().zip(local) {
                next = next.max(list.iter().copied().max().unwrap_or(0) + 1);
                lists[v as usize] = Some(list.iter().map(|c| c + 1).collect());
            }
            let lists: Vec<Vec<u32>> = lists
                .into_iter()
                .map(|list| {
                    list.unwrap_or_else(|| {
                        let fresh: Vec<u32> = (next + 1..=next + k as u32).collect();
                        next += k as u32;
                        fresh
                    })
                })
                .collect();
            report.choosable = false;
            report.bad_assignment = Some(ListAssignment::from_lists(k, universe, &lists)?);
            return Ok(report);
        }
    }
    Ok(report)
}

/// Smallest `k` for which `g` is `k`-choosable; lies in `[χ(G), Δ(G)+1]`.
pub fn choice_number(g: &Graph, cfg: &ChoosabilityConfig) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    let start = chromatic_number(g, cfg)?.max(1);
    for k in start..=g.max_degree() as usize + 1 {
        if is_k_choosable(g, k, cfg)?.choosable {
            return Ok(k);
        }
    }
    unreachable!("every graph is (max degree + 1)-choosable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph6: String,
    pub n: usize,
    pub bad_assignment: ListAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSearchReport {
    pub forbidden: Vec<ForbiddenSpec>,
    pub k: usize,
    /// Every forbidden-free graph in the stream with at most this many vertices is
    /// `k`-choosable. When `exhausted`, this is only a lower bound.
    pub certified_g: usize,
    pub counterexample: Option<Counterexample>,
    pub exhausted: bool,
    pub graphs_read: usize,
    pub graphs_tested: usize,
}

/// Reads graphs in non-decreasing order of vertex count and reports the
/// largest order certified `k`-choosable among forbidden-free graphs.
///
/// Graphs of one order are tested together; the first counterexample is the
/// one with the lexicographically smallest graph6 string of the smallest order.
pub fn g_search<R: BufRead>(
    forbidden: &[ForbiddenSpec],
    k: usize,
    stream: R,
    cfg: &ChoosabilityConfig,
    exec: Execution,
) -> Result<GSearchReport> {
    for h in forbidden {
        h.validate()?;
    }
    let mut report = GSearchReport {
        forbidden: forbidden.to_vec(),
        k,
        certified_g: 0,
        counterexample: None,
        exhausted: false,
        graphs_read: 0,
        graphs_tested: 0,
    };
    let mut reader = Graph6Reader::new(stream).peekable();
    loop {
        let mut group: Vec<(String, Graph)> = Vec::new();
        let order = match reader.peek() {
            None => break,
            Some(Err(_)) => return Err(reader.next().unwrap().unwrap_err()),
            Some(Ok((_, g))) => g.n(),
        };
        if order < report.certified_g {
            return Err(Error::parse(
                report.graphs_read + 1,
                format!(
                    "graph order {order} after order {} graphs",
                    report.certified_g
                ),
            ));
        }
        while let Some(Ok((_, g))) = reader.peek() {
            if g.n() != order {
                break;
            }
            let (text, g) = reader.next().unwrap().unwrap();
            group.push((text, g));
        }
        report.graphs_read += group.len();

        let mut candidates = Vec::new();
        for (text, g) in group {
            if is_h_free(&g, forbidden)? {
                candidates.push((text, g));
            }
        }
        report.graphs_tested += candidates.len();
        let verdicts = exec.map(candidates.len(), |i| {
            is_k_choosable(&candidates[i].1, k, cfg)
        });
        let mut worst: Option<(String, ChoosabilityReport)> = None;
        for ((text, _), verdict) in candidates.into_iter().zip(verdicts) {
            let verdict = verdict?;
            if !verdict.choosable && worst.as_ref().is_none_or(|(t, _)| text < *t) {
                worst = Some((text, verdict));
            }
        }
        if let Some((text, verdict)) = worst {
            report.certified_g = order.saturating_sub(1);
            report.counterexample = Some(Counterexample {
                graph6: text,
                n: order,
                bad_assignment: verdict.bad_assignment.expect("bad assignment"),
            });
            return Ok(report);
        }
        report.certified_g = order;
    }
    report.exhausted = true;
    Ok(report)
}
