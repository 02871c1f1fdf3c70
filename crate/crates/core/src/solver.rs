//! Deciding `L`-colourability component by component over the dangerous
//! subgraph, and extracting minimal non-colourable witnesses.
//!
//! Each component of `B` goes through:
//! 1. unique-colour reduction (one pass),
//! 2. a rainbow colouring from a saturating vertex–colour matching,
//! 3. a Hall-violating clique search (a clique `Q` with `|L(Q)| < |Q|`),
//! 4. exact backtracking on what is left, up to a size cap.
//!
//! Steps 2 and 3 are sound shortcuts; step 4 makes the pipeline complete.

use serde::{Deserialize, Serialize};

use crate::dangerous::{dangerous_subgraph, DangerousSubgraph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lists::ListAssignment;
use crate::matching::{hall_violator, hopcroft_karp};

pub const DEFAULT_EXACT_CAP: usize = 64;

/// Largest clique size, above the list size, tried by the Hall-clique search.
const HALL_CLIQUE_SLACK: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Largest vertex set handed to the exact backtracking search.
    pub exact_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            exact_cap: DEFAULT_EXACT_CAP,
        }
    }
}

/// A (partial) map from vertices to colours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    colours: Vec<Option<u32>>,
}

impl Colouring {
    pub fn empty(n: usize) -> Self {
        Colouring {
            colours: vec![None; n],
        }
    }

    pub fn from_total(colours: Vec<u32>) -> Self {
        Colouring {
            colours: colours.into_iter().map(Some).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.colours.len()
    }

    pub fn get(&self, v: u32) -> Option<u32> {
        self.colours[v as usize]
    }

    pub fn set(&mut self, v: u32, colour: u32) {
        self.colours[v as usize] = Some(colour);
    }

    pub fn is_total(&self) -> bool {
        self.colours.iter().all(Option::is_some)
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.colours
    }

    /// Every assigned colour comes from its list and no edge of `g` is
    /// monochromatic between two coloured endpoints.
    pub fn is_proper(&self, g: &Graph, l: &ListAssignment) -> bool {
        for v in 0..self.n() as u32 {
            if let Some(c) = self.get(v) {
                if l.list(v).binary_search(&c).is_err() {
                    return false;
                }
            }
        }
        g.edges().all(|(u, v)| match (self.get(u), self.get(v)) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
    }
}

/// Colours every vertex owning a colour that no other list in `component`
/// carries, using its smallest such colour. Returns the coloured pairs and the
/// uncoloured residual, both in ascending vertex order.
pub fn reduce_unique_colours(component: &[u32], l: &ListAssignment) -> (Vec<(u32, u32)>, Vec<u32>) {
    let mut all: Vec<u32> = component.iter().flat_map(|&v| l.list(v)).copied().collect();
    all.sort_unstable();
    let multiplicity = |c: u32| {
        let lo = all.partition_point(|&x| x < c);
        let hi = all.partition_point(|&x| x <= c);
        hi - lo
    };
    let mut coloured = Vec::new();
    let mut residual = Vec::new();
    for &v in component {
        match l.list(v).iter().copied().find(|&c| multiplicity(c) == 1) {
            Some(c) => coloured.push((v, c)),
            None => residual.push(v),
        }
    }
    (coloured, residual)
}

/// Colours `residual` with pairwise distinct colours via a maximum matching of
/// the vertex–colour incidence graph, or returns `None` when no matching
/// saturates the residual. Sound but not complete.
pub fn rainbow_matching_colouring(residual: &[u32], l: &ListAssignment) -> Option<Vec<(u32, u32)>> {
    let palette = l.union_of(residual);
    if palette.len() < residual.len() {
        return None;
    }
    let adj: Vec<Vec<usize>> = residual
        .iter()
        .map(|&v| {
            l.list(v)
                .iter()
                .map(|c| palette.binary_search(c).expect("colour in palette"))
                .collect()
        })
        .collect();
    let matching = hopcroft_karp(&adj, palette.len());
    if matching.size < residual.len() {
        return None;
    }
    Some(
        residual
            .iter()
            .zip(&matching.left)
            .map(|(&v, r)| (v, palette[r.expect("saturating matching")]))
            .collect(),
    )
}

/// Backtracking list colouring of a small graph given by local adjacency.
/// Most-constrained vertex first (ties to the smallest index), colours tried
/// in ascending order, and a branch dies as soon as any vertex has no colour left.
pub(crate) fn colour_local(adj: &[Vec<usize>], lists: &[&[u32]]) -> Option<Vec<u32>> {
    fn available(v: usize, adj: &[Vec<usize>], lists: &[&[u32]], colour: &[Option<u32>]) -> usize {
        lists[v]
            .iter()
            .filter(|&&c| adj[v].iter().all(|&w| colour[w] != Some(c)))
            .count()
    }

    fn search(
        adj: &[Vec<usize>],
        lists: &[&[u32]],
        colour: &mut [Option<u32>],
        left: usize,
    ) -> bool {
        if left == 0 {
            return true;
        }
        let mut best: Option<(usize, usize)> = None;
        for v in 0..adj.len() {
            if colour[v].is_some() {
                continue;
            }
            let count = available(v, adj, lists, colour);
            if count == 0 {
                return false;
            }
            if best.is_none_or(|(_, b)| count < b) {
                best = Some((v, count));
            }
        }
        let (v, _) = best.expect("an uncoloured vertex remains");
        for &c in lists[v] {
            if adj[v].iter().any(|&w| colour[w] == Some(c)) {
                continue;
            }
            colour[v] = Some(c);
            if search(adj, lists, colour, left - 1) {
                return true;
            }
            colour[v] = None;
        }
        false
    }

    let mut colour = vec![None; adj.len()];
    search(adj, lists, &mut colour, adj.len())
        .then(|| colour.into_iter().map(|c| c.expect("total")).collect())
}

/// Exact list colouring of `B[vertices]`.
pub fn exact_list_colouring(
    b: &DangerousSubgraph,
    vertices: &[u32],
    l: &ListAssignment,
    cap: usize,
) -> Result<Option<Vec<(u32, u32)>>> {
    if vertices.len() > cap {
        return Err(Error::ComponentTooLarge {
            size: vertices.len(),
            cap,
        });
    }
    let adj = b.induced(vertices);
    let lists: Vec<&[u32]> = vertices.iter().map(|&v| l.list(v)).collect();
    Ok(colour_local(&adj, &lists).map(|c| vertices.iter().copied().zip(c).collect()))
}

/// Exact list colouring of a whole (small) graph, ignoring the dangerous-edge split.
pub fn exact_graph_colouring(
    g: &Graph,
    l: &ListAssignment,
    cap: usize,
) -> Result<Option<Colouring>> {
    if l.n() != g.n() {
        return Err(Error::SizeMismatch {
            graph: g.n(),
            lists: l.n(),
        });
    }
    if g.n() > cap {
        return Err(Error::ComponentTooLarge { size: g.n(), cap });
    }
    let adj: Vec<Vec<usize>> = (0..g.n() as u32)
        .map(|v| g.neighbours(v).iter().map(|&w| w as usize).collect())
        .collect();
    let lists: Vec<&[u32]> = l.lists().collect();
    Ok(colour_local(&adj, &lists).map(Colouring::from_total))
}

/// A clique of `B[vertices]` whose lists cover fewer colours than it has
/// vertices; such a clique cannot be coloured. Sizes `k+1 ..= k+2` are tried.
pub fn hall_clique(
    b: &DangerousSubgraph,
    vertices: &[u32],
    l: &ListAssignment,
) -> Option<Vec<u32>> {
    let adj = b.induced(vertices);
    let lo = l.k() + 1;
    let hi = l.k() + HALL_CLIQUE_SLACK;

    fn grow(
        adj: &[Vec<usize>],
        vertices: &[u32],
        l: &ListAssignment,
        clique: &mut Vec<usize>,
        candidates: &[usize],
        lo: usize,
        hi: usize,
    ) -> bool {
        if clique.len() >= lo {
            let members: Vec<u32> = clique.iter().map(|&i| vertices[i]).collect();
            if l.union_of(&members).len() < clique.len() {
                return true;
            }
        }
        if clique.len() == hi {
            return false;
        }
        for (pos, &w) in candidates.iter().enumerate() {
            if clique.len() + 1 + (candidates.len() - pos - 1) < lo {
                break;
            }
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|x| adj[w].binary_search(x).is_ok())
                .collect();
            clique.push(w);
            if grow(adj, vertices, l, clique, &next, lo, hi) {
                return true;
            }
            clique.pop();
        }
        false
    }

    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_unstable_by_key(|&i| vertices[i]);
    for &v in &order {
        let higher: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&w| vertices[w] > vertices[v])
            .collect();
        let mut higher_sorted = higher;
        higher_sorted.sort_unstable_by_key(|&w| vertices[w]);
        let mut clique = vec![v];
        if grow(&adj, vertices, l, &mut clique, &higher_sorted, lo, hi) {
            let mut out: Vec<u32> = clique.iter().map(|&i| vertices[i]).collect();
            out.sort_unstable();
            return Some(out);
        }
    }
    None
}

#[derive(Debug)]
enum ComponentOutcome {
    Colourable(Vec<(u32, u32)>),
    /// `core` is a vertex set of the component already known to be non-colourable.
    NotColourable {
        core: Vec<u32>,
    },
    TooLarge(Error),
}

fn solve_component(
    b: &DangerousSubgraph,
    component: &[u32],
    l: &ListAssignment,
    cfg: &SolverConfig,
) -> ComponentOutcome {
    if let [v] = component {
        return ComponentOutcome::Colourable(vec![(*v, l.list(*v)[0])]);
    }
    let (mut coloured, residual) = reduce_unique_colours(component, l);
    if residual.is_empty() {
        return ComponentOutcome::Colourable(coloured);
    }
    if let Some(rainbow) = rainbow_matching_colouring(&residual, l) {
        coloured.extend(rainbow);
        return ComponentOutcome::Colourable(coloured);
    }
    if let Some(clique) = hall_clique(b, &residual, l) {
        return ComponentOutcome::NotColourable { core: clique };
    }
    match exact_list_colouring(b, &residual, l, cfg.exact_cap) {
        Ok(Some(rest)) => {
            coloured.extend(rest);
            ComponentOutcome::Colourable(coloured)
        }
        Ok(None) => ComponentOutcome::NotColourable { core: residual },
        Err(e) => ComponentOutcome::TooLarge(e),
    }
}

/// The first component found to be non-colourable.
#[derive(Debug, Clone)]
pub struct BlockedComponent {
    /// Index into [`DangerousSubgraph::components`].
    pub component: usize,
    /// A non-colourable vertex subset of that component.
    pub core: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub dangerous: DangerousSubgraph,
    /// A total proper colouring when one exists.
    pub colouring: Option<Colouring>,
    pub blocked: Option<BlockedComponent>,
}

impl Solution {
    pub fn is_colourable(&self) -> bool {
        self.colouring.is_some()
    }
}

/// Solves with a precomputed dangerous subgraph.
///
/// Components are scanned by smallest vertex. A component proved
/// non-colourable settles the answer even if an earlier one hit the cap; a cap
/// error is returned only when no component is proved non-colourable.
pub fn solve_dangerous(
    b: DangerousSubgraph,
    l: &ListAssignment,
    cfg: &SolverConfig,
) -> Result<Solution> {
    let mut colouring = Colouring::empty(b.n());
    let mut first_error = None;
    for (index, component) in b.components().iter().enumerate() {
        match solve_component(&b, component, l, cfg) {
            ComponentOutcome::Colourable(pairs) => {
                for (v, c) in pairs {
                    colouring.set(v, c);
                }
            }
            ComponentOutcome::NotColourable { core } => {
                return Ok(Solution {
                    dangerous: b,
                    colouring: None,
                    blocked: Some(BlockedComponent {
                        component: index,
                        core,
                    }),
                });
            }
            ComponentOutcome::TooLarge(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    match first_error {
        Some(e) => Err(e),
        None => Ok(Solution {
            dangerous: b,
            colouring: Some(colouring),
            blocked: None,
        }),
    }
}

pub fn solve(g: &Graph, l: &ListAssignment, cfg: &SolverConfig) -> Result<Solution> {
    solve_dangerous(dangerous_subgraph(g, l)?, l, cfg)
}

/// Is `g` colourable from `l`? Returns a total proper colouring when it is.
pub fn is_colourable(g: &Graph, l: &ListAssignment) -> Result<(bool, Option<Colouring>)> {
    let solution = solve(g, l, &SolverConfig::default())?;
    Ok((solution.is_colourable(), solution.colouring))
}

/// Results of re-deriving the structural properties of a minimal
/// non-colourable set `U` with `i = |U|` and `ℓ = |L(U)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChecks {
    pub connected: bool,
    /// Fewest lists of `U` sharing any one colour of `L(U)`.
    pub min_colour_multiplicity: usize,
    /// Maximum matching size of the vertex–colour incidence graph `F`.
    pub matching_size: usize,
    /// `|U|` minus the matching size.
    pub hall_deficiency: usize,
    /// A vertex set `X` with `|L(X)| < |X|`.
    pub hall_set: Vec<u32>,
    /// `j = |L(X)|` for that set.
    pub hall_colours: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vertices: Vec<u32>,
    /// `i = |U|`.
    pub order: usize,
    /// `ℓ = |L(U)|`.
    pub palette_used: usize,
    /// `L(U)`, sorted.
    pub palette: Vec<u32>,
    /// Dangerous edges inside `U`.
    pub edges: Vec<(u32, u32)>,
    /// Lists of the vertices of `U`, aligned with `vertices`; the
    /// vertex–colour incidence graph `F`.
    pub lists: Vec<Vec<u32>>,
    pub checks: WitnessChecks,
}

fn local_adjacency(vertices: &[u32], edges: &[(u32, u32)]) -> Vec<Vec<usize>> {
    let index = |v: u32| vertices.binary_search(&v).ok();
    let mut adj = vec![Vec::new(); vertices.len()];
    for &(u, v) in edges {
        if let (Some(a), Some(b)) = (index(u), index(v)) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

fn compute_checks(vertices: &[u32], edges: &[(u32, u32)], l: &ListAssignment) -> WitnessChecks {
    let adj = local_adjacency(vertices, edges);
    let connected = {
        let mut seen = vec![false; vertices.len()];
        let mut stack = vec![0usize];
        if !vertices.is_empty() {
            seen[0] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    };

    let palette = l.union_of(vertices);
    let mut counts = vec![0usize; palette.len()];
    let incidence: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| {
            l.list(v)
                .iter()
                .map(|c| {
                    let i = palette.binary_search(c).expect("colour in palette");
                    counts[i] += 1;
                    i
                })
                .collect()
        })
        .collect();
    let min_colour_multiplicity = counts.iter().copied().min().unwrap_or(0);

    let matching = hopcroft_karp(&incidence, palette.len());
    let hall_set: Vec<u32> = hall_violator(&incidence, &matching)
        .into_iter()
        .map(|i| vertices[i])
        .collect();
    let hall_colours = l.union_of(&hall_set).len();

    WitnessChecks {
        connected,
        min_colour_multiplicity,
        matching_size: matching.size,
        hall_deficiency: vertices.len() - matching.size,
        hall_set,
        hall_colours,
    }
}

fn build_witness(b: &DangerousSubgraph, mut vertices: Vec<u32>, l: &ListAssignment) -> Witness {
    vertices.sort_unstable();
    let edges: Vec<(u32, u32)> = vertices
        .iter()
        .flat_map(|&u| {
            b.neighbours(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
        .filter(|&(_, v)| vertices.binary_search(&v).is_ok())
        .collect();
    let palette = l.union_of(&vertices);
    let checks = compute_checks(&vertices, &edges, l);
    Witness {
        order: vertices.len(),
        palette_used: palette.len(),
        palette,
        lists: vertices.iter().map(|&v| l.list(v).to_vec()).collect(),
        edges,
        vertices,
        checks,
    }
}

/// A minimal non-colourable vertex set of `B`, or `None` if `g` is colourable.
///
/// Starts from the first blocked component (or, when that exceeds the exact
/// cap, from the non-colourable core the solver found inside it) and deletes
/// vertices in ascending order while non-colourability persists, restarting
/// after each deletion.
pub fn minimal_witness(
    g: &Graph,
    l: &ListAssignment,
    cfg: &SolverConfig,
) -> Result<Option<Witness>> {
    let solution = solve(g, l, cfg)?;
    witness_from_solution(&solution, l, cfg)
}

pub fn witness_from_solution(
    solution: &Solution,
    l: &ListAssignment,
    cfg: &SolverConfig,
) -> Result<Option<Witness>> {
    let Some(blocked) = &solution.blocked else {
        return Ok(None);
    };
    let b = &solution.dangerous;
    let component = &b.components()[blocked.component];
    let mut current: Vec<u32> = if component.len() <= cfg.exact_cap {
        component.clone()
    } else {
        let mut core = blocked.core.clone();
        core.sort_unstable();
        core
    };
    'shrink: loop {
        for idx in 0..current.len() {
            let mut candidate = current.clone();
            candidate.remove(idx);
            if candidate.is_empty() {
                continue;
            }
            if exact_list_colouring(b, &candidate, l, cfg.exact_cap)?.is_none() {
                current = candidate;
                continue 'shrink;
            }
        }
        break;
    }
    Ok(Some(build_witness(b, current, l)))
}

/// A property a minimal non-colourable set must have but this one lacks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    ListSize {
        vertex: u32,
        expected: usize,
        found: usize,
    },
    EdgeNotDangerous {
        u: u32,
        v: u32,
    },
    Disconnected,
    /// A colour of `L(U)` that appears on fewer than two lists.
    LoneColour {
        colour: u32,
    },
    /// `F` has a matching saturating `U`, so `U` would be rainbow-colourable.
    HallSatisfied {
        matching_size: usize,
    },
    /// The Hall set found uses fewer than `k` colours.
    HallSetTooSmall {
        hall_colours: usize,
        k: usize,
    },
    /// `2ℓ > ik - k(k-1)` or `2ℓ > ik`.
    PaletteBound {
        palette_used: usize,
        order: usize,
        k: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub checks: WitnessChecks,
    /// `(ik - k(k-1)) / 2`.
    pub palette_bound: f64,
    pub violations: Vec<Violation>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-derives every structural property of `w` from `l` alone.
pub fn validate_witness(w: &Witness, l: &ListAssignment, k: usize) -> WitnessReport {
    let mut violations = Vec::new();
    let mut vertices = w.vertices.clone();
    vertices.sort_unstable();

    for &v in &vertices {
        let found = l.list(v).len();
        if found != k {
            violations.push(Violation::ListSize {
                vertex: v,
                expected: k,
                found,
            });
        }
    }
    for &(u, v) in &w.edges {
        if !crate::lists::intersects(l.list(u), l.list(v)) {
            violations.push(Violation::EdgeNotDangerous { u, v });
        }
    }

    let checks = compute_checks(&vertices, &w.edges, l);
    if !checks.connected {
        violations.push(Violation::Disconnected);
    }
    let palette = l.union_of(&vertices);
    for &c in &palette {
        let holders = vertices
            .iter()
            .filter(|&&v| l.list(v).binary_search(&c).is_ok())
            .count();
        if holders < 2 {
            violations.push(Violation::LoneColour { colour: c });
        }
    }
    if checks.hall_deficiency == 0 {
        violations.push(Violation::HallSatisfied {
            matching_size: checks.matching_size,
        });
    } else if checks.hall_colours < k {
        violations.push(Violation::HallSetTooSmall {
            hall_colours: checks.hall_colours,
            k,
        });
    }
    let (i, ell) = (vertices.len() as i64, palette.len() as i64);
    let ki = k as i64;
    if 2 * ell > i * ki - ki * (ki - 1) || 2 * ell > i * ki {
        violations.push(Violation::PaletteBound {
            palette_used: palette.len(),
            order: vertices.len(),
            k,
        });
    }

    WitnessReport {
        palette_bound: (i * ki - ki * (ki - 1)) as f64 / 2.0,
        checks,
        violations,
    }
}

/// Is every one-vertex deletion of the witness colourable?
pub fn is_minimal(w: &Witness, l: &ListAssignment) -> bool {
    let adj_full = local_adjacency(&w.vertices, &w.edges);
    let lists: Vec<&[u32]> = w.vertices.iter().map(|&v| l.list(v)).collect();
    if colour_local(&adj_full, &lists).is_some() {
        return false;
    }
    (0..w.vertices.len()).all(|skip| {
        let keep: Vec<u32> = w
            .vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect();
        let adj = local_adjacency(&keep, &w.edges);
        let lists: Vec<&[u32]> = keep.iter().map(|&v| l.list(v)).collect();
        colour_local(&adj, &lists).is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, disjoint_cliques, path};

    fn lists(k: usize, m: u32, raw: &[&[u32]]) -> ListAssignment {
        ListAssignment::from_lists(k, m, raw.iter().copied()).unwrap()
    }

    #[test]
    fn unique_colour_reduction_examples() {
        let l = lists(2, 2, &[&[1, 2]]);
        assert_eq!(reduce_unique_colours(&[0], &l), (vec![(0, 1)], vec![]));

        let l = lists(2, 3, &[&[1, 2], &[2, 3]]);
        assert_eq!(
            reduce_unique_colours(&[0, 1], &l),
            (vec![(0, 1), (1, 3)], vec![])
        );

        let l = ListAssignment::uniform(3, 3, &[1, 2, 3]).unwrap();
        assert_eq!(
            reduce_unique_colours(&[0, 1, 2], &l),
            (vec![], vec![0, 1, 2])
        );
    }

    #[test]
    fn rainbow_matching_examples() {
        let l = lists(2, 3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(
            rainbow_matching_colouring(&[0, 1, 2], &l),
            Some(vec![(0, 1), (1, 2), (2, 3)])
        );

        let l = ListAssignment::uniform(3, 2, &[1, 2]).unwrap();
        assert_eq!(rainbow_matching_colouring(&[0, 1, 2], &l), None);

        let l = ListAssignment::uniform(4, 2, &[1, 2]).unwrap();
        assert_eq!(rainbow_matching_colouring(&[0, 1, 2, 3], &l), None);
    }

    #[test]
    fn exact_examples() {
        let c4 = cycle(4).unwrap();
        let l = ListAssignment::uniform(4, 2, &[1, 2]).unwrap();
        let c = exact_graph_colouring(&c4, &l, 64).unwrap().unwrap();
        assert_eq!(c.as_slice(), &[Some(1), Some(2), Some(1), Some(2)]);

        let l3 = ListAssignment::uniform(3, 2, &[1, 2]).unwrap();
        assert!(exact_graph_colouring(&complete(3), &l3, 64)
            .unwrap()
            .is_none());

        let l5 = ListAssignment::uniform(5, 2, &[1, 2]).unwrap();
        assert!(exact_graph_colouring(&cycle(5).unwrap(), &l5, 64)
            .unwrap()
            .is_none());

        assert!(matches!(
            exact_graph_colouring(&cycle(5).unwrap(), &l5, 4),
            Err(Error::ComponentTooLarge { size: 5, cap: 4 })
        ));
    }

    #[test]
    fn is_colourable_examples() {
        let l = lists(1, 2, &[&[1], &[2]]);
        let (ok, c) = is_colourable(&complete(2), &l).unwrap();
        assert!(ok);
        assert!(c.unwrap().is_proper(&complete(2), &l));

        let l = ListAssignment::uniform(3, 2, &[1, 2]).unwrap();
        assert_eq!(is_colourable(&complete(3), &l).unwrap(), (false, None));

        let g = disjoint_cliques(8, 3).unwrap();
        let l = ListAssignment::uniform(8, 4, &[1, 2, 3, 4]).unwrap();
        let (ok, c) = is_colourable(&g, &l).unwrap();
        assert!(ok);
        let c = c.unwrap();
        assert!(c.is_total());
        assert!(c.is_proper(&g, &l));
    }

    #[test]
    fn cap_error_only_without_a_verdict() {
        // A 70-vertex even cycle with identical lists: colourable, but only the
        // exact search can tell, and it is over the cap.
        let g = cycle(70).unwrap();
        let l = ListAssignment::uniform(70, 2, &[1, 2]).unwrap();
        assert!(matches!(
            is_colourable(&g, &l),
            Err(Error::ComponentTooLarge { .. })
        ));

        // Add a triangle with identical lists: the answer is settled.
        let g = g.disjoint_union(&complete(3));
        let l = ListAssignment::uniform(73, 2, &[1, 2]).unwrap();
        assert_eq!(is_colourable(&g, &l).unwrap(), (false, None));
    }

    #[test]
    fn hall_clique_on_large_component() {
        let g = crate::graph::cycle_power(200, 2).unwrap();
        let l = ListAssignment::uniform(200, 2, &[1, 2]).unwrap();
        let solution = solve(&g, &l, &SolverConfig::default()).unwrap();
        let blocked = solution.blocked.clone().unwrap();
        assert_eq!(blocked.core, vec![0, 1, 2]);
        let w = witness_from_solution(&solution, &l, &SolverConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2]);
        assert!(validate_witness(&w, &l, 2).passed());
    }

    #[test]
    fn witness_examples() {
        let l = ListAssignment::uniform(3, 2, &[1, 2]).unwrap();
        let w = minimal_witness(&complete(3), &l, &SolverConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2]);
        assert_eq!((w.order, w.palette_used), (3, 2));
        let report = validate_witness(&w, &l, 2);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.palette_bound, 2.0);
        assert_eq!(report.checks.min_colour_multiplicity, 3);
        assert_eq!(report.checks.matching_size, 2);
        assert!(is_minimal(&w, &l));

        let l = ListAssignment::uniform(5, 2, &[1, 2]).unwrap();
        let w = minimal_witness(&cycle(5).unwrap(), &l, &SolverConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
        let report = validate_witness(&w, &l, 2);
        assert!(report.passed());
        assert_eq!(report.palette_bound, 4.0);

        let l = lists(2, 4, &[&[1, 2], &[3, 4], &[1, 2], &[3, 4]]);
        assert!(minimal_witness(&path(4), &l, &SolverConfig::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn non_minimal_set_fails_lone_colour() {
        let g = complete(2);
        let l = lists(2, 3, &[&[1, 2], &[2, 3]]);
        let b = dangerous_subgraph(&g, &l).unwrap();
        let w = build_witness(&b, vec![0, 1], &l);
        let report = validate_witness(&w, &l, 2);
        assert!(report
            .violations
            .contains(&Violation::LoneColour { colour: 1 }));
        assert!(report
            .violations
            .contains(&Violation::LoneColour { colour: 3 }));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::HallSatisfied { .. })));
    }

    #[test]
    fn witness_shrinks_inside_component() {
        // Triangle 0-1-2 with lists {1,2} hangs off a path whose lists are fresh.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let l = lists(2, 5, &[&[1, 2], &[1, 2], &[1, 2], &[2, 3], &[3, 4]]);
        let w = minimal_witness(&g, &l, &SolverConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2]);
        assert!(validate_witness(&w, &l, 2).passed());
        assert!(is_minimal(&w, &l));
    }
}
