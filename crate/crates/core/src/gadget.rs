//! Disjoint copies of a blow-up of a non-colourable base graph, with the
//! base lists planted, for checking the lower-bound construction.
//!
//! A copy is *bad* when every base vertex `v` has some copy vertex in its
//! class `A_v` whose list is exactly the planted `L₀(v)`; the copy is then not
//! colourable, whatever the other lists are.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{blow_up, Graph};
use crate::lists::ListAssignment;
use crate::solver::{exact_graph_colouring, DEFAULT_EXACT_CAP};

#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub g0: Graph,
    pub planted: ListAssignment,
    pub d: usize,
    /// `classes[c][v]` is `A_v` in copy `c`.
    pub classes: Vec<Vec<Vec<u32>>>,
    pub copies: usize,
    pub n: usize,
    pub delta: usize,
}

impl GadgetInstance {
    /// Vertices of one copy of the blow-up.
    pub fn copy_order(&self) -> usize {
        self.d * self.g0.n()
    }

    pub fn k(&self) -> usize {
        self.planted.k()
    }
}

/// Builds `⌊n/Δ⌋` disjoint copies of the `d`-blow-up of `g0` followed by
/// isolated filler up to `n` vertices. Copy `c` occupies the block starting at
/// `c·d·|V(g0)|` and, within it, vertex `v·d + j` is the `j`-th member of `A_v`.
pub fn build_gadget(
    g0: &Graph,
    l0: &ListAssignment,
    d: usize,
    n: usize,
    delta: usize,
) -> Result<GadgetInstance> {
    if l0.n() != g0.n() {
        return Err(Error::SizeMismatch {
            graph: g0.n(),
            lists: l0.n(),
        });
    }
    if g0.n() == 0 {
        return Err(Error::invalid("base graph needs at least one vertex"));
    }
    if delta == 0 || n / delta == 0 {
        return Err(Error::invalid(format!(
            "need at least one copy, but floor(n/delta) = 0 for n={n}, delta={delta}"
        )));
    }
    let block = d * g0.n();
    if block > delta {
        return Err(Error::invalid(format!(
            "blow-up has {block} vertices, over the budget delta = {delta}"
        )));
    }
    if let Some(colouring) = exact_graph_colouring(g0, l0, DEFAULT_EXACT_CAP)? {
        return Err(Error::BaseColourable { colouring });
    }

    let copies = n / delta;
    let mut edges = Vec::new();
    let mut classes = Vec::with_capacity(copies);
    if d > 0 {
        let g1 = blow_up(g0, d)?.graph;
        for c in 0..copies {
            let offset = (c * block) as u32;
            edges.extend(g1.edges().map(|(u, v)| (u + offset, v + offset)));
        }
    }
    for c in 0..copies {
        let offset = c * block;
        classes.push(
            (0..g0.n())
                .map(|v| (0..d).map(|j| (offset + v * d + j) as u32).collect())
                .collect(),
        );
    }
    Ok(GadgetInstance {
        graph: Graph::from_edges(n, edges)?,
        g0: g0.clone(),
        planted: l0.clone(),
        d,
        classes,
        copies,
        n,
        delta,
    })
}

/// Does some copy carry every planted list in the matching class?
///
/// # Panics
/// If `l` covers fewer vertices than the instance.
pub fn has_bad_copy(inst: &GadgetInstance, l: &ListAssignment) -> bool {
    assert!(
        l.n() >= inst.graph.n(),
        "list assignment does not cover the gadget"
    );
    inst.classes.iter().any(|copy| {
        copy.iter().enumerate().all(|(v, class)| {
            class
                .iter()
                .any(|&x| l.list(x) == inst.planted.list(v as u32))
        })
    })
}

/// Serialised gadget description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetSpec {
    /// Order of the base graph.
    pub base_n: usize,
    pub base_edges: Vec<(u32, u32)>,
    /// One planted list per base vertex, colours from 1.
    pub planted: Vec<Vec<u32>>,
    pub d: usize,
    pub n: usize,
    pub delta: usize,
}

impl GadgetSpec {
    pub fn build(&self) -> Result<GadgetInstance> {
        let g0 = Graph::from_edges(self.base_n, self.base_edges.iter().copied())?;
        let k = self.planted.first().map_or(0, Vec::len);
        let m = self.planted.iter().flatten().copied().max().unwrap_or(1);
        let l0 = ListAssignment::from_lists(k, m, &self.planted)?;
        build_gadget(&g0, &l0, self.d, self.n, self.delta)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
