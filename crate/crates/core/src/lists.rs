//! Random `(k, m)`-list-assignments.
//!
//! Every vertex independently receives a uniform `k`-subset of `{1..m}`,
//! drawn by a partial Fisher–Yates shuffle of `1..=m` whose swaps are undone
//! after each draw, so each subset is a function of the generator alone.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{Seed, SplitMix64};

/// Per-vertex sorted lists of exactly `k` distinct colours from `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    k: usize,
    m: u32,
    /// Row-major, `k` colours per vertex.
    colours: Vec<u32>,
}

impl ListAssignment {
    /// Builds an assignment from explicit lists. Lists are sorted; they must
    /// all have size `k`, be duplicate-free and lie in `1..=m`.
    pub fn from_lists<I, L>(k: usize, m: u32, lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: AsRef<[u32]>,
    {
        if k == 0 {
            return Err(Error::invalid("list size k must be at least 1"));
        }
        let mut colours = Vec::new();
        for (v, list) in lists.into_iter().enumerate() {
            let mut list = list.as_ref().to_vec();
            list.sort_unstable();
            if list.len() != k {
                return Err(Error::invalid(format!(
                    "list of vertex {v} has {} colours, expected {k}",
                    list.len()
                )));
            }
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!(
                    "list of vertex {v} repeats a colour"
                )));
            }
            if list[0] < 1 || list[k - 1] > m {
                return Err(Error::invalid(format!("list of vertex {v} leaves 1..={m}")));
            }
            colours.extend(list);
        }
        Ok(ListAssignment { k, m, colours })
    }

    /// Every vertex gets the same list.
    pub fn uniform(n: usize, m: u32, list: &[u32]) -> Result<Self> {
        Self::from_lists(list.len(), m, std::iter::repeat_n(list, n))
    }

    pub fn n(&self) -> usize {
        self.colours.len() / self.k
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn list(&self, v: u32) -> &[u32] {
        let start = v as usize * self.k;
        &self.colours[start..start + self.k]
    }

    pub fn lists(&self) -> impl Iterator<Item = &[u32]> {
        self.colours.chunks_exact(self.k)
    }

    /// Replaces one vertex's list.
    pub fn with_list(mut self, v: u32, list: &[u32]) -> Result<Self> {
        let mut lists: Vec<Vec<u32>> = self.lists().map(<[u32]>::to_vec).collect();
        lists[v as usize] = list.to_vec();
        self = Self::from_lists(self.k, self.m, lists)?;
        Ok(self)
    }

    /// `L(U)`: sorted union of the lists of `vertices`.
    pub fn union_of(&self, vertices: &[u32]) -> Vec<u32> {
        let mut all: Vec<u32> = vertices
            .iter()
            .flat_map(|&v| self.list(v))
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// One line per vertex: `v: c1 c2 ... ck`.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for (v, list) in self.lists().enumerate() {
            let _ = write!(out, "{v}:");
            for c in list {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the dump format. Vertices must appear in order `0, 1, …`.
    /// The palette size is `m` when given, else the largest colour present.
    pub fn from_dump(text: &str, m: Option<u32>) -> Result<Self> {
        let mut lists = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let (v, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(lineno, "expected `v: c1 ... ck`"))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::parse(lineno, "vertex is not an integer"))?;
            if v != lists.len() {
                return Err(Error::parse(
                    lineno,
                    format!("expected vertex {}, found {v}", lists.len()),
                ));
            }
            let list = rest
                .split_whitespace()
                .map(|c| c.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(lineno, "colour is not an integer"))?;
            lists.push(list);
        }
        let k = lists
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::parse(1, "empty list assignment"))?;
        let m = m.unwrap_or_else(|| lists.iter().flatten().copied().max().unwrap_or(0));
        Self::from_lists(k, m, &lists).map_err(|e| Error::parse(0, e.to_string()))
    }
}

fn check_km(k: usize, m: u32) -> Result<()> {
    if k == 0 || k as u64 > u64::from(m) {
        return Err(Error::invalid(format!(
            "need 1 <= k <= m, got k = {k}, m = {m}"
        )));
    }
    Ok(())
}

/// Reusable uniform `k`-subset sampler over `1..=m`.
#[derive(Debug, Clone)]
pub struct SubsetSampler {
    k: usize,
    pool: Vec<u32>,
    swaps: Vec<usize>,
}

impl SubsetSampler {
    pub fn new(k: usize, m: u32) -> Result<Self> {
        check_km(k, m)?;
        Ok(SubsetSampler {
            k,
            pool: (1..=m).collect(),
            swaps: Vec::with_capacity(k),
        })
    }

    /// Appends a sorted uniform `k`-subset to `out`.
    pub fn sample_into(&mut self, rng: &mut SplitMix64, out: &mut Vec<u32>) {
        let m = self.pool.len();
        self.swaps.clear();
        for i in 0..self.k {
            let j = i + rng.below((m - i) as u64) as usize;
            self.pool.swap(i, j);
            self.swaps.push(j);
        }
        let start = out.len();
        out.extend_from_slice(&self.pool[..self.k]);
        out[start..].sort_unstable();
        for (i, &j) in self.swaps.iter().enumerate().rev() {
            self.pool.swap(i, j);
        }
    }
}

/// One uniform sorted `k`-subset of `1..=m`.
pub fn sample_k_subset(k: usize, m: u32, rng: &mut SplitMix64) -> Result<Vec<u32>> {
    let mut sampler = SubsetSampler::new(k, m)?;
    let mut out = Vec::with_capacity(k);
    sampler.sample_into(rng, &mut out);
    Ok(out)
}

/// `n` independent uniform `k`-subsets of `1..=m`, reproducible from `seed`.
pub fn sample_assignment(n: usize, k: usize, m: u32, seed: Seed) -> Result<ListAssignment> {
    if n == 0 {
        return Err(Error::invalid("list assignment needs at least one vertex"));
    }
    let mut sampler = SubsetSampler::new(k, m)?;
    let mut rng = seed.rng();
    let mut colours = Vec::with_capacity(n * k);
    for _ in 0..n {
        sampler.sample_into(&mut rng, &mut colours);
    }
    Ok(ListAssignment { k, m, colours })
}

/// Do two sorted lists share a colour?
#[inline]
pub fn intersects(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}
