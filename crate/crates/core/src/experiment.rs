//! Seeded Monte Carlo experiments over random list assignments.
//!
//! Trial `t` of a run with master seed `s` draws its lists from
//! `Seed::trial(s, t)` alone, and results are folded in trial order, so every
//! record is reproducible regardless of the number of workers.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    gadget_probability, log_component_tail_bound, threshold_general, GadgetProbability,
    GeneralThreshold, ThresholdQuery,
};
use crate::dangerous::dangerous_subgraph;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gadget::{has_bad_copy, GadgetInstance, GadgetSpec};
use crate::graph::{
    complete, complete_bipartite, complete_multipartite, cycle, cycle_power, disjoint_cliques,
    path, petersen, Graph,
};
use crate::io::{parse_dimacs, parse_graph6};
use crate::lists::{sample_assignment, ListAssignment};
use crate::rng::Seed;
use crate::solver::{
    solve_dangerous, validate_witness, witness_from_solution, SolverConfig, Witness, WitnessReport,
};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).clamp(0.0, p), (centre + half).clamp(p, 1.0))
}

/// Where a graph came from, as written on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GraphSpec {
    /// `cyclepow:n:r`, the `r`-th power of `C_n`.
    CyclePow {
        n: usize,
        r: usize,
    },
    /// `cliques:n:delta`, disjoint `K_{delta+1}` plus isolated vertices.
    Cliques {
        n: usize,
        delta: usize,
    },
    /// `multipartite:s:r`, `r` parts of size `s`.
    Multipartite {
        s: usize,
        r: usize,
    },
    /// `file:path`, a DIMACS-like edge list.
    File(PathBuf),
    /// `gadget:path`, a JSON gadget description.
    Gadget(PathBuf),
    /// `complete:n`.
    Complete(usize),
    /// `cycle:n`.
    Cycle(usize),
    /// `path:n`.
    Path(usize),
    /// `bipartite:a:b`.
    Bipartite {
        a: usize,
        b: usize,
    },
    Petersen,
    /// `graph6:<string>`.
    Graph6(String),
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::CyclePow { n, r } => write!(f, "cyclepow:{n}:{r}"),
            GraphSpec::Cliques { n, delta } => write!(f, "cliques:{n}:{delta}"),
            GraphSpec::Multipartite { s, r } => write!(f, "multipartite:{s}:{r}"),
            GraphSpec::File(p) => write!(f, "file:{}", p.display()),
            GraphSpec::Gadget(p) => write!(f, "gadget:{}", p.display()),
            GraphSpec::Complete(n) => write!(f, "complete:{n}"),
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Bipartite { a, b } => write!(f, "bipartite:{a}:{b}"),
            GraphSpec::Petersen => write!(f, "petersen"),
            GraphSpec::Graph6(s) => write!(f, "graph6:{s}"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let nums = || -> Result<Vec<usize>> {
            rest.split(':')
                .map(|x| {
                    x.parse::<usize>().map_err(|_| {
                        Error::invalid(format!("graph spec `{s}`: `{x}` is not a count"))
                    })
                })
                .collect()
        };
        let arity = |want: usize| -> Result<Vec<usize>> {
            let v = nums()?;
            if v.len() != want {
                return Err(Error::invalid(format!(
                    "graph spec `{s}` needs {want} numbers"
                )));
            }
            Ok(v)
        };
        Ok(match kind {
            "cyclepow" => {
                let v = arity(2)?;
                GraphSpec::CyclePow { n: v[0], r: v[1] }
            }
            "cliques" => {
                let v = arity(2)?;
                GraphSpec::Cliques {
                    n: v[0],
                    delta: v[1],
                }
            }
            "multipartite" => {
                let v = arity(2)?;
                GraphSpec::Multipartite { s: v[0], r: v[1] }
            }
            "bipartite" => {
                let v = arity(2)?;
                GraphSpec::Bipartite { a: v[0], b: v[1] }
            }
            "complete" => GraphSpec::Complete(arity(1)?[0]),
            "cycle" => GraphSpec::Cycle(arity(1)?[0]),
            "path" => GraphSpec::Path(arity(1)?[0]),
            "petersen" if rest.is_empty() => GraphSpec::Petersen,
            "file" if !rest.is_empty() => GraphSpec::File(PathBuf::from(rest)),
            "gadget" if !rest.is_empty() => GraphSpec::Gadget(PathBuf::from(rest)),
            "graph6" if !rest.is_empty() => GraphSpec::Graph6(rest.to_string()),
            _ => return Err(Error::invalid(format!("unknown graph spec `{s}`"))),
        })
    }
}

impl From<GraphSpec> for String {
    fn from(spec: GraphSpec) -> String {
        spec.to_string()
    }
}

impl TryFrom<String> for GraphSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A graph ready for experiments.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub label: String,
    pub graph: Graph,
    pub gadget: Option<GadgetInstance>,
}

impl GraphSpec {
    pub fn load(&self) -> Result<LoadedGraph> {
        let mut gadget = None;
        let graph = match self {
            GraphSpec::CyclePow { n, r } => cycle_power(*n, *r)?,
            GraphSpec::Cliques { n, delta } => disjoint_cliques(*n, *delta)?,
            GraphSpec::Multipartite { s, r } => complete_multipartite(*s, *r)?,
            GraphSpec::File(p) => parse_dimacs(&std::fs::read_to_string(p)?)?,
            GraphSpec::Gadget(p) => {
                let inst = GadgetSpec::from_json(&std::fs::read_to_string(p)?)?.build()?;
                let g = inst.graph.clone();
                gadget = Some(inst);
                g
            }
            GraphSpec::Complete(n) => complete(*n),
            GraphSpec::Cycle(n) => cycle(*n)?,
            GraphSpec::Path(n) => path(*n),
            GraphSpec::Bipartite { a, b } => complete_bipartite(*a, *b),
            GraphSpec::Petersen => petersen(),
            GraphSpec::Graph6(s) => parse_graph6(s)?,
        };
        Ok(LoadedGraph {
            label: self.to_string(),
            graph,
            gadget,
        })
    }
}

/// Parameters shared by the Monte Carlo experiments.
#[derive(Debug, Clone, Copy)]
pub struct McOptions {
    pub k: usize,
    pub m: u32,
    pub trials: u64,
    pub seed: u64,
    pub solver: SolverConfig,
    pub exec: Execution,
    /// Extract and validate a minimal witness for every non-colourable trial.
    pub witnesses: bool,
}

impl McOptions {
    pub fn new(k: usize, m: u32, trials: u64, seed: u64) -> Self {
        McOptions {
            k,
            m,
            trials,
            seed,
            solver: SolverConfig::default(),
            exec: Execution::default(),
            witnesses: false,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.k == 0 || self.k as u64 > u64::from(self.m) {
            return Err(Error::invalid(format!(
                "need 1 <= k <= m (got k={}, m={})",
                self.k, self.m
            )));
        }
        if n == 0 {
            return Err(Error::invalid("graph has no vertices"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub graph: String,
    pub n: usize,
    pub delta: u32,
    pub k: usize,
    pub m: u32,
    pub trials: u64,
    pub successes: u64,
    /// `successes / (trials - errors)`.
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    /// Median over trials of the largest dangerous component.
    pub max_comp_p50: usize,
    pub max_comp_max: usize,
    /// Trials where the solver hit its cap; excluded from `p_hat`.
    pub errors: u64,
}

pub const CSV_HEADER: &str =
    "graph,n,delta,k,m,trials,successes,p_hat,ci_low,ci_high,seed,max_comp_p50,max_comp_max,errors";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl EstimateRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{},{},{},{}",
            csv_field(&self.graph),
            self.n,
            self.delta,
            self.k,
            self.m,
            self.trials,
            self.successes,
            self.p_hat,
            self.ci_low,
            self.ci_high,
            self.seed,
            self.max_comp_p50,
            self.max_comp_max,
            self.errors
        )
    }

    /// Trials that produced a verdict.
    pub fn decided(&self) -> u64 {
        self.trials - self.errors
    }
}

pub fn to_csv(records: &[EstimateRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// A witness from one trial together with its independent re-check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialWitness {
    pub trial: u64,
    pub witness: Witness,
    pub report: WitnessReport,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub checked: u64,
    pub failed: u64,
    /// Witnesses that failed validation, in trial order.
    pub failures: Vec<TrialWitness>,
}

#[derive(Debug, Clone)]
pub struct McResult {
    pub record: EstimateRecord,
    /// Per-trial verdict; `None` for trials that hit the solver cap.
    pub outcomes: Vec<Option<bool>>,
    pub max_components: Vec<usize>,
    pub witnesses: Option<WitnessSummary>,
    /// Every witness, in trial order, when requested.
    pub witness_log: Vec<TrialWitness>,
}

struct Trial {
    verdict: Option<bool>,
    max_component: usize,
    witness: Option<TrialWitness>,
}

fn run_trial(g: &Graph, opts: &McOptions, t: u64) -> Result<Trial> {
    let l = sample_assignment(g.n(), opts.k, opts.m, Seed::trial(opts.seed, t))?;
    let b = dangerous_subgraph(g, &l)?;
    let max_component = b.max_order();
    match solve_dangerous(b, &l, &opts.solver) {
        Ok(solution) => {
            let mut witness = None;
            if opts.witnesses && !solution.is_colourable() {
                if let Some(w) = witness_from_solution(&solution, &l, &opts.solver)? {
                    let report = validate_witness(&w, &l, opts.k);
                    witness = Some(TrialWitness {
                        trial: t,
                        witness: w,
                        report,
                    });
                }
            }
            Ok(Trial {
                verdict: Some(solution.is_colourable()),
                max_component,
                witness,
            })
        }
        Err(e) if e.is_cap_exceeded() => Ok(Trial {
            verdict: None,
            max_component,
            witness: None,
        }),
        Err(e) => Err(e),
    }
}

fn lower_median(values: &[usize]) -> usize {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted
        .get(sorted.len().saturating_sub(1) / 2)
        .copied()
        .unwrap_or(0)
}

/// Estimates `P(G is L-colourable)` for a random `(k, m)`-list-assignment.
pub fn mc_colourable(g: &Graph, label: &str, opts: &McOptions) -> Result<McResult> {
    opts.validate(g.n())?;
    let trials = opts
        .exec
        .map(opts.trials as usize, |t| run_trial(g, opts, t as u64));
    let mut outcomes = Vec::with_capacity(trials.len());
    let mut max_components = Vec::with_capacity(trials.len());
    let mut summary = opts.witnesses.then(WitnessSummary::default);
    let mut witness_log = Vec::new();
    for trial in trials {
        let trial = trial?;
        outcomes.push(trial.verdict);
        max_components.push(trial.max_component);
        if let (Some(summary), Some(w)) = (summary.as_mut(), trial.witness) {
            summary.checked += 1;
            if !w.report.passed() {
                summary.failed += 1;
                summary.failures.push(w.clone());
            }
            witness_log.push(w);
        }
    }
    let successes = outcomes.iter().filter(|o| **o == Some(true)).count() as u64;
    let errors = outcomes.iter().filter(|o| o.is_none()).count() as u64;
    let decided = opts.trials - errors;
    let (ci_low, ci_high) = wilson_interval(successes, decided, Z_95);
    let record = EstimateRecord {
        graph: label.to_string(),
        n: g.n(),
        delta: g.max_degree(),
        k: opts.k,
        m: opts.m,
        trials: opts.trials,
        successes,
        p_hat: if decided == 0 {
            0.0
        } else {
            successes as f64 / decided as f64
        },
        ci_low,
        ci_high,
        seed: opts.seed,
        max_comp_p50: lower_median(&max_components),
        max_comp_max: max_components.iter().copied().max().unwrap_or(0),
        errors,
    };
    Ok(McResult {
        record,
        outcomes,
        max_components,
        witnesses: summary,
        witness_log,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<EstimateRecord>,
    /// `None` when the graph has no valid `(n, Δ)` query, e.g. `Δ = 0`.
    pub thresholds: Option<GeneralThreshold>,
    #[serde(skip)]
    pub witnesses: Vec<WitnessSummary>,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        to_csv(&self.rows)
    }
}

/// One [`mc_colourable`] row per palette size, all with the same master seed.
pub fn sweep(g: &Graph, label: &str, m_values: &[u32], opts: &McOptions) -> Result<SweepResult> {
    if m_values.is_empty() {
        return Err(Error::invalid("sweep needs at least one palette size"));
    }
    if m_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("palette sizes must be strictly ascending"));
    }
    let mut rows = Vec::with_capacity(m_values.len());
    let mut witnesses = Vec::new();
    for &m in m_values {
        let result = mc_colourable(g, label, &McOptions { m, ..*opts })?;
        rows.push(result.record);
        witnesses.extend(result.witnesses);
    }
    let q = ThresholdQuery::new(g.n() as f64, f64::from(g.max_degree()), opts.k as u32);
    Ok(SweepResult {
        rows,
        thresholds: threshold_general(&q).ok(),
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub graph: String,
    pub n: usize,
    pub delta: u32,
    pub k: usize,
    pub m: u32,
    pub trials: u64,
    pub seed: u64,
    pub max_orders: Vec<usize>,
    pub p50: usize,
    pub p90: usize,
    pub p99: usize,
    pub max: usize,
    /// `20 log n`.
    pub order_threshold: f64,
    pub trials_exceeding: u64,
    /// Union bound `n (eΔ)^a (k²/m)^a` at `a = 20 log n`, and its log.
    pub tail_bound: f64,
    pub log_tail_bound: f64,
}

fn quantile(sorted: &[usize], q: f64) -> usize {
    if sorted.is_empty() {
        return 0;
    }
    let idx = ((sorted.len() as f64 * q).ceil() as usize).clamp(1, sorted.len()) - 1;
    sorted[idx]
}

/// Distribution of the largest dangerous component over random assignments.
pub fn component_experiment(g: &Graph, label: &str, opts: &McOptions) -> Result<ComponentReport> {
    opts.validate(g.n())?;
    let max_orders: Vec<usize> = opts
        .exec
        .map(opts.trials as usize, |t| -> Result<usize> {
            let l = sample_assignment(g.n(), opts.k, opts.m, Seed::trial(opts.seed, t as u64))?;
            Ok(dangerous_subgraph(g, &l)?.max_order())
        })
        .into_iter()
        .collect::<Result<_>>()?;
    let mut sorted = max_orders.clone();
    sorted.sort_unstable();
    let n = g.n() as f64;
    let order_threshold = 20.0 * n.ln();
    let delta = f64::from(g.max_degree().max(1));
    let log_tail_bound =
        log_component_tail_bound(n, delta, opts.k as u32, f64::from(opts.m), order_threshold)?;
    Ok(ComponentReport {
        graph: label.to_string(),
        n: g.n(),
        delta: g.max_degree(),
        k: opts.k,
        m: opts.m,
        trials: opts.trials,
        seed: opts.seed,
        p50: quantile(&sorted, 0.5),
        p90: quantile(&sorted, 0.9),
        p99: quantile(&sorted, 0.99),
        max: sorted.last().copied().unwrap_or(0),
        trials_exceeding: max_orders
            .iter()
            .filter(|&&o| o as f64 > order_threshold)
            .count() as u64,
        max_orders,
        order_threshold,
        tail_bound: log_tail_bound.exp(),
        log_tail_bound,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GadgetReport {
    pub n: usize,
    pub delta: usize,
    pub d: usize,
    pub copies: usize,
    pub k: usize,
    pub m: u32,
    pub trials: u64,
    pub seed: u64,
    pub bad: u64,
    pub colourable: u64,
    pub errors: u64,
    pub p_hat_bad: f64,
    pub p_hat_colourable: f64,
    pub exact: GadgetProbability,
    /// Binomial standard deviation of `p_hat_bad` under the exact probability.
    pub sigma_bad: f64,
    pub bad_within_3_sigma: bool,
    /// `p_hat_colourable <= colourable_upper + 3σ`.
    pub colourable_within_bound: bool,
    /// Trials with a bad copy that were nevertheless colourable; always 0 when correct.
    pub bad_but_colourable: u64,
}

/// Estimates the bad-copy and colourability probabilities of a gadget.
pub fn gadget_experiment(
    inst: &GadgetInstance,
    m: u32,
    trials: u64,
    seed: u64,
    exec: Execution,
) -> Result<GadgetReport> {
    let k = inst.k();
    let opts = McOptions {
        exec,
        ..McOptions::new(k, m, trials, seed)
    };
    opts.validate(inst.graph.n())?;
    let exact = gadget_probability(
        inst.n as u64,
        inst.delta as u64,
        k as u64,
        u64::from(m),
        inst.d as u64,
        inst.g0.n() as u64,
    )?;
    let outcomes = exec.map(trials as usize, |t| -> Result<(bool, Option<bool>)> {
        let l: ListAssignment =
            sample_assignment(inst.graph.n(), k, m, Seed::trial(seed, t as u64))?;
        let bad = has_bad_copy(inst, &l);
        let b = dangerous_subgraph(&inst.graph, &l)?;
        let verdict = match solve_dangerous(b, &l, &opts.solver) {
            Ok(s) => Some(s.is_colourable()),
            Err(e) if e.is_cap_exceeded() => None,
            Err(e) => return Err(e),
        };
        Ok((bad, verdict))
    });
    let (mut bad, mut colourable, mut errors, mut bad_but_colourable) = (0, 0, 0, 0);
    for outcome in outcomes {
        let (is_bad, verdict) = outcome?;
        bad += u64::from(is_bad);
        match verdict {
            Some(true) => {
                colourable += 1;
                bad_but_colourable += u64::from(is_bad);
            }
            Some(false) => {}
            None => errors += 1,
        }
    }
    let t = trials as f64;
    let p_hat_bad = bad as f64 / t;
    let decided = (trials - errors) as f64;
    let p_hat_colourable = if decided > 0.0 {
        colourable as f64 / decided
    } else {
        0.0
    };
    let p = exact.p_bad_exists;
    let sigma_bad = (p * (1.0 - p) / t).sqrt();
    let u = exact.colourable_upper;
    let sigma_col = (u * (1.0 - u) / decided.max(1.0)).sqrt();
    Ok(GadgetReport {
        n: inst.n,
        delta: inst.delta,
        d: inst.d,
        copies: inst.copies,
        k,
        m,
        trials,
        seed,
        bad,
        colourable,
        errors,
        p_hat_bad,
        p_hat_colourable,
        bad_within_3_sigma: (p_hat_bad - p).abs() <= 3.0 * sigma_bad,
        colourable_within_bound: p_hat_colourable <= u + 3.0 * sigma_col,
        sigma_bad,
        exact,
        bad_but_colourable,
    })
}
