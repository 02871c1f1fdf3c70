//! Closed-form thresholds and bounds, evaluated numerically.
//!
//! Logarithms are natural throughout. Formulas with unknown asymptotic
//! constants are evaluated with every constant set to 1 and flagged
//! `order-only`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdQuery {
    pub n: f64,
    pub delta: f64,
    pub k: u32,
    #[serde(default)]
    pub m: Option<f64>,
    #[serde(default)]
    pub g: Option<u32>,
}

impl ThresholdQuery {
    pub fn new(n: f64, delta: f64, k: u32) -> Self {
        ThresholdQuery {
            n,
            delta,
            k,
            m: None,
            g: None,
        }
    }

    pub fn with_g(mut self, g: u32) -> Self {
        self.g = Some(g);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n.is_nan() || self.n < 1.0 {
            return Err(Error::OutOfDomain(format!(
                "n = {} must be at least 1",
                self.n
            )));
        }
        if !(self.delta >= 1.0 && self.delta < self.n) {
            return Err(Error::OutOfDomain(format!(
                "delta = {} must satisfy 1 <= delta < n = {}",
                self.delta, self.n
            )));
        }
        if self.k == 0 {
            return Err(Error::OutOfDomain("k must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralThreshold {
    /// `n^{1/k²} Δ^{1/k}`.
    pub m_growth: f64,
    /// `3k²Δ`.
    pub m_floor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HFreeThreshold {
    /// Sufficient growth `n^{2/(k(g+1))} Δ^{2g/(k(g+1))}`.
    pub upper_growth: f64,
    /// Growth below which the blow-up construction fails a.a.s.:
    /// `n^{1/(k(g+1))} Δ^{g/(k(g+1))}`.
    pub lower_growth: f64,
    pub m_floor: f64,
}

fn m_floor(k: u32, delta: f64) -> f64 {
    3.0 * f64::from(k * k) * delta
}

pub fn threshold_general(q: &ThresholdQuery) -> Result<GeneralThreshold> {
    q.validate()?;
    let k = f64::from(q.k);
    Ok(GeneralThreshold {
        m_growth: (q.n.ln() / (k * k) + q.delta.ln() / k).exp(),
        m_floor: m_floor(q.k, q.delta),
    })
}

pub fn threshold_hfree(q: &ThresholdQuery) -> Result<HFreeThreshold> {
    q.validate()?;
    let g = match q.g {
        Some(g) if g >= 1 => f64::from(g),
        _ => return Err(Error::OutOfDomain("threshold_hfree needs g >= 1".into())),
    };
    let denom = f64::from(q.k) * (g + 1.0);
    let log_lower = (q.n.ln() + g * q.delta.ln()) / denom;
    Ok(HFreeThreshold {
        upper_growth: (2.0 * log_lower).exp(),
        lower_growth: log_lower.exp(),
        m_floor: m_floor(q.k, q.delta),
    })
}

/// Natural log of `n (eΔ)^a (k²/m)^a`.
pub fn log_component_tail_bound(n: f64, delta: f64, k: u32, m: f64, a: f64) -> Result<f64> {
    if !(n > 0.0 && delta > 0.0 && m >= 1.0 && a >= 0.0) || k == 0 {
        return Err(Error::OutOfDomain(format!(
            "tail bound needs n, delta > 0, k >= 1, m >= 1, a >= 0 (got n={n}, delta={delta}, k={k}, m={m}, a={a})"
        )));
    }
    if a == 0.0 {
        return Ok(n.ln());
    }
    let k = f64::from(k);
    Ok(n.ln() + a * (1.0 + delta.ln() + 2.0 * k.ln() - m.ln()))
}

/// Union bound `n (eΔ)^a (k²/m)^a` on a dangerous component of order above `a`.
pub fn component_tail_bound(n: f64, delta: f64, k: u32, m: f64, a: f64) -> Result<f64> {
    let log = log_component_tail_bound(n, delta, k, m, a)?;
    Ok(n * (log - n.ln()).exp())
}

/// Exact form of [`GadgetProbability`], present when the rationals stay small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactGadgetProbability {
    pub q_copy: BigRational,
    pub p_bad_exists: BigRational,
    pub colourable_upper: BigRational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GadgetProbability {
    /// Probability that one copy is bad.
    pub q_copy: f64,
    /// Probability that at least one copy is bad.
    pub p_bad_exists: f64,
    /// Upper bound on the probability of colourability: no copy is bad.
    pub colourable_upper: f64,
    pub copies: u64,
    /// `C(m, k)`, when it fits in 128 bits.
    pub subsets: Option<u128>,
    #[serde(skip)]
    pub exact: Option<ExactGadgetProbability>,
}

/// Largest `C(m, k)` handled in exact rational arithmetic.
pub const EXACT_SUBSET_LIMIT: u128 = 1_000_000;
/// Largest total exponent `d · |V(G₀)| · copies` handled exactly.
pub const EXACT_EXPONENT_LIMIT: u64 = 20_000;

pub fn binomial(m: u64, k: u64) -> Option<u128> {
    if k > m {
        return Some(0);
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(m - i))? / u128::from(i + 1);
    }
    Some(acc)
}

fn ln_binomial(m: u64, k: u64) -> f64 {
    let k = k.min(m - k);
    (0..k)
        .map(|i| ((m - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    // Shift both sides down to 1000 bits before dividing.
    let shift = |x: &BigInt| x.bits().saturating_sub(1000);
    let (num, den) = (r.numer(), r.denom());
    let s = shift(num).max(shift(den));
    let num = (num >> s).to_f64().unwrap_or(0.0);
    let den = (den >> s).to_f64().unwrap_or(f64::INFINITY);
    num / den
}

/// Probability that the planted lists appear on some blow-up copy.
pub fn gadget_probability(
    n: u64,
    delta: u64,
    k: u64,
    m: u64,
    d: u64,
    order_g0: u64,
) -> Result<GadgetProbability> {
    if k == 0 || k > m {
        return Err(Error::OutOfDomain(format!(
            "need 1 <= k <= m (got k={k}, m={m})"
        )));
    }
    if delta == 0 || n / delta == 0 {
        return Err(Error::OutOfDomain(format!(
            "need at least one copy: floor(n/delta) with n={n}, delta={delta}"
        )));
    }
    if order_g0 == 0 {
        return Err(Error::OutOfDomain(
            "base graph needs at least one vertex".into(),
        ));
    }
    let copies = n / delta;
    let subsets = binomial(m, k);
    let exponent = d.saturating_mul(order_g0).saturating_mul(copies);

    if let Some(c) =
        subsets.filter(|&c| c <= EXACT_SUBSET_LIMIT && exponent <= EXACT_EXPONENT_LIMIT)
    {
        let one = BigRational::one();
        let miss = &one - BigRational::new(BigInt::one(), BigInt::from(c));
        let class_hit = &one - pow(&miss, d);
        let q_copy = pow(&class_hit, order_g0);
        let colourable_upper = pow(&(&one - &q_copy), copies);
        let p_bad_exists = &one - &colourable_upper;
        return Ok(GadgetProbability {
            q_copy: rational_to_f64(&q_copy),
            p_bad_exists: rational_to_f64(&p_bad_exists),
            colourable_upper: rational_to_f64(&colourable_upper),
            copies,
            subsets,
            exact: Some(ExactGadgetProbability {
                q_copy,
                p_bad_exists,
                colourable_upper,
            }),
        });
    }

    let q_copy = if d == 0 {
        0.0
    } else {
        let inv = (-ln_binomial(m, k)).exp();
        let log_miss = d as f64 * (-inv).ln_1p();
        (order_g0 as f64 * (-log_miss.exp_m1()).ln()).exp()
    };
    let log_none = copies as f64 * (-q_copy).ln_1p();
    Ok(GadgetProbability {
        q_copy,
        p_bad_exists: -log_none.exp_m1(),
        colourable_upper: log_none.exp(),
        copies,
        subsets,
        exact: None,
    })
}

fn pow(base: &BigRational, exp: u64) -> BigRational {
    let mut result = BigRational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnionTermRatio {
    /// `f(i+1)/f(i) = eΔk^k(i+1)^k((i+1)/i)^{ki} / m^{k/2}`.
    pub exact_ratio: f64,
    /// `e^{k+1}k^kΔ(i+1)^k / m^{k/2}`, using `((i+1)/i)^{ki} <= e^k`.
    pub upper: f64,
}

/// Natural log of `f(i) = n (eΔ)^{i-1} (ki)^{ki} m^{-ik/2}`.
pub fn log_union_term(n: f64, delta: f64, k: u32, m: f64, i: u32) -> f64 {
    let (k, i) = (f64::from(k), f64::from(i));
    n.ln() + (i - 1.0) * (1.0 + delta.ln()) + k * i * (k * i).ln() - i * k / 2.0 * m.ln()
}

/// Ratio of consecutive terms of the union bound over minimal non-colourable sets.
pub fn union_term_ratio(delta: f64, k: u32, m: f64, i: u32) -> Result<UnionTermRatio> {
    if i == 0 || k == 0 || !(delta > 0.0 && m >= 1.0) {
        return Err(Error::OutOfDomain(format!(
            "need i >= 1, k >= 1, delta > 0, m >= 1 (got i={i}, k={k}, delta={delta}, m={m})"
        )));
    }
    let (kf, fi) = (f64::from(k), f64::from(i));
    let common = delta.ln() + kf * kf.ln() + kf * (fi + 1.0).ln() - kf / 2.0 * m.ln();
    let exact = 1.0 + common + kf * fi * (1.0 / fi).ln_1p();
    let upper = kf + 1.0 + common;
    Ok(UnionTermRatio {
        exact_ratio: exact.exp(),
        upper: upper.exp(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralQuery {
    pub s: f64,
    pub n: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralCheck {
    /// `∫_s^n x^{-α} (log x)^{-β} dx`.
    pub quadrature_value: f64,
    /// `(1 - α - β/log s)^{-1} n^{1-α} (log n)^{-β}`.
    pub closed_form: f64,
    pub holds: bool,
}

pub const DEFAULT_QUADRATURE_TOLERANCE: f64 = 1e-6;

/// Adaptive Simpson on `[a, b]` to relative tolerance `rel_tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // Seed the tolerance from a coarse composite estimate so it is relative.
    let coarse: f64 = {
        let steps = 64;
        let h = (b - a) / steps as f64;
        (0..steps)
            .map(|i| {
                let x0 = a + i as f64 * h;
                h / 6.0 * (f(x0) + 4.0 * f(x0 + h / 2.0) + f(x0 + h))
            })
            .sum()
    };
    let tol = rel_tol * coarse.abs().max(f64::MIN_POSITIVE);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Checks `∫_s^n x^{-α}(log x)^{-β} dx <= (1 - α - β/log s)^{-1} n^{1-α}(log n)^{-β}`.
///
/// The integral is taken in `t = log x`, where the integrand `e^{(1-α)t} t^{-β}` is smooth.
pub fn integral_bound_check(q: &IntegralQuery) -> Result<IntegralCheck> {
    integral_bound_check_with(q, DEFAULT_QUADRATURE_TOLERANCE)
}

pub fn integral_bound_check_with(q: &IntegralQuery, rel_tol: f64) -> Result<IntegralCheck> {
    let IntegralQuery { s, n, alpha, beta } = *q;
    if !(s >= 2.0 && n >= s && n.is_finite()) {
        return Err(Error::OutOfDomain(format!(
            "need n >= s >= 2 (got s={s}, n={n})"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0 && beta > 0.0) {
        return Err(Error::OutOfDomain(format!(
            "need 0 < alpha < 1 and beta > 0 (got alpha={alpha}, beta={beta})"
        )));
    }
    let gamma = 1.0 - alpha - beta / s.ln();
    if gamma <= 0.0 {
        return Err(Error::BoundInapplicable { gamma });
    }
    let closed_form = ((1.0 - alpha) * n.ln() - beta * n.ln().ln()).exp() / gamma;
    let integrand = |t: f64| ((1.0 - alpha) * t - beta * t.ln()).exp();
    let quadrature_value = adaptive_simpson(integrand, s.ln(), n.ln(), rel_tol);
    Ok(IntegralCheck {
        quadrature_value,
        closed_form,
        holds: quadrature_value <= closed_form,
    })
}

pub const ORDER_ONLY: &str = "order-only";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderValue {
    pub id: String,
    pub params: BTreeMap<String, f64>,
    pub value: f64,
    pub flags: Vec<String>,
}

struct Formula {
    id: &'static str,
    params: &'static [&'static str],
    summary: &'static str,
    eval: fn(&[f64]) -> Result<f64>,
}

fn integer_at_least(name: &str, x: f64, min: f64) -> Result<f64> {
    if x.fract() != 0.0 || x < min {
        return Err(Error::OutOfDomain(format!(
            "{name} = {x} must be an integer >= {min}"
        )));
    }
    Ok(x)
}

fn above(name: &str, x: f64, min: f64) -> Result<f64> {
    if !x.is_finite() || x <= min {
        return Err(Error::OutOfDomain(format!(
            "{name} = {x} must exceed {min}"
        )));
    }
    Ok(x)
}

const FORMULAS: &[Formula] = &[
    Formula {
        id: "R_clique_lower",
        params: &["r", "t"],
        summary: "t^((r+1)/2) / (log t)^((r+1)/2 - 1/(r-2))",
        eval: |p| {
            let (r, t) = (integer_at_least("r", p[0], 3.0)?, above("t", p[1], 1.0)?);
            Ok(t.powf((r + 1.0) / 2.0) / t.ln().powf((r + 1.0) / 2.0 - 1.0 / (r - 2.0)))
        },
    },
    Formula {
        id: "R_clique_upper",
        params: &["r", "t"],
        summary: "t^(r-1) / (log t)^(r-2)",
        eval: |p| {
            let (r, t) = (integer_at_least("r", p[0], 3.0)?, above("t", p[1], 1.0)?);
            Ok(t.powf(r - 1.0) / t.ln().powf(r - 2.0))
        },
    },
    Formula {
        id: "R_odd_cycle_lower",
        params: &["l", "t"],
        summary: "t^(2l/(2l-1)) / (log t)^(2/(2l-1))",
        eval: |p| {
            let (l, t) = (integer_at_least("l", p[0], 2.0)?, above("t", p[1], 1.0)?);
            Ok(t.powf(2.0 * l / (2.0 * l - 1.0)) / t.ln().powf(2.0 / (2.0 * l - 1.0)))
        },
    },
    Formula {
        id: "R_odd_cycle_upper",
        params: &["l", "t"],
        summary: "t^((l+1)/l) / (log t)^(1/l)",
        eval: |p| {
            let (l, t) = (integer_at_least("l", p[0], 2.0)?, above("t", p[1], 1.0)?);
            Ok(t.powf((l + 1.0) / l) / t.ln().powf(1.0 / l))
        },
    },
    Formula {
        id: "R_even_cycle_lower",
        params: &["l", "t"],
        summary: "t^((2l-1)/(2l-2)) / log t",
        eval: |p| {
            let (l, t) = (integer_at_least("l", p[0], 2.0)?, above("t", p[1], 1.0)?);
            Ok(t.powf((2.0 * l - 1.0) / (2.0 * l - 2.0)) / t.ln())
        },
    },
    Formula {
        id: "R_even_cycle_upper",
        params: &["l", "t"],
        summary: "(t / log t)^(l/(l-1))",
        eval: |p| {
            let (l, t) = (integer_at_least("l", p[0], 2.0)?, above("t", p[1], 1.0)?);
            Ok((t / t.ln()).powf(l / (l - 1.0)))
        },
    },
    Formula {
        id: "chi_Kr_free",
        params: &["r", "n"],
        summary: "(n / log n)^((r-2)/(r-1))",
        eval: |p| {
            let (r, n) = (integer_at_least("r", p[0], 3.0)?, above("n", p[1], 1.0)?);
            Ok((n / n.ln()).powf((r - 2.0) / (r - 1.0)))
        },
    },
    Formula {
        id: "chi_odd_cycle_free",
        params: &["l", "n"],
        summary: "(n / log n)^(1/(l+1))",
        eval: |p| {
            let (l, n) = (integer_at_least("l", p[0], 2.0)?, above("n", p[1], 1.0)?);
            Ok((n / n.ln()).powf(1.0 / (l + 1.0)))
        },
    },
    Formula {
        id: "chi_even_cycle_free",
        params: &["l", "n"],
        summary: "n^(1/l) / log n",
        eval: |p| {
            let (l, n) = (integer_at_least("l", p[0], 2.0)?, above("n", p[1], 1.0)?);
            Ok(n.powf(1.0 / l) / n.ln())
        },
    },
    Formula {
        id: "ch_multipartite",
        params: &["r", "m"],
        summary: "r log m, the choice number of the complete r-partite graph with parts of size m",
        eval: |p| {
            let (r, m) = (integer_at_least("r", p[0], 2.0)?, integer_at_least("m", p[1], 2.0)?);
            Ok(r * m.ln())
        },
    },
    Formula {
        id: "g_general_upper",
        params: &["t", "k"],
        summary: "t e^(k/t) for H of chromatic number t+1",
        eval: |p| {
            let (t, k) = (integer_at_least("t", p[0], 2.0)?, integer_at_least("k", p[1], 1.0)?);
            Ok(t * (k / t).exp())
        },
    },
    Formula {
        id: "g_clique_lower",
        params: &["r", "k"],
        summary: "k^((r-1)/(r-2)) (log k)^(-1/(r-2))",
        eval: |p| {
            let (r, k) = (integer_at_least("r", p[0], 3.0)?, integer_at_least("k", p[1], 2.0)?);
            Ok(k.powf((r - 1.0) / (r - 2.0)) * k.ln().powf(-1.0 / (r - 2.0)))
        },
    },
    Formula {
        id: "g_clique_upper",
        params: &["r", "k"],
        summary: "k^((r+1)/(r-1)) (log k)^((r+1)/(r-1) - 2/((r-1)(r-2)))",
        eval: |p| {
            let (r, k) = (integer_at_least("r", p[0], 3.0)?, integer_at_least("k", p[1], 2.0)?);
            let e = (r + 1.0) / (r - 1.0);
            Ok(k.powf(e) * k.ln().powf(e - 2.0 / ((r - 1.0) * (r - 2.0))))
        },
    },
    Formula {
        id: "g_odd_cycle_lower",
        params: &["l", "k"],
        summary: "k^(l+1) (log k)^(-l)",
        eval: |p| {
            let (l, k) = (integer_at_least("l", p[0], 2.0)?, integer_at_least("k", p[1], 2.0)?);
            Ok(k.powf(l + 1.0) * k.ln().powf(-l))
        },
    },
    Formula {
        id: "g_odd_cycle_upper",
        params: &["l", "k"],
        summary: "k^(2l) (log k)^2",
        eval: |p| {
            let (l, k) = (integer_at_least("l", p[0], 2.0)?, integer_at_least("k", p[1], 2.0)?);
            Ok(k.powf(2.0 * l) * k.ln().powi(2))
        },
    },
    Formula {
        id: "g_even_cycle_lower",
        params: &["l", "k"],
        summary: "k^l",
        eval: |p| {
            let (l, k) = (integer_at_least("l", p[0], 2.0)?, integer_at_least("k", p[1], 1.0)?);
            Ok(k.powf(l))
        },
    },
    Formula {
        id: "g_even_cycle_upper",
        params: &["l", "k"],
        summary: "(k log k)^(2l-2)",
        eval: |p| {
            let (l, k) = (integer_at_least("l", p[0], 2.0)?, integer_at_least("k", p[1], 2.0)?);
            Ok((k * k.ln()).powf(2.0 * l - 2.0))
        },
    },
    Formula {
        id: "palette_exponent_clique_free",
        params: &["r", "k"],
        summary: "exponent of n in the palette for K_r-free graphs: k^(-(2r-3)/(r-2)) (log k)^(1/(r-2)); Delta exponent is 2/k",
        eval: |p| {
            let (r, k) = (integer_at_least("r", p[0], 3.0)?, integer_at_least("k", p[1], 2.0)?);
            Ok(k.powf(-(2.0 * r - 3.0) / (r - 2.0)) * k.ln().powf(1.0 / (r - 2.0)))
        },
    },
    Formula {
        id: "palette_exponent_odd_cycle_free",
        params: &["l", "k"],
        summary: "exponent of n in the palette for C_(2l+1)-free graphs: k^(-(l+2)) (log k)^l; Delta exponent is 2/k",
        eval: |p| {
            let (l, k) = (integer_at_least("l", p[0], 2.0)?, integer_at_least("k", p[1], 2.0)?);
            Ok(k.powf(-(l + 2.0)) * k.ln().powf(l))
        },
    },
    Formula {
        id: "palette_exponent_even_cycle_free",
        params: &["l", "k"],
        summary: "exponent of n in the palette for C_(2l)-free graphs: k^(-(l+1)); Delta exponent is 2/k",
        eval: |p| {
            let (l, k) = (integer_at_least("l", p[0], 2.0)?, integer_at_least("k", p[1], 2.0)?);
            Ok(k.powf(-(l + 1.0)))
        },
    },
];

/// `(id, parameter names, description)` for every registered growth formula.
pub fn order_formulas(
) -> impl Iterator<Item = (&'static str, &'static [&'static str], &'static str)> {
    FORMULAS.iter().map(|f| (f.id, f.params, f.summary))
}

/// Evaluates a registered growth formula with all constants set to 1.
pub fn evaluate_order(id: &str, params: &BTreeMap<String, f64>) -> Result<OrderValue> {
    let formula = FORMULAS
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFormula(id.to_string()))?;
    let mut args = Vec::with_capacity(formula.params.len());
    for name in formula.params {
        let value = params
            .get(*name)
            .ok_or_else(|| Error::OutOfDomain(format!("{id} needs parameter {name}")))?;
        args.push(*value);
    }
    if let Some(extra) = params
        .keys()
        .find(|k| !formula.params.contains(&k.as_str()))
    {
        return Err(Error::OutOfDomain(format!(
            "{id} takes no parameter {extra}"
        )));
    }
    let value = (formula.eval)(&args)?;
    Ok(OrderValue {
        id: id.to_string(),
        params: params.clone(),
        value,
        flags: vec![ORDER_ONLY.to_string()],
    })
}

/// Closed forms that carry no hidden constants, evaluated by name.
const CLOSED_FORMS: &[(&str, &[&str])] = &[
    ("threshold_general_growth", &["n", "delta", "k"]),
    ("threshold_floor", &["n", "delta", "k"]),
    ("threshold_hfree_upper", &["n", "delta", "k", "g"]),
    ("threshold_hfree_lower", &["n", "delta", "k", "g"]),
    ("component_tail_bound", &["n", "delta", "k", "m", "a"]),
    ("union_term_ratio", &["delta", "k", "m", "i"]),
    ("union_term_upper", &["delta", "k", "m", "i"]),
    ("gadget_q_copy", &["n", "delta", "k", "m", "d", "order"]),
    ("gadget_p_bad", &["n", "delta", "k", "m", "d", "order"]),
    (
        "gadget_colourable_upper",
        &["n", "delta", "k", "m", "d", "order"],
    ),
    ("integral_quadrature", &["s", "n", "alpha", "beta"]),
    ("integral_closed_form", &["s", "n", "alpha", "beta"]),
];

/// Every id accepted by [`evaluate`], with its parameter names.
pub fn all_formulas() -> impl Iterator<Item = (&'static str, &'static [&'static str])> {
    CLOSED_FORMS
        .iter()
        .copied()
        .chain(FORMULAS.iter().map(|f| (f.id, f.params)))
}

fn count(name: &str, x: f64) -> Result<u64> {
    if x.fract() != 0.0 || x < 0.0 || x > u64::MAX as f64 {
        return Err(Error::OutOfDomain(format!(
            "{name} = {x} must be a non-negative integer"
        )));
    }
    Ok(x as u64)
}

fn small(name: &str, x: f64) -> Result<u32> {
    let v = count(name, x)?;
    u32::try_from(v).map_err(|_| Error::OutOfDomain(format!("{name} = {x} is too large")))
}

/// Evaluates any closed form or registered growth formula by id.
pub fn evaluate(id: &str, params: &BTreeMap<String, f64>) -> Result<OrderValue> {
    let Some((_, names)) = CLOSED_FORMS.iter().find(|(name, _)| *name == id) else {
        return evaluate_order(id, params);
    };
    let mut p = Vec::with_capacity(names.len());
    for name in *names {
        p.push(
            *params
                .get(*name)
                .ok_or_else(|| Error::OutOfDomain(format!("{id} needs parameter {name}")))?,
        );
    }
    if let Some(extra) = params.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(Error::OutOfDomain(format!(
            "{id} takes no parameter {extra}"
        )));
    }
    let value = match id {
        "threshold_general_growth" => {
            threshold_general(&ThresholdQuery::new(p[0], p[1], small("k", p[2])?))?.m_growth
        }
        "threshold_floor" => {
            threshold_general(&ThresholdQuery::new(p[0], p[1], small("k", p[2])?))?.m_floor
        }
        "threshold_hfree_upper" | "threshold_hfree_lower" => {
            let q = ThresholdQuery::new(p[0], p[1], small("k", p[2])?).with_g(small("g", p[3])?);
            let t = threshold_hfree(&q)?;
            if id.ends_with("upper") {
                t.upper_growth
            } else {
                t.lower_growth
            }
        }
        "component_tail_bound" => component_tail_bound(p[0], p[1], small("k", p[2])?, p[3], p[4])?,
        "union_term_ratio" | "union_term_upper" => {
            let r = union_term_ratio(p[0], small("k", p[1])?, p[2], small("i", p[3])?)?;
            if id == "union_term_ratio" {
                r.exact_ratio
            } else {
                r.upper
            }
        }
        "gadget_q_copy" | "gadget_p_bad" | "gadget_colourable_upper" => {
            let g = gadget_probability(
                count("n", p[0])?,
                count("delta", p[1])?,
                count("k", p[2])?,
                count("m", p[3])?,
                count("d", p[4])?,
                count("order", p[5])?,
            )?;
            match id {
                "gadget_q_copy" => g.q_copy,
                "gadget_p_bad" => g.p_bad_exists,
                _ => g.colourable_upper,
            }
        }
        _ => {
            let c = integral_bound_check(&IntegralQuery {
                s: p[0],
                n: p[1],
                alpha: p[2],
                beta: p[3],
            })?;
            if id == "integral_quadrature" {
                c.quadrature_value
            } else {
                c.closed_form
            }
        }
    };
    Ok(OrderValue {
        id: id.to_string(),
        params: params.clone(),
        value,
        flags: Vec::new(),
    })
}

/// Exact probability, as a rational, that a random `k`-subset of `[m]` equals a fixed one.
pub fn list_hit_probability(m: u64, k: u64) -> Option<BigRational> {
    let c = binomial(m, k)?;
    if c.is_zero() {
        return None;
    }
    Some(BigRational::new(BigInt::one(), BigInt::from(c)))
}
