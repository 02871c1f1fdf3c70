mod common;

use common::random_integral_query;
use listcolour::bounds::{
    adaptive_simpson, gadget_probability, integral_bound_check, threshold_general, threshold_hfree,
    union_term_ratio, IntegralQuery, ThresholdQuery,
};
use listcolour::SplitMix64;
use num_traits::One;
use proptest::prelude::*;

#[test]
fn integral_bound_holds_on_random_queries() {
    let mut rng = SplitMix64::new(4);
    for _ in 0..1000 {
        let q = random_integral_query(&mut rng);
        let c = integral_bound_check(&q).unwrap();
        assert!(c.holds, "{q:?} -> {c:?}");
        assert!(c.quadrature_value >= 0.0);
    }
}

#[test]
fn quadrature_satisfies_integration_by_parts() {
    // With I(β) = ∫_s^n x^{-α}(log x)^{-β} dx and F(x) = x^{1-α}(log x)^{-β}:
    // (1-α) I(β) - β I(β+1) = F(n) - F(s).
    for (s, n, alpha, beta) in [
        (10.0f64, 1e6f64, 0.3f64, 0.7f64),
        (2.0, 1e9, 0.6, 0.2),
        (500.0, 600.0, 0.9, 0.3),
    ] {
        let main = integral_bound_check(&IntegralQuery { s, n, alpha, beta })
            .unwrap()
            .quadrature_value;
        let shifted = adaptive_simpson(
            |t: f64| ((1.0 - alpha) * t - (beta + 1.0) * t.ln()).exp(),
            s.ln(),
            n.ln(),
            1e-10,
        );
        let lhs = (1.0 - alpha) * main - beta * shifted;
        let f = |x: f64| x.powf(1.0 - alpha) * x.ln().powf(-beta);
        let rhs = f(n) - f(s);
        assert!(
            ((lhs - rhs) / rhs).abs() < 1e-6,
            "s={s} n={n}: lhs={lhs} rhs={rhs}"
        );
    }
}

#[test]
fn union_term_ratio_regime() {
    let mut rng = SplitMix64::new(12);
    for _ in 0..2000 {
        let delta = 1.0 + rng.below(1000) as f64;
        let k = 1 + rng.below(6) as u32;
        let m = 1.0 + rng.next_f64() * 1e8;
        let i = 1 + rng.below(200) as u32;
        let r = union_term_ratio(delta, k, m, i).unwrap();
        assert!(r.exact_ratio <= r.upper * (1.0 + 1e-12));
        let kf = f64::from(k);
        let regime =
            m.powf(kf / 2.0) > (kf + 1.0).exp() * kf.powf(kf) * delta * f64::from(i + 1).powf(kf);
        if regime {
            assert!(r.exact_ratio < 1.0);
        }
    }
}

#[test]
fn hfree_lower_is_square_root_of_upper() {
    let mut rng = SplitMix64::new(6);
    for _ in 0..500 {
        let n = 10.0 + rng.next_f64() * 1e9;
        let delta = 1.0 + rng.next_f64() * (n - 2.0);
        let k = 1 + rng.below(10) as u32;
        let q = ThresholdQuery::new(n, delta, k).with_g(1 + rng.below(20) as u32);
        let t = threshold_hfree(&q).unwrap();
        assert!(t.lower_growth <= t.upper_growth);
        assert!((t.lower_growth * t.lower_growth / t.upper_growth - 1.0).abs() < 1e-9);
        let g = threshold_general(&q).unwrap();
        assert_eq!(g.m_floor, t.m_floor);
    }
}

proptest! {
    #[test]
    fn gadget_probabilities_are_complementary(
        k in 1u64..4, extra in 0u64..6, d in 0u64..4, order in 1u64..6, copies in 1u64..5, delta in 1u64..10,
    ) {
        let m = k + extra;
        let p = gadget_probability(copies * delta, delta, k, m, d, order).unwrap();
        let exact = p.exact.as_ref().unwrap();
        prop_assert_eq!(&exact.p_bad_exists + &exact.colourable_upper, num_rational::BigRational::one());
        prop_assert!((0.0..=1.0).contains(&p.q_copy));
        if m > k {
            let more_d = gadget_probability(copies * delta, delta, k, m, d + 1, order).unwrap();
            prop_assert!(more_d.exact.unwrap().q_copy > exact.q_copy);
            let more_m = gadget_probability(copies * delta, delta, k, m + 1, d, order).unwrap();
            if d > 0 {
                prop_assert!(more_m.exact.unwrap().q_copy < exact.q_copy);
            }
        }
    }
}
