use std::collections::HashMap;

use listcolour::graph::path;
use listcolour::lists::{intersects, SubsetSampler};
use listcolour::{dangerous_subgraph, sample_assignment, Seed, SplitMix64};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn chi_square_critical(df: f64) -> f64 {
    ChiSquared::new(df).unwrap().inverse_cdf(1.0 - 1e-3)
}

fn chi_square(counts: &[u64], expected: f64) -> f64 {
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

#[test]
fn subsets_are_uniform() {
    for (k, m, draws) in [(2usize, 5u32, 100_000u64), (3, 7, 200_000), (1, 9, 90_000)] {
        let mut sampler = SubsetSampler::new(k, m).unwrap();
        let mut rng = SplitMix64::new(2024 + k as u64);
        let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
        let mut out = Vec::new();
        for _ in 0..draws {
            out.clear();
            sampler.sample_into(&mut rng, &mut out);
            *counts.entry(out.clone()).or_default() += 1;
        }
        let cells = counts.len();
        let c = (0..k).fold(1u64, |acc, i| {
            acc * (u64::from(m) - i as u64) / (i as u64 + 1)
        });
        assert_eq!(cells as u64, c);
        let counts: Vec<u64> = counts.into_values().collect();
        let stat = chi_square(&counts, draws as f64 / c as f64);
        assert!(
            stat < chi_square_critical(c as f64 - 1.0),
            "k={k} m={m} stat={stat}"
        );
    }
}

#[test]
fn neighbouring_lists_are_independent() {
    // Joint distribution of (L(0), L(1)) over 15 x 15 cells for k=2, m=6.
    let trials = 150_000u64;
    let index = |l: &[u32]| {
        let (a, b) = (l[0] as usize - 1, l[1] as usize - 1);
        a * 6 + b
    };
    let mut joint = HashMap::<(usize, usize), u64>::new();
    for t in 0..trials {
        let l = sample_assignment(2, 2, 6, Seed::trial(5, t)).unwrap();
        *joint
            .entry((index(l.list(0)), index(l.list(1))))
            .or_default() += 1;
    }
    assert_eq!(joint.len(), 225);
    let counts: Vec<u64> = joint.into_values().collect();
    let stat = chi_square(&counts, trials as f64 / 225.0);
    assert!(stat < chi_square_critical(224.0), "stat={stat}");
}

#[test]
fn consecutive_trials_are_independent() {
    // The same vertex across trial t and t+1 should be independent too.
    let trials = 100_000u64;
    let mut joint = [[0u64; 4]; 4];
    let mut prev: Option<usize> = None;
    for t in 0..=trials {
        let l = sample_assignment(1, 1, 4, Seed::trial(8, t)).unwrap();
        let c = l.list(0)[0] as usize - 1;
        if let Some(p) = prev {
            joint[p][c] += 1;
        }
        prev = Some(c);
    }
    let counts: Vec<u64> = joint.iter().flatten().copied().collect();
    let stat = chi_square(&counts, trials as f64 / 16.0);
    assert!(stat < chi_square_critical(15.0), "stat={stat}");
}

#[test]
fn edge_danger_probability() {
    // Of the 36 ordered pairs of 2-subsets of [4], exactly the 6 complementary pairs are disjoint.
    let subsets: Vec<Vec<u32>> = (1..=4u32)
        .flat_map(|a| (a + 1..=4).map(move |b| vec![a, b]))
        .collect();
    let dangerous = subsets
        .iter()
        .flat_map(|a| subsets.iter().map(move |b| intersects(a, b)))
        .filter(|&d| d)
        .count();
    assert_eq!(dangerous, 30);

    let g = path(2);
    let trials = 100_000u64;
    let hits = (0..trials)
        .filter(|&t| {
            let l = sample_assignment(2, 2, 4, Seed::trial(31, t)).unwrap();
            dangerous_subgraph(&g, &l).unwrap().edge_count() == 1
        })
        .count();
    let p = hits as f64 / trials as f64;
    assert!((p - 5.0 / 6.0).abs() < 0.01, "p={p}");
}
