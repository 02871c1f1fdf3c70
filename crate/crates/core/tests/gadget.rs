use listcolour::bounds::gadget_probability;
use listcolour::experiment::gadget_experiment;
use listcolour::graph::{complete, cycle};
use listcolour::solver::exact_graph_colouring;
use listcolour::{build_gadget, has_bad_copy, Execution, ListAssignment};
use num_rational::BigRational;
use num_traits::Zero;

fn k_subsets(k: usize, m: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (k as u32..=m)
        .flat_map(|top| {
            k_subsets(k - 1, top - 1).into_iter().map(move |mut s| {
                s.push(top);
                s
            })
        })
        .collect()
}

/// Counts bad assignments among all `C(m,k)^n` of them, checking that each
/// bad one is also non-colourable.
fn enumerate_bad(inst: &listcolour::GadgetInstance, m: u32) -> (u64, u64) {
    let n = inst.graph.n();
    let k = inst.k();
    let subsets = k_subsets(k, m);
    let mut idx = vec![0usize; n];
    let (mut bad, mut total) = (0u64, 0u64);
    loop {
        let lists: Vec<Vec<u32>> = idx.iter().map(|&i| subsets[i].clone()).collect();
        let l = ListAssignment::from_lists(k, m, &lists).unwrap();
        total += 1;
        if has_bad_copy(inst, &l) {
            bad += 1;
            assert!(exact_graph_colouring(&inst.graph, &l, 64)
                .unwrap()
                .is_none());
        }
        let mut v = 0;
        loop {
            if v == n {
                return (bad, total);
            }
            idx[v] += 1;
            if idx[v] < subsets.len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

fn triangle_gadget(d: usize, n: usize, delta: usize) -> listcolour::GadgetInstance {
    let g0 = complete(3);
    let l0 = ListAssignment::uniform(3, 3, &[1, 2]).unwrap();
    build_gadget(&g0, &l0, d, n, delta).unwrap()
}

#[test]
fn bad_probability_matches_enumeration() {
    for (d, n, delta, m) in [(1, 6, 3, 3u32), (2, 6, 6, 3), (1, 7, 3, 3), (2, 6, 6, 4)] {
        let inst = triangle_gadget(d, n, delta);
        let (bad, total) = enumerate_bad(&inst, m);
        let p = gadget_probability(n as u64, delta as u64, 2, u64::from(m), d as u64, 3).unwrap();
        let exact = p.exact.unwrap().p_bad_exists;
        assert_eq!(
            exact,
            BigRational::new(bad.into(), total.into()),
            "d={d} n={n} delta={delta} m={m}"
        );
    }
}

#[test]
fn zero_blow_up_is_never_bad() {
    let inst = triangle_gadget(0, 6, 3);
    assert_eq!(inst.graph.edge_count(), 0);
    let (bad, _) = enumerate_bad(&inst, 3);
    assert_eq!(bad, 0);
    let p = gadget_probability(6, 3, 2, 3, 0, 3).unwrap();
    assert!(p.exact.unwrap().p_bad_exists.is_zero());
}

#[test]
fn monte_carlo_agrees_with_exact_probability() {
    // C5 with lists {1,2} is not colourable.
    let g0 = cycle(5).unwrap();
    let l0 = ListAssignment::uniform(5, 3, &[1, 2]).unwrap();
    let inst = build_gadget(&g0, &l0, 2, 40, 10).unwrap();
    assert_eq!(inst.copies, 4);
    let r = gadget_experiment(&inst, 3, 4000, 77, Execution::default()).unwrap();
    assert!(r.bad_within_3_sigma, "{r:?}");
    assert!(r.colourable_within_bound, "{r:?}");
    assert_eq!(r.bad_but_colourable, 0);
    assert_eq!(r.errors, 0);
}

#[test]
fn build_rejects_colourable_base() {
    let g0 = complete(3);
    let l0 = ListAssignment::uniform(3, 3, &[1, 2, 3]).unwrap();
    assert!(build_gadget(&g0, &l0, 1, 6, 3).is_err());
}
