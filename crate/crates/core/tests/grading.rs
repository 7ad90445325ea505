use proptest::prelude::*;

use hodge_core::rootsys::named_types_up_to;
use hodge_core::suite::{grading_elements, run_grid, GridConfig};
use hodge_core::{
    build_root_system, grade, subalgebra_closure, verify_high_degree_closure, GradingElement,
    Root, RootSystem, SimpleType, Status,
};

fn systems() -> Vec<RootSystem> {
    named_types_up_to(4)
        .into_iter()
        .map(|s| build_root_system(s).unwrap())
        .collect()
}

#[test]
fn grid_up_to_rank_four_has_no_counterexamples() {
    let summary = run_grid(&GridConfig {
        max_rank: 4,
        max_e: 2,
        types: None,
    })
    .unwrap();
    assert!(summary.all_hold(), "{:?}", summary.failures);
    assert_eq!(summary.criterion_matches_oracle, summary.points);
    assert!(summary.applicable > 0);
}

#[test]
fn grid_restricted_to_exceptional_types() {
    let summary = run_grid(&GridConfig {
        max_rank: 4,
        max_e: 1,
        types: Some(vec![SimpleType::G, SimpleType::F]),
    })
    .unwrap();
    assert_eq!(summary.root_systems, vec!["F4", "G2"]);
    assert_eq!(summary.points, 16 + 4);
    assert!(summary.all_hold());
}

#[test]
fn degrees_partition_the_roots() {
    for rs in systems() {
        for e in grading_elements(rs.rank(), 2) {
            let dec = grade(&rs, &e).unwrap();
            let total: usize = dec.degrees().map(|(_, roots)| roots.len()).sum();
            assert_eq!(total, rs.num_roots());
            for (k, roots) in dec.degrees() {
                assert_eq!(dec.dim(k), dec.dim(-k));
                assert!(roots.iter().all(|r| dec.degree(r) == k));
            }
        }
    }
}

#[test]
fn level_is_highest_root_pairing() {
    for rs in systems() {
        for e in grading_elements(rs.rank(), 2) {
            let dec = grade(&rs, &e).unwrap();
            assert_eq!(dec.level(), rs.highest_root().pair(e.values()));
        }
    }
}

#[test]
fn zero_grading_has_nothing_to_verify() {
    let rs = build_root_system("A3".parse().unwrap()).unwrap();
    let report = verify_high_degree_closure(&rs, &GradingElement::zero(3)).unwrap();
    assert_eq!(report.verdict, Status::NotApplicable);
}

fn root_subsets() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (0usize..6).prop_flat_map(|which| {
        let n = systems()[which].positive_roots().len() * 2;
        (
            Just(which),
            proptest::collection::vec(0..n, 0..4),
            proptest::collection::vec(0..n, 0..4),
        )
    })
}

proptest! {
    #[test]
    fn closure_is_idempotent_and_monotone((which, a, b) in root_subsets()) {
        let rs = &systems()[which];
        let roots: Vec<Root> = rs.roots().collect();
        let small: Vec<Root> = a.iter().map(|&i| roots[i].clone()).collect();
        let big: Vec<Root> = a.iter().chain(&b).map(|&i| roots[i].clone()).collect();
        let c = subalgebra_closure(rs, small);
        let again = subalgebra_closure(rs, c.roots.iter().cloned());
        prop_assert_eq!(&again.roots, &c.roots);
        prop_assert!(c.is_closed(rs));
        let d = subalgebra_closure(rs, big);
        prop_assert!(c.roots.is_subset(&d.roots));
    }
}
