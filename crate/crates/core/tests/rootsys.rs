mod common;

use std::collections::BTreeSet;

use hodge_core::rootsys::named_types_up_to;
use hodge_core::{build_root_system, Bracket, CartanSpec, Root, RootError};

#[test]
fn positive_roots_match_reflection_oracle() {
    for spec in named_types_up_to(8) {
        let label = spec.label();
        let rs = build_root_system(spec).unwrap();
        let built: BTreeSet<Vec<i64>> =
            rs.positive_roots().iter().map(|r| r.coords().to_vec()).collect();
        assert_eq!(built, common::reflection_closure(rs.cartan()), "{label}");
    }
}

#[test]
fn highest_root_dominates_every_root() {
    for spec in named_types_up_to(8) {
        let rs = build_root_system(spec).unwrap();
        let top = rs.highest_root();
        for r in rs.positive_roots() {
            assert!(r.coords().iter().zip(top.coords()).all(|(a, b)| a <= b));
        }
        for i in 0..rs.rank() {
            let sum = top.add(&Root::simple(rs.rank(), i));
            assert!(!rs.contains(sum.coords()));
        }
    }
}

#[test]
fn root_sums_agree_with_membership() {
    for spec in named_types_up_to(5) {
        let rs = build_root_system(spec).unwrap();
        let roots: Vec<Root> = rs.roots().collect();
        for a in &roots {
            for b in &roots {
                let s = a.add(b);
                let expected = if s.is_zero() {
                    Bracket::Cartan
                } else if rs.contains(s.coords()) {
                    Bracket::Root(s)
                } else {
                    Bracket::Zero
                };
                assert_eq!(rs.root_sum(a, b), expected);
            }
        }
    }
}

#[test]
fn dimensions_of_exceptional_algebras() {
    let dims = [("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133), ("E8", 248)];
    for (name, dim) in dims {
        let rs = build_root_system(name.parse().unwrap()).unwrap();
        assert_eq!(rs.dim(), dim, "{name}");
    }
}

#[test]
fn custom_matrix_matches_named_type() {
    // a_ij = <b_i^v, b_j>: a_{23} = -2 makes b_3 long, which is C3
    let custom = CartanSpec::Custom(vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
    let rs = build_root_system(custom.clone()).unwrap();
    assert_eq!(rs.positive_roots().len(), 9);
    assert_eq!(rs.highest_root().coords(), &[2, 2, 1]);
    let c3: CartanSpec = "C3".parse().unwrap();
    assert_eq!(custom.matrix(), c3.matrix());
    let b3 = build_root_system("B3".parse().unwrap()).unwrap();
    assert_eq!(b3.highest_root().coords(), &[1, 2, 2]);
}

#[test]
fn invalid_matrices_are_rejected() {
    let bad = [
        vec![vec![2, 1], vec![-1, 2]],
        vec![vec![2, -1], vec![0, 2]],
        vec![vec![2, 0], vec![0, 2]],
        vec![vec![1, -1], vec![-1, 2]],
    ];
    for m in bad {
        assert!(matches!(
            build_root_system(CartanSpec::Custom(m)),
            Err(RootError::NonCartanMatrix(_))
        ));
    }
}
