use proptest::prelude::*;

use super::*;
use crate::graded::{int, ratio};

#[test]
fn validity() {
    assert!(is_valid_piece(1, 1, 0));
    assert!(is_valid_piece(2, 1, 1));
    assert!(!is_valid_piece(2, 1, 0));
    assert!(!is_valid_piece(1, 1, -2));
    assert!(!is_valid_piece(0, 1, 1));
}

#[test]
fn genus_examples() {
    assert_eq!(genus_of(1, 1, 0), Ok(0));
    assert_eq!(genus_of(2, 1, 1), Ok(0));
    assert_eq!(genus_of(1, 1, 2), Ok(1));
    assert_eq!(genus_of(2, 1, 0), Err(CofrobError::InvalidPiece { m: 2, n: 1, chi: 0 }));
    assert_eq!(chi_of(3, 2, 1), 5);
}

#[test]
fn set_partition_counts() {
    let bell: Vec<usize> = (0..=5).map(|k| set_partitions(k).len()).collect();
    assert_eq!(bell, vec![1, 1, 2, 5, 15, 52]);
}

#[test]
fn decompose_counit_piece() {
    let d = decompose(1, 1, 0).unwrap();
    assert_eq!(d.len(), 1);
    let (g, c) = &d[0];
    assert_eq!(g.edges, vec![vec![1]]);
    assert_eq!(*c, int(1));
}

#[test]
fn decompose_genus_one_loop() {
    let d = decompose(1, 1, 2).unwrap();
    let summary: Vec<(usize, i64, i64, Scalar)> =
        d.iter().map(|(g, c)| (g.edge_count(), g.top[0].weight, g.bottom[0].weight, c.clone())).collect();
    assert_eq!(
        summary,
        vec![(1, 0, 2, int(1)), (1, 2, 0, int(1)), (2, 1, 1, ratio(1, 2))]
    );
}

#[test]
fn decompose_rejects_zero_pieces() {
    assert!(decompose(2, 1, 0).is_err());
}

#[test]
fn pieces_are_even() {
    // reordering vertices of a level graph never produces a sign
    for m in 1..=3 {
        for n in 1..=3 {
            for g in 0..=2 {
                assert_eq!(CoFrobPiece::new(m, n, chi_of(m, n, g)).unwrap().degree(), 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn emitted_graphs_are_valid(m in 1usize..=3, n in 1usize..=3, g in 0u32..=1) {
        let chi = chi_of(m, n, g);
        for (graph, eta) in decompose(m, n, chi).unwrap().iter() {
            prop_assert_eq!(graph.check_invariants(m, n, chi), Ok(()));
            let denominator: num_bigint::BigInt =
                graph.edges.iter().flatten().map(|&e| crate::graded::factorial(e)).product();
            prop_assert_eq!(eta.clone(), Scalar::new(1.into(), denominator));
        }
    }
}

#[test]
fn double_edges_carry_half() {
    for (g, c) in decompose(2, 2, 4).unwrap().iter() {
        if g.edges.iter().flatten().any(|&e| e == 2) {
            assert!(c <= &ratio(1, 2));
        }
    }
}

#[test]
fn coassociativity_examples() {
    for (m, n, chi) in [(1, 1, 0), (1, 1, 2), (2, 2, 2), (2, 1, 3), (2, 2, 4)] {
        let report = check_coassoc(m, n, chi, 1_000_000).unwrap();
        assert!(report.agrees, "({m},{n},{chi})");
    }
}

#[test]
fn budget_is_enforced() {
    assert_eq!(check_coassoc(2, 2, 4, 3), Err(CofrobError::BudgetExhausted(3)));
}

#[test]
fn counit_examples() {
    for (m, n, chi) in [(1, 1, 0), (2, 1, 1), (3, 2, 5), (1, 1, 2)] {
        assert!(counit_check(m, n, chi).unwrap(), "({m},{n},{chi})");
    }
}

#[test]
fn labelled_and_standard_comparisons_agree() {
    for (m, n, g) in [(2, 2, 0), (3, 2, 0), (2, 3, 1), (3, 3, 0), (1, 3, 1)] {
        let chi = chi_of(m, n, g);
        let full = check_coassoc_labelled(m, n, chi, usize::MAX).unwrap();
        let standard = check_coassoc(m, n, chi, usize::MAX).unwrap();
        assert!(full.agrees && standard.agrees, "({m},{n},{chi})");
        assert!(standard.three_level_graphs <= full.three_level_graphs);
    }
}

#[test]
fn expansions_commute_with_relabelling() {
    use crate::graded::Permutation;
    for (m, n, g) in [(3, 2, 0), (2, 3, 1), (3, 3, 0)] {
        let (left, right) = coassoc::labelled_expansions(m, n, chi_of(m, n, g));
        for side in [&left, &right] {
            for p in Permutation::all(m) {
                for q in Permutation::all(n) {
                    for (key, c) in side.iter() {
                        let moved = coassoc::relabel_key(key, p.images(), q.images());
                        assert_eq!(side.get(&moved), Some(c));
                    }
                }
            }
        }
    }
}
