use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::random::{random_basis, random_homogeneous_symop, random_symop};
use super::*;
use crate::graded::{int, Sign};

fn one_even() -> GradedBasis {
    GradedBasis::from_pairs(&[("q", 0)]).unwrap()
}

fn mono(entries: &[usize]) -> SymMonomial {
    SymMonomial::from_sorted(entries.to_vec())
}

fn expr(basis: &GradedBasis, letters: &[Letter]) -> PQExpression {
    normal_order(basis, letters, int(1), 0)
}

#[test]
fn p_then_q_picks_up_hbar() {
    let b = one_even();
    let e = expr(&b, &[Letter::P(0), Letter::Q(0)]);
    assert_eq!(e.format(&b), "qp + ħ");
}

#[test]
fn distinct_letters_commute_with_sign() {
    let b = GradedBasis::from_pairs(&[("q1", 1), ("q2", 1), ("e", 0)]).unwrap();
    let e = expr(&b, &[Letter::P(0), Letter::Q(1)]);
    let mut expected = PQExpression::new();
    expected.add_term(PQTerm { genus: 0, q: mono(&[1]), p: mono(&[0]) }, int(-1));
    assert_eq!(e, expected);
    let e = expr(&b, &[Letter::P(0), Letter::Q(2)]);
    assert_eq!(e.format(&b), "ep1");
}

#[test]
fn odd_p_squares_to_zero() {
    let b = GradedBasis::from_pairs(&[("q", 1)]).unwrap();
    assert!(expr(&b, &[Letter::P(0), Letter::P(0)]).is_zero());
}

#[test]
fn qp_times_qp() {
    let b = one_even();
    let qp = op_to_pq(&b, &SymOp::identity(&b), 0);
    assert_eq!(qp.format(&b), "qp");
    let square = pq_product(&b, &qp, &qp);
    assert_eq!(square.format(&b), "q²p² + ħ qp");
    let h = WeylElement::from_component(0, SymOp::identity(&b));
    let starred = star(&b, &h, &h, Truncation::new(3, 3));
    assert_eq!(weyl_to_pq(&b, &starred), square);
}

#[test]
fn non_normal_words_rejected() {
    let b = one_even();
    assert_eq!(
        PQExpression::from_letters(&b, &[Letter::P(0), Letter::Q(0)], int(1), 0),
        Err(WeylError::NotNormalOrdered)
    );
    assert!(PQExpression::from_letters(&b, &[Letter::Q(0), Letter::P(0)], int(1), 0).is_ok());
}

#[test]
fn identity_gluings() {
    let b = one_even();
    let id = SymOp::identity(&b);
    assert_eq!(sym_circ_k(&b, &id, &id, 1), id);
    let zero_glue = sym_circ_k(&b, &id, &id, 0);
    assert_eq!(zero_glue.apply(&mono(&[0, 0])), FormalVector::from_term(mono(&[0, 0]), int(2)));
    assert!(sym_circ_k(&b, &id, &id, 2).is_zero());
}

#[test]
fn tensor_gluing_of_identities() {
    let b = GradedBasis::from_pairs(&[("x", 1), ("e", 0)]).unwrap();
    let id = SymOp::identity(&b).lift(&b);
    let glued = tensor_circ_k(&b, &id, &id, 1);
    assert_eq!(glued, id);
    assert!(tensor_circ_k(&b, &id, &id, 2).is_zero());
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_pair(seed: u64, max_arity: usize) -> (GradedBasis, SymOp, SymOp) {
    let mut rng = seeded(seed);
    let dim = rng.gen_range(1..=3);
    let b = random_basis(&mut rng, dim);
    let draw = |rng: &mut ChaCha8Rng| {
        let i = rng.gen_range(1..=max_arity);
        let j = rng.gen_range(1..=max_arity);
        random_homogeneous_symop(rng, &b, i, j, 0.5)
    };
    let f = draw(&mut rng);
    let g = draw(&mut rng);
    (b, f, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pq_roundtrip(seed in any::<u64>()) {
        let (b, f, _) = random_pair(seed, 3);
        let h = WeylElement::from_component(2, f.clone());
        let back = pq_to_op(&b, &weyl_to_pq(&b, &h)).unwrap();
        prop_assert_eq!(back.component((2, f.arity_in, f.arity_out)).cloned().unwrap_or(SymOp::zero(f.arity_in, f.arity_out, f.degree)), f);
    }

    #[test]
    fn pq_degree_bookkeeping(seed in any::<u64>()) {
        let (b, f, _) = random_pair(seed, 3);
        for (t, _) in op_to_pq(&b, &f, 0).iter() {
            prop_assert_eq!(b.word_degree(t.q.entries()) - b.word_degree(t.p.entries()), f.degree);
        }
    }

    #[test]
    fn star_matches_weyl_product(seed in any::<u64>()) {
        let (b, f, g) = random_pair(seed, 2);
        let cutoff = Truncation::new(2, 4);
        let lhs = weyl_to_pq(&b, &star(&b, &WeylElement::from_component(0, g.clone()), &WeylElement::from_component(0, f.clone()), cutoff));
        let rhs = pq_product(&b, &op_to_pq(&b, &g, 0), &op_to_pq(&b, &f, 0)).truncated(cutoff);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn circ_zero_graded_commutative(seed in any::<u64>()) {
        let (b, f, g) = random_pair(seed, 2);
        let fg = sym_circ_k(&b, &f, &g, 0);
        let gf = sym_circ_k(&b, &g, &f, 0);
        let sign = Sign::from_parity(f.degree.rem_euclid(2) == 1 && g.degree.rem_euclid(2) == 1).to_scalar();
        prop_assert_eq!(fg, gf.scaled(&sign));
    }

    #[test]
    fn poisson_bracket_from_star(seed in any::<u64>()) {
        let (b, f, g) = random_pair(seed, 2);
        let cutoff = Truncation::new(1, 4);
        let sign = Sign::from_parity(f.degree.rem_euclid(2) == 1 && g.degree.rem_euclid(2) == 1).to_scalar();
        let (fw, gw) = (WeylElement::from_component(0, f.clone()), WeylElement::from_component(0, g.clone()));
        let mut commutator = weyl_to_pq(&b, &star(&b, &fw, &gw, cutoff));
        let gf = weyl_to_pq(&b, &star(&b, &gw, &fw, cutoff));
        for (t, c) in gf.iter() {
            commutator.add_term(t.clone(), -(c * &sign));
        }
        let mut bracket = op_to_pq(&b, &sym_circ_k(&b, &f, &g, 1), 1);
        bracket.add_assign(&op_to_pq(&b, &sym_circ_k(&b, &g, &f, 1).scaled(&-sign), 1));
        let hbar_one: Vec<_> = commutator.iter().filter(|(t, _)| t.genus == 1).map(|(t, c)| (t.clone(), c.clone())).collect();
        let expected: Vec<_> = bracket.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        prop_assert_eq!(hbar_one, expected);
    }

    #[test]
    fn degrees_add(seed in any::<u64>(), k in 0usize..3) {
        let (b, f, g) = random_pair(seed, 3);
        prop_assert_eq!(sym_circ_k(&b, &g, &f, k).degree, g.degree + f.degree);
    }
}

#[test]
fn star_is_associative() {
    for seed in 0..12u64 {
        let mut rng = seeded(seed);
        let b = random_basis(&mut rng, 2);
        let ops: Vec<WeylElement> = (0..3)
            .map(|_| {
                let (i, j) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
                WeylElement::from_component(0, random_homogeneous_symop(&mut rng, &b, i, j, 0.6))
            })
            .collect();
        // the inner product needs room for arities feeding the outer one
        let wide = Truncation::new(4, 6);
        let cutoff = Truncation::new(2, 3);
        let left = star(&b, &star(&b, &ops[0], &ops[1], wide), &ops[2], wide).truncated(cutoff);
        let right = star(&b, &ops[0], &star(&b, &ops[1], &ops[2], wide), wide).truncated(cutoff);
        assert_eq!(left, right, "seed {seed}");
    }
}

#[test]
fn tensor_gluing_associative_at_zero() {
    for seed in 0..8u64 {
        let mut rng = seeded(100 + seed);
        let b = random_basis(&mut rng, 2);
        let ops: Vec<TensorOp> = (0..3)
            .map(|_| {
                let (i, j) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
                random_homogeneous_symop(&mut rng, &b, i, j, 0.6).lift(&b)
            })
            .collect();
        let left = tensor_circ_k(&b, &tensor_circ_k(&b, &ops[0], &ops[1], 0), &ops[2], 0);
        let right = tensor_circ_k(&b, &ops[0], &tensor_circ_k(&b, &ops[1], &ops[2], 0), 0);
        assert_eq!(left, right, "seed {seed}");
    }
}

#[test]
fn compare_circ_k_identities() {
    let b = GradedBasis::from_pairs(&[("x", 1), ("e", 0)]).unwrap();
    let id = SymOp::identity(&b);
    assert!(compare_circ_k_check(&b, &id, &id, 0));
    assert!(compare_circ_k_check(&b, &id, &id, 1));
    assert!(compare_circ_k_check(&b, &id, &id, 2));
}

#[test]
fn compare_circ_k_random_mixed() {
    let b = GradedBasis::from_pairs(&[("x", 1), ("e", 0)]).unwrap();
    for seed in 0..10u64 {
        let mut rng = seeded(200 + seed);
        let f = random_homogeneous_symop(&mut rng, &b, 1, 2, 0.7);
        let g = random_homogeneous_symop(&mut rng, &b, 2, 1, 0.7);
        for k in 0..=2 {
            assert!(compare_circ_k_check(&b, &f, &g, k), "seed {seed} k {k}");
        }
        assert!(compare_circ_k_check(&b, &f, &g, 3));
    }
}

#[test]
fn literal_coset_reading_fails_when_blocks_differ() {
    // g: S²→S¹, f: S²→S¹, k=1: g keeps one free input, f has two
    let b = GradedBasis::from_pairs(&[("e", 0), ("x", 1)]).unwrap();
    let mut rng = seeded(7);
    let f = random_symop(&mut rng, &b, 2, 1, 0, 1.0);
    let g = random_symop(&mut rng, &b, 2, 1, 0, 1.0);
    assert!(compare_circ_k_with(&b, &f, &g, 1, CosetReading::Blocks));
    assert!(!compare_circ_k_with(&b, &f, &g, 1, CosetReading::Literal));
}

#[test]
fn differential_squares_to_zero() {
    let b = GradedBasis::from_pairs(&[("x", 1), ("y", 0)]).unwrap();
    let mut d = SymOp::zero(1, 1, -1);
    d.add_entry(&b, mono(&[0]), mono(&[1]), int(1)).unwrap();
    let h = WeylElement::from_component(0, d);
    let verdict = square_zero_report(&b, &h, Truncation::new(2, 3)).unwrap();
    assert!(verdict.is_zero());
}

#[test]
fn qp_is_not_square_zero() {
    let b = one_even();
    let h = WeylElement::from_component(0, SymOp::identity(&b));
    match square_zero_report(&b, &h, Truncation::new(2, 3)).unwrap() {
        SquareZeroVerdict::NonZero { genus, arity_in, arity_out, input, output } => {
            assert_eq!((genus, arity_in, arity_out), (1, 1, 1));
            assert_eq!(input, mono(&[0]));
            assert_eq!(output, FormalVector::from_term(mono(&[0]), int(1)));
        }
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn unreduced_rejected() {
    let b = one_even();
    let mut h = WeylElement::new(0, true);
    let mut op = SymOp::zero(0, 1, 0);
    op.add_entry(&b, SymMonomial::unit(), mono(&[0]), int(1)).unwrap();
    h.add_component(0, &op);
    assert_eq!(
        square_zero_report(&b, &h, Truncation::new(1, 2)),
        Err(WeylError::Unreduced { g: 0, arity_in: 0, arity_out: 1 })
    );
}

#[test]
fn entries_checked_against_degree() {
    let b = GradedBasis::from_pairs(&[("x", 1), ("y", 0)]).unwrap();
    let mut op = SymOp::zero(1, 1, 0);
    assert!(matches!(op.add_entry(&b, mono(&[0]), mono(&[1]), int(1)), Err(WeylError::DegreeMismatch { .. })));
    assert!(matches!(op.add_entry(&b, mono(&[0, 1]), mono(&[1]), int(1)), Err(WeylError::ArityMismatch { .. })));
}

const SAMPLE: &str = r#"{
  "basis": [{"name": "x", "degree": 1}, {"name": "y", "degree": 0}],
  "degree": -1,
  "reduced": true,
  "components": [
    {"g": 0, "in": ["x"], "out": ["y"], "coeff": "1"},
    {"g": 1, "in": ["x", "y"], "out": ["y", "y"], "coeff": "-3/2"}
  ]
}"#;

#[test]
fn operator_file_roundtrip() {
    let file = OperatorFile::from_json(SAMPLE).unwrap();
    let (b, h) = file.to_weyl().unwrap();
    assert_eq!(h.component((1, 2, 2)).unwrap().apply(&mono(&[0, 1])).coeff(&mono(&[1, 1])), crate::graded::ratio(-3, 2));
    let again = OperatorFile::from_json(&OperatorFile::from_weyl(&b, &h).to_json()).unwrap();
    assert_eq!(again.to_weyl().unwrap().1, h);
}

#[test]
fn operator_file_errors() {
    let dup = SAMPLE.replace("\"g\": 1, \"in\": [\"x\", \"y\"], \"out\": [\"y\", \"y\"]", "\"g\": 0, \"in\": [\"x\"], \"out\": [\"y\"]");
    assert!(matches!(OperatorFile::from_json(&dup).unwrap().to_weyl(), Err(WeylError::DuplicateComponent { .. })));
    let unsorted = SAMPLE.replace("[\"x\", \"y\"]", "[\"y\", \"x\"]");
    assert!(matches!(OperatorFile::from_json(&unsorted).unwrap().to_weyl(), Err(WeylError::NonCanonical(_))));
    let bad_degree = SAMPLE.replace("\"out\": [\"y\"]", "\"out\": [\"x\"]");
    assert!(matches!(OperatorFile::from_json(&bad_degree).unwrap().to_weyl(), Err(WeylError::DegreeMismatch { .. })));
    let bad_coeff = SAMPLE.replace("\"-3/2\"", "\"1/0\"");
    assert!(matches!(OperatorFile::from_json(&bad_coeff).unwrap().to_weyl(), Err(WeylError::BadCoefficient(_))));
    assert!(OperatorFile::from_json("{").is_err());
}
