use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::graded::{int, GradedBasis, SymMonomial};
use crate::weyl::random::{random_basis, random_reduced_element, random_square_zero_element, random_symop};
use crate::weyl::SquareZeroVerdict;

fn mono(entries: &[usize]) -> SymMonomial {
    SymMonomial::from_sorted(entries.to_vec())
}

/// `u` odd of degree 1, `x` even, `y` odd of degree −1.
fn chain_basis() -> GradedBasis {
    GradedBasis::from_pairs(&[("u", 1), ("x", 0), ("y", -1)]).unwrap()
}

fn symop(basis: &GradedBasis, input: &[usize], output: &[usize], c: i64) -> SymOp {
    let mut op = SymOp::zero(input.len(), output.len(), -1);
    op.add_entry(basis, mono(input), mono(output), int(c)).unwrap();
    op
}

#[test]
fn differential_only_family() {
    let b = chain_basis();
    // d: x ↦ y squares to zero
    let d = symop(&b, &[1], &[2], 1).lift(&b);
    let family = StructureFamily::from_differential(&b, &d).unwrap();
    let h = family_to_weyl(&b, &family);
    assert_eq!(h.components().count(), 1);
    assert_eq!(h.component((0, 1, 1)).unwrap(), &symop(&b, &[1], &[2], -1));
    assert_eq!(h.degree, -1);
    let back = weyl_to_family(&b, &h).unwrap();
    assert_eq!(back.differential(), d);
    assert!(check_relations(&b, &family, Truncation::new(2, 3)).is_zero());
}

#[test]
fn differential_relation_is_d_squared() {
    let b = chain_basis();
    // u ↦ x ↦ y: d² ≠ 0
    let mut d = symop(&b, &[0], &[1], 1);
    d.add_assign(&symop(&b, &[1], &[2], 1));
    let family = StructureFamily::from_differential(&b, &d.lift(&b)).unwrap();
    let sum = relation_sum(&b, &family, (1, 1, 0));
    let d_squared = d.lift(&b).apply_vector(&d.lift(&b).apply(&TensorWord::new(vec![0])));
    assert_eq!(sum.apply(&TensorWord::new(vec![0])), d_squared);
    assert!(!d_squared.is_zero());
    match check_relations(&b, &family, Truncation::new(1, 2)) {
        RelationVerdict::NonZero { r, t, g, .. } => assert_eq!((r, t, g), (1, 1, 0)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn counterexample_witness_matches_square() {
    let b = chain_basis();
    // u ↦ x·x then x ↦ y leaves u ↦ x·y at relation (1,2,0)
    let mut h = WeylElement::from_component(0, symop(&b, &[0], &[1, 1], 1));
    h.add_component(0, &symop(&b, &[1], &[2], 1));
    let bounds = Truncation::new(1, 2);
    let verdict = square_zero_report(&b, &h, Truncation::new(2, 2)).unwrap();
    let SquareZeroVerdict::NonZero { genus, arity_in, arity_out, .. } = verdict else { panic!("{verdict:?}") };
    let family = weyl_to_family(&b, &h).unwrap();
    let RelationVerdict::NonZero { r, t, g, .. } = check_relations(&b, &family, bounds) else { panic!() };
    assert_eq!((genus, arity_in, arity_out), (g as u32 + 1, r, t));
    assert_eq!((r, t, g), (1, 2, 0));
    assert!(check_theorem(&b, &h, bounds).unwrap().passed());
}

#[test]
fn families_reject_bad_maps() {
    let b = chain_basis();
    let mut family = StructureFamily::new();
    let mut lopsided = TensorOp::zero(2, 1, -1);
    // x⊗u ↦ x without the matching u⊗x entry
    lopsided.add_entry(&b, TensorWord::new(vec![1, 0]), TensorWord::new(vec![1]), int(1)).unwrap();
    assert_eq!(family.insert(&b, (2, 1, 0), lopsided), Err(CorrespondenceError::NotSymmetric { r: 2, t: 1, g: 0 }));
    let mut even = TensorOp::zero(1, 1, 0);
    even.add_entry(&b, TensorWord::new(vec![1]), TensorWord::new(vec![1]), int(1)).unwrap();
    assert!(matches!(family.insert(&b, (1, 1, 0), even), Err(CorrespondenceError::Degree { .. })));
    assert!(matches!(family.insert(&b, (0, 1, 0), TensorOp::zero(0, 1, -1)), Err(CorrespondenceError::ZeroArity { .. })));
    assert!(matches!(family.insert(&b, (1, 2, 0), TensorOp::zero(1, 1, -1)), Err(CorrespondenceError::ArityMismatch { .. })));
    let mut unreduced = WeylElement::new(-1, true);
    unreduced.add_component(0, &symop(&b, &[], &[2], 1));
    assert!(weyl_to_family(&b, &unreduced).is_err());
}

fn random_family(rng: &mut ChaCha8Rng, basis: &GradedBasis) -> StructureFamily {
    let mut family = StructureFamily::new();
    for _ in 0..rng.gen_range(1..=4) {
        let (r, t, g) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(0..=2));
        let op = random_symop(rng, basis, r, t, -1, 0.5).lift(basis).scaled(&int(rng.gen_range(1..=4)));
        family.insert(basis, (r, t, g), op).unwrap();
    }
    family
}

#[test]
fn roundtrips_are_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..40 {
        let basis = { let dim = rng.gen_range(1..=3); random_basis(&mut rng, dim) };
        let family = random_family(&mut rng, &basis);
        let h = family_to_weyl(&basis, &family);
        assert_eq!(weyl_to_family(&basis, &h).unwrap(), family);
        let h = random_reduced_element(&mut rng, &basis, 2, 3, 3, 0.4);
        assert_eq!(family_to_weyl(&basis, &weyl_to_family(&basis, &h).unwrap()), h);
    }
}

#[test]
fn produced_maps_are_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let basis = random_basis(&mut rng, 3);
        let h = random_reduced_element(&mut rng, &basis, 1, 3, 3, 0.5);
        for (_, phi) in weyl_to_family(&basis, &h).unwrap().maps() {
            assert!(is_symmetric(&basis, phi));
        }
    }
}

#[test]
fn relations_agree_with_square_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let bounds = Truncation::new(1, 3);
    let mut zero_seen = 0;
    for round in 0..12 {
        let basis = { let dim = rng.gen_range(2..=3); random_basis(&mut rng, dim) };
        let h = if round % 2 == 0 {
            random_reduced_element(&mut rng, &basis, 1, 2, 3, 0.5)
        } else {
            random_square_zero_element(&mut rng, &basis, 1, 2, 3, 0.7)
        };
        let check = check_theorem(&basis, &h, bounds).unwrap();
        assert!(check.passed(), "{check:?}");
        zero_seen += usize::from(check.square_zero);
    }
    assert!(zero_seen >= 6);
}

#[test]
fn family_files_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let basis = random_basis(&mut rng, 3);
    let family = random_family(&mut rng, &basis);
    let text = FamilyFile::from_family(&basis, &family).to_json();
    let (basis2, family2) = FamilyFile::from_json(&text).unwrap().to_family().unwrap();
    assert_eq!((basis2, family2), (basis, family));
    assert!(FamilyFile::from_json("{\"basis\": []}").is_err());
}
