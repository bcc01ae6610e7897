use proptest::prelude::*;

use super::*;

fn mixed() -> GradedBasis {
    GradedBasis::from_pairs(&[("a", 0), ("x", 1), ("y", -1), ("b", 2)]).unwrap()
}

fn word(entries: &[usize]) -> TensorWord {
    TensorWord::new(entries.to_vec())
}

#[test]
fn koszul_examples() {
    let b = GradedBasis::from_pairs(&[("e", 0), ("f", 2), ("o", 1), ("p", 3)]).unwrap();
    let swap = Permutation::from_one_based(&[2, 1]).unwrap();
    assert_eq!(b.koszul_sign(&swap, &word(&[0, 1])).unwrap(), Sign::Plus);
    assert_eq!(b.koszul_sign(&swap, &word(&[2, 3])).unwrap(), Sign::Minus);
    // 1→2→3→1 on (odd, odd, even): the odd entries keep their relative order
    let cycle = Permutation::from_one_based(&[2, 3, 1]).unwrap();
    assert_eq!(b.koszul_sign(&cycle, &word(&[2, 3, 0])).unwrap(), Sign::Plus);
    assert!(matches!(
        b.koszul_sign(&cycle, &word(&[2, 3])),
        Err(GradedError::LengthMismatch { perm: 3, word: 2 })
    ));
}

/// Sign by literal bubble sort into the target arrangement.
fn koszul_by_adjacent_swaps(basis: &GradedBasis, sigma: &Permutation, w: &TensorWord) -> Sign {
    let mut positions: Vec<usize> = (0..w.len()).map(|i| sigma.image(i)).collect();
    let mut entries = w.entries.clone();
    let mut sign = Sign::Plus;
    let mut swapped = true;
    while swapped {
        swapped = false;
        for i in 0..positions.len().saturating_sub(1) {
            if positions[i] > positions[i + 1] {
                positions.swap(i, i + 1);
                if basis.is_odd(entries[i]) && basis.is_odd(entries[i + 1]) {
                    sign = sign * Sign::Minus;
                }
                entries.swap(i, i + 1);
                swapped = true;
            }
        }
    }
    sign
}

#[test]
fn koszul_matches_adjacent_transpositions() {
    let b = mixed();
    for k in 0..=4 {
        for w in b.all_words(k) {
            for s in Permutation::all(k) {
                assert_eq!(b.koszul_sign(&s, &w).unwrap(), koszul_by_adjacent_swaps(&b, &s, &w));
            }
        }
    }
}

#[test]
fn act_examples() {
    let b = GradedBasis::from_pairs(&[("q", 1), ("r", 1)]).unwrap();
    let w = word(&[0, 1]);
    assert_eq!(b.act(&Permutation::identity(2), &w).unwrap(), (Sign::Plus, w.clone()));
    let swap = Permutation::from_one_based(&[2, 1]).unwrap();
    assert_eq!(b.act(&swap, &w).unwrap(), (Sign::Minus, word(&[1, 0])));
}

#[test]
fn koszul_cocycle_and_left_action_exhaustive() {
    let b = mixed();
    for k in 0..=4 {
        let perms = Permutation::all(k);
        for w in b.all_words(k) {
            for s in &perms {
                for t in &perms {
                    let st = s.compose(t);
                    let (e_t, tw) = b.act(t, &w).unwrap();
                    let (e_s, stw) = b.act(s, &tw).unwrap();
                    let (e_st, direct) = b.act(&st, &w).unwrap();
                    assert_eq!(direct, stw);
                    assert_eq!(e_st, e_s * e_t);
                }
            }
        }
    }
}

fn arb_word(max_len: usize) -> impl Strategy<Value = TensorWord> {
    prop::collection::vec(0usize..4, 0..=max_len).prop_map(TensorWord::new)
}

proptest! {
    #[test]
    fn koszul_cocycle_random(w in arb_word(6), seed in any::<u64>()) {
        let b = mixed();
        let k = w.len();
        // derive two permutations from the seed deterministically
        let mut perms = Permutation::all(k);
        let n = perms.len() as u64;
        let s = perms.swap_remove((seed % n) as usize);
        let t = Permutation::all(k)[((seed / n.max(1)) % n) as usize].clone();
        let (e_t, tw) = b.act(&t, &w).unwrap();
        prop_assert_eq!(b.koszul_sign(&s.compose(&t), &w).unwrap(), b.koszul_sign(&s, &tw).unwrap() * e_t);
    }

    #[test]
    fn reversal_product_rule(u in arb_word(4), v in arb_word(4)) {
        let b = mixed();
        let uv = u.concat(&v);
        let lhs = b.reversal_sign(&u.entries) * b.reversal_sign(&v.entries) * b.reversal_sign(&uv.entries);
        let parity = b.word_is_odd(&u.entries) && b.word_is_odd(&v.entries);
        prop_assert_eq!(lhs, Sign::from_parity(parity));
    }

    #[test]
    fn reversal_is_koszul_of_reversal(u in arb_word(6)) {
        let b = mixed();
        let k = u.len();
        let rev = Permutation::from_images((0..k).rev().collect()).unwrap();
        prop_assert_eq!(b.reversal_sign(&u.entries), b.koszul_sign(&rev, &u).unwrap());
    }

    #[test]
    fn iota_then_project_is_identity(w in arb_word(5)) {
        let b = mixed();
        if let Some((_, m)) = b.project(&w.entries) {
            let back = b.project_vector(&b.iota(&m));
            prop_assert_eq!(back, FormalVector::from_term(m, int(1)));
        }
    }

    #[test]
    fn iota_project_idempotent(w in arb_word(4)) {
        let b = mixed();
        let once = b.symmetrize(&w);
        let twice = b.iota_vector(&b.project_vector(&once));
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn symmetric_tensors_fixed(w in arb_word(4)) {
        // ιs(v) is σ-invariant, and ιs fixes it
        let b = mixed();
        let v = b.symmetrize(&w);
        for s in Permutation::all(w.len()) {
            prop_assert_eq!(b.act_vector(&s, &v).unwrap(), v.clone());
        }
        prop_assert_eq!(b.iota_vector(&b.project_vector(&v)), v);
    }
}

#[test]
fn reversal_examples() {
    let b = GradedBasis::from_pairs(&[("e", 0), ("o", 1)]).unwrap();
    assert_eq!(b.reversal_sign(&[0, 0, 0]), Sign::Plus);
    assert_eq!(b.reversal_sign(&[1, 0, 1]), Sign::Minus);
    assert_eq!(b.reversal_sign(&[1, 1, 1]), Sign::Minus);
    assert_eq!(b.reversal_sign(&[1, 1, 1, 1]), Sign::Plus);
    assert_eq!(b.reversal_sign(&[1, 1, 1, 1, 1]), Sign::Plus);
}

#[test]
fn iota_examples() {
    let b = GradedBasis::from_pairs(&[("q", 1), ("r", 1), ("e", 0)]).unwrap();
    let single = SymMonomial::from_sorted(vec![2]);
    assert_eq!(b.iota(&single), FormalVector::from_term(word(&[2]), int(1)));
    let pair = SymMonomial::from_sorted(vec![0, 1]);
    let expected: FormalVector<TensorWord> =
        [(word(&[0, 1]), ratio(1, 2)), (word(&[1, 0]), ratio(-1, 2))].into_iter().collect();
    assert_eq!(b.iota(&pair), expected);
    // repeated even entry: one word with full weight
    let sq = SymMonomial::from_sorted(vec![2, 2]);
    assert_eq!(b.iota(&sq), FormalVector::from_term(word(&[2, 2]), int(1)));
}

#[test]
fn project_examples() {
    let b = GradedBasis::from_pairs(&[("q", 1), ("r", 1)]).unwrap();
    assert_eq!(b.project(&[1, 0]), Some((Sign::Minus, SymMonomial::from_sorted(vec![0, 1]))));
    assert_eq!(b.project(&[0, 0]), None);
    assert_eq!(b.project(&[]), Some((Sign::Plus, SymMonomial::unit())));
}

#[test]
fn all_monomials_skip_odd_squares() {
    let b = GradedBasis::from_pairs(&[("e", 0), ("o", 1)]).unwrap();
    let m2: Vec<_> = b.all_monomials(2).into_iter().map(|m| m.entries().to_vec()).collect();
    assert_eq!(m2, vec![vec![0, 0], vec![0, 1]]);
    assert_eq!(b.all_words(2).len(), 4);
    assert_eq!(b.all_words(0), vec![TensorWord::default()]);
}

#[test]
fn mu_nu_base_cases() {
    let b = mixed();
    let w = word(&[1, 2, 0]);
    assert_eq!(b.mu_unshuffle_sum(0, &w).unwrap(), FormalVector::from_term(w.clone(), int(1)));
    assert_eq!(b.nu_shuffle_sum(3, &w).unwrap(), FormalVector::from_term(w.clone(), int(1)));
    assert!(b.mu_unshuffle_sum(4, &w).is_err());
    assert_eq!(b.mu_unshuffle_sum(1, &w).unwrap().len(), 3);
}

#[test]
fn appendix_identities_exhaustive() {
    let b = GradedBasis::from_pairs(&[("a", 0), ("x", 1), ("y", 3)]).unwrap();
    assert!(checks::check_partial_symmetrization(&b, 4).is_ok());
    assert!(checks::check_unshuffle_factor(&b, 4).is_ok());
    assert!(checks::check_shuffle_factor(&b, 4).is_ok());
}

#[test]
fn duplicate_names_rejected() {
    assert_eq!(
        GradedBasis::from_pairs(&[("a", 0), ("a", 1)]),
        Err(GradedError::DuplicateName("a".into()))
    );
}
