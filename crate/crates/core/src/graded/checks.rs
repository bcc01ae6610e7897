//! Exhaustive checks of the symmetrisation identities on small word lengths.
//! Each returns the first failing input as a readable witness.

use super::{binomial, FormalVector, GradedBasis, Scalar, SymMonomial, TensorWord};

pub type Witness = String;

fn tensor_product_vectors(
    a: &FormalVector<TensorWord>,
    b: &FormalVector<TensorWord>,
) -> FormalVector<TensorWord> {
    let mut out = FormalVector::new();
    for (u, cu) in a {
        for (v, cv) in b {
            out.add_term(u.concat(v), cu * cv);
        }
    }
    out
}

fn split_project_vector(basis: &GradedBasis, v: &FormalVector<TensorWord>, l: usize) -> FormalVector<(SymMonomial, SymMonomial)> {
    let mut out = FormalVector::new();
    for (w, c) in v {
        if let Some((sign, key)) = basis.project_split(w, l) {
            out.add_term(key, sign.to_scalar() * c);
        }
    }
    out
}

/// `s^k ∘ (id^{k-ℓ} ⊗ ι s^ℓ) = s^k` on every word of length `≤ max_len`.
pub fn check_partial_symmetrization(basis: &GradedBasis, max_len: usize) -> Result<usize, Witness> {
    let mut checked = 0;
    for k in 0..=max_len {
        for w in basis.all_words(k) {
            let expected = basis.project_vector(&FormalVector::from_term(w.clone(), super::int(1)));
            for l in 0..=k {
                let (head, tail) = w.split_at(k - l);
                let lhs = basis.project_vector(&tensor_product_vectors(
                    &FormalVector::from_term(head, super::int(1)),
                    &basis.symmetrize(&tail),
                ));
                if lhs != expected {
                    return Err(format!("word {} with l={l}", basis.format_word(&w)));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// First diagram: `(s⊗s)∘μ^{k,ℓ} = C(k,ℓ) (s⊗s)∘ι∘s` on words.
pub fn check_unshuffle_factor(basis: &GradedBasis, max_len: usize) -> Result<usize, Witness> {
    let mut checked = 0;
    for k in 0..=max_len {
        for w in basis.all_words(k) {
            for l in 0..=k {
                let mu = basis.mu_unshuffle_sum(l, &w).map_err(|e| e.to_string())?;
                let lhs = split_project_vector(basis, &mu, l);
                let rhs = split_project_vector(basis, &basis.symmetrize(&w), l)
                    .scaled(&Scalar::from_integer(binomial(k, l)));
                if lhs != rhs {
                    return Err(format!("word {} with l={l}", basis.format_word(&w)));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Second diagram: `ν_{k,ℓ}∘(ι⊗ι) = ι∘(C(k,ℓ) s(ι⊗ι))` on monomial pairs.
pub fn check_shuffle_factor(basis: &GradedBasis, max_len: usize) -> Result<usize, Witness> {
    let mut checked = 0;
    for k in 0..=max_len {
        for l in 0..=k {
            for a in basis.all_monomials(l) {
                for b in basis.all_monomials(k - l) {
                    let both = tensor_product_vectors(&basis.iota(&a), &basis.iota(&b));
                    let mut lhs = FormalVector::new();
                    for (w, c) in &both {
                        lhs.add_scaled(&basis.nu_shuffle_sum(l, w).map_err(|e| e.to_string())?, c);
                    }
                    let rhs = basis
                        .iota_vector(&basis.project_vector(&both))
                        .scaled(&Scalar::from_integer(binomial(k, l)));
                    if lhs != rhs {
                        return Err(format!(
                            "pair {} | {}",
                            basis.format_monomial(&a),
                            basis.format_monomial(&b)
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}
