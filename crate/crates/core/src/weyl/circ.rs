use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{ComponentKey, SymOp, TensorOp, Truncation, WeylElement};
use crate::graded::{binomial, factorial, shuffles, unshuffles, FormalVector, GradedBasis, Scalar, Sign, TensorWord};

/// `φ∘_k ψ = (φ⊗id^{j−k})∘(id^{m−k}⊗ψ)`: the first `k` outputs of `ψ` feed
/// the last `k` inputs of `φ`.
pub fn tensor_circ_k(basis: &GradedBasis, phi: &TensorOp, psi: &TensorOp, k: usize) -> TensorOp {
    let (m, n, i, j) = (phi.arity_in, phi.arity_out, psi.arity_in, psi.arity_out);
    let degree = phi.degree + psi.degree;
    if k > m || k > j {
        return TensorOp::zero(m + i - k.min(m + i), n + j - k.min(n + j), degree);
    }
    let mut out = TensorOp::zero(m + i - k, n + j - k, degree);
    let psi_odd = psi.degree.rem_euclid(2) == 1;
    // only prefixes of φ's nonzero inputs can contribute
    let mut prefixes: Vec<TensorWord> = phi.entries().map(|(w, _)| w.split_at(m - k).0).collect();
    prefixes.sort();
    prefixes.dedup();
    for a in &prefixes {
        let sign = Sign::from_parity(psi_odd && basis.word_is_odd(&a.entries)).to_scalar();
        for (b, image) in psi.entries() {
            let mut result = FormalVector::new();
            for (u, cu) in image {
                let (u1, u2) = u.split_at(k);
                for (z, cz) in &phi.apply(&a.concat(&u1)) {
                    result.add_term(z.concat(&u2), cu * cz * &sign);
                }
            }
            out.push_vector(a.concat(b), &result);
        }
    }
    out
}

fn sym_prefactor(m: usize, i: usize, j: usize, k: usize) -> Scalar {
    Scalar::from_integer(binomial(m + i - k, i) * binomial(j, k))
}

/// `g∘_k f = C(m+i−k, i) C(j, k) s((ιgs)∘_k(ιfs))ι` for `g: S^m→S^n`,
/// `f: S^i→S^j`.
pub fn sym_circ_k(basis: &GradedBasis, g: &SymOp, f: &SymOp, k: usize) -> SymOp {
    circ_lifted(basis, &g.lift(basis), &f.lift(basis), k)
}

fn circ_lifted(basis: &GradedBasis, g: &TensorOp, f: &TensorOp, k: usize) -> SymOp {
    let (m, i, j) = (g.arity_in, f.arity_in, f.arity_out);
    if k > m || k > j {
        return SymOp::zero(m + i - k.min(m + i), g.arity_out + j - k.min(g.arity_out + j), g.degree + f.degree);
    }
    tensor_circ_k(basis, g, f, k).descend(basis).scaled(&sym_prefactor(m, i, j, k))
}

/// `g⋆f = Σ_k (g∘_k f) ħ^k`, componentwise on both factors, keeping only
/// components admitted by `cutoff`.
pub fn star(basis: &GradedBasis, g: &WeylElement, f: &WeylElement, cutoff: Truncation) -> WeylElement {
    let lift_all = |h: &WeylElement| -> BTreeMap<ComponentKey, TensorOp> {
        h.components().map(|(key, op)| (*key, op.lift(basis))).collect()
    };
    let (gl, fl) = (lift_all(g), lift_all(f));
    let mut jobs = Vec::new();
    for &(g2, m, n) in gl.keys() {
        for &(g1, i, j) in fl.keys() {
            for k in 0..=m.min(j) {
                let genus = g1 + g2 + k as u32;
                if cutoff.admits(genus, m + i - k, n + j - k) {
                    jobs.push(((g2, m, n), (g1, i, j), k, genus));
                }
            }
        }
    }
    let pieces: Vec<(u32, SymOp)> = jobs
        .par_iter()
        .map(|(gk, fk, k, genus)| (*genus, circ_lifted(basis, &gl[gk], &fl[fk], *k)))
        .collect();
    let mut out = WeylElement::new(g.degree + f.degree, g.reduced && f.reduced);
    for (genus, op) in &pieces {
        out.add_component(*genus, op);
    }
    out.truncation = Some(cutoff);
    out
}

/// Which coset representatives to sum over in the tensor-side comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetReading {
    /// `σ` pulls the `m−k` inputs of `g` to the front, `τ` shuffles the `n`
    /// outputs of `g` with the `j−k` leftover outputs of `f`.
    Blocks,
    /// `σ ∈ S^{-1}_{m+i−k, i}`, `τ ∈ S_{n+j−k, j−k}`, read off index by index.
    Literal,
}

/// Compares `((j+n−k)! k!)/(n! j!) · ι(g∘_k f)s` with
/// `Σ_{σ,τ} τ((ιgs)∘_k(ιfs))σ` on every tensor word.
pub fn compare_circ_k_check(basis: &GradedBasis, f: &SymOp, g: &SymOp, k: usize) -> bool {
    compare_circ_k_with(basis, f, g, k, CosetReading::Blocks)
}

pub(crate) fn compare_circ_k_with(basis: &GradedBasis, f: &SymOp, g: &SymOp, k: usize, reading: CosetReading) -> bool {
    let (i, j, m, n) = (f.arity_in, f.arity_out, g.arity_in, g.arity_out);
    if k > m || k > j {
        return sym_circ_k(basis, g, f, k).is_zero();
    }
    let total_in = m + i - k;
    let total_out = n + j - k;
    let factor = Scalar::new(factorial(total_out) * factorial(k), factorial(n) * factorial(j));
    let lhs = sym_circ_k(basis, g, f, k).lift(basis).scaled(&factor);
    let glued = tensor_circ_k(basis, &g.lift(basis), &f.lift(basis), k);
    let (sigmas, taus) = match reading {
        CosetReading::Blocks => (unshuffles(total_in, m - k), shuffles(total_out, n)),
        CosetReading::Literal => (unshuffles(total_in, i), shuffles(total_out, j - k)),
    };
    let (sigmas, taus) = (sigmas.expect("block sizes in range"), taus.expect("block sizes in range"));
    basis.all_words(total_in).iter().all(|w| {
        let mut rhs = FormalVector::new();
        for sigma in &sigmas {
            let (s, moved) = basis.act(sigma, w).expect("matching length");
            let image = glued.apply(&moved);
            for tau in &taus {
                rhs.add_scaled(&basis.act_vector(tau, &image).expect("matching length"), &s.to_scalar());
            }
        }
        rhs == lhs.apply(w)
    })
}

fn matrix_units(basis: &GradedBasis, arity_in: usize, arity_out: usize) -> Vec<SymOp> {
    let outputs = basis.all_monomials(arity_out);
    basis
        .all_monomials(arity_in)
        .iter()
        .flat_map(|a| {
            outputs.iter().map(move |b| {
                let degree = basis.word_degree(b.entries()) - basis.word_degree(a.entries());
                let mut op = SymOp::zero(arity_in, arity_out, degree);
                op.push(a.clone(), b.clone(), Scalar::from_integer(1.into()));
                op
            })
        })
        .collect()
}

/// [`compare_circ_k_check`] on every pair of matrix units with arities at
/// most `max_arity` and every `k`, which covers all operators by
/// bilinearity. The number of comparisons, or the first failure.
pub fn check_circ_k_exhaustive(basis: &GradedBasis, max_arity: usize) -> Result<usize, String> {
    let arities: Vec<(usize, usize)> = (0..=max_arity).flat_map(|a| (0..=max_arity).map(move |b| (a, b))).collect();
    let jobs: Vec<((usize, usize), (usize, usize))> = arities.iter().flat_map(|&f| arities.iter().map(move |&g| (f, g))).collect();
    let counts: Result<Vec<usize>, String> = jobs
        .par_iter()
        .map(|&((i, j), (m, n))| {
            let (fs, gs) = (matrix_units(basis, i, j), matrix_units(basis, m, n));
            let mut count = 0;
            for f in &fs {
                for g in &gs {
                    for k in 0..=m.min(j) {
                        if !compare_circ_k_check(basis, f, g, k) {
                            return Err(format!("f: S^{i}→S^{j}, g: S^{m}→S^{n}, k={k}, f={f:?}, g={g:?}"));
                        }
                        count += 1;
                    }
                }
            }
            Ok(count)
        })
        .collect();
    counts.map(|c| c.into_iter().sum())
}
