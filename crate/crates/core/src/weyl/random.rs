//! Seeded random operators for property checks and verification suites.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{SymOp, WeylElement};
use crate::graded::{ratio, BasisElement, GradedBasis, Scalar};

/// A basis of `dim` elements named `q1, q2, …` with degrees in `-2..=2`,
/// containing at least one even and (for `dim ≥ 2`) one odd element.
pub fn random_basis<R: Rng>(rng: &mut R, dim: usize) -> GradedBasis {
    let mut degrees: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
    if dim >= 1 && degrees.iter().all(|d| d % 2 != 0) {
        degrees[0] = 0;
    }
    if dim >= 2 && degrees.iter().all(|d| d % 2 == 0) {
        degrees[dim - 1] = 1;
    }
    let elements = degrees
        .into_iter()
        .enumerate()
        .map(|(i, degree)| BasisElement { name: format!("q{}", i + 1), degree })
        .collect();
    GradedBasis::new(elements).expect("generated names are distinct")
}

/// A basis of `dim` elements with consecutive degrees `top, top−1, …`,
/// `top` drawn from `0..=2`, so degree −1 maps can be chained.
pub fn random_chain_basis<R: Rng>(rng: &mut R, dim: usize) -> GradedBasis {
    let top: i64 = rng.gen_range(0..=2);
    let elements = (0..dim).map(|i| BasisElement { name: format!("q{}", i + 1), degree: top - i as i64 }).collect();
    GradedBasis::new(elements).expect("generated names are distinct")
}

pub fn random_coefficient<R: Rng>(rng: &mut R) -> Scalar {
    let mut num = rng.gen_range(-3..=3);
    if num == 0 {
        num = 1;
    }
    ratio(num, rng.gen_range(1..=3))
}

/// Every degree `|out| − |in|` realised by some pair of monomials.
pub fn attainable_degrees(basis: &GradedBasis, arity_in: usize, arity_out: usize) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for a in basis.all_monomials(arity_in) {
        for b in basis.all_monomials(arity_out) {
            out.push(basis.word_degree(b.entries()) - basis.word_degree(a.entries()));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// A random operator `S^i → S^j` of the given degree; each admissible
/// matrix entry is filled with probability `density`.
pub fn random_symop<R: Rng>(
    rng: &mut R,
    basis: &GradedBasis,
    arity_in: usize,
    arity_out: usize,
    degree: i64,
    density: f64,
) -> SymOp {
    let mut op = SymOp::zero(arity_in, arity_out, degree);
    let outputs = basis.all_monomials(arity_out);
    for input in basis.all_monomials(arity_in) {
        for output in &outputs {
            let d = basis.word_degree(output.entries()) - basis.word_degree(input.entries());
            if d == degree && rng.gen_bool(density) {
                op.push(input.clone(), output.clone(), random_coefficient(rng));
            }
        }
    }
    op
}

/// Like [`random_symop`] with the degree drawn from the attainable ones.
pub fn random_homogeneous_symop<R: Rng>(
    rng: &mut R,
    basis: &GradedBasis,
    arity_in: usize,
    arity_out: usize,
    density: f64,
) -> SymOp {
    let degrees = attainable_degrees(basis, arity_in, arity_out);
    let degree = degrees.choose(rng).copied().unwrap_or(0);
    random_symop(rng, basis, arity_in, arity_out, degree, density)
}

/// A reduced degree −1 element with up to `terms` random components of
/// genus `≤ g_max` and arities in `1..=arity_max`.
pub fn random_reduced_element<R: Rng>(rng: &mut R, basis: &GradedBasis, g_max: u32, arity_max: usize, terms: usize, density: f64) -> WeylElement {
    let mut h = WeylElement::new(-1, true);
    for _ in 0..terms {
        let g = rng.gen_range(0..=g_max);
        let (i, j) = (rng.gen_range(1..=arity_max), rng.gen_range(1..=arity_max));
        h.add_component(g, &random_symop(rng, basis, i, j, -1, density));
    }
    h
}

/// Like [`random_reduced_element`], but every component reads only basis
/// elements from a random set `A` and writes only elements outside it.
/// Then no gluing along edges survives and `H⋆H = 0`.
pub fn random_square_zero_element<R: Rng>(rng: &mut R, basis: &GradedBasis, g_max: u32, arity_max: usize, terms: usize, density: f64) -> WeylElement {
    let dim = basis.dim();
    let sources: Vec<bool> = loop {
        let pick: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.5)).collect();
        if dim < 2 || (pick.iter().any(|&b| b) && !pick.iter().all(|&b| b)) {
            break pick;
        }
    };
    let raw = random_reduced_element(rng, basis, g_max, arity_max, terms, density);
    let mut h = WeylElement::new(-1, true);
    for (&(g, i, j), op) in raw.components() {
        let mut kept = SymOp::zero(i, j, op.degree);
        for (input, image) in op.entries() {
            if !input.entries().iter().all(|&x| sources[x]) {
                continue;
            }
            for (output, c) in image {
                if output.entries().iter().all(|&x| !sources[x]) {
                    kept.push(input.clone(), output.clone(), c.clone());
                }
            }
        }
        h.add_component(g, &kept);
    }
    h
}
