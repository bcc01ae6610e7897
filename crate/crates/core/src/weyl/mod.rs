//! Operators between symmetric and tensor powers of a graded vector space,
//! the partial gluings `∘_k`, and the Weyl-algebra star product
//! `g⋆f = Σ_k (g∘_k f) ħ^k`.
//!
//! `ħ` is never a symbolic variable: it is the genus index of a
//! [`WeylElement`] component, and every product takes an explicit
//! [`Truncation`].

mod circ;
mod opfile;
mod pq;
pub mod random;
mod square_zero;

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::graded::{FormalVector, GradedBasis, GradedError, Scalar, SymMonomial, TensorWord};

pub use circ::{check_circ_k_exhaustive, compare_circ_k_check, star, sym_circ_k, tensor_circ_k, CosetReading};
#[cfg(test)]
pub(crate) use circ::compare_circ_k_with;
pub use opfile::{ComponentRecord, OperatorFile};
pub use pq::{normal_order, op_to_pq, pq_product, pq_to_op, weyl_to_pq, Letter, PQExpression, PQTerm};
pub use square_zero::{square_zero_report, SquareZeroVerdict};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeylError {
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("entry {input} -> {output} has degree {found}, operator degree is {expected}")]
    DegreeMismatch { input: String, output: String, found: i64, expected: i64 },
    #[error("entry arity ({found_in},{found_out}) does not match operator arity ({arity_in},{arity_out})")]
    ArityMismatch { arity_in: usize, arity_out: usize, found_in: usize, found_out: usize },
    #[error("monomial {0:?} is not in canonical sorted form")]
    NonCanonical(Vec<String>),
    #[error("monomial {0:?} vanishes (repeated odd element)")]
    VanishingMonomial(Vec<String>),
    #[error("duplicate component g={g} in={input:?} out={output:?}")]
    DuplicateComponent { g: u32, input: Vec<String>, output: Vec<String> },
    #[error("malformed coefficient `{0}`")]
    BadCoefficient(String),
    #[error("element is not reduced: component (g={g}, in={arity_in}, out={arity_out}) has a zero arity")]
    Unreduced { g: u32, arity_in: usize, arity_out: usize },
    #[error("element is not flagged as reduced")]
    NotFlaggedReduced,
    #[error("expression is not normal ordered: a p precedes a q")]
    NotNormalOrdered,
    #[error("expression is not homogeneous: degrees {0} and {1}")]
    Inhomogeneous(i64, i64),
    #[error("operands live on different bases")]
    BasisMismatch,
    #[error("malformed operator file: {0}")]
    Malformed(String),
}

/// Explicit cutoff: results are exact for genus `≤ g_max` and arities
/// `≤ arity_max`, and absent above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub g_max: u32,
    pub arity_max: usize,
}

impl Truncation {
    pub fn new(g_max: u32, arity_max: usize) -> Self {
        Self { g_max, arity_max }
    }

    pub fn admits(&self, g: u32, arity_in: usize, arity_out: usize) -> bool {
        g <= self.g_max && arity_in <= self.arity_max && arity_out <= self.arity_max
    }
}

/// A homogeneous linear map `S^iV → S^jV`, stored as a sparse matrix on
/// canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymOp {
    pub arity_in: usize,
    pub arity_out: usize,
    pub degree: i64,
    entries: BTreeMap<SymMonomial, FormalVector<SymMonomial>>,
}

/// A homogeneous linear map `T^mV → T^nV` given on tensor basis words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOp {
    pub arity_in: usize,
    pub arity_out: usize,
    pub degree: i64,
    entries: BTreeMap<TensorWord, FormalVector<TensorWord>>,
}

impl SymOp {
    pub fn zero(arity_in: usize, arity_out: usize, degree: i64) -> Self {
        Self { arity_in, arity_out, degree, entries: BTreeMap::new() }
    }

    /// The identity on `S^1V`.
    pub fn identity(basis: &GradedBasis) -> Self {
        let mut op = Self::zero(1, 1, 0);
        for i in 0..basis.dim() {
            let m = SymMonomial::from_sorted(vec![i]);
            op.push(m.clone(), m, crate::graded::int(1));
        }
        op
    }

    /// Adds `coeff · output` to the image of `input`, checking arity and degree.
    pub fn add_entry(
        &mut self,
        basis: &GradedBasis,
        input: SymMonomial,
        output: SymMonomial,
        coeff: Scalar,
    ) -> Result<(), WeylError> {
        if input.len() != self.arity_in || output.len() != self.arity_out {
            return Err(WeylError::ArityMismatch {
                arity_in: self.arity_in,
                arity_out: self.arity_out,
                found_in: input.len(),
                found_out: output.len(),
            });
        }
        let found = basis.word_degree(output.entries()) - basis.word_degree(input.entries());
        if found != self.degree {
            return Err(WeylError::DegreeMismatch {
                input: basis.format_monomial(&input),
                output: basis.format_monomial(&output),
                found,
                expected: self.degree,
            });
        }
        self.push(input, output, coeff);
        Ok(())
    }

    pub(crate) fn push(&mut self, input: SymMonomial, output: SymMonomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.entries.entry(input.clone()).or_default();
        slot.add_term(output, coeff);
        if slot.is_zero() {
            self.entries.remove(&input);
        }
    }

    pub(crate) fn push_vector(&mut self, input: SymMonomial, output: &FormalVector<SymMonomial>) {
        for (m, c) in output {
            self.push(input.clone(), m.clone(), c.clone());
        }
    }

    pub fn apply(&self, input: &SymMonomial) -> FormalVector<SymMonomial> {
        self.entries.get(input).cloned().unwrap_or_default()
    }

    pub fn apply_vector(&self, v: &FormalVector<SymMonomial>) -> FormalVector<SymMonomial> {
        v.map_linear(|m| self.apply(m))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&SymMonomial, &FormalVector<SymMonomial>)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(self.arity_in, self.arity_out, self.degree);
        for (k, v) in &self.entries {
            out.push_vector(k.clone(), &v.scaled(factor));
        }
        out
    }

    pub fn add_assign(&mut self, other: &SymOp) {
        debug_assert_eq!((self.arity_in, self.arity_out), (other.arity_in, other.arity_out));
        for (k, v) in &other.entries {
            self.push_vector(k.clone(), v);
        }
    }

    /// `ι∘f∘s`, as a map on tensor words.
    pub fn lift(&self, basis: &GradedBasis) -> TensorOp {
        let mut out = TensorOp::zero(self.arity_in, self.arity_out, self.degree);
        for w in basis.all_words(self.arity_in) {
            if let Some((sign, m)) = basis.project(&w.entries) {
                let image = basis.iota_vector(&self.apply(&m));
                out.push_vector(w, &image.scaled(&sign.to_scalar()));
            }
        }
        out
    }
}

impl TensorOp {
    pub fn zero(arity_in: usize, arity_out: usize, degree: i64) -> Self {
        Self { arity_in, arity_out, degree, entries: BTreeMap::new() }
    }

    pub fn add_entry(
        &mut self,
        basis: &GradedBasis,
        input: TensorWord,
        output: TensorWord,
        coeff: Scalar,
    ) -> Result<(), WeylError> {
        if input.len() != self.arity_in || output.len() != self.arity_out {
            return Err(WeylError::ArityMismatch {
                arity_in: self.arity_in,
                arity_out: self.arity_out,
                found_in: input.len(),
                found_out: output.len(),
            });
        }
        let found = basis.word_degree(&output.entries) - basis.word_degree(&input.entries);
        if found != self.degree {
            return Err(WeylError::DegreeMismatch {
                input: basis.format_word(&input),
                output: basis.format_word(&output),
                found,
                expected: self.degree,
            });
        }
        self.push_vector(input, &FormalVector::from_term(output, coeff));
        Ok(())
    }

    pub(crate) fn push_vector(&mut self, input: TensorWord, output: &FormalVector<TensorWord>) {
        if output.is_zero() {
            return;
        }
        let slot = self.entries.entry(input.clone()).or_default();
        *slot += output;
        if slot.is_zero() {
            self.entries.remove(&input);
        }
    }

    pub fn apply(&self, input: &TensorWord) -> FormalVector<TensorWord> {
        self.entries.get(input).cloned().unwrap_or_default()
    }

    pub fn apply_vector(&self, v: &FormalVector<TensorWord>) -> FormalVector<TensorWord> {
        v.map_linear(|w| self.apply(w))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TensorWord, &FormalVector<TensorWord>)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(self.arity_in, self.arity_out, self.degree);
        for (k, v) in &self.entries {
            out.push_vector(k.clone(), &v.scaled(factor));
        }
        out
    }

    pub fn add_assign(&mut self, other: &TensorOp) {
        debug_assert_eq!((self.arity_in, self.arity_out), (other.arity_in, other.arity_out));
        for (k, v) in &other.entries {
            self.push_vector(k.clone(), v);
        }
    }

    /// `s∘φ∘ι`, as a map on monomials.
    pub fn descend(&self, basis: &GradedBasis) -> SymOp {
        let mut out = SymOp::zero(self.arity_in, self.arity_out, self.degree);
        for m in basis.all_monomials(self.arity_in) {
            let image = basis.project_vector(&self.apply_vector(&basis.iota(&m)));
            out.push_vector(m, &image);
        }
        out
    }
}

/// Key of a Weyl-element component: `(genus, arity_in, arity_out)`.
pub type ComponentKey = (u32, usize, usize);

/// An element `Σ_g σ_(g) ħ^g` of `W(V)`, stored as its finitely many
/// nonzero components `(σ_(g))_i^j : S^iV → S^jV`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub degree: i64,
    pub reduced: bool,
    /// Set when the element is the output of a truncated computation.
    pub truncation: Option<Truncation>,
    components: BTreeMap<ComponentKey, SymOp>,
}

impl WeylElement {
    pub fn new(degree: i64, reduced: bool) -> Self {
        Self { degree, reduced, truncation: None, components: BTreeMap::new() }
    }

    pub fn from_component(genus: u32, op: SymOp) -> Self {
        let reduced = op.arity_in > 0 && op.arity_out > 0;
        let mut h = Self::new(op.degree, reduced);
        h.add_component(genus, &op);
        h
    }

    pub fn add_component(&mut self, genus: u32, op: &SymOp) {
        let key = (genus, op.arity_in, op.arity_out);
        let slot = self
            .components
            .entry(key)
            .or_insert_with(|| SymOp::zero(op.arity_in, op.arity_out, op.degree));
        slot.add_assign(op);
        if slot.is_zero() {
            self.components.remove(&key);
        }
    }

    pub fn component(&self, key: ComponentKey) -> Option<&SymOp> {
        self.components.get(&key)
    }

    pub fn components(&self) -> impl Iterator<Item = (&ComponentKey, &SymOp)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// First component with a zero arity, if any.
    pub fn unreduced_component(&self) -> Option<ComponentKey> {
        self.components.keys().copied().find(|&(_, i, j)| i == 0 || j == 0)
    }

    pub fn max_genus(&self) -> u32 {
        self.components.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn max_arity(&self) -> usize {
        self.components.keys().map(|k| k.1.max(k.2)).max().unwrap_or(0)
    }

    /// Drops components outside the cutoff.
    pub fn truncated(&self, t: Truncation) -> Self {
        let mut out = self.clone();
        out.components.retain(|&(g, i, j), _| t.admits(g, i, j));
        out.truncation = Some(t);
        out
    }
}

#[cfg(test)]
mod tests;
