//! Graded vector spaces with a fixed homogeneous basis: Koszul signs,
//! the symmetric-group action on tensor words, symmetrisation `ι` and
//! projection `s` between `TV` and `SV`, and (un)shuffle sums.
//!
//! Everything is expressed on basis words. A tensor word `v₁⊗…⊗v_k` is a
//! list of basis indices; a symmetric monomial is the same list sorted in
//! basis order. Odd basis elements anticommute, so a monomial with a
//! repeated odd index vanishes.

pub mod checks;
mod perm;
mod scalar;
mod vector;

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use perm::{next_permutation, shuffles, unshuffles, Permutation};
pub use scalar::{binomial, factorial, format_scalar, int, inv_factorial, parse_scalar, ratio, Scalar};
pub use vector::FormalVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("permutation of {perm} letters applied to a word of length {word}")]
    LengthMismatch { perm: usize, word: usize },
    #[error("shuffle block {l} out of range for {k} letters")]
    ShuffleRange { k: usize, l: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("duplicate basis element name `{0}`")]
    DuplicateName(String),
    #[error("unknown basis element `{0}`")]
    UnknownName(String),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_scalar(self) -> Scalar {
        match self {
            Sign::Plus => int(1),
            Sign::Minus => int(-1),
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

/// A homogeneous basis `{q_ℓ}` of a finite-dimensional graded vector space.
/// The construction order is the canonical order of symmetric monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    elements: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TensorWord {
    pub entries: Vec<usize>,
}

/// A symmetric monomial, entries sorted in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymMonomial {
    entries: Vec<usize>,
}

impl TensorWord {
    pub fn new(entries: Vec<usize>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn concat(&self, other: &TensorWord) -> TensorWord {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        TensorWord { entries }
    }

    pub fn split_at(&self, at: usize) -> (TensorWord, TensorWord) {
        let (a, b) = self.entries.split_at(at);
        (TensorWord::new(a.to_vec()), TensorWord::new(b.to_vec()))
    }
}

impl SymMonomial {
    /// The unit `1 ∈ S⁰V`.
    pub fn unit() -> Self {
        Self { entries: Vec::new() }
    }

    /// Wraps entries that are already sorted. Panics in debug builds otherwise.
    pub fn from_sorted(entries: Vec<usize>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] <= w[1]));
        Self { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_word(&self) -> TensorWord {
        TensorWord::new(self.entries.clone())
    }
}

impl GradedBasis {
    pub fn new(elements: Vec<BasisElement>) -> Result<Self, GradedError> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.name.clone(), i).is_some() {
                return Err(GradedError::DuplicateName(e.name.clone()));
            }
        }
        Ok(Self { elements, index })
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs(pairs: &[(&str, i64)]) -> Result<Self, GradedError> {
        Self::new(pairs.iter().map(|&(n, d)| BasisElement { name: n.to_string(), degree: d }).collect())
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.elements[idx].name
    }

    pub fn lookup(&self, name: &str) -> Result<usize, GradedError> {
        self.index.get(name).copied().ok_or_else(|| GradedError::UnknownName(name.to_string()))
    }

    pub fn degree(&self, idx: usize) -> i64 {
        self.elements[idx].degree
    }

    pub fn is_odd(&self, idx: usize) -> bool {
        self.elements[idx].degree.rem_euclid(2) == 1
    }

    pub fn word_degree(&self, entries: &[usize]) -> i64 {
        entries.iter().map(|&i| self.degree(i)).sum()
    }

    pub fn word_is_odd(&self, entries: &[usize]) -> bool {
        entries.iter().filter(|&&i| self.is_odd(i)).count() % 2 == 1
    }

    /// `ε(σ, v̄)`: the sign of the permutation that `σ` induces on the odd
    /// entries of `v̄`.
    pub fn koszul_sign(&self, sigma: &Permutation, word: &TensorWord) -> Result<Sign, GradedError> {
        if sigma.len() != word.len() {
            return Err(GradedError::LengthMismatch { perm: sigma.len(), word: word.len() });
        }
        let odd: Vec<usize> = (0..word.len()).filter(|&i| self.is_odd(word.entries[i])).collect();
        let mut inversions = 0usize;
        for (a, &i) in odd.iter().enumerate() {
            for &j in &odd[a + 1..] {
                if sigma.image(i) > sigma.image(j) {
                    inversions += 1;
                }
            }
        }
        Ok(Sign::from_parity(inversions % 2 == 1))
    }

    /// `σ(v₁⊗…⊗v_k) = ε(σ, v̄) v_{σ⁻¹(1)}⊗…⊗v_{σ⁻¹(k)}`.
    pub fn act(&self, sigma: &Permutation, word: &TensorWord) -> Result<(Sign, TensorWord), GradedError> {
        let sign = self.koszul_sign(sigma, word)?;
        let mut entries = vec![0; word.len()];
        for (i, &e) in word.entries.iter().enumerate() {
            entries[sigma.image(i)] = e;
        }
        Ok((sign, TensorWord::new(entries)))
    }

    pub fn act_vector(
        &self,
        sigma: &Permutation,
        v: &FormalVector<TensorWord>,
    ) -> Result<FormalVector<TensorWord>, GradedError> {
        let mut out = FormalVector::new();
        for (w, c) in v {
            let (sign, moved) = self.act(sigma, w)?;
            out.add_term(moved, sign.to_scalar() * c);
        }
        Ok(out)
    }

    /// `||v̄||`, the Koszul sign of reversing the word.
    pub fn reversal_sign(&self, word: &[usize]) -> Sign {
        let odd = word.iter().filter(|&&i| self.is_odd(i)).count();
        Sign::from_parity(matches!(odd % 4, 2 | 3))
    }

    /// `s: T^kV → S^kV`. Returns `None` when the class vanishes (a repeated
    /// odd entry), otherwise the sorted monomial and the Koszul sign of the
    /// sorting permutation.
    pub fn project(&self, word: &[usize]) -> Option<(Sign, SymMonomial)> {
        let mut entries = word.to_vec();
        let mut odd_inversions = 0usize;
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                let (a, b) = (entries[i], entries[j]);
                if a == b && self.is_odd(a) {
                    return None;
                }
                if a > b && self.is_odd(a) && self.is_odd(b) {
                    odd_inversions += 1;
                }
            }
        }
        entries.sort_unstable();
        Some((Sign::from_parity(odd_inversions % 2 == 1), SymMonomial { entries }))
    }

    pub fn project_vector(&self, v: &FormalVector<TensorWord>) -> FormalVector<SymMonomial> {
        let mut out = FormalVector::new();
        for (w, c) in v {
            if let Some((sign, m)) = self.project(&w.entries) {
                out.add_term(m, sign.to_scalar() * c);
            }
        }
        out
    }

    /// Canonicalises an arbitrary list of entries into a monomial, with sign.
    pub fn monomial(&self, entries: &[usize]) -> Option<(Sign, SymMonomial)> {
        self.project(entries)
    }

    /// `ι[v] = (1/k!) Σ_σ σv`. Terms are grouped by distinct rearrangement of
    /// the multiset, so each word carries `∏ mult! / k!`.
    pub fn iota(&self, m: &SymMonomial) -> FormalVector<TensorWord> {
        let k = m.len();
        let mut out = FormalVector::new();
        if self.project(&m.entries).is_none() {
            return out;
        }
        let mut multiplicity = scalar::int(1);
        let mut run = 1usize;
        for i in 1..=k {
            if i < k && m.entries[i] == m.entries[i - 1] {
                run += 1;
            } else {
                multiplicity *= Scalar::from_integer(factorial(run));
                run = 1;
            }
        }
        let weight = multiplicity * inv_factorial(k);
        let mut arrangement = m.entries.clone();
        loop {
            // arrangement sorts back to m with the same sign it acquires
            let (sign, _) = self.project(&arrangement).expect("nonzero monomial");
            out.add_term(TensorWord::new(arrangement.clone()), sign.to_scalar() * &weight);
            if !next_permutation(&mut arrangement) {
                break;
            }
        }
        out
    }

    pub fn iota_vector(&self, v: &FormalVector<SymMonomial>) -> FormalVector<TensorWord> {
        v.map_linear(|m| self.iota(m))
    }

    /// `ι∘s` on a single word.
    pub fn symmetrize(&self, word: &TensorWord) -> FormalVector<TensorWord> {
        match self.project(&word.entries) {
            Some((sign, m)) => self.iota(&m).scaled(&sign.to_scalar()),
            None => FormalVector::new(),
        }
    }

    /// `μ^{k,ℓ}(v) = Σ σv` over the `(k,ℓ)` unshuffles.
    pub fn mu_unshuffle_sum(&self, l: usize, word: &TensorWord) -> Result<FormalVector<TensorWord>, GradedError> {
        self.sum_over(&unshuffles(word.len(), l)?, word)
    }

    /// `ν_{k,ℓ}(v) = Σ σv` over the `(k,ℓ)` shuffles.
    pub fn nu_shuffle_sum(&self, l: usize, word: &TensorWord) -> Result<FormalVector<TensorWord>, GradedError> {
        self.sum_over(&shuffles(word.len(), l)?, word)
    }

    fn sum_over(&self, perms: &[Permutation], word: &TensorWord) -> Result<FormalVector<TensorWord>, GradedError> {
        let mut out = FormalVector::new();
        for p in perms {
            let (sign, w) = self.act(p, word)?;
            out.add_term(w, sign.to_scalar());
        }
        Ok(out)
    }

    /// `(s^ℓ ⊗ s^{k-ℓ})` applied to a word: project the first `ℓ` entries and
    /// the remaining ones separately.
    pub fn project_split(&self, word: &TensorWord, l: usize) -> Option<(Sign, (SymMonomial, SymMonomial))> {
        let (a, b) = word.entries.split_at(l);
        let (sa, ma) = self.project(a)?;
        let (sb, mb) = self.project(b)?;
        Some((sa * sb, (ma, mb)))
    }

    /// Every word of length `len` over the basis, in lexicographic order.
    pub fn all_words(&self, len: usize) -> Vec<TensorWord> {
        let d = self.dim();
        if d == 0 {
            return if len == 0 { vec![TensorWord::default()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        let mut current = vec![0usize; len];
        loop {
            out.push(TensorWord::new(current.clone()));
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                current[i] += 1;
                if current[i] < d {
                    break;
                }
                current[i] = 0;
            }
        }
    }

    /// Every nonzero canonical monomial of size `len`, in lexicographic order.
    pub fn all_monomials(&self, len: usize) -> Vec<SymMonomial> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(len);
        self.push_monomials(len, 0, &mut current, &mut out);
        out
    }

    fn push_monomials(&self, len: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<SymMonomial>) {
        if current.len() == len {
            out.push(SymMonomial { entries: current.clone() });
            return;
        }
        for i in start..self.dim() {
            if current.last() == Some(&i) && self.is_odd(i) {
                continue;
            }
            current.push(i);
            self.push_monomials(len, i, current, out);
            current.pop();
        }
    }

    pub fn format_monomial(&self, m: &SymMonomial) -> String {
        if m.is_empty() {
            return "1".to_string();
        }
        m.entries.iter().map(|&i| self.name(i)).collect::<Vec<_>>().join("⊙")
    }

    pub fn format_word(&self, w: &TensorWord) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.entries.iter().map(|&i| self.name(i)).collect::<Vec<_>>().join("⊗")
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

#[cfg(test)]
mod tests;
