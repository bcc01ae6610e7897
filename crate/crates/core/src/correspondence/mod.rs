//! Algebras over the cobar construction as families of symmetric maps
//! `φ_{r,t,g}: T^rV → T^tV`, the passage to and from degree −1 elements of
//! the Weyl algebra, and the quadratic relations such a family satisfies.
//!
//! Genus bookkeeping: the relation indexed by `(r, t, g)` glues along
//! `k ≥ 1` edges with `g₁ + g₂ + k − 1 = g`, while the star product puts
//! the same term at `ħ^{g₁+g₂+k}`. So relation `(r, t, g)` is compared with
//! the component `(g + 1, r, t)` of `H⋆H`.

mod file;

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::graded::{factorial, shuffles, unshuffles, FormalVector, GradedBasis, Scalar, TensorWord};
use crate::weyl::{square_zero_report, star, tensor_circ_k, SymOp, TensorOp, Truncation, WeylElement, WeylError};

pub use file::{FamilyFile, MapRecord, TensorEntry};

/// `(r, t, g)`: input arity, output arity, genus.
pub type FamilyKey = (usize, usize, usize);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorrespondenceError {
    #[error("φ_{{{r},{t},{g}}} has a zero arity")]
    ZeroArity { r: usize, t: usize, g: usize },
    #[error("φ_{{{r},{t},{g}}} has arity ({found_in},{found_out})")]
    ArityMismatch { r: usize, t: usize, g: usize, found_in: usize, found_out: usize },
    #[error("φ_{{{r},{t},{g}}} has degree {found}, expected -1")]
    Degree { r: usize, t: usize, g: usize, found: i64 },
    #[error("φ_{{{r},{t},{g}}} is not invariant under permutations of its legs")]
    NotSymmetric { r: usize, t: usize, g: usize },
    #[error("element has degree {0}, expected -1")]
    ElementDegree(i64),
    #[error("malformed family file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A finite family of degree −1 maps, each invariant under permutations of
/// its inputs and of its outputs. The slot `(1, 1, 0)` holds `−d` for the
/// differential `d` of `V`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureFamily {
    maps: BTreeMap<FamilyKey, TensorOp>,
}

/// `ι s` on both sides leaves `op` unchanged.
pub fn is_symmetric(basis: &GradedBasis, op: &TensorOp) -> bool {
    basis.all_words(op.arity_in).iter().all(|w| {
        let image = op.apply(w);
        op.apply_vector(&basis.symmetrize(w)) == image && image.map_linear(|u| basis.symmetrize(u)) == image
    })
}

impl StructureFamily {
    pub fn new() -> Self {
        Self::default()
    }

    /// The family with `φ_{1,1,0} = −d` and nothing else.
    pub fn from_differential(basis: &GradedBasis, d: &TensorOp) -> Result<Self, CorrespondenceError> {
        let mut family = Self::new();
        family.insert(basis, (1, 1, 0), d.scaled(&crate::graded::int(-1)))?;
        Ok(family)
    }

    /// Sets `φ_key`, replacing any previous map. A zero map clears the slot.
    pub fn insert(&mut self, basis: &GradedBasis, key: FamilyKey, op: TensorOp) -> Result<(), CorrespondenceError> {
        let (r, t, g) = key;
        if r == 0 || t == 0 {
            return Err(CorrespondenceError::ZeroArity { r, t, g });
        }
        if (op.arity_in, op.arity_out) != (r, t) {
            return Err(CorrespondenceError::ArityMismatch { r, t, g, found_in: op.arity_in, found_out: op.arity_out });
        }
        if op.is_zero() {
            self.maps.remove(&key);
            return Ok(());
        }
        if op.degree != -1 {
            return Err(CorrespondenceError::Degree { r, t, g, found: op.degree });
        }
        if !is_symmetric(basis, &op) {
            return Err(CorrespondenceError::NotSymmetric { r, t, g });
        }
        self.maps.insert(key, op);
        Ok(())
    }

    pub fn get(&self, key: FamilyKey) -> Option<&TensorOp> {
        self.maps.get(&key)
    }

    pub fn maps(&self) -> impl Iterator<Item = (&FamilyKey, &TensorOp)> {
        self.maps.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// The differential `d = −φ_{1,1,0}` of `V`, zero if the slot is empty.
    pub fn differential(&self) -> TensorOp {
        self.maps.get(&(1, 1, 0)).map_or_else(|| TensorOp::zero(1, 1, -1), |phi| phi.scaled(&crate::graded::int(-1)))
    }
}

/// `H = Σ (1/t!) s φ_{r,t,g} ι ħ^g`.
pub fn family_to_weyl(basis: &GradedBasis, family: &StructureFamily) -> WeylElement {
    let mut h = WeylElement::new(-1, true);
    for (&(_, t, g), phi) in family.maps() {
        let weight = Scalar::new(1.into(), factorial(t));
        h.add_component(g as u32, &phi.descend(basis).scaled(&weight));
    }
    h
}

/// `φ_{r,t,g} = t! ι H_r^{t(g)} s`.
pub fn weyl_to_family(basis: &GradedBasis, h: &WeylElement) -> Result<StructureFamily, CorrespondenceError> {
    if let Some((g, arity_in, arity_out)) = h.unreduced_component() {
        return Err(WeylError::Unreduced { g, arity_in, arity_out }.into());
    }
    if !h.reduced {
        return Err(WeylError::NotFlaggedReduced.into());
    }
    if h.degree != -1 {
        return Err(CorrespondenceError::ElementDegree(h.degree));
    }
    let mut family = StructureFamily::new();
    for (&(g, r, t), op) in h.components() {
        family.insert(basis, (r, t, g as usize), lifted(basis, op, t))?;
    }
    Ok(family)
}

fn lifted(basis: &GradedBasis, op: &SymOp, t: usize) -> TensorOp {
    op.lift(basis).scaled(&Scalar::from_integer(factorial(t)))
}

/// `Σ (1/k!) τ(φ_{m,n,g₂} ∘_k φ_{i,j,g₁})σ` over every pair of maps with
/// `m+i−k = r`, `n+j−k = t`, `g₁+g₂+k−1 = g`, `k ≥ 1`; `σ` pulls the free
/// inputs of the upper map to the front and `τ` shuffles its outputs in
/// among the free outputs of the lower one.
pub fn relation_sum(basis: &GradedBasis, family: &StructureFamily, key: FamilyKey) -> TensorOp {
    let (r, t, g) = key;
    let mut total = TensorOp::zero(r, t, -2);
    let words = basis.all_words(r);
    for (&(m, n, g2), upper) in family.maps() {
        for (&(i, j, g1), lower) in family.maps() {
            let Some(k) = (m + i).checked_sub(r) else { continue };
            if k == 0 || k > m.min(j) || n + j - k != t || g1 + g2 + k - 1 != g {
                continue;
            }
            let glued = tensor_circ_k(basis, upper, lower, k);
            if glued.is_zero() {
                continue;
            }
            let weight = Scalar::new(1.into(), factorial(k));
            let sigmas = unshuffles(r, m - k).expect("block inside the word");
            let taus = shuffles(t, n).expect("block inside the word");
            for w in &words {
                let mut image = FormalVector::new();
                for sigma in &sigmas {
                    let (s, moved) = basis.act(sigma, w).expect("matching length");
                    let glued_image = glued.apply(&moved);
                    if glued_image.is_zero() {
                        continue;
                    }
                    for tau in &taus {
                        image.add_scaled(&basis.act_vector(tau, &glued_image).expect("matching length"), &(s.to_scalar() * &weight));
                    }
                }
                total.push_vector(w.clone(), &image);
            }
        }
    }
    total
}

/// Every `(r, t, g)` with `1 ≤ r, t ≤ arity_max` and `g ≤ g_max`.
pub fn relation_keys(bounds: Truncation) -> Vec<FamilyKey> {
    let a = bounds.arity_max;
    (0..=bounds.g_max as usize)
        .flat_map(|g| (1..=a).flat_map(move |r| (1..=a).map(move |t| (r, t, g))))
        .collect()
}

/// The nonzero relation sums within `bounds`.
pub fn relation_sums(basis: &GradedBasis, family: &StructureFamily, bounds: Truncation) -> BTreeMap<FamilyKey, TensorOp> {
    relation_keys(bounds)
        .into_par_iter()
        .map(|key| (key, relation_sum(basis, family, key)))
        .filter(|(_, op)| !op.is_zero())
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationVerdict {
    Zero { bounds: Truncation },
    /// The first failing relation, ordered by `r + t`, then `g`, then `r`,
    /// with one input word and its image.
    NonZero { r: usize, t: usize, g: usize, input: TensorWord, output: FormalVector<TensorWord> },
}

impl RelationVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, RelationVerdict::Zero { .. })
    }
}

pub fn check_relations(basis: &GradedBasis, family: &StructureFamily, bounds: Truncation) -> RelationVerdict {
    let sums = relation_sums(basis, family, bounds);
    let first = sums.iter().min_by_key(|(&(r, t, g), _)| (r + t, g, r, t));
    match first {
        None => RelationVerdict::Zero { bounds },
        Some((&(r, t, g), op)) => {
            let (input, output) = op.entries().next().map(|(w, v)| (w.clone(), v.clone())).expect("stored sums are nonzero");
            RelationVerdict::NonZero { r, t, g, input, output }
        }
    }
}

/// Outcome of comparing `H⋆H` with the relations of `weyl_to_family(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub square_zero: bool,
    pub relations_zero: bool,
    /// Cells where exactly one side vanishes.
    pub mismatched: Vec<FamilyKey>,
    /// Cells where the relation sum differs from `t! ι (H⋆H) s`.
    pub unequal: Vec<FamilyKey>,
    pub weyl_roundtrip: bool,
    pub family_roundtrip: bool,
    pub nonzero_cells: usize,
}

impl TheoremCheck {
    pub fn passed(&self) -> bool {
        self.square_zero == self.relations_zero
            && self.mismatched.is_empty()
            && self.unequal.is_empty()
            && self.weyl_roundtrip
            && self.family_roundtrip
    }
}

/// Relations `(r, t, g)` within `bounds` against `H⋆H` through genus
/// `g_max + 1`.
pub fn check_theorem(basis: &GradedBasis, h: &WeylElement, bounds: Truncation) -> Result<TheoremCheck, CorrespondenceError> {
    let family = weyl_to_family(basis, h)?;
    let square_cutoff = Truncation::new(bounds.g_max + 1, bounds.arity_max);
    let square = star(basis, h, h, square_cutoff);
    let sums = relation_sums(basis, &family, bounds);
    let mut mismatched = Vec::new();
    let mut unequal = Vec::new();
    for key @ (r, t, g) in relation_keys(bounds) {
        let component = square.component(((g + 1) as u32, r, t));
        let relation = sums.get(&key);
        if component.is_some() != relation.is_some() {
            mismatched.push(key);
        }
        let expected = component.map_or_else(|| TensorOp::zero(r, t, -2), |op| lifted(basis, op, t));
        let found = relation.cloned().unwrap_or_else(|| TensorOp::zero(r, t, -2));
        if expected.entries().ne(found.entries()) {
            unequal.push(key);
        }
    }
    Ok(TheoremCheck {
        square_zero: square_zero_report(basis, h, square_cutoff)?.is_zero(),
        relations_zero: check_relations(basis, &family, bounds).is_zero(),
        mismatched,
        unequal,
        weyl_roundtrip: family_to_weyl(basis, &family) == *h,
        family_roundtrip: weyl_to_family(basis, &family_to_weyl(basis, &family))? == family,
        nonzero_cells: sums.len(),
    })
}

#[cfg(test)]
mod tests;
