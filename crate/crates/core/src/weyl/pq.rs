//! Coordinate form of `W(V)`: normal-ordered sums of `q_J p^I ħ^g`, with the
//! product computed by rewriting letter words under `[p^ℓ, q_ℓ'] = ħδ`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::{SymOp, Truncation, WeylElement, WeylError};
use crate::graded::{format_scalar, FormalVector, GradedBasis, Scalar, Sign, SymMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Q(usize),
    P(usize),
}

/// `q_q p^p ħ^genus` with both multi-indices canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PQTerm {
    pub genus: u32,
    pub q: SymMonomial,
    pub p: SymMonomial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PQExpression {
    terms: FormalVector<PQTerm>,
}

impl PQExpression {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds `coeff · ħ^genus · word` from a word that must already have
    /// every `q` left of every `p`.
    pub fn from_letters(basis: &GradedBasis, letters: &[Letter], coeff: Scalar, genus: u32) -> Result<Self, WeylError> {
        if first_pq_pair(letters).is_some() {
            return Err(WeylError::NotNormalOrdered);
        }
        Ok(normal_order(basis, letters, coeff, genus))
    }

    pub fn add_term(&mut self, term: PQTerm, coeff: Scalar) {
        self.terms.add_term(term, coeff);
    }

    pub fn add_assign(&mut self, other: &PQExpression) {
        self.terms += &other.terms;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PQTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, term: &PQTerm) -> Scalar {
        self.terms.coeff(term)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncated(&self, cutoff: Truncation) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(t, _)| cutoff.admits(t.genus, t.p.len(), t.q.len()))
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();
        Self { terms }
    }

    /// Renders e.g. `q²p² + ħ qp`. A `p` is named after its `q` when the
    /// name starts with `q`, otherwise it is written `∂name`.
    pub fn format(&self, basis: &GradedBasis) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (term, c)) in self.terms.iter().enumerate() {
            let negative = *c < Scalar::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut parts = Vec::new();
            let letters = format_block(basis, &term.q, false) + &format_block(basis, &term.p, true);
            if !magnitude.is_one() || (letters.is_empty() && term.genus == 0) {
                parts.push(format_scalar(&magnitude));
            }
            if term.genus > 0 {
                parts.push(format!("ħ{}", superscript(term.genus as usize)));
            }
            if !letters.is_empty() {
                parts.push(letters);
            }
            out.push_str(&parts.join(" "));
        }
        out
    }
}

fn superscript(n: usize) -> String {
    if n == 1 {
        return String::new();
    }
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|d| DIGITS[d.to_digit(10).unwrap() as usize]).collect()
}

fn format_block(basis: &GradedBasis, m: &SymMonomial, dual: bool) -> String {
    let mut out = String::new();
    let entries = m.entries();
    let mut i = 0;
    while i < entries.len() {
        let run = entries[i..].iter().take_while(|&&e| e == entries[i]).count();
        let name = basis.name(entries[i]);
        if dual {
            match name.strip_prefix('q') {
                Some(rest) => write!(out, "p{rest}").unwrap(),
                None => write!(out, "∂{name}").unwrap(),
            }
        } else {
            out.push_str(name);
        }
        out.push_str(&superscript(run));
        i += run;
    }
    out
}

fn first_pq_pair(letters: &[Letter]) -> Option<usize> {
    letters.windows(2).position(|w| matches!(w, [Letter::P(_), Letter::Q(_)]))
}

/// Rewrites an arbitrary word into normal order. The leftmost `p q` pair is
/// rewritten first; the resulting `q` and `p` blocks are then sorted with
/// Koszul signs.
pub fn normal_order(basis: &GradedBasis, letters: &[Letter], coeff: Scalar, genus: u32) -> PQExpression {
    let mut out = PQExpression::new();
    let mut pending: BTreeMap<(u32, Vec<Letter>), Scalar> = BTreeMap::new();
    pending.insert((genus, letters.to_vec()), coeff);
    while let Some(((genus, word), c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        let Some(at) = first_pq_pair(&word) else {
            if let Some(term) = split_blocks(basis, &word, genus) {
                out.add_term(term.1, term.0.to_scalar() * c);
            }
            continue;
        };
        let (Letter::P(a), Letter::Q(b)) = (word[at], word[at + 1]) else { unreachable!() };
        let mut swapped = word.clone();
        swapped.swap(at, at + 1);
        let sign = Sign::from_parity(basis.is_odd(a) && basis.is_odd(b)).to_scalar();
        *pending.entry((genus, swapped)).or_insert_with(Scalar::zero) += &c * sign;
        if a == b {
            let mut contracted = word;
            contracted.drain(at..at + 2);
            *pending.entry((genus + 1, contracted)).or_insert_with(Scalar::zero) += c;
        }
    }
    out
}

fn split_blocks(basis: &GradedBasis, word: &[Letter], genus: u32) -> Option<(Sign, PQTerm)> {
    let qs: Vec<usize> = word.iter().filter_map(|l| if let Letter::Q(i) = l { Some(*i) } else { None }).collect();
    let ps: Vec<usize> = word.iter().filter_map(|l| if let Letter::P(i) = l { Some(*i) } else { None }).collect();
    let (sq, q) = basis.project(&qs)?;
    let (sp, p) = basis.project(&ps)?;
    Some((sq * sp, PQTerm { genus, q, p }))
}

fn term_letters(term: &PQTerm) -> impl Iterator<Item = Letter> + '_ {
    term.q.entries().iter().map(|&i| Letter::Q(i)).chain(term.p.entries().iter().map(|&i| Letter::P(i)))
}

/// The product in the free algebra on `p`, `q`, `ħ` modulo the commutation
/// relations, brought back to normal order.
pub fn pq_product(basis: &GradedBasis, a: &PQExpression, b: &PQExpression) -> PQExpression {
    let mut out = PQExpression::new();
    for (ta, ca) in a.iter() {
        for (tb, cb) in b.iter() {
            let word: Vec<Letter> = term_letters(ta).chain(term_letters(tb)).collect();
            out.add_assign(&normal_order(basis, &word, ca * cb, ta.genus + tb.genus));
        }
    }
    out
}

/// `∂/∂q_ℓ` as a graded left derivation on a canonical monomial.
fn derive(basis: &GradedBasis, letter: usize, x: &SymMonomial) -> FormalVector<SymMonomial> {
    let mut out = FormalVector::new();
    let odd = basis.is_odd(letter);
    let mut passed_odd = false;
    for (r, &e) in x.entries().iter().enumerate() {
        if e == letter {
            let mut rest = x.entries().to_vec();
            rest.remove(r);
            let sign = Sign::from_parity(odd && passed_odd);
            out.add_term(SymMonomial::from_sorted(rest), sign.to_scalar());
        }
        if basis.is_odd(e) {
            passed_odd = !passed_odd;
        }
    }
    out
}

/// `q_J p^I` acting on `SV`: the `p`s act as derivations, rightmost first,
/// then the result is multiplied by `q_J` on the left.
pub(crate) fn apply_term(basis: &GradedBasis, q: &SymMonomial, p: &SymMonomial, x: &SymMonomial) -> FormalVector<SymMonomial> {
    let mut v = FormalVector::from_term(x.clone(), Scalar::one());
    for &letter in p.entries().iter().rev() {
        v = v.map_linear(|m| derive(basis, letter, m));
    }
    v.map_linear(|y| {
        let mut entries = q.entries().to_vec();
        entries.extend_from_slice(y.entries());
        match basis.project(&entries) {
            Some((s, m)) => FormalVector::from_term(m, s.to_scalar()),
            None => FormalVector::new(),
        }
    })
}

/// `p^K q_K` as a scalar.
fn pairing(basis: &GradedBasis, k: &SymMonomial) -> Scalar {
    apply_term(basis, &SymMonomial::unit(), k, k).coeff(&SymMonomial::unit())
}

/// Coordinates `f = Σ f_I^J q_J p^I`, placed at `ħ^genus`.
pub fn op_to_pq(basis: &GradedBasis, f: &SymOp, genus: u32) -> PQExpression {
    let mut out = PQExpression::new();
    for (input, image) in f.entries() {
        let norm = pairing(basis, input);
        for (output, c) in image {
            out.add_term(PQTerm { genus, q: output.clone(), p: input.clone() }, c / &norm);
        }
    }
    out
}

/// Sum of [`op_to_pq`] over all components.
pub fn weyl_to_pq(basis: &GradedBasis, h: &WeylElement) -> PQExpression {
    let mut out = PQExpression::new();
    for (&(g, _, _), op) in h.components() {
        out.add_assign(&op_to_pq(basis, op, g));
    }
    out
}

/// Inverse of [`weyl_to_pq`]: each term `q_J p^I ħ^g` becomes the
/// `(g, |I|, |J|)` component, evaluated on `S^{|I|}V`.
pub fn pq_to_op(basis: &GradedBasis, e: &PQExpression) -> Result<WeylElement, WeylError> {
    let mut degree = None;
    let mut ops: BTreeMap<(u32, usize, usize), SymOp> = BTreeMap::new();
    for (term, c) in e.iter() {
        let d = basis.word_degree(term.q.entries()) - basis.word_degree(term.p.entries());
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => return Err(WeylError::Inhomogeneous(prev, d)),
            _ => {}
        }
        let key = (term.genus, term.p.len(), term.q.len());
        let op = ops.entry(key).or_insert_with(|| SymOp::zero(key.1, key.2, d));
        let image = apply_term(basis, &term.q, &term.p, &term.p).scaled(c);
        op.push_vector(term.p.clone(), &image);
    }
    let mut h = WeylElement::new(degree.unwrap_or(0), true);
    for (&(g, _, _), op) in &ops {
        h.add_component(g, op);
    }
    h.reduced = h.unreduced_component().is_none();
    Ok(h)
}
