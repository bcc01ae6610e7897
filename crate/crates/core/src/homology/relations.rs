//! The relations of an involutive Lie bialgebra as combinations of
//! two-vertex graphs built from `μ = 1_{2,1,0}` and `Δ = 1_{1,2,0}`.

use std::fmt;
use std::str::FromStr;

use crate::cobar::{canonicalize, GenLabel, GraphVector, PropGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `[μ]∘₁[μ](1+σ+σ²)` in `(3,1,0)`.
    Jacobi,
    /// `(1+σ+σ²)[Δ]∘₁[Δ]` in `(1,3,0)`.
    CoJacobi,
    /// `[Δ]∘[μ] + (1+τ)[μ]∘₁[Δ](1+τ)` in `(2,2,0)`.
    FiveTerm,
    /// `[μ]∘[Δ]` in `(1,1,1)`.
    Involutivity,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::Jacobi, Relation::CoJacobi, Relation::FiveTerm, Relation::Involutivity];

    /// The `(r, t, g)` cell the class lives in.
    pub fn cell(self) -> (usize, usize, usize) {
        match self {
            Relation::Jacobi => (3, 1, 0),
            Relation::CoJacobi => (1, 3, 0),
            Relation::FiveTerm => (2, 2, 0),
            Relation::Involutivity => (1, 1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::Jacobi => "jacobi",
            Relation::CoJacobi => "cojacobi",
            Relation::FiveTerm => "five_term",
            Relation::Involutivity => "involutivity",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Relation::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown relation {s}"))
    }
}

/// `upper ∘ lower` along `k` edges, upper vertex listed first.
/// `lower_inputs` are the input legs on the lower vertex, `upper_outputs`
/// the output legs on the upper one.
fn composite(upper: GenLabel, lower: GenLabel, k: usize, arity: (usize, usize), lower_inputs: &[usize], upper_outputs: &[usize]) -> GraphVector {
    let inputs = (0..arity.0).map(|l| usize::from(lower_inputs.contains(&l))).collect();
    let outputs = (0..arity.1).map(|l| usize::from(!upper_outputs.contains(&l))).collect();
    let graph = PropGraph::new(vec![upper, lower], inputs, outputs, vec![vec![0, 0], vec![k, 0]]).expect("well-formed composite");
    let canon = canonicalize(&graph).expect("valid graph").expect("trees have no odd automorphisms");
    GraphVector::from_term(canon.graph, canon.sign.to_scalar())
}

pub fn relation_class(relation: Relation) -> GraphVector {
    let mu = GenLabel::new(2, 1, 0).unwrap();
    let delta = GenLabel::new(1, 2, 0).unwrap();
    let mut out = GraphVector::new();
    match relation {
        Relation::Jacobi => {
            // μ(μ(x_a, x_b), x_c) over the cyclic orders of the inputs
            for pair in [[0, 1], [1, 2], [2, 0]] {
                out += &composite(mu, mu, 1, (3, 1), &pair, &[0]);
            }
        }
        Relation::CoJacobi => {
            for pair in [[0, 1], [1, 2], [2, 0]] {
                out += &composite(delta, delta, 1, (1, 3), &[0], &pair);
            }
        }
        Relation::FiveTerm => {
            out += &composite(delta, mu, 1, (2, 2), &[0, 1], &[0, 1]);
            for input in 0..2 {
                for output in 0..2 {
                    out += &composite(mu, delta, 1, (2, 2), &[input], &[output]);
                }
            }
        }
        Relation::Involutivity => {
            out += &composite(mu, delta, 2, (1, 1), &[0], &[0]);
        }
    }
    out
}
