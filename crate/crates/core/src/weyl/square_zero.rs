use super::{star, Truncation, WeylElement, WeylError};
use crate::graded::{FormalVector, GradedBasis, SymMonomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareZeroVerdict {
    /// `H⋆H` vanishes on every component admitted by the cutoff.
    Zero { cutoff: Truncation },
    /// The first nonzero component, ordered by total arity, then genus,
    /// then input arity, with one input monomial and its image.
    NonZero {
        genus: u32,
        arity_in: usize,
        arity_out: usize,
        input: SymMonomial,
        output: FormalVector<SymMonomial>,
    },
}

impl SquareZeroVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, SquareZeroVerdict::Zero { .. })
    }
}

pub fn square_zero_report(basis: &GradedBasis, h: &WeylElement, cutoff: Truncation) -> Result<SquareZeroVerdict, WeylError> {
    if let Some((g, arity_in, arity_out)) = h.unreduced_component() {
        return Err(WeylError::Unreduced { g, arity_in, arity_out });
    }
    if !h.reduced {
        return Err(WeylError::NotFlaggedReduced);
    }
    let square = star(basis, h, h, cutoff);
    let first = square
        .components()
        .min_by_key(|(&(g, i, j), _)| (i + j, g, i, j))
        .map(|(&key, op)| (key, op.entries().next().map(|(m, v)| (m.clone(), v.clone()))));
    Ok(match first {
        None => SquareZeroVerdict::Zero { cutoff },
        Some(((genus, arity_in, arity_out), witness)) => {
            let (input, output) = witness.expect("stored components are nonzero");
            SquareZeroVerdict::NonZero { genus, arity_in, arity_out, input, output }
        }
    })
}
