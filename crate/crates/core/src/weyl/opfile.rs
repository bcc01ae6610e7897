//! JSON operator files: a basis plus one record per matrix entry.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{SymOp, WeylElement, WeylError};
use crate::graded::{format_scalar, parse_scalar, BasisElement, GradedBasis, SymMonomial};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub g: u32,
    #[serde(rename = "in")]
    pub input: Vec<String>,
    pub out: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub basis: Vec<BasisElement>,
    pub degree: i64,
    pub reduced: bool,
    pub components: Vec<ComponentRecord>,
}

fn canonical(basis: &GradedBasis, names: &[String]) -> Result<SymMonomial, WeylError> {
    let idx = names.iter().map(|n| basis.lookup(n)).collect::<Result<Vec<_>, _>>()?;
    if idx.windows(2).any(|w| w[0] > w[1]) {
        return Err(WeylError::NonCanonical(names.to_vec()));
    }
    if basis.project(&idx).is_none() {
        return Err(WeylError::VanishingMonomial(names.to_vec()));
    }
    Ok(SymMonomial::from_sorted(idx))
}

impl OperatorFile {
    pub fn from_json(text: &str) -> Result<Self, WeylError> {
        serde_json::from_str(text).map_err(|e| WeylError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("operator files serialise")
    }

    pub fn to_weyl(&self) -> Result<(GradedBasis, WeylElement), WeylError> {
        let basis = GradedBasis::new(self.basis.clone())?;
        let mut seen = BTreeSet::new();
        let mut h = WeylElement::new(self.degree, self.reduced);
        for rec in &self.components {
            if !seen.insert((rec.g, rec.input.clone(), rec.out.clone())) {
                return Err(WeylError::DuplicateComponent { g: rec.g, input: rec.input.clone(), output: rec.out.clone() });
            }
            let coeff = parse_scalar(&rec.coeff).ok_or_else(|| WeylError::BadCoefficient(rec.coeff.clone()))?;
            let input = canonical(&basis, &rec.input)?;
            let output = canonical(&basis, &rec.out)?;
            let mut op = SymOp::zero(input.len(), output.len(), self.degree);
            op.add_entry(&basis, input, output, coeff)?;
            h.add_component(rec.g, &op);
        }
        Ok((basis, h))
    }

    pub fn from_weyl(basis: &GradedBasis, h: &WeylElement) -> Self {
        let names = |m: &SymMonomial| m.entries().iter().map(|&i| basis.name(i).to_string()).collect::<Vec<_>>();
        let mut components = Vec::new();
        for (&(g, _, _), op) in h.components() {
            for (input, image) in op.entries() {
                for (output, c) in image {
                    components.push(ComponentRecord { g, input: names(input), out: names(output), coeff: format_scalar(c) });
                }
            }
        }
        Self { basis: basis.elements().to_vec(), degree: h.degree, reduced: h.reduced, components }
    }
}
