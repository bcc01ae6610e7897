//! JSON family files: a basis plus, per `(r, t, g)`, the matrix entries of
//! `φ_{r,t,g}` on tensor words.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{CorrespondenceError, StructureFamily};
use crate::graded::{format_scalar, parse_scalar, BasisElement, GradedBasis, TensorWord};
use crate::weyl::TensorOp;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorEntry {
    #[serde(rename = "in")]
    pub input: Vec<String>,
    pub out: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapRecord {
    pub r: usize,
    pub t: usize,
    pub g: usize,
    pub entries: Vec<TensorEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub basis: Vec<BasisElement>,
    pub maps: Vec<MapRecord>,
}

fn word(basis: &GradedBasis, names: &[String]) -> Result<TensorWord, CorrespondenceError> {
    let entries = names.iter().map(|n| basis.lookup(n)).collect::<Result<Vec<_>, _>>();
    Ok(TensorWord::new(entries.map_err(crate::weyl::WeylError::from)?))
}

impl FamilyFile {
    pub fn from_json(text: &str) -> Result<Self, CorrespondenceError> {
        serde_json::from_str(text).map_err(|e| CorrespondenceError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("family files serialise")
    }

    pub fn to_family(&self) -> Result<(GradedBasis, StructureFamily), CorrespondenceError> {
        let basis = GradedBasis::new(self.basis.clone()).map_err(crate::weyl::WeylError::from)?;
        let mut seen = BTreeSet::new();
        let mut family = StructureFamily::new();
        for rec in &self.maps {
            if !seen.insert((rec.r, rec.t, rec.g)) {
                return Err(CorrespondenceError::Malformed(format!("({},{},{}) listed twice", rec.r, rec.t, rec.g)));
            }
            let mut op = TensorOp::zero(rec.r, rec.t, -1);
            for e in &rec.entries {
                let coeff = parse_scalar(&e.coeff).ok_or_else(|| crate::weyl::WeylError::BadCoefficient(e.coeff.clone()))?;
                op.add_entry(&basis, word(&basis, &e.input)?, word(&basis, &e.out)?, coeff)?;
            }
            family.insert(&basis, (rec.r, rec.t, rec.g), op)?;
        }
        Ok((basis, family))
    }

    pub fn from_family(basis: &GradedBasis, family: &StructureFamily) -> Self {
        let names = |w: &TensorWord| w.entries.iter().map(|&i| basis.name(i).to_string()).collect::<Vec<_>>();
        let maps = family
            .maps()
            .map(|(&(r, t, g), op)| MapRecord {
                r,
                t,
                g,
                entries: op
                    .entries()
                    .flat_map(|(input, image)| {
                        image.iter().map(move |(output, c)| TensorEntry { input: names(input), out: names(output), coeff: format_scalar(c) })
                    })
                    .collect(),
            })
            .collect();
        Self { basis: basis.elements().to_vec(), maps }
    }
}
