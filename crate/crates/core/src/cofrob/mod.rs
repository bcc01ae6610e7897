//! The coFrob coproperad: one generator per valid `(m, n, χ)`, decomposed
//! over connected two-level graphs with factor `η_G = ∏ 1/e(u,v)!`.

mod coassoc;
mod enumerate;

use serde::Serialize;
use thiserror::Error;

use crate::graded::{inv_factorial, Scalar};

pub use coassoc::{check_coassoc, check_coassoc_labelled, counit_check, CoassocReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CofrobError {
    #[error("coFrob({m},{n},{chi}) is zero")]
    InvalidPiece { m: usize, n: usize, chi: i64 },
    #[error("more than {0} distinct three-level graphs")]
    BudgetExhausted(usize),
}

pub fn is_valid_piece(m: usize, n: usize, chi: i64) -> bool {
    let total = (m + n) as i64;
    m >= 1 && n >= 1 && chi >= total - 2 && (chi - total).rem_euclid(2) == 0
}

/// `g = (χ + 2 − m − n) / 2`.
pub fn genus_of(m: usize, n: usize, chi: i64) -> Result<u32, CofrobError> {
    if !is_valid_piece(m, n, chi) {
        return Err(CofrobError::InvalidPiece { m, n, chi });
    }
    Ok(((chi + 2 - (m + n) as i64) / 2) as u32)
}

/// Inverse of [`genus_of`].
pub fn chi_of(m: usize, n: usize, genus: u32) -> i64 {
    2 * genus as i64 - 2 + (m + n) as i64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoFrobPiece {
    pub m: usize,
    pub n: usize,
    pub chi: i64,
}

impl CoFrobPiece {
    pub fn new(m: usize, n: usize, chi: i64) -> Result<Self, CofrobError> {
        if is_valid_piece(m, n, chi) {
            Ok(Self { m, n, chi })
        } else {
            Err(CofrobError::InvalidPiece { m, n, chi })
        }
    }

    pub fn genus(&self) -> u32 {
        genus_of(self.m, self.n, self.chi).expect("validated on construction")
    }

    /// Every piece is a copy of the ground field in degree zero.
    pub fn degree(&self) -> i64 {
        0
    }
}

/// A vertex on one level: the external labels it carries (1-based, sorted)
/// and its weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LevelVertex {
    pub labels: Vec<usize>,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoLevelGraph {
    pub top: Vec<LevelVertex>,
    pub bottom: Vec<LevelVertex>,
    /// `edges[u][v]` edges from top vertex `u` to bottom vertex `v`.
    pub edges: Vec<Vec<usize>>,
}

impl TwoLevelGraph {
    pub fn top_degree(&self, u: usize) -> usize {
        self.edges[u].iter().sum()
    }

    pub fn bottom_degree(&self, v: usize) -> usize {
        self.edges.iter().map(|row| row[v]).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().sum()
    }

    pub fn eta(&self) -> Scalar {
        self.edges.iter().flatten().map(|&e| inv_factorial(e)).product()
    }

    pub fn is_connected(&self) -> bool {
        connected(&self.edges)
    }

    /// Checks every structural requirement on a summand of `Δ(m, n, χ)`.
    pub fn check_invariants(&self, m: usize, n: usize, chi: i64) -> Result<(), String> {
        let covers = |vs: &[LevelVertex], size: usize| {
            let mut all: Vec<usize> = vs.iter().flat_map(|v| v.labels.iter().copied()).collect();
            all.sort_unstable();
            vs.iter().all(|v| !v.labels.is_empty()) && all == (1..=size).collect::<Vec<_>>()
        };
        if !covers(&self.top, m) || !covers(&self.bottom, n) {
            return Err("labels do not partition the legs".into());
        }
        for (u, v) in self.top.iter().enumerate() {
            if !is_valid_piece(v.labels.len(), self.top_degree(u), v.weight) {
                return Err(format!("top vertex {u} is not a valid piece"));
            }
        }
        for (b, v) in self.bottom.iter().enumerate() {
            if !is_valid_piece(self.bottom_degree(b), v.labels.len(), v.weight) {
                return Err(format!("bottom vertex {b} is not a valid piece"));
            }
        }
        if !self.is_connected() {
            return Err("graph is disconnected".into());
        }
        let total: i64 = self.top.iter().chain(&self.bottom).map(|v| v.weight).sum();
        if total != chi {
            return Err(format!("weights sum to {total}, not {chi}"));
        }
        Ok(())
    }
}

fn connected(edges: &[Vec<usize>]) -> bool {
    let a = edges.len();
    let b = edges.first().map_or(0, Vec::len);
    let flat: Vec<u8> = edges.iter().flatten().map(|&e| e as u8).collect();
    enumerate::connected_flat(&flat, a, b)
}

/// Set partitions of `1..=size` as restricted growth strings, in
/// lexicographic order; blocks are ordered by their minimum.
pub(crate) fn set_partitions(size: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(i: usize, size: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == size {
            let blocks = rgs.iter().max().map_or(0, |&x| x + 1);
            let mut parts = vec![Vec::new(); blocks];
            for (label, &block) in rgs.iter().enumerate() {
                parts[block].push(label + 1);
            }
            out.push(parts);
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for c in 0..=limit {
            rgs.push(c);
            grow(i + 1, size, rgs, max.max(c), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    grow(0, size, &mut Vec::new(), 0, &mut out);
    out
}

/// `Δ(m, n, χ)` as a list of two-level graphs with their factors `η_G`,
/// ordered by (input partition, output partition, edge matrix, weights).
pub fn decompose(m: usize, n: usize, chi: i64) -> Result<Vec<(TwoLevelGraph, Scalar)>, CofrobError> {
    if !is_valid_piece(m, n, chi) {
        return Err(CofrobError::InvalidPiece { m, n, chi });
    }
    let labels = |mask: u32| (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b as usize + 1).collect::<Vec<_>>();
    Ok(enumerate::decompose_compact(m, n, chi)
        .into_iter()
        .map(|c| {
            let b = c.bottom.len();
            let graph = TwoLevelGraph {
                top: c.top.iter().map(|&(mask, weight)| LevelVertex { labels: labels(mask), weight }).collect(),
                bottom: c.bottom.iter().map(|&(mask, weight)| LevelVertex { labels: labels(mask), weight }).collect(),
                edges: c.edges.chunks(b).map(|row| row.iter().map(|&e| e as usize).collect()).collect(),
            };
            (graph, Scalar::new(1.into(), c.eta_denominator.into()))
        })
        .collect())
}

#[cfg(test)]
mod tests;
