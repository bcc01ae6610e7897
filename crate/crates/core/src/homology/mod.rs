//! Exact homology of the cobar graph complex, one `(r, t, g)` cell at a
//! time, and the classes of the involutive Lie bialgebra relations.

mod modular;
mod rank;
mod relations;
mod table;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::cobar::{self, differential, CobarError, GraphKey, GraphVector, LevelStep, PropGraph, SmallCoeff};
use crate::graded::Scalar;

pub use rank::rank;
pub use relations::{relation_class, Relation};
pub use table::{betti_grid, relation_statuses, BettiTable, CellStatus, CellSummary, Limits, RelationStatus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("cell ({r},{t},{g}) is truncated at {vertices} vertices")]
    Truncated { r: usize, t: usize, g: usize, vertices: usize },
    #[error("vector mixes graphs with different vertex counts")]
    Inhomogeneous,
    #[error("graph {0} is not a basis graph of this cell")]
    NotInCell(String),
    #[error("coefficient {0} does not fit in machine rationals")]
    Coefficient(String),
    #[error(transparent)]
    Cobar(#[from] CobarError),
}

/// A sparse matrix stored by columns, each sorted by row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, SmallCoeff)>>,
}

impl SparseMatrix {
    pub(crate) fn from_small(rows: usize, columns: Vec<Vec<(u32, SmallCoeff)>>) -> Self {
        Self { rows, columns }
    }

    /// Builds a matrix from exact entries `(row, column, value)`.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize, Scalar)]) -> Result<Self, HomologyError> {
        let mut columns = vec![Vec::new(); cols];
        for (row, col, value) in entries {
            let small = |x: &num_bigint::BigInt| x.to_i64().ok_or_else(|| HomologyError::Coefficient(value.to_string()));
            let c = Ratio::new(small(value.numer())?, small(value.denom())?);
            if *row >= rows || *col >= cols {
                return Err(HomologyError::NotInCell(format!("entry ({row},{col})")));
            }
            columns[*col].push((*row as u32, c));
        }
        for column in &mut columns {
            column.sort_by_key(|e| e.0);
            let mut merged: Vec<(u32, SmallCoeff)> = Vec::with_capacity(column.len());
            for (row, c) in column.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == row => last.1 += c,
                    _ => merged.push((row, c)),
                }
            }
            merged.retain(|e| e.1 != SmallCoeff::from_integer(0));
            *column = merged;
        }
        Ok(Self { rows, columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        let column = &self.columns[col];
        match column.binary_search_by_key(&(row as u32), |e| e.0) {
            Ok(i) => to_scalar(&column[i].1),
            Err(_) => Scalar::from_integer(0.into()),
        }
    }

    pub(crate) fn columns(&self) -> impl Iterator<Item = &Vec<(u32, SmallCoeff)>> {
        self.columns.iter()
    }

    /// `self · other`, both exact.
    pub fn product(&self, other: &SparseMatrix) -> SparseMatrix {
        let columns = other
            .columns
            .iter()
            .map(|column| {
                let mut acc: std::collections::BTreeMap<u32, SmallCoeff> = std::collections::BTreeMap::new();
                for (k, b) in column {
                    for (i, a) in &self.columns[*k as usize] {
                        *acc.entry(*i).or_insert_with(|| SmallCoeff::from_integer(0)) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, c)| *c != SmallCoeff::from_integer(0)).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

fn to_scalar(c: &SmallCoeff) -> Scalar {
    Scalar::new((*c.numer()).into(), (*c.denom()).into())
}

/// The complex `Ω(coFrob)(r, t, g)`: a basis per degree `−p` and the
/// boundary from degree `−p` to `−(p+1)`, columns indexed by the source.
#[derive(Clone, Debug)]
pub struct ChainCell {
    pub r: usize,
    pub t: usize,
    pub g: usize,
    bases: Vec<Vec<GraphKey>>,
    boundaries: Vec<SparseMatrix>,
    pub truncated: bool,
}

/// Builds the cell with at most `p_max` vertices per graph. The cell is
/// marked truncated when graphs with more vertices exist.
pub fn build_complex(r: usize, t: usize, g: usize, p_max: usize) -> ChainCell {
    let mut cell = ChainCell { r, t, g, bases: Vec::new(), boundaries: Vec::new(), truncated: false };
    let Some(mut level) = cobar::first_level(r, t, g) else {
        return cell;
    };
    loop {
        let p = cell.bases.len() + 1;
        let basis_keys = |l: &LevelStep| l.basis.iter().map(|&i| l.all[i as usize].clone()).collect::<Vec<_>>();
        cell.bases.push(basis_keys(&level));
        if p == p_max {
            cell.truncated = cobar::has_next_level(&level);
            return cell;
        }
        let (next, columns) = cobar::split_level::<SmallCoeff>(&level, cobar::Columns::All, usize::MAX).expect("uncapped");
        if next.all.is_empty() {
            return cell;
        }
        cell.boundaries.push(SparseMatrix::from_small(next.basis.len(), columns));
        level = next;
    }
}

impl ChainCell {
    /// Largest vertex count with a (possibly empty) basis.
    pub fn max_vertices(&self) -> usize {
        self.bases.len()
    }

    /// Basis in degree `−p`, sorted.
    pub fn basis(&self, p: usize) -> Vec<PropGraph> {
        self.bases.get(p.wrapping_sub(1)).map_or_else(Vec::new, |b| b.iter().map(PropGraph::from_key).collect())
    }

    pub fn dim(&self, p: usize) -> usize {
        self.bases.get(p.wrapping_sub(1)).map_or(0, Vec::len)
    }

    /// The boundary from degree `−p` to degree `−(p+1)`.
    pub fn boundary(&self, p: usize) -> SparseMatrix {
        match self.boundaries.get(p.wrapping_sub(1)) {
            Some(m) => m.clone(),
            None => SparseMatrix { rows: self.dim(p + 1), columns: vec![Vec::new(); self.dim(p)] },
        }
    }

    fn index_of(&self, graph: &PropGraph) -> Result<(usize, usize), HomologyError> {
        let p = graph.vertex_count();
        let key = graph.key();
        let arity_matches = graph.arity() == (self.r, self.t) && graph.genus() == self.g;
        match self.bases.get(p.wrapping_sub(1)).map(|b| b.binary_search(&key)) {
            Some(Ok(i)) if arity_matches => Ok((p, i)),
            _ => Err(HomologyError::NotInCell(graph.to_string())),
        }
    }

    /// Coordinates of `x` in degree `−p` and `p`, with `p = 0` for zero.
    fn coordinates(&self, x: &GraphVector) -> Result<(usize, Vec<(u32, SmallCoeff)>), HomologyError> {
        let mut degree = None;
        let mut coords = Vec::new();
        for (graph, c) in x.iter() {
            let (p, i) = self.index_of(graph)?;
            if degree.is_some_and(|d| d != p) {
                return Err(HomologyError::Inhomogeneous);
            }
            degree = Some(p);
            let small = |v: &num_bigint::BigInt| v.to_i64().ok_or_else(|| HomologyError::Coefficient(c.to_string()));
            coords.push((i as u32, Ratio::new(small(c.numer())?, small(c.denom())?)));
        }
        coords.sort_by_key(|e| e.0);
        Ok((degree.unwrap_or(0), coords))
    }

    /// Whether `x` lies in the image of the incoming boundary.
    pub fn is_boundary(&self, x: &GraphVector) -> Result<bool, HomologyError> {
        let (p, coords) = self.coordinates(x)?;
        if p == 0 {
            return Ok(true);
        }
        if p == 1 {
            return Ok(false);
        }
        let incoming = self.boundary(p - 1);
        let mut extended = incoming.clone();
        extended.columns.push(coords);
        Ok(rank(&extended) == rank(&incoming))
    }

    /// Whether `d x = 0`.
    pub fn is_cycle(&self, x: &GraphVector) -> Result<bool, HomologyError> {
        self.coordinates(x)?;
        Ok(differential(x).is_zero())
    }

    fn truncation_error(&self) -> HomologyError {
        HomologyError::Truncated { r: self.r, t: self.t, g: self.g, vertices: self.max_vertices() }
    }

    /// `β_p = dim C_p − rank d_p − rank d_{p−1}` for `p = 1..`.
    pub fn betti(&self) -> Result<Vec<usize>, HomologyError> {
        if self.truncated {
            return Err(self.truncation_error());
        }
        let ranks: Vec<usize> = (1..=self.max_vertices()).map(|p| rank(&self.boundary(p))).collect();
        Ok((1..=self.max_vertices())
            .map(|p| self.dim(p) - ranks[p - 1] - if p > 1 { ranks[p - 2] } else { 0 })
            .collect())
    }

    /// `Σ_p (−1)^p dim C_p`.
    pub fn euler_characteristic(&self) -> i64 {
        (1..=self.max_vertices()).map(|p| if p % 2 == 0 { 1 } else { -1 } * self.dim(p) as i64).sum()
    }
}

#[cfg(test)]
mod tests;
