//! Betti numbers and Euler characteristics over a grid of cells, streamed
//! level by level so only two levels are held at once.

use rayon::prelude::*;
use serde::Serialize;

use super::modular::{rank_mod_prime, to_rows, Residue};
use super::rank::exact_pivots;
use super::{build_complex, relation_class, HomologyError, Relation, SmallCoeff, SparseMatrix};
use crate::cobar::{first_level, has_next_level, split_level, Columns, LevelStep};

/// When to give up on a cell: graphs with more than `p_max` vertices, or
/// more than `max_basis` graph classes (vanishing ones included) in one
/// degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub p_max: usize,
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { p_max: 12, max_basis: 2_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Complete,
    Truncated,
}

/// One cell: `dims[p−1] = dim C_{−p}`, `ranks[p−1] = rank d_{−p}`, and the
/// Betti numbers when the cell is complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellSummary {
    pub r: usize,
    pub t: usize,
    pub g: usize,
    pub status: CellStatus,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub betti: Option<Vec<usize>>,
}

/// Splits `level` and ranks the boundary on its marked basis graphs. Gives
/// the next level, the rank and pivot rows on the next level, or `None`
/// past `cap` classes.
pub(crate) fn ranked_split(level: &LevelStep, marked: &[bool], cap: usize) -> Option<(LevelStep, usize, Vec<u32>)> {
    let (next, columns) = split_level::<Residue>(level, Columns::Marked(marked), cap)?;
    let rows = to_rows(columns);
    let nonzero = rows.len();
    let (rank, pivots) = rank_mod_prime(rows, next.basis.len());
    if rank == nonzero {
        return Some((next, rank, pivots));
    }
    // full rank modulo the prime certifies the rank over ℚ, anything less
    // is redone exactly
    let (_, exact) = split_level::<SmallCoeff>(level, Columns::Marked(marked), usize::MAX).expect("uncapped");
    let pivots = exact_pivots(&SparseMatrix::from_small(next.basis.len(), exact));
    Some((next, pivots.len(), pivots))
}

fn alternating(values: &[usize]) -> i64 {
    values.iter().enumerate().map(|(i, &v)| if i % 2 == 0 { -(v as i64) } else { v as i64 }).sum()
}

impl CellSummary {
    pub fn compute(r: usize, t: usize, g: usize, limits: Limits) -> Self {
        let mut summary = Self { r, t, g, status: CellStatus::Complete, dims: Vec::new(), ranks: Vec::new(), betti: None };
        let Some(mut level) = first_level(r, t, g) else {
            summary.betti = Some(Vec::new());
            return summary;
        };
        summary.dims.push(level.basis.len());
        let mut skip: Vec<u32> = Vec::new();
        loop {
            if summary.dims.len() >= limits.p_max {
                if has_next_level(&level) {
                    summary.status = CellStatus::Truncated;
                    return summary;
                }
                break;
            }
            // the image of the previous boundary projects isomorphically onto
            // its pivot rows, so those graphs add nothing to the rank
            let mut marked = vec![true; level.basis.len()];
            for &p in &skip {
                marked[p as usize] = false;
            }
            let Some((next, rank, pivots)) = ranked_split(&level, &marked, limits.max_basis) else {
                summary.status = CellStatus::Truncated;
                return summary;
            };
            if next.all.is_empty() {
                break;
            }
            summary.ranks.push(rank);
            skip = pivots;
            summary.dims.push(next.basis.len());
            level = next;
        }
        summary.ranks.push(0);
        let betti = (0..summary.dims.len())
            .map(|i| summary.dims[i] - summary.ranks[i] - if i > 0 { summary.ranks[i - 1] } else { 0 })
            .collect();
        summary.betti = Some(betti);
        summary
    }

    /// `Σ_p (−1)^p dim C_{−p}`.
    pub fn euler_from_chains(&self) -> i64 {
        alternating(&self.dims)
    }

    /// `Σ_p (−1)^p β_{−p}`, for complete cells.
    pub fn euler_from_betti(&self) -> Option<i64> {
        self.betti.as_deref().map(alternating)
    }

    /// Betti number in homological degree `degree` (a nonpositive integer).
    pub fn betti_at(&self, degree: i64) -> Option<usize> {
        let betti = self.betti.as_ref()?;
        Some(if degree < 0 { betti.get((-degree - 1) as usize).copied().unwrap_or(0) } else { 0 })
    }
}

/// Whether a relation class is a cycle and a boundary in its cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationStatus {
    pub relation: String,
    pub r: usize,
    pub t: usize,
    pub g: usize,
    pub cycle: bool,
    pub boundary: bool,
}

/// The status of every relation whose cell is among `cells`.
pub fn relation_statuses(cells: &[(usize, usize, usize)], p_max: usize) -> Result<Vec<RelationStatus>, HomologyError> {
    Relation::ALL
        .into_iter()
        .filter(|rel| cells.contains(&rel.cell()))
        .map(|rel| {
            let (r, t, g) = rel.cell();
            let cell = build_complex(r, t, g, p_max);
            let class = relation_class(rel);
            Ok(RelationStatus { relation: rel.name().into(), r, t, g, cycle: cell.is_cycle(&class)?, boundary: cell.is_boundary(&class)? })
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub cells: Vec<CellSummary>,
    /// Relation classes checked alongside the table, if any.
    pub relations: Vec<RelationStatus>,
}

#[derive(Serialize)]
struct Record {
    r: usize,
    t: usize,
    g: usize,
    degree: i64,
    dim_chains: usize,
    betti: Option<usize>,
    status: CellStatus,
}

#[derive(Serialize)]
struct CellRecord {
    r: usize,
    t: usize,
    g: usize,
    status: CellStatus,
    euler_from_chains: i64,
    euler_from_betti: Option<i64>,
}

#[derive(Serialize)]
struct TableFile<'a> {
    records: Vec<Record>,
    cells: Vec<CellRecord>,
    relations: &'a [RelationStatus],
}

impl BettiTable {
    fn records(&self) -> Vec<Record> {
        self.cells
            .iter()
            .flat_map(|c| {
                c.dims.iter().enumerate().map(move |(i, &dim)| Record {
                    r: c.r,
                    t: c.t,
                    g: c.g,
                    degree: -(i as i64) - 1,
                    dim_chains: dim,
                    betti: c.betti.as_ref().map(|b| b[i]),
                    status: c.status,
                })
            })
            .collect()
    }

    /// `r,t,g,degree,dim_chains,betti`, with `truncated` in place of the
    /// Betti number for unfinished cells.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,t,g,degree,dim_chains,betti\n");
        for rec in self.records() {
            let betti = rec.betti.map_or_else(|| "truncated".to_string(), |b| b.to_string());
            out.push_str(&format!("{},{},{},{},{},{}\n", rec.r, rec.t, rec.g, rec.degree, rec.dim_chains, betti));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let cells = self
            .cells
            .iter()
            .map(|c| CellRecord {
                r: c.r,
                t: c.t,
                g: c.g,
                status: c.status,
                euler_from_chains: c.euler_from_chains(),
                euler_from_betti: c.euler_from_betti(),
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&TableFile { records: self.records(), cells, relations: &self.relations }).expect("plain data");
        text.push('\n');
        text
    }

    pub fn cell(&self, r: usize, t: usize, g: usize) -> Option<&CellSummary> {
        self.cells.iter().find(|c| (c.r, c.t, c.g) == (r, t, g))
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|c| c.status == CellStatus::Complete)
    }
}

/// Every cell in `cells`, computed in parallel and reported in the given
/// order.
pub fn betti_grid(cells: &[(usize, usize, usize)], limits: Limits) -> BettiTable {
    BettiTable { cells: cells.par_iter().map(|&(r, t, g)| CellSummary::compute(r, t, g, limits)).collect(), relations: Vec::new() }
}
