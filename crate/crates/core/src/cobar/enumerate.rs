//! Graph bases level by level: every graph with `p + 1` vertices splits
//! off from one with `p` vertices by un-contracting an edge. The same
//! splits, with coefficients, give the differential.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::canonical::canonical_form;
use super::differential::{for_each_split, SmallCoeff};
use super::{GenLabel, GraphKey, PropGraph};

/// One level: every canonical class, vanishing or not, sorted; and the
/// positions of the nonvanishing ones, which form the basis.
#[derive(Clone, Debug, Default)]
pub(crate) struct LevelStep {
    pub all: Vec<GraphKey>,
    pub basis: Vec<u32>,
}

impl LevelStep {
    pub fn basis_graphs(&self) -> impl Iterator<Item = PropGraph> + '_ {
        self.basis.iter().map(|&i| PropGraph::from_key(&self.all[i as usize]))
    }
}

/// A field the boundary can be collected in.
pub(crate) trait Coefficient: Copy + Send + Sync {
    fn from_small(c: SmallCoeff) -> Self;
    fn add(self, other: Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Coefficient for SmallCoeff {
    fn from_small(c: SmallCoeff) -> Self {
        c
    }

    fn add(self, other: Self) -> Self {
        self + other
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Which basis graphs of the previous level get a boundary column.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Columns<'a> {
    None,
    All,
    /// Those whose basis position is marked.
    Marked(&'a [bool]),
}

impl Columns<'_> {
    fn wanted(&self, basis_position: usize) -> bool {
        match self {
            Columns::None => false,
            Columns::All => true,
            Columns::Marked(mask) => mask[basis_position],
        }
    }
}

pub(crate) fn first_level(r: usize, t: usize, g: usize) -> Option<LevelStep> {
    let label = GenLabel::new(r, t, g).ok()?;
    Some(LevelStep { all: vec![PropGraph::generator(label).key()], basis: vec![0] })
}

type SplitTerm = (GraphKey, Option<SmallCoeff>);

fn split_all(key: &GraphKey, keep_coefficients: bool) -> Vec<SplitTerm> {
    let g = PropGraph::from_key(key);
    let mut out = Vec::new();
    for x in 0..g.vertex_count() {
        let vertex_sign = if x % 2 == 0 { 1 } else { -1 };
        for_each_split(&g, x, &mut |split, c| {
            let (canonical, sign) = canonical_form(&split);
            let coeff = sign.map(|s| if keep_coefficients { c * (vertex_sign * s.to_i64()) } else { SmallCoeff::zero() });
            out.push((canonical.key(), coeff));
        });
    }
    out
}

/// Whether any graph of `previous` splits at all.
pub(crate) fn has_next_level(previous: &LevelStep) -> bool {
    previous.all.par_iter().any(|key| {
        let g = PropGraph::from_key(key);
        let mut found = false;
        for x in 0..g.vertex_count() {
            for_each_split(&g, x, &mut |_, _| found = true);
            if found {
                break;
            }
        }
        found
    })
}

const CHUNK: usize = 2048;

/// The next level from `previous`, with the boundary columns asked for as
/// sorted `(basis index on the new level, coefficient)` lists, in basis
/// order. `None` once the new level holds more than `cap` classes.
pub(crate) fn split_level<C: Coefficient>(previous: &LevelStep, columns_for: Columns<'_>, cap: usize) -> Option<(LevelStep, Vec<Vec<(u32, C)>>)> {
    // basis position of each class, if any
    let mut position = vec![u32::MAX; previous.all.len()];
    for (i, &b) in previous.basis.iter().enumerate() {
        position[b as usize] = i as u32;
    }
    let wanted = |i: usize| position[i] != u32::MAX && columns_for.wanted(position[i] as usize);
    let mut ids: HashMap<GraphKey, u32> = HashMap::new();
    let mut nonvanishing: Vec<bool> = Vec::new();
    let mut columns: Vec<Vec<(u32, C)>> = Vec::new();
    for (chunk_idx, chunk) in previous.all.chunks(CHUNK).enumerate() {
        let results: Vec<Vec<SplitTerm>> =
            chunk.par_iter().enumerate().map(|(i, key)| split_all(key, wanted(chunk_idx * CHUNK + i))).collect();
        for (i, terms) in results.into_iter().enumerate() {
            let keep = wanted(chunk_idx * CHUNK + i);
            let mut column = Vec::new();
            for (key, coeff) in terms {
                let next_id = ids.len() as u32;
                let id = *ids.entry(key).or_insert(next_id);
                if id == next_id {
                    nonvanishing.push(coeff.is_some());
                }
                if let (true, Some(c)) = (keep, coeff) {
                    column.push((id, C::from_small(c)));
                }
            }
            if keep {
                columns.push(column);
            }
        }
        if ids.len() > cap {
            return None;
        }
    }
    let mut keyed: Vec<(GraphKey, u32)> = ids.into_iter().collect();
    keyed.sort_unstable();
    let mut basis_index = vec![u32::MAX; keyed.len()];
    let mut basis = Vec::new();
    for (position, (_, id)) in keyed.iter().enumerate() {
        if nonvanishing[*id as usize] {
            basis_index[*id as usize] = basis.len() as u32;
            basis.push(position as u32);
        }
    }
    for column in &mut columns {
        for entry in column.iter_mut() {
            entry.0 = basis_index[entry.0 as usize];
        }
        column.sort_unstable_by_key(|e| e.0);
        let mut merged = 0;
        for k in 0..column.len() {
            if merged > 0 && column[merged - 1].0 == column[k].0 {
                column[merged - 1].1 = column[merged - 1].1.add(column[k].1);
            } else {
                column[merged] = column[k];
                merged += 1;
            }
        }
        column.truncate(merged);
        column.retain(|e| !e.1.is_zero());
        column.shrink_to_fit();
    }
    Some((LevelStep { all: keyed.into_iter().map(|(k, _)| k).collect(), basis }, columns))
}

/// Levels `1..=p_max`, stopping early once a level is empty.
pub(crate) fn levels_until(r: usize, t: usize, g: usize, p_max: usize) -> Vec<LevelStep> {
    let Some(first) = first_level(r, t, g) else {
        return Vec::new();
    };
    let mut levels = vec![first];
    while levels.len() < p_max {
        let (next, _) = split_level::<SmallCoeff>(levels.last().unwrap(), Columns::None, usize::MAX).expect("uncapped");
        if next.all.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}

/// Bases for `p = 1, 2, …` up to `p_max` or until they run out, whichever
/// comes first. Entry `p − 1` holds the `p`-vertex basis, sorted.
pub fn enumerate_levels(r: usize, t: usize, g: usize, p_max: usize) -> Vec<Vec<PropGraph>> {
    levels_until(r, t, g, p_max).iter().map(|l| l.basis_graphs().collect()).collect()
}

/// Canonical nonvanishing graphs with `p` vertices, arity `(r, t)` and
/// genus `g`.
pub fn enumerate_basis(r: usize, t: usize, g: usize, p: usize) -> Vec<PropGraph> {
    if p == 0 {
        return Vec::new();
    }
    enumerate_levels(r, t, g, p).into_iter().nth(p - 1).unwrap_or_default()
}
