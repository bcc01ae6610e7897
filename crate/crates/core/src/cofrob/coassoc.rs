//! Both iterated decompositions of a piece, expanded into three-level
//! graphs and compared coefficient by coefficient.
//!
//! A three-level graph is keyed by its outer levels (label masks with
//! weights, ordered by smallest label) and the multiset of middle vertices
//! `(weight, edges from each top vertex, edges to each bottom vertex)`.
//! The re-decomposition of one vertex is summed over label placements
//! before the product over vertices is taken.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::enumerate::{decompose_compact, for_each_summand, Compact};
use super::{decompose, CofrobError, TwoLevelGraph};

type Coeff = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Outer {
    mask: u32,
    weight: i64,
}

fn eta(g: &Compact) -> Coeff {
    Coeff::new(1, g.eta_denominator as i128)
}

fn as_outer(level: &[(u32, i64)]) -> Vec<Outer> {
    level.iter().map(|&(mask, weight)| Outer { mask, weight }).collect()
}

fn is_interval(mask: u32) -> bool {
    let shifted = mask >> mask.trailing_zeros();
    shifted & (shifted + 1) == 0
}

/// Sends bit `i` of `local` to the position of the `i`-th set bit of `host`.
fn spread(local: u32, host: u32) -> u32 {
    let mut out = 0;
    let mut rest = host;
    for bit in 0..32 {
        if rest == 0 {
            break;
        }
        let low = rest & rest.wrapping_neg();
        if local >> bit & 1 == 1 {
            out |= low;
        }
        rest ^= low;
    }
    out
}

/// One re-decomposed vertex: its new outer vertices (local labels) and the
/// middle vertices it contributes, `(weight, towards new outer, towards the
/// fixed opposite level)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct LocalPiece {
    outer: Vec<Outer>,
    middle: Vec<(i64, Vec<u8>, Vec<u8>)>,
}

type LocalExpansion = Arc<Vec<(LocalPiece, Coeff)>>;

/// Which level of the first decomposition gets decomposed again.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    Top,
    Bottom,
}

#[derive(Default)]
struct LocalCache {
    entries: HashMap<(Side, usize, i64, Vec<usize>), LocalExpansion>,
}

impl LocalCache {
    /// Re-decomposes a vertex with `legs` external labels and weight `weight`
    /// whose edges towards the fixed level are distributed as `split`.
    fn get(&mut self, side: Side, legs: usize, weight: i64, split: &[usize]) -> Result<LocalExpansion, CofrobError> {
        let key = (side, legs, weight, split.to_vec());
        if let Some(hit) = self.entries.get(&key) {
            return Ok(hit.clone());
        }
        let edges: usize = split.iter().sum();
        let summands = match side {
            Side::Top => decompose_compact(legs, edges, weight),
            Side::Bottom => decompose_compact(edges, legs, weight),
        };
        if summands.is_empty() {
            let (m, n) = if side == Side::Top { (legs, edges) } else { (edges, legs) };
            return Err(CofrobError::InvalidPiece { m, n, chi: weight });
        }
        // inner edge label l goes to slot targets[l - 1] of the fixed level
        let targets: Vec<usize> = split.iter().enumerate().flat_map(|(t, &k)| std::iter::repeat(t).take(k)).collect();
        let mut grouped: HashMap<LocalPiece, Coeff> = HashMap::new();
        for h in &summands {
            let (outer_vs, inner_vs) = match side {
                Side::Top => (&h.top, &h.bottom),
                Side::Bottom => (&h.bottom, &h.top),
            };
            let outer = as_outer(outer_vs);
            let mut middle: Vec<(i64, Vec<u8>, Vec<u8>)> = inner_vs
                .iter()
                .enumerate()
                .map(|(i, &(mask, weight))| {
                    let towards_outer: Vec<u8> = (0..outer_vs.len())
                        .map(|o| match side {
                            Side::Top => h.edge(o, i),
                            Side::Bottom => h.edge(i, o),
                        })
                        .collect();
                    let mut towards_fixed = vec![0u8; split.len()];
                    for (l, target) in targets.iter().enumerate() {
                        if mask >> l & 1 == 1 {
                            towards_fixed[*target] += 1;
                        }
                    }
                    (weight, towards_outer, towards_fixed)
                })
                .collect();
            middle.sort();
            *grouped.entry(LocalPiece { outer, middle }).or_insert_with(Coeff::zero) += eta(h);
        }
        let mut list: Vec<(LocalPiece, Coeff)> = grouped.into_iter().collect();
        list.sort_by(|a, b| a.0.cmp(&b.0));
        let list = Arc::new(list);
        self.entries.insert(key, list.clone());
        Ok(list)
    }
}

/// `true` when the level's blocks, ordered by smallest label, are
/// consecutive label intervals listed by decreasing size, then increasing
/// weight. Each weighted partition has exactly one such relabelling.
fn is_standard(level: &[Outer]) -> bool {
    let mut sorted = level.to_vec();
    sorted.sort_by_key(|o| o.mask.trailing_zeros());
    let mut next = 0u32;
    let mut prev: Option<(u32, i64)> = None;
    for o in &sorted {
        let size = o.mask.count_ones();
        if o.mask != ((1u32 << size) - 1) << next {
            return false;
        }
        next += size;
        if let Some((ps, pw)) = prev {
            if size > ps || (size == ps && o.weight < pw) {
                return false;
            }
        }
        prev = Some((size, o.weight));
    }
    true
}

fn encode(top: &[Outer], middle: &mut [Vec<u8>], bottom: &[Outer]) -> Vec<u8> {
    let mut key = Vec::with_capacity(8 + 5 * (top.len() + bottom.len()) + middle.len() * 12);
    for level in [top, bottom] {
        key.push(level.len() as u8);
        for o in level {
            key.extend_from_slice(&o.mask.to_le_bytes()[..2]);
            key.push(o.weight as u8);
        }
    }
    middle.sort();
    key.push(middle.len() as u8);
    for m in middle.iter() {
        key.extend_from_slice(m);
    }
    key
}

fn order_by_min_label(level: &[Outer]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..level.len()).collect();
    idx.sort_by_key(|&i| level[i].mask.trailing_zeros());
    idx
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scope {
    /// Every three-level graph.
    All,
    /// Only graphs whose outer levels are both standard.
    Standard,
}

struct Expansion {
    terms: HashMap<Vec<u8>, Coeff>,
    budget: usize,
}

impl Expansion {
    fn add(&mut self, key: Vec<u8>, c: Coeff) -> Result<(), CofrobError> {
        *self.terms.entry(key).or_insert_with(Coeff::zero) += c;
        if self.terms.len() > self.budget {
            return Err(CofrobError::BudgetExhausted(self.budget));
        }
        Ok(())
    }
}

fn expand(side: Side, m: usize, n: usize, chi: i64, scope: Scope, budget: usize) -> Result<HashMap<Vec<u8>, Coeff>, CofrobError> {
    if !super::is_valid_piece(m, n, chi) {
        return Err(CofrobError::InvalidPiece { m, n, chi });
    }
    let mut out = Expansion { terms: HashMap::new(), budget };
    let mut cache = LocalCache::default();
    let standard = scope == Scope::Standard;
    let any_blocks = |_: &[u32]| true;
    let interval_blocks = |p: &[u32]| !standard || p.iter().all(|&b| is_interval(b));
    let any_level = |_: &[(u32, i64)]| true;
    let standard_level = |l: &[(u32, i64)]| !standard || is_standard(&as_outer(l));
    // the level that stays fixed becomes an outer level as it is
    let (blocks_ok, levels_ok): ((&dyn Fn(&[u32]) -> bool, &dyn Fn(&[u32]) -> bool), (super::enumerate::LevelFilter, super::enumerate::LevelFilter)) =
        match side {
            Side::Top => ((&any_blocks, &interval_blocks), (&any_level, &standard_level)),
            Side::Bottom => ((&interval_blocks, &any_blocks), (&standard_level, &any_level)),
        };
    let mut failure = None;
    for_each_summand(m, n, chi, blocks_ok, levels_ok, &mut |g| {
        if failure.is_some() {
            return;
        }
        if let Err(e) = expand_one(side, g, scope, &mut cache, &mut out) {
            failure = Some(e);
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out.terms),
    }
}

/// A placement choice for one expanded vertex: the index of the local piece
/// and its outer vertices in global labels.
type Candidate = (usize, Vec<Outer>);

fn expand_one(side: Side, g: &Compact, scope: Scope, cache: &mut LocalCache, out: &mut Expansion) -> Result<(), CofrobError> {
    let (fixed, expanded) = match side {
        Side::Top => (as_outer(&g.bottom), &g.top),
        Side::Bottom => (as_outer(&g.top), &g.bottom),
    };
    let fixed_order = order_by_min_label(&fixed);
    let fixed_sorted: Vec<Outer> = fixed_order.iter().map(|&i| fixed[i]).collect();
    let mut locals = Vec::with_capacity(expanded.len());
    let mut candidates: Vec<Vec<Candidate>> = Vec::with_capacity(expanded.len());
    for (x, &(host, weight)) in expanded.iter().enumerate() {
        let split: Vec<usize> = match side {
            Side::Top => (0..g.bottom.len()).map(|v| g.edge(x, v) as usize).collect(),
            Side::Bottom => (0..g.top.len()).map(|u| g.edge(u, x) as usize).collect(),
        };
        let local = cache.get(side, host.count_ones() as usize, weight, &split)?;
        let list: Vec<Candidate> = local
            .iter()
            .enumerate()
            .map(|(i, (piece, _))| {
                (i, piece.outer.iter().map(|o| Outer { mask: spread(o.mask, host), weight: o.weight }).collect::<Vec<_>>())
            })
            .filter(|(_, outer)| scope == Scope::All || outer.iter().all(|o| is_interval(o.mask)))
            .collect();
        if list.is_empty() {
            return Ok(());
        }
        locals.push(local);
        candidates.push(list);
    }
    let frame = Frame { side, locals: &locals, candidates: &candidates, fixed_order: &fixed_order, fixed_sorted: &fixed_sorted, scope };
    let mut chosen = Vec::with_capacity(locals.len());
    frame.combine(&eta(g), &mut chosen, out)
}

struct Frame<'a> {
    side: Side,
    locals: &'a [LocalExpansion],
    candidates: &'a [Vec<Candidate>],
    fixed_order: &'a [usize],
    fixed_sorted: &'a [Outer],
    scope: Scope,
}

impl Frame<'_> {
    fn combine(&self, coeff: &Coeff, chosen: &mut Vec<usize>, out: &mut Expansion) -> Result<(), CofrobError> {
        if chosen.len() < self.locals.len() {
            for c in 0..self.candidates[chosen.len()].len() {
                chosen.push(c);
                self.combine(coeff, chosen, out)?;
                chosen.pop();
            }
            return Ok(());
        }
        let mut outer = Vec::new();
        let mut c = *coeff;
        for (x, &choice) in chosen.iter().enumerate() {
            let (i, mapped) = &self.candidates[x][choice];
            c *= self.locals[x][*i].1;
            outer.extend_from_slice(mapped);
        }
        if self.scope == Scope::Standard && !is_standard(&outer) {
            return Ok(());
        }
        let outer_order = order_by_min_label(&outer);
        let mut rank = vec![0usize; outer.len()];
        for (r, &i) in outer_order.iter().enumerate() {
            rank[i] = r;
        }
        let outer_sorted: Vec<Outer> = outer_order.iter().map(|&i| outer[i]).collect();
        let mut middle = Vec::new();
        let mut offset = 0;
        for (x, &choice) in chosen.iter().enumerate() {
            let piece = &self.locals[x][self.candidates[x][choice].0].0;
            for (w, towards_outer, towards_fixed) in &piece.middle {
                let mut up = vec![0u8; outer.len()];
                for (o, &e) in towards_outer.iter().enumerate() {
                    up[rank[offset + o]] = e;
                }
                let down = self.fixed_order.iter().map(|&f| towards_fixed[f]);
                let mut entry = vec![*w as u8];
                match self.side {
                    Side::Top => {
                        entry.extend_from_slice(&up);
                        entry.extend(down);
                    }
                    Side::Bottom => {
                        entry.extend(down);
                        entry.extend_from_slice(&up);
                    }
                }
                middle.push(entry);
            }
            offset += piece.outer.len();
        }
        let key = match self.side {
            Side::Top => encode(&outer_sorted, &mut middle, self.fixed_sorted),
            Side::Bottom => encode(self.fixed_sorted, &mut middle, &outer_sorted),
        };
        out.add(key, c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoassocReport {
    pub agrees: bool,
    /// Distinct three-level graphs compared.
    pub three_level_graphs: usize,
}

fn compare(m: usize, n: usize, chi: i64, scope: Scope, budget: usize) -> Result<CoassocReport, CofrobError> {
    let left = expand(Side::Top, m, n, chi, scope, budget)?;
    let right = expand(Side::Bottom, m, n, chi, scope, budget)?;
    let nonzero = |map: &HashMap<Vec<u8>, Coeff>| map.values().filter(|c| !c.is_zero()).count();
    let agrees = nonzero(&left) == nonzero(&right)
        && left.iter().all(|(k, c)| right.get(k).map_or(c.is_zero(), |d| d == c));
    Ok(CoassocReport { agrees, three_level_graphs: left.len().max(right.len()) })
}

/// Expands `(Δ⊠id)Δ` and `(id⊠Δ)Δ` on `coFrob(m, n, χ)` and compares them
/// exactly on every three-level graph whose outer levels are standard.
/// Both expansions commute with relabelling inputs and outputs, and every
/// three-level graph relabels to a standard one.
pub fn check_coassoc(m: usize, n: usize, chi: i64, projection_budget: usize) -> Result<CoassocReport, CofrobError> {
    compare(m, n, chi, Scope::Standard, projection_budget)
}

/// [`check_coassoc`] on every labelled three-level graph.
pub fn check_coassoc_labelled(m: usize, n: usize, chi: i64, projection_budget: usize) -> Result<CoassocReport, CofrobError> {
    compare(m, n, chi, Scope::All, projection_budget)
}

/// Applies a relabelling of inputs and outputs to an encoded graph.
#[cfg(test)]
pub(crate) fn relabel_key(key: &[u8], inputs: &[usize], outputs: &[usize]) -> Vec<u8> {
    let mut pos = 0;
    let mut levels = Vec::new();
    for perm in [inputs, outputs] {
        let count = key[pos] as usize;
        pos += 1;
        let mut level = Vec::new();
        for _ in 0..count {
            let mask = u16::from_le_bytes([key[pos], key[pos + 1]]) as u32;
            let mut moved = 0u32;
            for bit in 0..16 {
                if mask >> bit & 1 == 1 {
                    moved |= 1 << perm[bit];
                }
            }
            level.push(Outer { mask: moved, weight: key[pos + 2] as i8 as i64 });
            pos += 3;
        }
        levels.push(level);
    }
    let count = key[pos] as usize;
    pos += 1;
    let (nt, nb) = (levels[0].len(), levels[1].len());
    let entry_len = 1 + nt + nb;
    let orders: Vec<Vec<usize>> = levels.iter().map(|l| order_by_min_label(l)).collect();
    let mut middle = Vec::new();
    for k in 0..count {
        let e = &key[pos + k * entry_len..pos + (k + 1) * entry_len];
        let mut entry = vec![e[0]];
        entry.extend(orders[0].iter().map(|&i| e[1 + i]));
        entry.extend(orders[1].iter().map(|&i| e[1 + nt + i]));
        middle.push(entry);
    }
    let sorted: Vec<Vec<Outer>> = levels.iter().zip(&orders).map(|(l, o)| o.iter().map(|&i| l[i]).collect()).collect();
    encode(&sorted[0], &mut middle, &sorted[1])
}

#[cfg(test)]
pub(crate) fn labelled_expansions(m: usize, n: usize, chi: i64) -> (HashMap<Vec<u8>, Coeff>, HashMap<Vec<u8>, Coeff>) {
    (
        expand(Side::Top, m, n, chi, Scope::All, usize::MAX).unwrap(),
        expand(Side::Bottom, m, n, chi, Scope::All, usize::MAX).unwrap(),
    )
}

/// Both counit laws: the summands of `Δ(m, n, χ)` with only `(1,1,0)`
/// vertices on one level must be the single graph carrying the piece, with
/// coefficient 1.
pub fn counit_check(m: usize, n: usize, chi: i64) -> Result<bool, CofrobError> {
    let summands = decompose(m, n, chi)?;
    let is_unit = |labels: usize, edges: usize, weight: i64| labels == 1 && edges == 1 && weight == 0;
    let right: Vec<_> = summands
        .iter()
        .filter(|(g, _)| g.bottom.iter().enumerate().all(|(b, v)| is_unit(v.labels.len(), g.bottom_degree(b), v.weight)))
        .collect();
    let left: Vec<_> = summands
        .iter()
        .filter(|(g, _)| g.top.iter().enumerate().all(|(u, v)| is_unit(v.labels.len(), g.top_degree(u), v.weight)))
        .collect();
    let recovers = |picked: &[&(TwoLevelGraph, crate::graded::Scalar)], top_side: bool| match picked {
        [(g, c)] => {
            let carrier = if top_side { &g.top } else { &g.bottom };
            c.is_one() && carrier.len() == 1 && carrier[0].weight == chi
        }
        _ => false,
    };
    Ok(recovers(&right, true) && recovers(&left, false))
}
