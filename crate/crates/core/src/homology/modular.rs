//! Rank modulo a large prime by structural pivoting: in each round every
//! leading column takes the sparsest row that starts there, those rows form
//! a triangular block, and the other rows are reduced against it. The
//! reduced rows that survive go to the next round.
//!
//! Columns are relabelled sparsest first beforehand, which keeps the
//! fill-in of the reduced rows small.
//!
//! A rank found this way is a lower bound for the rank over ℚ, and equals
//! it whenever it reaches the number of rows.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::SmallCoeff;
use crate::cobar::Coefficient;

const PRIME: u64 = 2_147_483_647;

type Row = Vec<(u32, u32)>;

fn power(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    base %= PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % PRIME;
        }
        base = base * base % PRIME;
        exp >>= 1;
    }
    acc
}

fn inverse(a: u64) -> u64 {
    power(a, PRIME - 2)
}

fn reduce(c: &SmallCoeff) -> u32 {
    let residue = |x: i64| x.rem_euclid(PRIME as i64) as u64;
    (residue(*c.numer()) * inverse(residue(*c.denom())) % PRIME) as u32
}

/// A coefficient reduced modulo the prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Residue(u32);

impl Coefficient for Residue {
    fn from_small(c: SmallCoeff) -> Self {
        Residue(reduce(&c))
    }

    fn add(self, other: Self) -> Self {
        Residue(((self.0 as u64 + other.0 as u64) % PRIME) as u32)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// The nonempty vectors among `vectors`, as rows.
pub(crate) fn to_rows(vectors: Vec<Vec<(u32, Residue)>>) -> Vec<Row> {
    vectors.into_iter().filter(|v| !v.is_empty()).map(|v| v.into_iter().map(|(i, r)| (i, r.0)).collect()).collect()
}

/// Rank of `rows` modulo the prime, and the pivot columns.
pub(crate) fn rank_mod_prime(mut rows: Vec<Row>, columns: usize) -> (usize, Vec<u32>) {
    let mut count = vec![0u32; columns];
    for row in &rows {
        for &(c, _) in row {
            count[c as usize] += 1;
        }
    }
    let mut order: Vec<u32> = (0..columns as u32).collect();
    order.sort_by_key(|&c| (count[c as usize], c));
    let mut label = vec![0u32; columns];
    for (new, &old) in order.iter().enumerate() {
        label[old as usize] = new as u32;
    }
    for row in &mut rows {
        for e in row.iter_mut() {
            e.0 = label[e.0 as usize];
        }
        row.sort_unstable_by_key(|e| e.0);
    }
    let (rank, pivots) = structural_rank(rows, columns);
    (rank, pivots.into_iter().map(|c| order[c as usize]).collect())
}

/// Rank of `rows`, each sorted by column, and the pivot columns.
fn structural_rank(mut rows: Vec<Row>, columns: usize) -> (usize, Vec<u32>) {
    let mut pivots = Vec::new();
    let mut acc = vec![0u64; columns];
    let mut queued = vec![false; columns];
    let mut pivot_of = vec![u32::MAX; columns];
    while !rows.is_empty() {
        let mut chosen = vec![u32::MAX; columns];
        for (i, row) in rows.iter().enumerate() {
            let lead = row[0].0 as usize;
            if chosen[lead] == u32::MAX || rows[chosen[lead] as usize].len() > row.len() {
                chosen[lead] = i as u32;
            }
        }
        let mut is_pivot = vec![false; rows.len()];
        for (col, &i) in chosen.iter().enumerate().filter(|(_, &i)| i != u32::MAX) {
            is_pivot[i as usize] = true;
            pivot_of[col] = i;
            pivots.push(col as u32);
        }
        for row in rows.iter_mut().zip(&is_pivot).filter(|(_, &p)| p).map(|(r, _)| r) {
            let scale = inverse(row[0].1 as u64);
            for e in row.iter_mut() {
                e.1 = (e.1 as u64 * scale % PRIME) as u32;
            }
        }
        // residual rows avoid every pivot column so far, so stale entries
        // of `pivot_of` are never read again
        let mut residual = Vec::new();
        for row in rows.iter().zip(&is_pivot).filter(|(_, &p)| !p).map(|(r, _)| r) {
            let mut heap = BinaryHeap::new();
            for &(c, v) in row {
                acc[c as usize] = v as u64;
                queued[c as usize] = true;
                heap.push(Reverse(c));
            }
            let mut out = Row::new();
            while let Some(Reverse(c)) = heap.pop() {
                let cu = c as usize;
                queued[cu] = false;
                let x = std::mem::take(&mut acc[cu]);
                if x == 0 {
                    continue;
                }
                let p = pivot_of[cu];
                if p == u32::MAX {
                    out.push((c, x as u32));
                    continue;
                }
                let factor = PRIME - x;
                for &(c2, v2) in &rows[p as usize][1..] {
                    let slot = &mut acc[c2 as usize];
                    *slot = (*slot + factor * v2 as u64) % PRIME;
                    if !queued[c2 as usize] {
                        queued[c2 as usize] = true;
                        heap.push(Reverse(c2));
                    }
                }
            }
            if !out.is_empty() {
                residual.push(out);
            }
        }
        rows = residual;
    }
    (pivots.len(), pivots)
}
