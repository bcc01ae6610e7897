//! Exact rank of sparse rational matrices by fraction-free elimination.
//!
//! Each column is scaled to integers, then columns are eliminated against
//! one another: `v ← (a/d)·v − (b/d)·pivot` with `d = gcd(a, b)`, followed
//! by division by the content. Pivots are picked Markowitz style, the row
//! with the fewest live entries first. Machine integers are tried first and
//! the whole elimination reruns on big integers after an overflow.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseMatrix;

trait Exact: Clone + PartialEq + Sized {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    /// `a·x − b·y`, `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
}

impl Exact for i64 {
    fn from_big(b: &BigInt) -> Option<Self> {
        i64::try_from(b).ok().filter(|v| v.unsigned_abs() < 1 << 62)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
}

impl Exact for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
}

struct Overflow;

type Vector<T> = Vec<(u32, T)>;

fn integer_columns<T: Exact>(m: &SparseMatrix) -> Option<Vec<Vector<T>>> {
    m.columns()
        .map(|column| {
            let lcm = column.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(&BigInt::from(*c.denom())));
            column
                .iter()
                .map(|(row, c)| T::from_big(&(BigInt::from(*c.numer()) * (&lcm / BigInt::from(*c.denom())))).map(|v| (*row, v)))
                .collect()
        })
        .collect()
}

fn entry<T: Exact>(v: &Vector<T>, row: u32) -> Option<&T> {
    v.binary_search_by_key(&row, |e| e.0).ok().map(|i| &v[i].1)
}

/// `a·v − b·pivot`, merged by row, divided by the content.
fn combine<T: Exact>(v: &Vector<T>, pivot: &Vector<T>, a: &T, b: &T) -> Result<Vector<T>, Overflow> {
    let zero = T::from_big(&BigInt::zero()).unwrap();
    let mut out = Vec::with_capacity(v.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < pivot.len() {
        let (row, x, y) = match (v.get(i), pivot.get(j)) {
            (Some(p), Some(q)) if p.0 == q.0 => {
                i += 1;
                j += 1;
                (p.0, &p.1, &q.1)
            }
            (Some(p), Some(q)) if p.0 < q.0 => {
                i += 1;
                (p.0, &p.1, &zero)
            }
            (Some(p), None) => {
                i += 1;
                (p.0, &p.1, &zero)
            }
            (_, Some(q)) => {
                j += 1;
                (q.0, &zero, &q.1)
            }
            (None, None) => unreachable!(),
        };
        let value = T::cross(a, x, b, y).ok_or(Overflow)?;
        if !value.is_zero() {
            out.push((row, value));
        }
    }
    let content = out.iter().fold(zero.clone(), |acc, (_, x)| acc.gcd(x));
    if !content.is_zero() && !content.is_unit() {
        for e in &mut out {
            e.1 = e.1.div_exact(&content);
        }
    }
    Ok(out)
}

/// Rank and the pivot rows, which index a nonsingular maximal minor.
fn eliminate<T: Exact>(mut vectors: Vec<Option<Vector<T>>>, rows: usize) -> Result<Vec<u32>, Overflow> {
    // occurrences[row] holds every vector with an entry in `row`, plus
    // stale ids that are filtered out when the row is pivoted on
    let mut occurrences: Vec<Vec<u32>> = vec![Vec::new(); rows];
    let mut count = vec![0usize; rows];
    for (id, v) in vectors.iter().enumerate() {
        for (row, _) in v.as_ref().unwrap() {
            occurrences[*row as usize].push(id as u32);
            count[*row as usize] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..rows).filter(|&r| count[r] > 0).map(|r| Reverse((count[r], r as u32))).collect();
    let mut pivots = Vec::new();
    while let Some(Reverse((claimed, row))) = heap.pop() {
        if claimed != count[row as usize] || claimed == 0 {
            continue;
        }
        let live: Vec<u32> = {
            let list = &mut occurrences[row as usize];
            list.retain(|&id| vectors[id as usize].as_ref().is_some_and(|v| entry(v, row).is_some()));
            list.sort_unstable();
            list.dedup();
            std::mem::take(list)
        };
        let pivot_id = *live
            .iter()
            .min_by_key(|&&id| {
                let v = vectors[id as usize].as_ref().unwrap();
                (v.len(), !entry(v, row).unwrap().is_unit(), id)
            })
            .unwrap();
        let pivot = vectors[pivot_id as usize].take().unwrap();
        let mut touched = Vec::new();
        for (r, _) in &pivot {
            count[*r as usize] -= 1;
            touched.push(*r);
        }
        let p = entry(&pivot, row).unwrap().clone();
        pivots.push(row);
        for &id in live.iter().filter(|&&id| id != pivot_id) {
            let v = vectors[id as usize].take().unwrap();
            let x = entry(&v, row).unwrap().clone();
            let d = p.gcd(&x);
            let updated = combine(&v, &pivot, &p.div_exact(&d), &x.div_exact(&d))?;
            for (r, _) in &v {
                count[*r as usize] -= 1;
                touched.push(*r);
            }
            for (r, _) in &updated {
                count[*r as usize] += 1;
                if entry(&v, *r).is_none() {
                    occurrences[*r as usize].push(id);
                    touched.push(*r);
                }
            }
            if !updated.is_empty() {
                vectors[id as usize] = Some(updated);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for r in touched {
            if count[r as usize] > 0 {
                heap.push(Reverse((count[r as usize], r)));
            }
        }
    }
    Ok(pivots)
}

/// Rows indexing a nonsingular maximal minor of `m`.
pub(crate) fn exact_pivots(m: &SparseMatrix) -> Vec<u32> {
    if let Some(columns) = integer_columns::<i64>(m) {
        if let Ok(pivots) = eliminate(columns.into_iter().map(Some).collect(), m.rows()) {
            return pivots;
        }
    }
    let columns = integer_columns::<BigInt>(m).expect("big integers never overflow");
    eliminate(columns.into_iter().map(Some).collect(), m.rows()).unwrap_or_else(|_| unreachable!())
}

/// The rank over ℚ.
pub fn rank(m: &SparseMatrix) -> usize {
    exact_pivots(m).len()
}
