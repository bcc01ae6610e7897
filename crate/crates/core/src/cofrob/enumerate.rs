//! Enumeration of `Δ(m, n, χ)` on label bitmasks.

use std::collections::HashMap;

use super::set_partitions;

/// One summand: outer vertices as `(label mask, weight)`, the row-major
/// edge matrix and the denominator of `η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Compact {
    pub top: Vec<(u32, i64)>,
    pub bottom: Vec<(u32, i64)>,
    pub edges: Vec<u8>,
    pub eta_denominator: u64,
}

impl Compact {
    pub fn edge(&self, u: usize, v: usize) -> u8 {
        self.edges[u * self.bottom.len() + v]
    }
}

pub(crate) fn connected_flat(edges: &[u8], a: usize, b: usize) -> bool {
    if a + b == 0 {
        return true;
    }
    let mut seen = vec![false; a + b];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        let neighbours: Vec<usize> = if x < a {
            (0..b).filter(|&v| edges[x * b + v] > 0).map(|v| a + v).collect()
        } else {
            (0..a).filter(|&u| edges[u * b + x - a] > 0).collect()
        };
        for y in neighbours {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

struct EdgeShape {
    edges: Vec<u8>,
    rows: Vec<u8>,
    cols: Vec<u8>,
    total: usize,
    eta_denominator: u64,
}

/// Connected `a × b` matrices with no empty row or column and at most
/// `max_total` entries in total, in lexicographic row-major order.
fn edge_shapes(a: usize, b: usize, max_total: usize) -> Vec<EdgeShape> {
    fn fill(pos: usize, left: usize, a: usize, b: usize, cur: &mut Vec<u8>, out: &mut Vec<EdgeShape>) {
        if pos == a * b {
            let rows: Vec<u8> = cur.chunks(b).map(|r| r.iter().sum()).collect();
            let cols: Vec<u8> = (0..b).map(|v| (0..a).map(|u| cur[u * b + v]).sum()).collect();
            if rows.contains(&0) || cols.contains(&0) || !connected_flat(cur, a, b) {
                return;
            }
            let eta_denominator = cur.iter().map(|&e| (1..=e as u64).product::<u64>()).product();
            out.push(EdgeShape {
                edges: cur.clone(),
                total: rows.iter().map(|&r| r as usize).sum(),
                rows,
                cols,
                eta_denominator,
            });
            return;
        }
        for e in 0..=left {
            cur.push(e as u8);
            fill(pos + 1, left - e, a, b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    fill(0, max_total, a, b, &mut Vec::new(), &mut out);
    out
}

/// Ways to hand out `slack` units over `slots` vertices, lexicographically.
fn slack_distributions(slots: usize, slack: usize) -> Vec<Vec<usize>> {
    fn go(slots: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == slots {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(slots, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if slots > 0 {
        go(slots, slack, &mut Vec::new(), &mut out);
    }
    out
}

fn partition_masks(size: usize) -> Vec<Vec<u32>> {
    set_partitions(size)
        .into_iter()
        .map(|blocks| blocks.iter().map(|b| b.iter().fold(0u32, |acc, &l| acc | 1 << (l - 1))).collect())
        .collect()
}

/// Restrictions on which outer levels get emitted.
pub(crate) type LevelFilter<'a> = &'a dyn Fn(&[(u32, i64)]) -> bool;

/// Calls `emit` on every summand of `Δ(m, n, χ)` whose levels pass the
/// filters, ordered by (input partition, output partition, edge matrix,
/// weights). `blocks_ok` sees label masks only and may prune early.
pub(crate) fn for_each_summand(
    m: usize,
    n: usize,
    chi: i64,
    blocks_ok: (&dyn Fn(&[u32]) -> bool, &dyn Fn(&[u32]) -> bool),
    levels_ok: (LevelFilter, LevelFilter),
    emit: &mut dyn FnMut(&Compact),
) {
    let excess = chi - (m + n) as i64;
    if excess < -2 || excess % 2 != 0 {
        return;
    }
    let tops: Vec<Vec<u32>> = partition_masks(m).into_iter().filter(|p| blocks_ok.0(p)).collect();
    let bottoms: Vec<Vec<u32>> = partition_masks(n).into_iter().filter(|p| blocks_ok.1(p)).collect();
    let mut shapes: HashMap<(usize, usize), Vec<EdgeShape>> = HashMap::new();
    let mut slacks: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    for top in &tops {
        for bottom in &bottoms {
            let (a, b) = (top.len(), bottom.len());
            let budget = excess / 2 + (a + b) as i64;
            if budget < 1 {
                continue;
            }
            let budget = budget as usize;
            let list = shapes.entry((a, b)).or_insert_with(|| edge_shapes(a, b, budget));
            for shape in list.iter().filter(|s| s.total <= budget) {
                let slack = budget - shape.total;
                let dists = slacks.entry((a + b, slack)).or_insert_with(|| slack_distributions(a + b, slack));
                for dist in dists.iter() {
                    let base = |legs: u32, deg: u8| legs as i64 + deg as i64 - 2;
                    let top_level: Vec<(u32, i64)> = top
                        .iter()
                        .zip(&shape.rows)
                        .zip(dist)
                        .map(|((&mask, &deg), &x)| (mask, base(mask.count_ones(), deg) + 2 * x as i64))
                        .collect();
                    if !levels_ok.0(&top_level) {
                        continue;
                    }
                    let bottom_level: Vec<(u32, i64)> = bottom
                        .iter()
                        .zip(&shape.cols)
                        .zip(&dist[a..])
                        .map(|((&mask, &deg), &x)| (mask, base(mask.count_ones(), deg) + 2 * x as i64))
                        .collect();
                    if !levels_ok.1(&bottom_level) {
                        continue;
                    }
                    emit(&Compact {
                        top: top_level,
                        bottom: bottom_level,
                        edges: shape.edges.clone(),
                        eta_denominator: shape.eta_denominator,
                    });
                }
            }
        }
    }
}

pub(crate) fn decompose_compact(m: usize, n: usize, chi: i64) -> Vec<Compact> {
    let mut out = Vec::new();
    let any_blocks = |_: &[u32]| true;
    let any_level = |_: &[(u32, i64)]| true;
    for_each_summand(m, n, chi, (&any_blocks, &any_blocks), (&any_level, &any_level), &mut |c| out.push(c.clone()));
    out
}
