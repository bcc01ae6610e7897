//! The cobar differential: every vertex splits into two along `k ≥ 1`
//! edges, weighted by `1/k!`, extended as an odd derivation.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;

use super::canonical::canonical_form;
use super::{CobarError, GenLabel, GraphVector, PropGraph};
use crate::graded::Scalar;

pub(crate) type SmallCoeff = Ratio<i64>;

fn binom(n: u8, k: u8) -> i64 {
    (0..k as i64).fold(1, |acc, i| acc * (n as i64 - i) / (i + 1))
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Every vector `v` with `0 ≤ v[i] ≤ bounds[i]`, lexicographically.
fn bounded_vectors(bounds: &[u8]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::with_capacity(bounds.len())];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out
}

/// Splits vertex `x` of `g` into an upper vertex `U` (kept at position `x`)
/// over a lower vertex `L` (inserted at `x + 1`) joined by `k` edges `L → U`.
/// Each structural result is emitted once with the number of flag choices
/// producing it, divided by `k!`.
pub(crate) fn for_each_split(g: &PropGraph, x: usize, emit: &mut dyn FnMut(PropGraph, SmallCoeff)) {
    let p = g.vertex_count();
    let label = g.labels[x];
    let in_legs: Vec<usize> = (0..g.inputs.len()).filter(|&l| g.inputs[l] as usize == x).collect();
    let out_legs: Vec<usize> = (0..g.outputs.len()).filter(|&l| g.outputs[l] as usize == x).collect();
    let sources: Vec<(usize, u8)> = (0..p).filter(|&s| g.edges[s * p + x] > 0).map(|s| (s, g.edges[s * p + x])).collect();
    let targets: Vec<(usize, u8)> = (0..p).filter(|&d| g.edges[x * p + d] > 0).map(|d| (d, g.edges[x * p + d])).collect();
    let source_choices = bounded_vectors(&sources.iter().map(|s| s.1).collect::<Vec<_>>());
    let target_choices = bounded_vectors(&targets.iter().map(|d| d.1).collect::<Vec<_>>());
    let position = |v: usize| if v <= x { v } else { v + 1 };
    let (upper, lower) = (x, x + 1);
    let q = p + 1;
    for lower_in_legs in 0u64..1 << in_legs.len() {
        for to_lower in &source_choices {
            let i = lower_in_legs.count_ones() as usize + to_lower.iter().map(|&a| a as usize).sum::<usize>();
            if i == 0 {
                continue;
            }
            let in_mult: i64 = sources.iter().zip(to_lower).map(|(&(_, e), &a)| binom(e, a)).product();
            for upper_out_legs in 0u64..1 << out_legs.len() {
                for to_upper in &target_choices {
                    let n = upper_out_legs.count_ones() as usize + to_upper.iter().map(|&b| b as usize).sum::<usize>();
                    if n == 0 {
                        continue;
                    }
                    let out_mult: i64 = targets.iter().zip(to_upper).map(|(&(_, e), &b)| binom(e, b)).product();
                    let (r, t, genus) = (label.r as usize, label.t as usize, label.g as usize);
                    for k in 1..=genus + 1 {
                        let (m, j) = (r - i + k, t - n + k);
                        for g_lower in 0..=genus + 1 - k {
                            let g_upper = genus + 1 - k - g_lower;
                            let (Ok(lower_label), Ok(upper_label)) = (GenLabel::new(i, j, g_lower), GenLabel::new(m, n, g_upper)) else {
                                continue;
                            };
                            let mut labels = Vec::with_capacity(q);
                            for (v, &l) in g.labels.iter().enumerate() {
                                labels.push(if v == x { upper_label } else { l });
                                if v == x {
                                    labels.push(lower_label);
                                }
                            }
                            let mut edges = vec![0u8; q * q];
                            for a in (0..p).filter(|&a| a != x) {
                                for b in (0..p).filter(|&b| b != x) {
                                    edges[position(a) * q + position(b)] = g.edges[a * p + b];
                                }
                            }
                            for (&(s, e), &a) in sources.iter().zip(to_lower) {
                                edges[position(s) * q + lower] = a;
                                edges[position(s) * q + upper] = e - a;
                            }
                            for (&(d, e), &b) in targets.iter().zip(to_upper) {
                                edges[upper * q + position(d)] = b;
                                edges[lower * q + position(d)] = e - b;
                            }
                            edges[lower * q + upper] = k as u8;
                            let inputs = (0..g.inputs.len())
                                .map(|l| {
                                    let v = g.inputs[l] as usize;
                                    if v != x {
                                        position(v) as u8
                                    } else if lower_in_legs >> in_legs.iter().position(|&y| y == l).unwrap() & 1 == 1 {
                                        lower as u8
                                    } else {
                                        upper as u8
                                    }
                                })
                                .collect();
                            let outputs = (0..g.outputs.len())
                                .map(|l| {
                                    let v = g.outputs[l] as usize;
                                    if v != x {
                                        position(v) as u8
                                    } else if upper_out_legs >> out_legs.iter().position(|&y| y == l).unwrap() & 1 == 1 {
                                        upper as u8
                                    } else {
                                        lower as u8
                                    }
                                })
                                .collect();
                            let graph = PropGraph { labels, inputs, outputs, edges };
                            emit(graph, SmallCoeff::new(in_mult * out_mult, factorial(k)));
                        }
                    }
                }
            }
        }
    }
}

/// `d` of a single graph in small exact coefficients, keyed by canonical
/// graphs. Vertex `x` carries the sign `(−1)^x`.
pub(crate) fn boundary_terms(g: &PropGraph) -> BTreeMap<PropGraph, SmallCoeff> {
    let mut out: BTreeMap<PropGraph, SmallCoeff> = BTreeMap::new();
    for x in 0..g.vertex_count() {
        let vertex_sign = if x % 2 == 0 { 1 } else { -1 };
        for_each_split(g, x, &mut |split, c| {
            let (canonical, sign) = canonical_form(&split);
            if let Some(sign) = sign {
                *out.entry(canonical).or_insert_with(SmallCoeff::zero) += c * (vertex_sign * sign.to_i64());
            }
        });
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn to_vector(terms: BTreeMap<PropGraph, SmallCoeff>) -> GraphVector {
    terms.into_iter().map(|(g, c)| (g, Scalar::new((*c.numer()).into(), (*c.denom()).into()))).collect()
}

/// `d(1_{r,t,g})`.
pub fn d_generator(label: GenLabel) -> Result<GraphVector, CobarError> {
    let label = GenLabel::new(label.r as usize, label.t as usize, label.g as usize)?;
    Ok(to_vector(boundary_terms(&PropGraph::generator(label))))
}

/// `d` on one graph, taken in its own vertex order.
pub fn differential_of_graph(g: &PropGraph) -> GraphVector {
    to_vector(boundary_terms(g))
}

/// `d` extended linearly.
pub fn differential(v: &GraphVector) -> GraphVector {
    v.map_linear(differential_of_graph)
}

/// `d(d x)` for every basis graph `x` of `(r, t, g)` with at most `p_max`
/// vertices, the generator included. The number of graphs checked, or the
/// first one in basis order whose square survives.
pub fn check_d_squared(r: usize, t: usize, g: usize, p_max: usize) -> Result<usize, PropGraph> {
    let graphs: Vec<PropGraph> = super::enumerate_levels(r, t, g, p_max).into_iter().flatten().collect();
    match graphs.par_iter().find_first(|x| !differential(&differential_of_graph(x)).is_zero()) {
        Some(bad) => Err(bad.clone()),
        None => Ok(graphs.len()),
    }
}
