//! Canonical vertex orders. Vertices are odd, so a reordering by `π`
//! costs `sign(π)`; flags at a vertex carry no sign.

use super::{CobarError, PropGraph};
use crate::graded::Sign;

/// A canonical representative and the sign with `G = sign · graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub graph: PropGraph,
    pub sign: Sign,
}

/// Validates `g` and returns its canonical form, or `None` when an
/// automorphism permutes the vertices oddly and the graph vanishes.
pub fn canonicalize(g: &PropGraph) -> Result<Option<Canonical>, CobarError> {
    g.validate()?;
    let (graph, sign) = canonical_form(g);
    Ok(sign.map(|sign| Canonical { graph, sign }))
}

fn leg_mask(legs: &[u8], v: usize) -> u64 {
    legs.iter().enumerate().filter(|(_, &x)| x as usize == v).fold(0, |acc, (l, _)| acc | 1 << l)
}

/// Colour refinement from `(label, input legs, output legs)`. Returns one
/// colour rank per vertex; ranks are isomorphism invariant.
fn refine(g: &PropGraph) -> Vec<usize> {
    let p = g.vertex_count();
    let initial: Vec<_> = (0..p).map(|v| (g.labels[v], leg_mask(&g.inputs, v), leg_mask(&g.outputs, v))).collect();
    let mut colour = ranks(&initial);
    loop {
        let signature: Vec<_> = (0..p)
            .map(|v| {
                let mut out: Vec<(usize, u8)> =
                    (0..p).filter(|&w| g.edges[v * p + w] > 0).map(|w| (colour[w], g.edges[v * p + w])).collect();
                let mut inc: Vec<(usize, u8)> =
                    (0..p).filter(|&w| g.edges[w * p + v] > 0).map(|w| (colour[w], g.edges[w * p + v])).collect();
                out.sort_unstable();
                inc.sort_unstable();
                (colour[v], out, inc)
            })
            .collect();
        let next = ranks(&signature);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn ranks<T: Ord>(items: &[T]) -> Vec<usize> {
    let mut sorted: Vec<&T> = items.iter().collect();
    sorted.sort();
    sorted.dedup();
    items.iter().map(|x| sorted.binary_search(&x).unwrap()).collect()
}

fn parity(order: &[usize]) -> Sign {
    let mut seen = vec![false; order.len()];
    let mut odd = false;
    for start in 0..order.len() {
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = order[v];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            odd = !odd;
        }
    }
    Sign::from_parity(odd)
}

/// The canonical representative (computed even when the graph vanishes)
/// and the sign, `None` for a vanishing graph. No validation.
pub(crate) fn canonical_form(g: &PropGraph) -> (PropGraph, Option<Sign>) {
    let colour = refine(g);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); colour.iter().max().map_or(0, |m| m + 1)];
    for (v, &c) in colour.iter().enumerate() {
        cells[c].push(v);
    }
    let mut search = Search { graph: g, best: None, signs: (false, false) };
    let mut order = Vec::with_capacity(g.vertex_count());
    search.run(&mut cells, 0, &mut order);
    let (best, sign) = search.best.expect("at least one order");
    let sign = match search.signs {
        (true, true) => None,
        _ => Some(sign),
    };
    (best, sign)
}

struct Search<'a> {
    graph: &'a PropGraph,
    best: Option<(PropGraph, Sign)>,
    /// Which signs reach the current best form: (positive, negative).
    signs: (bool, bool),
}

impl Search<'_> {
    fn run(&mut self, cells: &mut [Vec<usize>], cell: usize, order: &mut Vec<usize>) {
        if cell == cells.len() {
            let candidate = self.graph.permuted(order);
            let sign = parity(order);
            let better = match &self.best {
                None => true,
                Some((b, _)) => candidate < *b,
            };
            if better {
                self.best = Some((candidate, sign));
                self.signs = (sign == Sign::Plus, sign == Sign::Minus);
            } else if self.best.as_ref().is_some_and(|(b, _)| candidate == *b) {
                match sign {
                    Sign::Plus => self.signs.0 = true,
                    Sign::Minus => self.signs.1 = true,
                }
            }
            return;
        }
        let size = cells[cell].len();
        self.permute(cells, cell, 0, size, order);
    }

    fn permute(&mut self, cells: &mut [Vec<usize>], cell: usize, at: usize, size: usize, order: &mut Vec<usize>) {
        if at == size {
            self.run(cells, cell + 1, order);
            return;
        }
        for i in at..size {
            cells[cell].swap(at, i);
            order.push(cells[cell][at]);
            self.permute(cells, cell, at + 1, size, order);
            order.pop();
            cells[cell].swap(at, i);
        }
    }
}
