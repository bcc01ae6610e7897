//! The cobar construction on reduced coFrob as a graph complex: connected
//! directed acyclic graphs with odd vertices labelled by `(r, t, g)`.

mod cache;
mod canonical;
mod differential;
mod enumerate;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graded::FormalVector;

pub use cache::{BasisCache, CACHE_ENV, CACHE_FORMAT_VERSION};
pub use canonical::{canonicalize, Canonical};
pub use differential::{check_d_squared, d_generator, differential, differential_of_graph};
pub use enumerate::{enumerate_basis, enumerate_levels};
pub(crate) use differential::SmallCoeff;
pub(crate) use enumerate::{first_level, has_next_level, split_level, Coefficient, Columns, LevelStep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CobarError {
    #[error("label ({r},{t},{g}) is not a reduced generator")]
    InvalidLabel { r: usize, t: usize, g: usize },
    #[error("vertex {vertex} has {found_in} inputs and {found_out} outputs, label wants ({want_in},{want_out})")]
    ArityMismatch { vertex: usize, found_in: usize, found_out: usize, want_in: usize, want_out: usize },
    #[error("graph has a directed cycle")]
    Cyclic,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("cache error: {0}")]
    Cache(String),
}

/// The generator `1_{r,t,g}`, in homological degree −1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenLabel {
    pub r: u8,
    pub t: u8,
    pub g: u8,
}

impl GenLabel {
    pub fn new(r: usize, t: usize, g: usize) -> Result<Self, CobarError> {
        if r == 0 || t == 0 || (r, t, g) == (1, 1, 0) || r > 64 || t > 64 || g > 64 {
            return Err(CobarError::InvalidLabel { r, t, g });
        }
        Ok(Self { r: r as u8, t: t as u8, g: g as u8 })
    }

    /// `χ = 2g − 2 + r + t`, additive under gluing.
    pub fn chi(&self) -> i64 {
        2 * self.g as i64 - 2 + self.r as i64 + self.t as i64
    }
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1_{{{},{},{}}}", self.r, self.t, self.g)
    }
}

/// A graph with ordered vertices. `edges[a * p + b]` counts edges from an
/// output of `a` to an input of `b`; external input leg `l` enters vertex
/// `inputs[l]`, output leg `l` leaves vertex `outputs[l]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropGraph {
    pub(crate) labels: Vec<GenLabel>,
    pub(crate) inputs: Vec<u8>,
    pub(crate) outputs: Vec<u8>,
    pub(crate) edges: Vec<u8>,
}

pub type GraphVector = FormalVector<PropGraph>;

impl PropGraph {
    pub fn new(labels: Vec<GenLabel>, inputs: Vec<usize>, outputs: Vec<usize>, edges: Vec<Vec<usize>>) -> Result<Self, CobarError> {
        let p = labels.len();
        if edges.len() != p || edges.iter().any(|row| row.len() != p) {
            return Err(CobarError::Malformed("edge matrix shape".into()));
        }
        if inputs.iter().chain(&outputs).any(|&v| v >= p) {
            return Err(CobarError::Malformed("leg attached to a missing vertex".into()));
        }
        let graph = Self {
            labels,
            inputs: inputs.into_iter().map(|v| v as u8).collect(),
            outputs: outputs.into_iter().map(|v| v as u8).collect(),
            edges: edges.into_iter().flatten().map(|e| e as u8).collect(),
        };
        graph.validate()?;
        Ok(graph)
    }

    /// The single-vertex graph carrying `label`.
    pub fn generator(label: GenLabel) -> Self {
        Self {
            labels: vec![label],
            inputs: vec![0; label.r as usize],
            outputs: vec![0; label.t as usize],
            edges: vec![0],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[GenLabel] {
        &self.labels
    }

    pub fn input_legs(&self) -> &[u8] {
        &self.inputs
    }

    pub fn output_legs(&self) -> &[u8] {
        &self.outputs
    }

    pub fn edge(&self, from: usize, to: usize) -> usize {
        self.edges[from * self.vertex_count() + to] as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|&e| e as usize).sum()
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.inputs.len(), self.outputs.len())
    }

    /// `Σ g_v + (#edges − #vertices + 1)`.
    pub fn genus(&self) -> usize {
        let vertex_genus: usize = self.labels.iter().map(|l| l.g as usize).sum();
        vertex_genus + self.edge_count() + 1 - self.vertex_count()
    }

    /// `−(#vertices)`.
    pub fn degree(&self) -> i64 {
        -(self.vertex_count() as i64)
    }

    pub fn validate(&self) -> Result<(), CobarError> {
        let p = self.vertex_count();
        for v in 0..p {
            let found_in = self.inputs.iter().filter(|&&x| x as usize == v).count()
                + (0..p).map(|s| self.edge(s, v)).sum::<usize>();
            let found_out = self.outputs.iter().filter(|&&x| x as usize == v).count()
                + (0..p).map(|d| self.edge(v, d)).sum::<usize>();
            let label = self.labels[v];
            if (found_in, found_out) != (label.r as usize, label.t as usize) {
                return Err(CobarError::ArityMismatch {
                    vertex: v,
                    found_in,
                    found_out,
                    want_in: label.r as usize,
                    want_out: label.t as usize,
                });
            }
        }
        // Kahn's algorithm
        let mut indegree: Vec<usize> = (0..p).map(|v| (0..p).filter(|&s| self.edge(s, v) > 0).count()).collect();
        let mut ready: Vec<usize> = (0..p).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for d in 0..p {
                if self.edge(v, d) > 0 {
                    indegree[d] -= 1;
                    if indegree[d] == 0 {
                        ready.push(d);
                    }
                }
            }
        }
        if seen != p {
            return Err(CobarError::Cyclic);
        }
        let mut reached = vec![false; p];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..p {
                if !reached[w] && (self.edge(v, w) > 0 || self.edge(w, v) > 0) {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(CobarError::Disconnected);
        }
        Ok(())
    }

    /// Reorders vertices: new vertex `i` is old vertex `order[i]`.
    pub(crate) fn permuted(&self, order: &[usize]) -> Self {
        let p = self.vertex_count();
        let mut position = vec![0u8; p];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i as u8;
        }
        let mut edges = vec![0u8; p * p];
        for a in 0..p {
            for b in 0..p {
                edges[a * p + b] = self.edges[order[a] * p + order[b]];
            }
        }
        Self {
            labels: order.iter().map(|&v| self.labels[v]).collect(),
            inputs: self.inputs.iter().map(|&v| position[v as usize]).collect(),
            outputs: self.outputs.iter().map(|&v| position[v as usize]).collect(),
            edges,
        }
    }
}

/// A packed [`PropGraph`]: `[p, r, t, labels, inputs, outputs, edges]`.
/// Within one `(p, r, t)` keys order exactly like graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct GraphKey(Box<[u8]>);

impl PropGraph {
    pub(crate) fn key(&self) -> GraphKey {
        let p = self.vertex_count();
        let mut bytes = Vec::with_capacity(3 + 3 * p + self.inputs.len() + self.outputs.len() + p * p);
        bytes.extend([p as u8, self.inputs.len() as u8, self.outputs.len() as u8]);
        for l in &self.labels {
            bytes.extend([l.r, l.t, l.g]);
        }
        bytes.extend_from_slice(&self.inputs);
        bytes.extend_from_slice(&self.outputs);
        bytes.extend_from_slice(&self.edges);
        GraphKey(bytes.into_boxed_slice())
    }

    pub(crate) fn from_key(key: &GraphKey) -> Self {
        let b = &key.0;
        let (p, r, t) = (b[0] as usize, b[1] as usize, b[2] as usize);
        let labels = b[3..3 + 3 * p].chunks(3).map(|c| GenLabel { r: c[0], t: c[1], g: c[2] }).collect();
        let at = 3 + 3 * p;
        Self {
            labels,
            inputs: b[at..at + r].to_vec(),
            outputs: b[at + r..at + r + t].to_vec(),
            edges: b[at + r + t..].to_vec(),
        }
    }
}

impl fmt::Display for PropGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.vertex_count();
        let names: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", names.join(" "))?;
        let mut edges = Vec::new();
        for a in 0..p {
            for b in 0..p {
                let e = self.edge(a, b);
                if e > 0 {
                    edges.push(if e == 1 { format!("{a}→{b}") } else { format!("{a}→{b}×{e}") });
                }
            }
        }
        if !edges.is_empty() {
            write!(f, " {{{}}}", edges.join(", "))?;
        }
        let legs = |v: &[u8]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("");
        write!(f, " in:{} out:{}", legs(&self.inputs), legs(&self.outputs))
    }
}
