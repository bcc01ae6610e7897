//! On-disk bases, one JSON file per `(r, t, g, p)`.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::enumerate::levels_until;
use super::{CobarError, GenLabel, PropGraph};

/// Overrides the cache directory.
pub const CACHE_ENV: &str = "OMEGA_COFROB_CACHE";
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct GraphRecord {
    /// `[r, t, g]` per vertex.
    labels: Vec<[u8; 3]>,
    /// `[from, to, multiplicity]`.
    edges: Vec<[u8; 3]>,
    inputs: Vec<u8>,
    outputs: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct LevelFile {
    format_version: u32,
    r: usize,
    t: usize,
    g: usize,
    p: usize,
    /// No graphs of any kind exist with more vertices.
    last: bool,
    graphs: Vec<GraphRecord>,
}

impl From<&PropGraph> for GraphRecord {
    fn from(g: &PropGraph) -> Self {
        let p = g.vertex_count();
        let edges = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b)))
            .filter(|&(a, b)| g.edge(a, b) > 0)
            .map(|(a, b)| [a as u8, b as u8, g.edge(a, b) as u8])
            .collect();
        Self {
            labels: g.labels.iter().map(|l| [l.r, l.t, l.g]).collect(),
            edges,
            inputs: g.inputs.clone(),
            outputs: g.outputs.clone(),
        }
    }
}

impl TryFrom<GraphRecord> for PropGraph {
    type Error = CobarError;

    fn try_from(rec: GraphRecord) -> Result<Self, CobarError> {
        let labels = rec
            .labels
            .iter()
            .map(|&[r, t, g]| GenLabel::new(r as usize, t as usize, g as usize))
            .collect::<Result<Vec<_>, _>>()?;
        let p = labels.len();
        let mut edges = vec![vec![0; p]; p];
        for [a, b, e] in rec.edges {
            let row = edges.get_mut(a as usize).ok_or_else(|| CobarError::Malformed("edge endpoint".into()))?;
            *row.get_mut(b as usize).ok_or_else(|| CobarError::Malformed("edge endpoint".into()))? = e as usize;
        }
        let legs = |v: Vec<u8>| v.into_iter().map(usize::from).collect();
        PropGraph::new(labels, legs(rec.inputs), legs(rec.outputs), edges)
    }
}

/// A directory of cached bases. Writes go through a temporary file and an
/// atomic rename.
#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self, CobarError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CobarError::Cache(format!("{}: {e}", dir.display())))?;
        Ok(Self { dir })
    }

    /// The directory named by [`CACHE_ENV`], if set.
    pub fn from_env() -> Option<Result<Self, CobarError>> {
        std::env::var_os(CACHE_ENV).map(|dir| Self::new(PathBuf::from(dir)))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, r: usize, t: usize, g: usize, p: usize) -> PathBuf {
        self.dir.join(format!("basis_r{r}_t{t}_g{g}_p{p}.json"))
    }

    fn load(&self, r: usize, t: usize, g: usize, p: usize) -> Result<Option<(Vec<PropGraph>, bool)>, CobarError> {
        let path = self.path(r, t, g, p);
        let Ok(text) = fs::read_to_string(&path) else {
            return Ok(None);
        };
        let file: LevelFile =
            serde_json::from_str(&text).map_err(|e| CobarError::Cache(format!("{}: {e}", path.display())))?;
        if file.format_version != CACHE_FORMAT_VERSION || (file.r, file.t, file.g, file.p) != (r, t, g, p) {
            return Ok(None);
        }
        let graphs = file.graphs.into_iter().map(PropGraph::try_from).collect::<Result<Vec<_>, _>>()?;
        Ok(Some((graphs, file.last)))
    }

    fn store(&self, r: usize, t: usize, g: usize, p: usize, graphs: &[PropGraph], last: bool) -> Result<(), CobarError> {
        let file = LevelFile {
            format_version: CACHE_FORMAT_VERSION,
            r,
            t,
            g,
            p,
            last,
            graphs: graphs.iter().map(GraphRecord::from).collect(),
        };
        let io = |e: std::io::Error| CobarError::Cache(e.to_string());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        serde_json::to_writer(&mut tmp, &file).map_err(|e| CobarError::Cache(e.to_string()))?;
        tmp.write_all(b"\n").map_err(io)?;
        tmp.persist(self.path(r, t, g, p)).map_err(|e| io(e.error))?;
        Ok(())
    }

    /// Same as [`super::enumerate_levels`], served from disk when every
    /// level is present and computed and stored otherwise.
    pub fn levels(&self, r: usize, t: usize, g: usize, p_max: usize) -> Result<Vec<Vec<PropGraph>>, CobarError> {
        let mut cached = Vec::new();
        for p in 1..=p_max {
            match self.load(r, t, g, p)? {
                Some((graphs, last)) => {
                    cached.push(graphs);
                    if last {
                        return Ok(cached);
                    }
                }
                None => break,
            }
        }
        if cached.len() == p_max {
            return Ok(cached);
        }
        let levels = levels_until(r, t, g, p_max);
        let exhausted = levels.len() < p_max;
        let mut bases = Vec::with_capacity(levels.len());
        for (idx, level) in levels.iter().enumerate() {
            let basis: Vec<PropGraph> = level.basis_graphs().collect();
            self.store(r, t, g, idx + 1, &basis, exhausted && idx + 1 == levels.len())?;
            bases.push(basis);
        }
        Ok(bases)
    }
}
