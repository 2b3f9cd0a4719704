//! JSON file formats.
//!
//! - graph: `{"v": 10, "edges": [[0, 1], ...]}`, 0-based vertices
//! - permutations: `{"images": [...]}` or a list of such objects
//! - directed adjacency matrix: a list of 0/1 rows
//! - point set: a list of homogeneous coordinate vectors over the field encoding of [`crate::field`]

use crate::linalg::IntMatrix;
use crate::spectra::{DenseGraph, GraphError, Permutation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub v: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&DenseGraph> for GraphFile {
    fn from(g: &DenseGraph) -> Self {
        GraphFile {
            v: g.v(),
            edges: g.edges(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<DenseGraph, FormatError> {
    let file: GraphFile = serde_json::from_str(text)?;
    Ok(DenseGraph::from_edges(file.v, &file.edges)?)
}

pub fn graph_to_json(g: &DenseGraph) -> String {
    serde_json::to_string(&GraphFile::from(g)).expect("plain data serializes")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PermFile {
    One(Permutation),
    Many(Vec<Permutation>),
}

pub fn parse_permutations(text: &str) -> Result<Vec<Permutation>, FormatError> {
    Ok(match serde_json::from_str::<PermFile>(text)? {
        PermFile::One(p) => vec![p],
        PermFile::Many(ps) => ps,
    })
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix, FormatError> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text)?;
    let n = rows.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(FormatError::Shape(format!(
            "row {i} has {} entries, expected {n}",
            r.len()
        )));
    }
    if rows.iter().flatten().any(|&x| x != 0 && x != 1) {
        return Err(FormatError::Shape("entries must be 0 or 1".into()));
    }
    Ok(IntMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn parse_points(text: &str) -> Result<Vec<Vec<usize>>, FormatError> {
    Ok(serde_json::from_str(text)?)
}
