//! Finite quivers: the data model, the file format, vertex classification,
//! complete subquivers, the cycle closure and reduction chains, and path counts.

mod classify;
mod parse;
mod paths;
mod reduce;

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

pub use classify::{classify, VertexClassification};
pub use parse::parse_quiver;
pub use paths::{path_counts, PathCountTable};
pub use reduce::{is_complete_subquiver, reduction_chain, tilde_quiver, ReductionChain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: undeclared vertex `{name}`")]
    UndeclaredVertex { name: String, line: usize, column: usize },
    #[error("line {line}, column {column}: duplicate vertex `{name}`")]
    DuplicateVertex { name: String, line: usize, column: usize },
    #[error("not a subquiver: {0}")]
    NotSubquiver(String),
}

/// An arrow, as indices into the quiver's declared vertex list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph.
///
/// Vertices keep their declaration order; `vertex_order` is the canonical
/// order used by every matrix and report: sinks first, then the remaining
/// vertices, each block in declaration order. Parallel arrows are separate
/// entries of `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    edges: Vec<Edge>,
    order: Vec<usize>,
    position: Vec<usize>,
}

impl Quiver {
    /// Builds a quiver from declared vertex names and arrows between them.
    ///
    /// Panics on out-of-range endpoints or repeated names; use
    /// [`Quiver::from_named_edges`] or [`parse_quiver`] for unchecked input.
    pub fn new(names: Vec<String>, edges: Vec<Edge>) -> Self {
        let n = names.len();
        assert!(edges.iter().all(|e| e.source < n && e.target < n), "edge endpoint out of range");
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            assert!(seen.insert(name.as_str(), i).is_none(), "duplicate vertex {name}");
        }
        let mut emits = vec![false; n];
        for e in &edges {
            emits[e.source] = true;
        }
        let order: Vec<usize> = (0..n).filter(|&v| !emits[v]).chain((0..n).filter(|&v| emits[v])).collect();
        let mut position = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        Quiver { names, edges, order, position }
    }

    /// Convenience constructor from `(source, target, multiplicity)` triples.
    pub fn from_named_edges(names: &[&str], arrows: &[(&str, &str, usize)]) -> Result<Self, QuiverError> {
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(*name, i).is_some() {
                return Err(QuiverError::DuplicateVertex { name: name.to_string(), line: 0, column: 0 });
            }
        }
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| QuiverError::UndeclaredVertex {
                name: name.to_string(),
                line: 0,
                column: 0,
            })
        };
        let mut edges = Vec::new();
        for &(s, t, mult) in arrows {
            let (source, target) = (lookup(s)?, lookup(t)?);
            edges.extend(std::iter::repeat_n(Edge { source, target }, mult));
        }
        Ok(Quiver::new(names.iter().map(|s| s.to_string()).collect(), edges))
    }

    /// Builds a quiver on vertices `v0, v1, ...` from an adjacency count matrix
    /// indexed by declaration order.
    pub fn from_adjacency(counts: &[Vec<usize>]) -> Self {
        let n = counts.len();
        let names = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for (i, row) in counts.iter().enumerate() {
            assert_eq!(row.len(), n, "adjacency counts must be square");
            for (j, &c) in row.iter().enumerate() {
                edges.extend(std::iter::repeat_n(Edge { source: i, target: j }, c));
            }
        }
        Quiver::new(names, edges)
    }

    pub fn empty() -> Self {
        Quiver::new(Vec::new(), Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Vertex names in declaration order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Declaration indices in canonical (sinks-first) order.
    pub fn vertex_order(&self) -> &[usize] {
        &self.order
    }

    /// Canonical position of the vertex with declaration index `v`.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn ordered_names(&self) -> Vec<&str> {
        self.order.iter().map(|&v| self.names[v].as_str()).collect()
    }

    /// Arrows sorted by (source position, target position, declaration order).
    pub fn ordered_edges(&self) -> Vec<Edge> {
        let mut idx: Vec<usize> = (0..self.edges.len()).collect();
        idx.sort_by_key(|&k| {
            let e = self.edges[k];
            (self.position[e.source], self.position[e.target], k)
        });
        idx.into_iter().map(|k| self.edges[k]).collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.source == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.target == v).count()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.position[v] < self.sink_count()
    }

    /// Number of sinks, the length of the leading block of `vertex_order`.
    pub fn sink_count(&self) -> usize {
        self.order.iter().take_while(|&&v| !self.edges.iter().any(|e| e.source == v)).count()
    }

    /// Number of arrows from `i` to `j` (declaration indices).
    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.edges.iter().filter(|e| e.source == i && e.target == j).count()
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let edges = self.edges.iter().map(|e| Edge { source: e.target, target: e.source }).collect();
        Quiver::new(self.names.clone(), edges)
    }

    /// Restricts to the vertices in `keep` (declaration indices) and every
    /// arrow they emit. All such arrows must land inside `keep`.
    pub(crate) fn restrict_complete(&self, keep: &[bool]) -> Quiver {
        let mut new_index = vec![usize::MAX; self.names.len()];
        let mut names = Vec::new();
        for (v, name) in self.names.iter().enumerate() {
            if keep[v] {
                new_index[v] = names.len();
                names.push(name.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.source])
            .map(|e| {
                assert!(keep[e.target], "restriction is not closed under emitted arrows");
                Edge { source: new_index[e.source], target: new_index[e.target] }
            })
            .collect();
        Quiver::new(names, edges)
    }

    /// Renders the quiver in the line-oriented file format. Parallel arrows
    /// are grouped into one line per (source, target) pair, in order of
    /// first appearance.
    pub fn to_file_text(&self) -> String {
        let mut out = String::from("vertices:");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push_str("\nedges:\n");
        let mut groups: Vec<(Edge, usize)> = Vec::new();
        for e in &self.edges {
            match groups.iter_mut().find(|(g, _)| g == e) {
                Some((_, c)) => *c += 1,
                None => groups.push((*e, 1)),
            }
        }
        for (e, c) in groups {
            let _ = writeln!(out, "{} {} {}", self.names[e.source], self.names[e.target], c);
        }
        out
    }

    /// Sorted multiset of arrows as name pairs.
    pub fn edge_multiset(&self) -> Vec<(&str, &str)> {
        let mut v: Vec<(&str, &str)> = self.edges.iter().map(|e| (self.name(e.source), self.name(e.target))).collect();
        v.sort_unstable();
        v
    }
}
