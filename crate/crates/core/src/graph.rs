//! Edge-labeled directed graphs: loading, interning, and serialization.
//!
//! Two text formats are supported, both UTF-8 and line oriented:
//!
//! * edge list: `src label dst`, three whitespace-separated fields, `#`
//!   starts a comment;
//! * triples: `o p s` per line, optionally dressed as simplified N-Triples
//!   (`<o> <p> <s> .` — angle brackets and the trailing dot are stripped).
//!   With inverse edges enabled every triple `(o, p, s)` also contributes
//!   `(s, p_r, o)`, the on-disk spelling of the inverse label `p⁻¹`.
//!
//! Node identifiers are arbitrary strings interned to dense indices in
//! first-appearance order. Edges form a set: duplicates collapse; self-loops
//! and parallel edges with distinct labels are fine.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

/// Suffix appended to a label to name its inverse.
pub const INVERSE_SUFFIX: &str = "_r";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected 3 whitespace-separated fields, found {found}")]
    MalformedLine { line: usize, found: usize },
    #[error("path must contain at least one edge")]
    EmptyPath,
    #[error("path edges do not chain at position {0}")]
    BrokenChain(usize),
}

/// A labeled directed edge between interned node indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: u32,
    pub label: String,
    pub dst: u32,
}

impl Edge {
    pub fn new(src: u32, label: impl Into<String>, dst: u32) -> Self {
        Edge {
            src,
            label: label.into(),
            dst,
        }
    }
}

/// An immutable edge-labeled directed graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    node_names: Vec<String>,
    node_index: HashMap<String, u32>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    /// Loads the `src label dst` edge-list format.
    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut graph = Graph::default();
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let [src, label, dst] = fields.as_slice() else {
                return Err(GraphError::MalformedLine {
                    line: lineno + 1,
                    found: fields.len(),
                });
            };
            let (src, dst) = (graph.intern(src), graph.intern(dst));
            graph.edges.insert(Edge::new(src, *label, dst));
        }
        Ok(graph)
    }

    /// Loads whitespace-separated triples `o p s`, one per line. Each triple
    /// becomes the edge `(o, p, s)`; with `add_inverses` it also becomes
    /// `(s, p_r, o)`. Lines starting with `#` are comments (a `#` elsewhere
    /// is kept: IRIs contain them).
    pub fn from_triples(text: &str, add_inverses: bool) -> Result<Graph, GraphError> {
        let mut graph = Graph::default();
        for (lineno, raw_line) in text.lines().enumerate() {
            let mut line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            line = line.strip_suffix('.').unwrap_or(line).trim_end();
            let fields: Vec<&str> = line.split_whitespace().map(strip_angles).collect();
            let [o, p, s] = fields.as_slice() else {
                return Err(GraphError::MalformedLine {
                    line: lineno + 1,
                    found: fields.len(),
                });
            };
            let (src, dst) = (graph.intern(o), graph.intern(s));
            graph.edges.insert(Edge::new(src, *p, dst));
            if add_inverses {
                graph
                    .edges
                    .insert(Edge::new(dst, format!("{p}{INVERSE_SUFFIX}"), src));
            }
        }
        Ok(graph)
    }

    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&idx) = self.node_index.get(name) {
            return idx;
        }
        let idx = self.node_names.len() as u32;
        self.node_names.push(name.to_owned());
        self.node_index.insert(name.to_owned(), idx);
        idx
    }

    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    /// Node identifiers in interning order.
    pub fn node_names(&self) -> &[String] {
        &self.node_names
    }

    pub fn node_name(&self, idx: u32) -> &str {
        &self.node_names[idx as usize]
    }

    pub fn node_index(&self, name: &str) -> Option<u32> {
        self.node_index.get(name).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in `(src, label, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn contains_edge(&self, edge: &Edge) -> bool {
        self.edges.contains(edge)
    }

    /// The set of labels occurring on edges.
    pub fn label_alphabet(&self) -> BTreeSet<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    /// Serializes back to the edge-list format. Edges are ordered so that
    /// node first appearances follow interning order; reloading the output
    /// therefore reproduces both the edge set and the node numbering (nodes
    /// not covered by any edge cannot survive a round trip).
    pub fn to_edge_list(&self) -> String {
        let n = self.node_count();
        let mut introduced = vec![false; n];
        let mut emitted: BTreeSet<&Edge> = BTreeSet::new();
        let mut order: Vec<&Edge> = Vec::new();

        for k in 0..n {
            if introduced[k] {
                continue;
            }
            let k32 = k as u32;
            let covered = |node: u32| introduced[node as usize] || node == k32;
            // Prefer an edge whose endpoints are already numbered, then one
            // introducing k and k+1 together, then anything touching k.
            let pick = self
                .edges
                .iter()
                .find(|e| (e.src == k32 || e.dst == k32) && covered(e.src) && covered(e.dst))
                .or_else(|| {
                    self.edges
                        .iter()
                        .find(|e| e.src == k32 && e.dst == k32 + 1)
                })
                .or_else(|| self.edges.iter().find(|e| e.src == k32 || e.dst == k32));
            if let Some(e) = pick {
                introduced[e.src as usize] = true;
                introduced[e.dst as usize] = true;
                if emitted.insert(e) {
                    order.push(e);
                }
            }
        }
        order.extend(self.edges.iter().filter(|e| !emitted.contains(e)));

        let mut out = String::new();
        for e in order {
            let _ = writeln!(
                out,
                "{} {} {}",
                self.node_name(e.src),
                e.label,
                self.node_name(e.dst)
            );
        }
        out
    }
}

fn strip_angles(token: &str) -> &str {
    token
        .strip_prefix('<')
        .and_then(|t| t.strip_suffix('>'))
        .unwrap_or(token)
}

/// A nonempty chained sequence of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    edges: Vec<Edge>,
}

impl Path {
    /// Builds a path, checking that consecutive edges chain.
    pub fn new(edges: Vec<Edge>) -> Result<Path, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        for (k, pair) in edges.windows(2).enumerate() {
            if pair[0].dst != pair[1].src {
                return Err(GraphError::BrokenChain(k));
            }
        }
        Ok(Path { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false // paths are nonempty by construction
    }

    pub fn source(&self) -> u32 {
        self.edges[0].src
    }

    pub fn target(&self) -> u32 {
        self.edges[self.edges.len() - 1].dst
    }

    /// The label word along the path.
    pub fn labels(&self) -> Vec<&str> {
        self.edges.iter().map(|e| e.label.as_str()).collect()
    }
}
