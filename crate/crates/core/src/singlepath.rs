//! Single-path-semantics query evaluation: the closure with path-length
//! annotations, and extraction of one concrete witnessing path per
//! reported pair.
//!
//! Each matrix cell carries, per nonterminal, the length of some (not
//! necessarily shortest) witnessing path. A length is written at most once:
//! later discoveries of the same fact never overwrite it. When nonterminal
//! `A` enters a cell through rule `A -> B C` over an intermediate node, its
//! length is the sum of the two recorded constituent lengths, so a
//! witnessing path can later be rebuilt by searching for a consistent
//! split — the write-once discipline guarantees the recorded constituents
//! are still present at the fixpoint.
//!
//! Ties (several rules or intermediate nodes producing the same new fact in
//! one iteration) are broken by a fixed scan order: rules in grammar order,
//! then rows, columns, and intermediate nodes ascending. Two runs on the
//! same input therefore record identical lengths.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bitmatrix::{MatrixRepr, NontermMatrixSet};
use crate::grammar::{CnfGrammar, Grammar};
use crate::graph::{Graph, Path};
use crate::engine::QueryError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtractError {
    #[error("no recorded path for nonterminal {nonterm} from node {src} to node {dst}")]
    CellUnset { nonterm: usize, src: u32, dst: u32 },
}

/// Per-nonterminal square matrices of recorded path lengths; zero cells are
/// unset. Lengths refine the plain closure: a cell is set here iff the
/// corresponding bit is set there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthMatrixSet {
    dim: usize,
    /// One `dim * dim` row-major block per nonterminal, 0 = unset.
    lengths: Vec<Vec<u64>>,
}

impl LengthMatrixSet {
    pub fn zeros(nonterm_count: usize, dim: usize) -> LengthMatrixSet {
        LengthMatrixSet {
            dim,
            lengths: vec![vec![0; dim * dim]; nonterm_count],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nonterm_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn get(&self, nonterm: usize, i: usize, j: usize) -> Option<u64> {
        match self.lengths[nonterm][i * self.dim + j] {
            0 => None,
            l => Some(l),
        }
    }

    /// Writes a length only if the cell is unset; true if it was written.
    fn record(&mut self, nonterm: usize, i: usize, j: usize, len: u64) -> bool {
        debug_assert!(len > 0);
        let cell = &mut self.lengths[nonterm][i * self.dim + j];
        if *cell == 0 {
            *cell = len;
            true
        } else {
            false
        }
    }

    /// Set cells per nonterminal, in row-major order.
    pub fn iter_set(&self) -> impl Iterator<Item = (usize, usize, usize, u64)> + '_ {
        self.lengths.iter().enumerate().flat_map(move |(a, block)| {
            block.iter().enumerate().filter_map(move |(pos, &l)| {
                (l > 0).then_some((a, pos / self.dim, pos % self.dim, l))
            })
        })
    }

    /// Which cells are set, as a plain Boolean matrix bundle (for
    /// comparison against the relational closure).
    pub fn occupancy(&self, repr: MatrixRepr) -> NontermMatrixSet {
        let mut t = NontermMatrixSet::zeros(self.nonterm_count(), self.dim, repr);
        for (a, i, j, _) in self.iter_set() {
            t.matrix_mut(a).set(i, j);
        }
        t
    }

    pub fn count_set(&self) -> usize {
        self.iter_set().count()
    }
}

/// Initial length matrix: every fact contributed by an edge and a terminal
/// rule is recorded with length 1.
pub fn init_lengths(graph: &Graph, cnf: &CnfGrammar) -> LengthMatrixSet {
    let mut t = LengthMatrixSet::zeros(cnf.nonterm_count(), graph.node_count());
    for edge in graph.edges() {
        for a in cnf.nonterms_for_label(&edge.label) {
            t.record(a, edge.src as usize, edge.dst as usize, 1);
        }
    }
    t
}

/// Runs the closure loop over length-annotated cells. Each iteration reads
/// only the state from the iteration start, so the set cells evolve exactly
/// as in the plain closure; new facts get `len(B) + len(C)` under the fixed
/// scan order described in the module docs.
pub fn closure_lengths(mut t: LengthMatrixSet, cnf: &CnfGrammar) -> LengthMatrixSet {
    assert_eq!(
        t.nonterm_count(),
        cnf.nonterm_count(),
        "nonterminal count mismatch"
    );
    let n = t.dim();
    let bound = n * n * cnf.nonterm_count() + 1;
    let mut iterations = 0usize;
    loop {
        iterations += 1;
        assert!(iterations <= bound, "closure exceeded its iteration bound");
        let mut next = t.clone();
        let mut changed = false;
        for &(a, b, c) in cnf.binary_rules() {
            for i in 0..n {
                for j in 0..n {
                    if next.get(a, i, j).is_some() {
                        continue;
                    }
                    for k in 0..n {
                        if let (Some(lb), Some(lc)) = (t.get(b, i, k), t.get(c, k, j)) {
                            let len = lb.checked_add(lc).expect("path length overflow");
                            next.record(a, i, j, len);
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
        t = next;
        if !changed {
            return t;
        }
    }
}

/// Rebuilds one witnessing path for a recorded fact. A length-1 fact is
/// some edge `(i, x, j)` with a rule `A -> x`; a longer one splits as
/// `A -> B C` over an intermediate node whose recorded lengths sum up
/// exactly, searched in the same order the closure scans. The returned path
/// chains from `src` to `dst`, has exactly the recorded number of edges,
/// and its label word is derivable from the nonterminal.
pub fn extract_path(
    t: &LengthMatrixSet,
    graph: &Graph,
    cnf: &CnfGrammar,
    nonterm: usize,
    src: u32,
    dst: u32,
) -> Result<Path, ExtractError> {
    if t.get(nonterm, src as usize, dst as usize).is_none() {
        return Err(ExtractError::CellUnset { nonterm, src, dst });
    }
    let mut edges = Vec::new();
    collect_path(t, graph, cnf, nonterm, src as usize, dst as usize, &mut edges);
    Ok(Path::new(edges).expect("extraction chains by construction"))
}

fn collect_path(
    t: &LengthMatrixSet,
    graph: &Graph,
    cnf: &CnfGrammar,
    a: usize,
    i: usize,
    j: usize,
    out: &mut Vec<crate::graph::Edge>,
) {
    let len = t.get(a, i, j).expect("recorded cell");
    if len == 1 {
        let edge = graph
            .edges()
            .find(|e| {
                e.src as usize == i
                    && e.dst as usize == j
                    && cnf.nonterms_for_label(&e.label).any(|x| x == a)
            })
            .expect("length-1 facts come from edges");
        out.push(edge.clone());
        return;
    }
    for &(ra, rb, rc) in cnf.binary_rules() {
        if ra != a {
            continue;
        }
        for k in 0..t.dim() {
            if let (Some(lb), Some(lc)) = (t.get(rb, i, k), t.get(rc, k, j)) {
                if lb + lc == len {
                    collect_path(t, graph, cnf, rb, i, k, out);
                    collect_path(t, graph, cnf, rc, k, j, out);
                    return;
                }
            }
        }
    }
    unreachable!("every recorded fact has a consistent split");
}

/// Full single-path query: one verified witnessing path per pair of the
/// relational answer.
pub fn query_single_path(
    graph: &Graph,
    grammar: &Grammar,
    start: &str,
) -> Result<BTreeMap<(u32, u32), Path>, QueryError> {
    if !grammar.has_nonterminal(start) {
        return Err(QueryError::UnknownStart(start.to_owned()));
    }
    let cnf = grammar.to_cnf();
    let start_idx = cnf
        .nonterm_index(start)
        .expect("original nonterminals survive normalization");
    let t = closure_lengths(init_lengths(graph, &cnf), &cnf);
    let mut paths = BTreeMap::new();
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            if t.get(start_idx, i, j).is_some() {
                let path = extract_path(&t, graph, &cnf, start_idx, i as u32, j as u32)
                    .expect("cell checked set");
                paths.insert((i as u32, j as u32), path);
            }
        }
    }
    Ok(paths)
}
