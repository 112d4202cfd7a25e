//! Relational-semantics query evaluation: matrix initialization, the
//! closure fixpoint loop, and relation extraction.
//!
//! The loop repeats `T <- T ∪ (T × T)` while the matrix keeps changing,
//! with the product always reading the state from the start of the
//! iteration. Bits are only ever set, never cleared, so at most
//! `|V|² · |N|` iterations can change anything and the loop executes at
//! most one more than that; [`closure`] asserts this bound.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitmatrix::{grammar_product, MatrixRepr, NontermMatrixSet};
use crate::grammar::{CnfGrammar, Grammar};
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("unknown start nonterminal `{0}`")]
    UnknownStart(String),
}

/// The extracted context-free relations: one set of `(src, dst)` node index
/// pairs per nonterminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pairs: Vec<BTreeSet<(u32, u32)>>,
}

impl RelationSet {
    pub fn empty(nonterm_count: usize) -> RelationSet {
        RelationSet {
            pairs: vec![BTreeSet::new(); nonterm_count],
        }
    }

    pub fn nonterm_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self, nonterm: usize) -> &BTreeSet<(u32, u32)> {
        &self.pairs[nonterm]
    }

    /// Inserts a pair; true if it was new.
    pub fn insert(&mut self, nonterm: usize, src: u32, dst: u32) -> bool {
        self.pairs[nonterm].insert((src, dst))
    }

    pub fn contains(&self, nonterm: usize, src: u32, dst: u32) -> bool {
        self.pairs[nonterm].contains(&(src, dst))
    }

    pub fn total_pairs(&self) -> usize {
        self.pairs.iter().map(BTreeSet::len).sum()
    }
}

/// Builds the initial matrix: nonterminal `A` is set at `(i, j)` iff some
/// edge `(i, x, j)` exists with a rule `A -> x`. Parallel edges accumulate;
/// edges whose label has no rule contribute nothing.
pub fn init_matrix(graph: &Graph, cnf: &CnfGrammar, repr: MatrixRepr) -> NontermMatrixSet {
    let mut t = NontermMatrixSet::zeros(cnf.nonterm_count(), graph.node_count(), repr);
    for edge in graph.edges() {
        for a in cnf.nonterms_for_label(&edge.label) {
            t.matrix_mut(a).set(edge.src as usize, edge.dst as usize);
        }
    }
    t
}

/// Runs the closure loop to its fixpoint. Returns the fixpoint and the
/// number of loop executions including the final pass that detects no
/// change (an already-closed input therefore reports 1).
pub fn closure(t: NontermMatrixSet, cnf: &CnfGrammar) -> (NontermMatrixSet, usize) {
    let trace = closure_with(t, cnf, |_| {});
    (trace.0, trace.1)
}

/// Like [`closure`] but additionally records every matrix state: entry 0 is
/// the input, entry `k` the state after `k` changing iterations. Intended
/// for small instances; states are full copies.
pub fn closure_trace(t: NontermMatrixSet, cnf: &CnfGrammar) -> (Vec<NontermMatrixSet>, usize) {
    let mut states = vec![t.clone()];
    let (fixpoint, iterations) = closure_with(t, cnf, |state| states.push(state.clone()));
    debug_assert_eq!(states.last(), Some(&fixpoint));
    (states, iterations)
}

fn closure_with(
    mut t: NontermMatrixSet,
    cnf: &CnfGrammar,
    mut on_change: impl FnMut(&NontermMatrixSet),
) -> (NontermMatrixSet, usize) {
    assert_eq!(
        t.nonterm_count(),
        cnf.nonterm_count(),
        "nonterminal count mismatch"
    );
    let bound = t.dim() * t.dim() * cnf.nonterm_count() + 1;
    let mut iterations = 0usize;
    loop {
        let product = grammar_product(cnf, &t);
        iterations += 1;
        assert!(iterations <= bound, "closure exceeded its iteration bound");
        if t.union_inplace(&product) {
            on_change(&t);
        } else {
            return (t, iterations);
        }
    }
}

/// Reads the relations off a closure fixpoint.
pub fn relations(t: &NontermMatrixSet) -> RelationSet {
    let mut rel = RelationSet::empty(t.nonterm_count());
    for a in 0..t.nonterm_count() {
        for (i, j) in t.matrix(a).iter_ones() {
            rel.insert(a, i as u32, j as u32);
        }
    }
    rel
}

/// Full relational query: normalizes the grammar, initializes, closes, and
/// returns the pairs of the start nonterminal. The normal-form
/// transformation is invisible to callers: original nonterminals keep
/// their names and languages.
pub fn query_relational(
    graph: &Graph,
    grammar: &Grammar,
    start: &str,
) -> Result<BTreeSet<(u32, u32)>, QueryError> {
    if !grammar.has_nonterminal(start) {
        return Err(QueryError::UnknownStart(start.to_owned()));
    }
    let cnf = grammar.to_cnf();
    let start_idx = cnf
        .nonterm_index(start)
        .expect("original nonterminals survive normalization");
    let t = init_matrix(graph, &cnf, MatrixRepr::auto(graph.node_count()));
    let (fixpoint, _) = closure(t, &cnf);
    Ok(relations(&fixpoint).pairs(start_idx).clone())
}
