//! Deliberately naive reference implementations used to cross-check the
//! matrix engine. Nothing here touches the Boolean kernels: relations are
//! saturated over explicit pair sets, and the sum-of-products closure works
//! on explicit nonterminal sets.

use std::collections::BTreeSet;

use crate::bitmatrix::{MatrixRepr, NontermMatrixSet};
use crate::engine::RelationSet;
use crate::grammar::CnfGrammar;
use crate::graph::Graph;

/// A square matrix whose cells are explicit nonterminal-index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetMatrix {
    dim: usize,
    cells: Vec<BTreeSet<usize>>,
}

impl SetMatrix {
    pub fn empty(dim: usize) -> SetMatrix {
        SetMatrix {
            dim,
            cells: vec![BTreeSet::new(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BTreeSet<usize> {
        &self.cells[i * self.dim + j]
    }

    pub fn insert(&mut self, i: usize, j: usize, nonterm: usize) -> bool {
        self.cells[i * self.dim + j].insert(nonterm)
    }

    /// Cell-wise union; true iff anything was added.
    pub fn union_inplace(&mut self, other: &SetMatrix) -> bool {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut changed = false;
        for (dst, src) in self.cells.iter_mut().zip(&other.cells) {
            for &a in src {
                changed |= dst.insert(a);
            }
        }
        changed
    }

    /// Cell-wise subset test: every cell of `self` contained in `other`.
    pub fn is_dominated_by(&self, other: &SetMatrix) -> bool {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.cells
            .iter()
            .zip(&other.cells)
            .all(|(a, b)| a.is_subset(b))
    }

    pub fn from_matrix_set(t: &NontermMatrixSet) -> SetMatrix {
        let mut m = SetMatrix::empty(t.dim());
        for a in 0..t.nonterm_count() {
            for (i, j) in t.matrix(a).iter_ones() {
                m.insert(i, j, a);
            }
        }
        m
    }

    pub fn to_matrix_set(&self, nonterm_count: usize, repr: MatrixRepr) -> NontermMatrixSet {
        let mut t = NontermMatrixSet::zeros(nonterm_count, self.dim, repr);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for &a in self.get(i, j) {
                    t.matrix_mut(a).set(i, j);
                }
            }
        }
        t
    }
}

/// The subset product: `{ A : A -> B C in P, B in left, C in right }`.
fn subset_product(
    left: &BTreeSet<usize>,
    right: &BTreeSet<usize>,
    cnf: &CnfGrammar,
) -> BTreeSet<usize> {
    cnf.binary_rules()
        .iter()
        .filter(|(_, b, c)| left.contains(b) && right.contains(c))
        .map(|&(a, _, _)| a)
        .collect()
}

/// Set-valued matrix product with the subset product as cell
/// multiplication and set union as addition.
pub fn multiply(a: &SetMatrix, b: &SetMatrix, cnf: &CnfGrammar) -> SetMatrix {
    assert_eq!(a.dim, b.dim, "dimension mismatch");
    let mut out = SetMatrix::empty(a.dim);
    for i in 0..a.dim {
        for j in 0..a.dim {
            let mut cell = BTreeSet::new();
            for k in 0..a.dim {
                cell.extend(subset_product(a.get(i, k), b.get(k, j), cnf));
            }
            out.cells[i * a.dim + j] = cell;
        }
    }
    out
}

/// Transitive closure by the sum-of-products definition: term 1 is the
/// input, term `i` is the union over splits `j + (i - j) = i` of products
/// of earlier terms, and the closure is the union of all terms.
///
/// Termination: the running union only grows toward the closure, and once
/// it absorbs its own square it is the least fixpoint containing the input,
/// which the full term series also sums to — so the loop stops exactly when
/// the union is complete. Stalls in the series (several terms adding
/// nothing before a later one grows again) are handled by that test, not by
/// a fixed lookahead.
pub fn valiant_closure(a: &SetMatrix, cnf: &CnfGrammar) -> SetMatrix {
    valiant_closure_stats(a, cnf).result
}

/// Statistics of a [`valiant_closure`] run, for bound checks in tests.
pub struct ClosureStats {
    pub result: SetMatrix,
    /// Number of series terms computed (the input counts as one).
    pub terms: usize,
    /// Number of terms that strictly grew the running union.
    pub growth_events: usize,
}

pub fn valiant_closure_stats(a: &SetMatrix, cnf: &CnfGrammar) -> ClosureStats {
    const TERM_CAP: usize = 10_000;
    let mut terms: Vec<SetMatrix> = vec![a.clone()];
    let mut union = a.clone();
    let mut growth_events = 0usize;
    loop {
        let square = multiply(&union, &union, cnf);
        if square.is_dominated_by(&union) {
            return ClosureStats {
                result: union,
                terms: terms.len(),
                growth_events,
            };
        }
        let next_index = terms.len() + 1;
        let mut term = SetMatrix::empty(a.dim);
        for j in 1..next_index {
            term.union_inplace(&multiply(&terms[j - 1], &terms[next_index - j - 1], cnf));
        }
        if union.union_inplace(&term) {
            growth_events += 1;
        }
        terms.push(term);
        assert!(terms.len() <= TERM_CAP, "term series failed to stabilize");
    }
}

/// Context-free relations by direct saturation over explicit pair sets:
/// seed pairs from terminal rules, then keep adding `(i, j)` to `A`
/// whenever `(i, r) in B`, `(r, j) in C` and `A -> B C`, until nothing
/// changes. Intended for small graphs.
pub fn naive_relations(graph: &Graph, cnf: &CnfGrammar) -> RelationSet {
    let order: Vec<usize> = (0..cnf.binary_rules().len()).collect();
    naive_relations_with_rule_order(graph, cnf, &order)
}

/// As [`naive_relations`] with an explicit rule visiting order; the least
/// fixpoint is order-independent, which tests exploit.
pub fn naive_relations_with_rule_order(
    graph: &Graph,
    cnf: &CnfGrammar,
    order: &[usize],
) -> RelationSet {
    let mut rel = RelationSet::empty(cnf.nonterm_count());
    for edge in graph.edges() {
        for a in cnf.nonterms_for_label(&edge.label) {
            rel.insert(a, edge.src, edge.dst);
        }
    }
    loop {
        let mut changed = false;
        for &ri in order {
            let (a, b, c) = cnf.binary_rules()[ri];
            let mut additions: Vec<(u32, u32)> = Vec::new();
            for &(i, r) in rel.pairs(b) {
                for &(r2, j) in rel.pairs(c) {
                    if r == r2 && !rel.contains(a, i, j) {
                        additions.push((i, j));
                    }
                }
            }
            for (i, j) in additions {
                changed |= rel.insert(a, i, j);
            }
        }
        if !changed {
            return rel;
        }
    }
}
