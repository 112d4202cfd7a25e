//! Context-free path querying (CFPQ) over edge-labeled directed graphs.
//!
//! A query is a context-free grammar over the alphabet of edge labels plus a
//! start nonterminal. Under relational semantics the answer is the set of
//! node pairs `(m, n)` connected by some path whose label word the start
//! nonterminal derives; under single-path semantics each pair additionally
//! gets one concrete witnessing path.
//!
//! Evaluation reduces to a transitive closure of a matrix whose cells hold
//! sets of nonterminals: the closure loop repeats `T <- T ∪ (T × T)` until
//! the matrix stops changing, where `×` decomposes into one Boolean matrix
//! multiplication per binary grammar rule. The Boolean kernels live in
//! [`bitmatrix`], the fixpoint loop in [`engine`], and the length-annotated
//! variant that supports path extraction in [`singlepath`].
//!
//! [`oracle`] holds deliberately naive reference implementations used by the
//! test suites to cross-check the matrix engine.

pub mod bitmatrix;
pub mod demo;
pub mod engine;
pub mod grammar;
pub mod graph;
pub mod oracle;
pub mod singlepath;

pub use bitmatrix::{grammar_product, BitMatrix, MatrixRepr, NontermMatrixSet};
pub use engine::{QueryError, RelationSet};
pub use grammar::{CnfGrammar, Grammar, GrammarError, Production, Symbol};
pub use graph::{Edge, Graph, GraphError, Path};
pub use singlepath::{ExtractError, LengthMatrixSet};
