//! Boolean matrix kernels and the per-nonterminal matrix bundle.
//!
//! A [`BitMatrix`] stores a square Boolean matrix either as dense
//! bit-packed rows or as sparse sorted row lists; the two layouts are
//! observationally equivalent and compare equal bit-for-bit. Multiplication
//! is the AND-OR product: dense rows are OR-combined word by word, sparse
//! rows are merged.
//!
//! A [`NontermMatrixSet`] bundles one matrix per nonterminal. Reading all
//! matrices at one cell gives the set of nonterminals there, so the bundle
//! is exactly a square matrix with nonterminal sets as elements, and the
//! set-valued product `T × T` decomposes into one Boolean multiplication
//! per binary rule — see [`grammar_product`].

use crate::grammar::CnfGrammar;

const WORD_BITS: usize = 64;

/// Storage layout selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixRepr {
    Dense,
    Sparse,
}

impl MatrixRepr {
    /// Default policy: dense bit-packing up to 4096 nodes, sparse rows above.
    pub fn auto(dim: usize) -> MatrixRepr {
        if dim <= 4096 {
            MatrixRepr::Dense
        } else {
            MatrixRepr::Sparse
        }
    }
}

#[derive(Debug, Clone)]
enum Storage {
    Dense {
        words_per_row: usize,
        words: Vec<u64>,
    },
    /// Per-row sorted, deduplicated column indices.
    Sparse { rows: Vec<Vec<u32>> },
}

/// A square Boolean matrix.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    dim: usize,
    storage: Storage,
}

impl BitMatrix {
    pub fn zeros(dim: usize, repr: MatrixRepr) -> BitMatrix {
        let storage = match repr {
            MatrixRepr::Dense => {
                let words_per_row = dim.div_ceil(WORD_BITS);
                Storage::Dense {
                    words_per_row,
                    words: vec![0; dim * words_per_row],
                }
            }
            MatrixRepr::Sparse => Storage::Sparse {
                rows: vec![Vec::new(); dim],
            },
        };
        BitMatrix { dim, storage }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn repr(&self) -> MatrixRepr {
        match self.storage {
            Storage::Dense { .. } => MatrixRepr::Dense,
            Storage::Sparse { .. } => MatrixRepr::Sparse,
        }
    }

    /// Copies the matrix into the given layout.
    pub fn with_repr(&self, repr: MatrixRepr) -> BitMatrix {
        if self.repr() == repr {
            return self.clone();
        }
        let mut out = BitMatrix::zeros(self.dim, repr);
        for (i, j) in self.iter_ones() {
            out.set(i, j);
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.dim && j < self.dim, "index out of range");
        match &self.storage {
            Storage::Dense {
                words_per_row,
                words,
            } => words[i * words_per_row + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1,
            Storage::Sparse { rows } => rows[i].binary_search(&(j as u32)).is_ok(),
        }
    }

    /// Sets bit `(i, j)`; returns true if it was previously clear.
    pub fn set(&mut self, i: usize, j: usize) -> bool {
        assert!(i < self.dim && j < self.dim, "index out of range");
        match &mut self.storage {
            Storage::Dense {
                words_per_row,
                words,
            } => {
                let word = &mut words[i * *words_per_row + j / WORD_BITS];
                let mask = 1u64 << (j % WORD_BITS);
                let fresh = *word & mask == 0;
                *word |= mask;
                fresh
            }
            Storage::Sparse { rows } => match rows[i].binary_search(&(j as u32)) {
                Ok(_) => false,
                Err(pos) => {
                    rows[i].insert(pos, j as u32);
                    true
                }
            },
        }
    }

    pub fn count_ones(&self) -> usize {
        match &self.storage {
            Storage::Dense { words, .. } => {
                words.iter().map(|w| w.count_ones() as usize).sum()
            }
            Storage::Sparse { rows } => rows.iter().map(Vec::len).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.count_ones() == 0
    }

    /// Set bits in row-major order.
    pub fn iter_ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim).flat_map(move |i| self.row_ones(i).map(move |j| (i, j)))
    }

    fn row_ones(&self, i: usize) -> Box<dyn Iterator<Item = usize> + '_> {
        match &self.storage {
            Storage::Dense {
                words_per_row,
                words,
            } => {
                let row = &words[i * words_per_row..(i + 1) * words_per_row];
                Box::new(row.iter().enumerate().flat_map(|(w, &word)| {
                    let mut bits = word;
                    std::iter::from_fn(move || {
                        if bits == 0 {
                            return None;
                        }
                        let b = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        Some(w * WORD_BITS + b)
                    })
                }))
            }
            Storage::Sparse { rows } => Box::new(rows[i].iter().map(|&j| j as usize)),
        }
    }

    /// AND-OR matrix product: `out[i][j] = OR_k self[i][k] AND other[k][j]`.
    /// Both matrices must share dimension and layout.
    pub fn multiply(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        assert_eq!(self.repr(), other.repr(), "representation mismatch");
        let mut out = BitMatrix::zeros(self.dim, self.repr());
        match (&self.storage, &other.storage, &mut out.storage) {
            (
                Storage::Dense { .. },
                Storage::Dense {
                    words_per_row,
                    words: other_words,
                },
                Storage::Dense {
                    words: out_words, ..
                },
            ) => {
                let wpr = *words_per_row;
                for i in 0..self.dim {
                    let out_row = &mut out_words[i * wpr..(i + 1) * wpr];
                    for k in self.row_ones(i) {
                        let other_row = &other_words[k * wpr..(k + 1) * wpr];
                        for (dst, src) in out_row.iter_mut().zip(other_row) {
                            *dst |= *src;
                        }
                    }
                }
            }
            (
                Storage::Sparse { rows },
                Storage::Sparse { rows: other_rows },
                Storage::Sparse { rows: out_rows },
            ) => {
                for i in 0..self.dim {
                    let mut acc: Vec<u32> = Vec::new();
                    for &k in &rows[i] {
                        acc.extend_from_slice(&other_rows[k as usize]);
                    }
                    acc.sort_unstable();
                    acc.dedup();
                    out_rows[i] = acc;
                }
            }
            _ => unreachable!("layouts verified above"),
        }
        out
    }

    /// OR-assigns `other` into `self`; returns true iff any bit flipped 0->1.
    pub fn union_inplace(&mut self, other: &BitMatrix) -> bool {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        assert_eq!(self.repr(), other.repr(), "representation mismatch");
        match (&mut self.storage, &other.storage) {
            (
                Storage::Dense { words, .. },
                Storage::Dense {
                    words: other_words, ..
                },
            ) => {
                let mut changed = false;
                for (dst, src) in words.iter_mut().zip(other_words) {
                    let merged = *dst | *src;
                    changed |= merged != *dst;
                    *dst = merged;
                }
                changed
            }
            (Storage::Sparse { rows }, Storage::Sparse { rows: other_rows }) => {
                let mut changed = false;
                for (dst, src) in rows.iter_mut().zip(other_rows) {
                    if src.is_empty() {
                        continue;
                    }
                    let before = dst.len();
                    let mut merged = Vec::with_capacity(before + src.len());
                    let (mut a, mut b) = (dst.iter().peekable(), src.iter().peekable());
                    loop {
                        match (a.peek(), b.peek()) {
                            (Some(&&x), Some(&&y)) if x == y => {
                                merged.push(x);
                                a.next();
                                b.next();
                            }
                            (Some(&&x), Some(&&y)) if x < y => {
                                merged.push(x);
                                a.next();
                            }
                            (Some(_), Some(&&y)) => {
                                merged.push(y);
                                b.next();
                            }
                            (Some(&&x), None) => {
                                merged.push(x);
                                a.next();
                            }
                            (None, Some(&&y)) => {
                                merged.push(y);
                                b.next();
                            }
                            (None, None) => break,
                        }
                    }
                    changed |= merged.len() != before;
                    *dst = merged;
                }
                changed
            }
            _ => unreachable!("representation verified above"),
        }
    }
}

/// Layout-independent bit equality.
impl PartialEq for BitMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.iter_ones().eq(other.iter_ones())
    }
}

impl Eq for BitMatrix {}

/// One Boolean matrix per nonterminal of a normal-form grammar. Cell
/// `(i, j)` of the conceptual set-valued matrix is
/// `{ A : matrix(A)[i, j] }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NontermMatrixSet {
    dim: usize,
    mats: Vec<BitMatrix>,
}

impl NontermMatrixSet {
    pub fn zeros(nonterm_count: usize, dim: usize, repr: MatrixRepr) -> NontermMatrixSet {
        NontermMatrixSet {
            dim,
            mats: vec![BitMatrix::zeros(dim, repr); nonterm_count],
        }
    }

    pub fn nonterm_count(&self) -> usize {
        self.mats.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn repr(&self) -> MatrixRepr {
        self.mats
            .first()
            .map_or(MatrixRepr::Dense, BitMatrix::repr)
    }

    pub fn with_repr(&self, repr: MatrixRepr) -> NontermMatrixSet {
        NontermMatrixSet {
            dim: self.dim,
            mats: self.mats.iter().map(|m| m.with_repr(repr)).collect(),
        }
    }

    pub fn matrix(&self, nonterm: usize) -> &BitMatrix {
        &self.mats[nonterm]
    }

    pub fn matrix_mut(&mut self, nonterm: usize) -> &mut BitMatrix {
        &mut self.mats[nonterm]
    }

    /// The nonterminal set at one cell, in index order.
    pub fn cell(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.mats.len())
            .filter(|&a| self.mats[a].get(i, j))
            .collect()
    }

    /// OR-assigns all matrices of `other`; true iff anything flipped 0->1.
    pub fn union_inplace(&mut self, other: &NontermMatrixSet) -> bool {
        assert_eq!(self.mats.len(), other.mats.len(), "nonterminal count mismatch");
        let mut changed = false;
        for (dst, src) in self.mats.iter_mut().zip(&other.mats) {
            changed |= dst.union_inplace(src);
        }
        changed
    }

    /// Total set bits across all nonterminals.
    pub fn count_ones(&self) -> usize {
        self.mats.iter().map(BitMatrix::count_ones).sum()
    }
}

/// The set-valued product `T × T` driven by the grammar: the matrix of
/// result nonterminal `A` is the union over rules `A -> B C` of
/// `matrix(B) × matrix(C)`. Rules are independent, so evaluation order
/// cannot affect the result.
pub fn grammar_product(cnf: &CnfGrammar, t: &NontermMatrixSet) -> NontermMatrixSet {
    assert_eq!(
        t.nonterm_count(),
        cnf.nonterm_count(),
        "nonterminal count mismatch"
    );
    let mut out = NontermMatrixSet::zeros(t.nonterm_count(), t.dim(), t.repr());
    for &(a, b, c) in cnf.binary_rules() {
        let product = t.matrix(b).multiply(t.matrix(c));
        out.matrix_mut(a).union_inplace(&product);
    }
    out
}
