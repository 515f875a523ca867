//! Dense GF(2) linear algebra over word-packed rows.
//!
//! Addition is XOR and multiplication is AND. Matrices are small (at most
//! a few dozen rows and columns in practice), so everything is dense and
//! elimination always runs on a private working copy.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2). Bits at positions `>= len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; word_count(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_padding();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len <= 64` from the low bits of `mask`.
    /// Higher bits of `mask` are discarded.
    pub fn from_word(mask: u64, len: usize) -> Self {
        assert!(len <= WORD_BITS, "from_word supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask;
            v.clear_padding();
        }
        v
    }

    fn clear_padding(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// # Panics
    /// Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// # Panics
    /// Panics if `i >= len`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let bit = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= bit;
        } else {
            self.words[i / WORD_BITS] &= !bit;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    /// In-place addition over GF(2).
    ///
    /// # Panics
    /// Panics if the lengths differ.
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// The low word, for vectors of at most 64 bits.
    pub fn to_word(&self) -> u64 {
        assert!(self.len <= WORD_BITS, "vector longer than one word");
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, ")")
    }
}

/// A dense matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    n_cols: usize,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            rows: vec![BitVector::zeros(n_cols); n_rows],
            n_cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows that must all have length `n_cols`.
    pub fn from_rows(rows: Vec<BitVector>, n_cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch {
                expected: n_cols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, n_cols })
    }

    /// Builds a matrix from 0/1 literals; handy in tests.
    pub fn from_bits<const C: usize>(bits: &[[u8; C]]) -> Self {
        let rows = bits.iter().map(|r| BitVector::from_bools(&r.map(|b| b != 0))).collect();
        Self { rows, n_cols: C }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.n_cols, self.n_rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Computes `M · x`.
    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.n_rows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Returns a copy with `top` inserted as the first row.
    pub fn with_top_row(&self, top: BitVector) -> Result<BitMatrix> {
        if top.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                found: top.len(),
            });
        }
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(top);
        rows.extend(self.rows.iter().cloned());
        Ok(BitMatrix {
            rows,
            n_cols: self.n_cols,
        })
    }

    /// Returns a copy with `b` appended as an extra last column.
    pub fn with_column(&self, b: &BitVector) -> Result<BitMatrix> {
        self.check_rhs(b)?;
        let n_cols = self.n_cols + 1;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut wide = BitVector::zeros(n_cols);
                for c in row.iter_ones() {
                    wide.set(c, true);
                }
                wide.set(self.n_cols, b.get(i));
                wide
            })
            .collect();
        Ok(BitMatrix { rows, n_cols })
    }

    fn check_rhs(&self, b: &BitVector) -> Result<()> {
        if b.len() != self.n_rows() {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows(),
                found: b.len(),
            });
        }
        Ok(())
    }

    /// GF(2) rank. Empty matrices have rank 0.
    pub fn rank(&self) -> usize {
        Elimination::run(self, None).pivots.len()
    }

    /// Rank of `[M | b]`.
    pub fn rank_augmented(&self, b: &BitVector) -> Result<usize> {
        self.check_rhs(b)?;
        let e = Elimination::run(self, Some(b));
        let inconsistent = e.rhs[e.pivots.len()..].iter().any(|&bit| bit);
        Ok(e.pivots.len() + usize::from(inconsistent))
    }

    /// Solves `M · x = b`.
    ///
    /// Gauss-Jordan with the first available row as pivot for each column
    /// scanned left to right; free variables are set to zero, so the
    /// returned solution is canonical.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        self.check_rhs(b)?;
        let e = Elimination::run(self, Some(b));
        let rank = e.pivots.len();
        if e.rhs[rank..].iter().any(|&bit| bit) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.n_cols);
        for (i, &col) in e.pivots.iter().enumerate() {
            if e.rhs[i] {
                x.set(col, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.n_rows(), self.n_cols)?;
        for row in &self.rows {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of a working copy, with the right-hand side
/// carried along.
struct Elimination {
    pivots: Vec<usize>,
    rhs: Vec<bool>,
}

impl Elimination {
    fn run(m: &BitMatrix, b: Option<&BitVector>) -> Elimination {
        let mut rows = m.rows.clone();
        let mut rhs: Vec<bool> = match b {
            Some(b) => (0..m.n_rows()).map(|i| b.get(i)).collect(),
            None => vec![false; m.n_rows()],
        };
        let mut pivots = Vec::new();
        let mut next = 0;
        let mut col = 0;
        while col < m.n_cols && next < rows.len() {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                col += 1;
                continue;
            };
            rows.swap(next, p);
            rhs.swap(next, p);
            let pivot_row = rows[next].clone();
            let pivot_rhs = rhs[next];
            for r in 0..rows.len() {
                if r != next && rows[r].get(col) {
                    rows[r].xor_assign(&pivot_row);
                    rhs[r] ^= pivot_rhs;
                }
            }
            pivots.push(col);
            next += 1;
            col += 1;
        }
        Elimination { pivots, rhs }
    }
}
