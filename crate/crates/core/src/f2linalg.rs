//! Exact linear algebra over GF(2).
//!
//! Vectors are packed into 64-bit words; matrices keep one sorted support
//! list per row, which matches the low row weight of boundary and stabilizer
//! matrices. Elimination always works on packed rows, scanning columns left to
//! right and taking the lowest-indexed row with a one in the pivot column, so
//! ranks, kernels and reduced forms are reproducible.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Builds a vector from its support. Repeated indices cancel in pairs.
    ///
    /// # Panics
    ///
    /// Panics if an index is not below `len`.
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.toggle(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_support(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the nonzero coordinates in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.iter_support().collect()
    }

    pub fn iter_support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    /// Lowest index holding a one.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Binary inner product.
    ///
    /// # Panics
    ///
    /// Panics on a length mismatch.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(
            self.len, other.len,
            "dot product of vectors with different lengths"
        );
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Adds `other` into `self` (symmetric difference of supports).
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "sum of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({}; {:?})", self.len, self.support())
    }
}

impl AddAssign<&BitVector> for BitVector {
    fn add_assign(&mut self, rhs: &BitVector) {
        self.xor_assign(rhs);
    }
}

impl Add<&BitVector> for &BitVector {
    type Output = BitVector;

    fn add(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl Add for BitVector {
    type Output = BitVector;

    fn add(mut self, rhs: BitVector) -> BitVector {
        self.xor_assign(&rhs);
        self
    }
}

/// Serialized as `{"length": n, "support": [...]}`.
#[derive(Serialize, Deserialize)]
struct BitVectorRepr {
    length: usize,
    support: Vec<usize>,
}

impl Serialize for BitVector {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        BitVectorRepr {
            length: self.len,
            support: self.support(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = BitVectorRepr::deserialize(deserializer)?;
        if let Some(&bad) = repr.support.iter().find(|&&i| i >= repr.length) {
            return Err(serde::de::Error::custom(format!(
                "support index {bad} out of range for length {}",
                repr.length
            )));
        }
        Ok(BitVector::from_support(repr.length, repr.support))
    }
}

/// A sparse matrix over GF(2); each row stores the sorted columns holding a one.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    row_support: Vec<Vec<usize>>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_support: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            row_support: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Builds a matrix from per-row supports. Repeated entries cancel in pairs.
    ///
    /// # Panics
    ///
    /// Panics if a column index is not below `cols`.
    pub fn from_row_supports(cols: usize, rows: Vec<Vec<usize>>) -> Self {
        let row_support = rows
            .into_iter()
            .map(|r| BitVector::from_support(cols, r).support())
            .collect::<Vec<_>>();
        Self {
            rows: row_support.len(),
            cols,
            row_support,
        }
    }

    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        for r in rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Self {
            rows: rows.len(),
            cols,
            row_support: rows.iter().map(BitVector::support).collect(),
        }
    }

    /// Builds a matrix whose columns have the given supports.
    pub fn from_col_supports(rows: usize, cols: &[Vec<usize>]) -> Self {
        let mut row_support = vec![Vec::new(); rows];
        for (c, support) in cols.iter().enumerate() {
            for &r in support {
                assert!(r < rows, "row index {r} out of range");
                row_support[r].push(c);
            }
        }
        let row_support = row_support
            .into_iter()
            .map(|r| BitVector::from_support(cols.len(), r).support())
            .collect();
        Self {
            rows,
            cols: cols.len(),
            row_support,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_support(&self, r: usize) -> &[usize] {
        &self.row_support[r]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_support(self.cols, self.row_support[r].iter().copied())
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.row_support[r].binary_search(&c).is_ok()
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(c < self.cols, "column index {c} out of range");
        let row = &mut self.row_support[r];
        match (row.binary_search(&c), value) {
            (Ok(pos), false) => {
                row.remove(pos);
            }
            (Err(pos), true) => row.insert(pos, c),
            _ => {}
        }
    }

    pub fn nnz(&self) -> usize {
        self.row_support.iter().map(Vec::len).sum()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for row in &self.row_support {
            for &c in row {
                w[c] += 1;
            }
        }
        w
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut row_support = vec![Vec::new(); self.cols];
        for (r, row) in self.row_support.iter().enumerate() {
            for &c in row {
                row_support[c].push(r);
            }
        }
        BinaryMatrix {
            rows: self.cols,
            cols: self.rows,
            row_support,
        }
    }

    /// Matrix-vector product `m · v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for (r, row) in self.row_support.iter().enumerate() {
            if row.iter().filter(|&&c| v.get(c)).count() % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let rows = self
            .row_support
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(rhs.cols);
                for &k in row {
                    for &c in &rhs.row_support[k] {
                        acc.toggle(c);
                    }
                }
                acc.support()
            })
            .collect();
        Ok(BinaryMatrix {
            rows: self.rows,
            cols: rhs.cols,
            row_support: rows,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.row_support.iter().all(Vec::is_empty)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.row_support {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// An incrementally maintained row-echelon basis.
///
/// Each stored row has a distinct pivot (its lowest set column) and no other
/// stored row has a one in that column, so membership tests are a single
/// reduction pass.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    len: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &BinaryMatrix) -> Self {
        let mut e = Self::new(m.cols());
        for r in 0..m.rows() {
            e.insert(&m.row(r));
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the basis. Returns `false` when `v` was already in the span.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.len, "vector length does not match the basis");
        let reduced = self.reduce(v);
        let Some(p) = reduced.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&reduced);
            }
        }
        self.rows.push(reduced);
        self.pivots.push(p);
        true
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.rows
    }
}

/// Reduced row echelon form of a matrix, with the pivot column of each row.
fn reduced_row_echelon(m: &BinaryMatrix) -> (Vec<BitVector>, Vec<usize>) {
    let mut rows = m.row_vectors();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..m.cols() {
        if rank == rows.len() {
            break;
        }
        let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Rank of `m` over GF(2).
pub fn rank(m: &BinaryMatrix) -> usize {
    reduced_row_echelon(m).1.len()
}

/// A basis of `{v : m·v = 0}` with `cols − rank(m)` vectors, one per free column.
pub fn kernel_basis(m: &BinaryMatrix) -> Vec<BitVector> {
    let (rows, pivots) = reduced_row_echelon(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVector::zeros(m.cols());
            v.set(free, true);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Whether `v` is a GF(2) combination of the rows of `m`.
pub fn in_span(m: &BinaryMatrix, v: &BitVector) -> Result<bool> {
    if v.len() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            found: v.len(),
        });
    }
    Ok(RowEchelon::from_matrix(m).contains(v))
}

/// Symplectic Gram–Schmidt on Z-type and X-type operators.
///
/// Returns pairs `(z, x)` with `z_i · x_j = δ_ij`. Every input operator must
/// end up in a pair: a Z operator with no anticommuting X partner (or unequal
/// list lengths) is reported as a rank deficiency.
pub fn symplectic_pairing(
    z_ops: &[BitVector],
    x_ops: &[BitVector],
) -> Result<Vec<(BitVector, BitVector)>> {
    if let Some(len) = z_ops.first().or(x_ops.first()).map(BitVector::len) {
        if let Some(bad) = z_ops.iter().chain(x_ops).find(|v| v.len() != len) {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: bad.len(),
            });
        }
    }
    let mut zs: Vec<BitVector> = z_ops.to_vec();
    let mut xs: Vec<BitVector> = x_ops.to_vec();
    let mut pairs = Vec::new();
    let mut zi = 0;
    while zi < zs.len() {
        let Some(xi) = xs.iter().position(|x| zs[zi].dot(x)) else {
            zi += 1;
            continue;
        };
        let z = zs.remove(zi);
        let x = xs.remove(xi);
        for other in zs.iter_mut() {
            if other.dot(&x) {
                other.xor_assign(&z);
            }
        }
        for other in xs.iter_mut() {
            if z.dot(other) {
                other.xor_assign(&x);
            }
        }
        pairs.push((z, x));
    }
    let expected = z_ops.len().max(x_ops.len());
    if pairs.len() != expected {
        return Err(Error::RankDeficient {
            achieved: pairs.len(),
            expected,
        });
    }
    Ok(pairs)
}
