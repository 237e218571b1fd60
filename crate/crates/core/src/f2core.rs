//! Bit-packed linear algebra over F₂.
//!
//! Bits are packed little-endian inside `u64` words: bit `i` of a vector
//! lives at bit `i % 64` of word `i / 64`. Matrices are row-major with a
//! fixed word stride per row, so a row is a contiguous word slice.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Mask of the valid bits in the last word of a `bits`-long vector.
#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A dense vector over F₂. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: SmallVec::from_elem(0, words_for(len)),
        }
    }

    /// Builds a vector of length `len` from the low bits of `value`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.clear_tail();
        }
        v
    }

    pub fn from_words(len: usize, words: &[u64]) -> Self {
        assert_eq!(words.len(), words_for(len), "word count does not match length");
        let mut v = Self {
            len,
            words: SmallVec::from_slice(words),
        };
        v.clear_tail();
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

    fn clear_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// The vector as an integer, when it fits in one word.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over F₂.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            })
        })
    }

    /// `self ‖ other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `start..start + len` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

/// Vectors compare as unsigned integers (bit 0 least significant); shorter
/// vectors sort first.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bit string, index 0 first.
impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("invalid bit {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitVector::from_bools(&bits))
    }
}

/// Result of a row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A dense `rows × cols` matrix over F₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors (all of length `cols`).
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row length mismatch");
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    /// Parses rows written as bit strings, e.g. `["110", "011"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let vs = rows
            .iter()
            .map(|s| s.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        let cols = vs.first().map_or(0, BitVector::len);
        if vs.iter().any(|v| v.len() != cols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Self::from_rows(cols, &vs))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r))
    }

    pub fn set_row(&mut self, r: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.row_words_mut(r).copy_from_slice(v.words());
    }

    /// Low word of row `r`; the whole row when `cols <= 64`.
    #[inline]
    pub fn row_u64(&self, r: usize) -> u64 {
        if self.stride == 0 {
            0
        } else {
            self.data[r * self.stride]
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let bit = 1u64 << (c % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// `row[dst] ^= row[src]`.
    #[inline]
    pub fn xor_row(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        for w in 0..self.stride {
            let v = self.data[src * self.stride + w];
            self.data[dst * self.stride + w] ^= v;
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for (wi, &w) in self.row_words(r).iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let c = wi * WORD + w.trailing_zeros() as usize;
                    w &= w - 1;
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for w in 0..out.stride {
                        out.data[r * out.stride + w] ^= other.data[k * other.stride + w];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Stacks `top` above `bottom`.
    pub fn vstack(top: &BitMatrix, bottom: &BitMatrix) -> Result<BitMatrix> {
        if top.cols != bottom.cols {
            return Err(Error::SizeMismatch {
                expected: top.cols,
                found: bottom.cols,
            });
        }
        let mut data = top.data.clone();
        data.extend_from_slice(&bottom.data);
        Ok(BitMatrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            stride: top.stride,
            data,
        })
    }

    /// Submatrix on the given row and column index lists (order preserved).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<BitMatrix> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::IndexOutOfRange {
                index: r,
                bound: self.rows,
            });
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: c,
                bound: self.cols,
            });
        }
        let mut out = BitMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form, in place. Returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(p, next);
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_row(next, r);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut matrix = self.clone();
        let pivots = matrix.rref_in_place();
        Rref {
            matrix,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        if self.cols <= WORD {
            let mut rows: SmallVec<[u64; 16]> = (0..self.rows).map(|r| self.row_u64(r)).collect();
            rank_u64(&mut rows)
        } else {
            self.rref().rank
        }
    }

    /// The column-reduced echelon basis of the column space, padded with
    /// zero columns to the input shape. Equal column spaces give identical
    /// outputs.
    pub fn column_canonical(&self) -> BitMatrix {
        let mut t = self.transpose();
        t.rref_in_place();
        t.transpose()
    }

    pub fn det(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rank() == self.rows)
    }

    /// Determinant of the submatrix on `rows × cols`. The empty minor is 1.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<bool> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch {
                expected: rows.len(),
                found: cols.len(),
            });
        }
        self.select(rows, cols)?.det()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Rank of a list of row words (each row at most 64 bits). Destroys the input.
pub fn rank_u64(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows.iter_mut().skip(i + 1) {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Determinant of the principal submatrix on the column/row set `mask` of a
/// matrix given by its row words (at most 64 columns).
pub fn principal_minor_u64(rows: &[u64], mask: u64) -> bool {
    let mut sub: SmallVec<[u64; 16]> = SmallVec::new();
    let mut m = mask;
    while m != 0 {
        let r = m.trailing_zeros() as usize;
        m &= m - 1;
        sub.push(rows[r] & mask);
    }
    let k = sub.len();
    rank_u64(&mut sub) == k
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_strs(rows).unwrap()
    }

    #[test]
    fn rref_identity() {
        let r = BitMatrix::identity(3).rref();
        assert_eq!(r.matrix, BitMatrix::identity(3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero() {
        let r = BitMatrix::zeros(2, 2).rref();
        assert!(r.matrix.is_zero());
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_hand_elimination() {
        let r = m(&["11", "01"]).rref();
        assert_eq!(r.matrix, m(&["10", "01"]));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn column_canonical_duplicate_column() {
        let dup = m(&["11", "00", "11"]);
        assert_eq!(dup.column_canonical(), m(&["10", "00", "10"]));
        assert_eq!(BitMatrix::identity(4).column_canonical(), BitMatrix::identity(4));
    }

    #[test]
    fn column_canonical_same_span() {
        // columns {110, 011} and {110, 101}
        let a = m(&["10", "11", "01"]);
        let b = m(&["11", "10", "01"]);
        assert_eq!(a.column_canonical(), b.column_canonical());
    }

    #[test]
    fn det_examples() {
        assert!(BitMatrix::identity(5).det().unwrap());
        let c4 = m(&["0101", "1010", "0101", "1010"]);
        assert!(!c4.det().unwrap());
        let two_edges = m(&["0100", "1000", "0001", "0010"]);
        assert!(two_edges.det().unwrap());
        assert!(matches!(BitMatrix::zeros(2, 3).det(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn minor_examples() {
        let s = m(&["01", "10"]);
        assert!(s.minor(&[], &[]).unwrap());
        assert!(s.minor(&[0, 1], &[0, 1]).unwrap());
        let path = m(&["010", "101", "010"]);
        assert!(path.minor(&[0, 1], &[0, 1]).unwrap());
        assert!(matches!(s.minor(&[0], &[0, 1]), Err(Error::SizeMismatch { .. })));
        assert!(matches!(s.minor(&[2], &[0]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn principal_minor_fast_path_matches() {
        let path = m(&["010", "101", "010"]);
        let rows: Vec<u64> = (0..3).map(|r| path.row_u64(r)).collect();
        for mask in 0u64..8 {
            let idx: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
            assert_eq!(principal_minor_u64(&rows, mask), path.minor(&idx, &idx).unwrap());
        }
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let mut a = BitMatrix::zeros(3, 130);
        a.set(0, 129, true);
        a.set(1, 64, true);
        a.set(2, 129, true);
        a.set(2, 64, true);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.transpose().rank(), 2);
    }

    fn arb_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let mut mat = BitMatrix::zeros(r, c);
                for (i, b) in bits.into_iter().enumerate() {
                    mat.set(i / c, i % c, b);
                }
                mat
            })
        })
    }

    fn random_invertible(n: usize, seed: &[bool]) -> BitMatrix {
        // product of elementary row additions starting from identity
        let mut g = BitMatrix::identity(n);
        for (i, &b) in seed.iter().enumerate() {
            let src = i % n;
            let dst = (i / n + src + 1) % n;
            if b && src != dst {
                g.xor_row(src, dst);
            }
            if i % 3 == 0 {
                g.swap_rows(src, dst);
            }
        }
        g
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in arb_matrix(8, 12)) {
            let r = a.rref();
            prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
            prop_assert_eq!(r.rank, a.rank());
        }

        #[test]
        fn rank_of_transpose(a in arb_matrix(10, 10)) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn det_is_full_minor(a in arb_matrix(7, 7)) {
            let n = a.rows().min(a.cols());
            let idx: Vec<usize> = (0..n).collect();
            let sq = a.select(&idx, &idx).unwrap();
            prop_assert_eq!(sq.det().unwrap(), sq.minor(&idx, &idx).unwrap());
        }

        #[test]
        fn column_canonical_ignores_basis_change(
            a in arb_matrix(10, 5),
            seed in proptest::collection::vec(any::<bool>(), 40),
        ) {
            let g = random_invertible(a.cols(), &seed);
            prop_assert!(g.det().unwrap());
            let ag = a.mul(&g).unwrap();
            prop_assert_eq!(ag.column_canonical(), a.column_canonical());
        }
    }
}
