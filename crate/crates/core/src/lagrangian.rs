//! Maximal isotropic (Lagrangian) subspaces of `F₂^{2n}`.
//!
//! A subspace is stored by its canonical generator rows: an `n × 2n`
//! matrix in reduced row-echelon form whose row `j` is the packed vector
//! `(μ ‖ ν)` (μ in bits `0..n`, ν in bits `n..2n`). Its transpose is the
//! column-canonical `2n × n` basis. Rows fit one machine word, which caps
//! `n` at [`MAX_QUBITS`].

use crate::error::{Error, Result};
use crate::f2core::{rank_u64, BitMatrix, BitVector};
use crate::groupaction::{GroupElement, Local2};
use crate::pauli::{PauliOp, StabilizerGroup};
use crate::subset::{graded_lex, Subset};

pub const MAX_QUBITS: usize = 32;

/// Default upper bound for exhaustive enumeration.
pub const ENUMERATION_BOUND: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lagrangian {
    n: usize,
    rows: BitMatrix,
}

/// A point of the subset chart: swapping μ and ν on the qubits of `subset`
/// turns the subspace into `span [Iₙ; s]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chart {
    pub subset: Subset,
    pub s: BitMatrix,
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Swaps the μ and ν bits of the qubits in `t`.
#[inline]
pub(crate) fn swap_blocks(w: u64, n: usize, t: u64) -> u64 {
    let mu = w & low_mask(n);
    let nu = w >> n;
    let new_mu = (mu & !t) | (nu & t);
    let new_nu = (nu & !t) | (mu & t);
    new_mu | new_nu << n
}

/// The μ-block after swapping on `t`, i.e. the rows `T̄` of the top block
/// and `T` of the bottom block.
#[inline]
fn top_block(w: u64, n: usize, t: u64) -> u64 {
    swap_blocks(w, n, t) & low_mask(n)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::BoundExceeded {
            n,
            bound: MAX_QUBITS,
        });
    }
    Ok(())
}

impl Lagrangian {
    /// Validates `n` generator rows of length `2n` (rank `n`, isotropic) and
    /// canonicalizes them.
    pub fn from_generator_rows(rows: BitMatrix) -> Result<Self> {
        let n = rows.rows();
        check_n(n)?;
        if rows.cols() != 2 * n {
            return Err(Error::SizeMismatch {
                expected: 2 * n,
                found: rows.cols(),
            });
        }
        if rows.rank() != n {
            return Err(Error::NotIndependent);
        }
        if !rows_isotropic(&rows) {
            return Err(Error::NotIsotropic);
        }
        Ok(Self::from_isotropic_rows_unchecked(rows))
    }

    /// Accepts a `2n × n` basis matrix (columns span the subspace).
    pub fn from_basis(basis: &BitMatrix) -> Result<Self> {
        if basis.rows() != 2 * basis.cols() {
            return Err(Error::SizeMismatch {
                expected: 2 * basis.cols(),
                found: basis.rows(),
            });
        }
        Self::from_generator_rows(basis.transpose())
    }

    pub(crate) fn from_isotropic_rows_unchecked(mut rows: BitMatrix) -> Self {
        debug_assert!(rows_isotropic(&rows));
        rows.rref_in_place();
        Self { n: rows.rows(), rows }
    }

    pub fn from_group(s: &StabilizerGroup) -> Result<Self> {
        Self::from_generator_rows(s.symplectic_matrix())
    }

    /// `span [Iₙ; S]` for symmetric `S`.
    pub fn from_symmetric(s: &BitMatrix) -> Result<Self> {
        if !s.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = s.rows();
        check_n(n)?;
        let mut rows = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            rows.row_words_mut(i)[0] = 1 << i | s.row_u64(i) << n;
        }
        Ok(Self::from_isotropic_rows_unchecked(rows))
    }

    /// `span [θ; Iₙ]`: the subspace of the graph group with X on each vertex.
    pub fn from_graph_matrix(theta: &BitMatrix) -> Result<Self> {
        if !theta.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = theta.rows();
        check_n(n)?;
        let mut rows = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            rows.row_words_mut(i)[0] = theta.row_u64(i) | 1 << (n + i);
        }
        Ok(Self::from_isotropic_rows_unchecked(rows))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical `n × 2n` generator rows.
    pub fn generator_rows(&self) -> &BitMatrix {
        &self.rows
    }

    /// Canonical `2n × n` column basis.
    pub fn basis(&self) -> BitMatrix {
        self.rows.transpose()
    }

    /// Generators with `+` Hermitian phases.
    pub fn to_group(&self) -> StabilizerGroup {
        let n = self.n;
        let gens = (0..n)
            .map(|r| {
                let w = self.rows.row_u64(r);
                PauliOp::hermitian(
                    BitVector::from_u64(n, w & low_mask(n)),
                    BitVector::from_u64(n, w >> n),
                )
                .expect("equal lengths")
            })
            .collect();
        StabilizerGroup::from_parts_unchecked(n, gens)
    }

    pub(crate) fn row_words(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.n).map(|r| self.rows.row_u64(r))
    }

    fn block_invertible(&self, t: u64, bottom: bool) -> bool {
        let n = self.n;
        let mut block: smallvec::SmallVec<[u64; 8]> = self
            .row_words()
            .map(|w| {
                let s = swap_blocks(w, n, t);
                if bottom {
                    s >> n
                } else {
                    s & low_mask(n)
                }
            })
            .collect();
        rank_u64(&mut block) == n
    }

    /// Whether swapping on `t` puts the subspace in the standard chart.
    pub fn chart_valid(&self, t: Subset) -> bool {
        self.block_invertible(t.mask(), false)
    }

    /// Least subset (graded-lex) whose chart contains the subspace, with the
    /// corresponding symmetric matrix.
    pub fn chart_form(&self) -> Chart {
        let n = self.n;
        let subset = graded_lex(n)
            .find(|&t| self.chart_valid(t))
            .expect("the subset charts cover the Lagrangian Grassmannian");
        let mut rows = BitMatrix::zeros(n, 2 * n);
        for (r, w) in self.row_words().enumerate() {
            rows.row_words_mut(r)[0] = swap_blocks(w, n, subset.mask());
        }
        rows.rref_in_place();
        let mut s = BitMatrix::zeros(n, n);
        for r in 0..n {
            debug_assert_eq!(rows.row_u64(r) & low_mask(n), 1 << r);
            s.row_words_mut(r)[0] = rows.row_u64(r) >> n;
        }
        debug_assert!(s.is_symmetric());
        Chart { subset, s }
    }

    /// A local transformation bringing the subspace to `span [θ; Iₙ]` with
    /// loopless `θ`: Hadamards on the least subset that makes the ν-block
    /// invertible, then `√Z` on each vertex whose diagonal entry is set.
    pub fn graph_form(&self) -> (BitMatrix, GroupElement) {
        let n = self.n;
        let subset = graded_lex(n)
            .find(|&t| self.block_invertible(t.mask(), true))
            .expect("the subset charts cover the Lagrangian Grassmannian");
        // fully swapped, so the ν-block becomes the pivot block
        let flip = subset.mask() ^ low_mask(n);
        let mut rows = BitMatrix::zeros(n, 2 * n);
        for (r, w) in self.row_words().enumerate() {
            rows.row_words_mut(r)[0] = swap_blocks(w, n, flip);
        }
        rows.rref_in_place();
        let mut theta = BitMatrix::zeros(n, n);
        for r in 0..n {
            theta.row_words_mut(r)[0] = rows.row_u64(r) >> n;
        }
        debug_assert!(theta.is_symmetric());
        let slots = (0..n)
            .map(|i| {
                let had = if subset.contains(i) { Local2::HAD } else { Local2::ID };
                let sqz = if theta.get(i, i) { Local2::SQZ } else { Local2::ID };
                sqz.mul(had)
            })
            .collect();
        for i in 0..n {
            theta.set(i, i, false);
        }
        (theta, GroupElement::local(slots))
    }
}

impl Chart {
    pub fn to_lagrangian(&self) -> Result<Lagrangian> {
        let base = Lagrangian::from_symmetric(&self.s)?;
        let n = base.n;
        let mut rows = BitMatrix::zeros(n, 2 * n);
        for (r, w) in base.row_words().enumerate() {
            rows.row_words_mut(r)[0] = swap_blocks(w, n, self.subset.mask());
        }
        Ok(Lagrangian::from_isotropic_rows_unchecked(rows))
    }
}

fn rows_isotropic(rows: &BitMatrix) -> bool {
    let n = rows.cols() / 2;
    let words: Vec<u64> = (0..rows.rows()).map(|r| rows.row_u64(r)).collect();
    words.iter().enumerate().all(|(i, &a)| {
        words[i + 1..].iter().all(|&b| {
            let form = (a & low_mask(n)) & (b >> n) ^ (a >> n) & (b & low_mask(n));
            form.count_ones().is_multiple_of(2)
        })
    })
}

/// Whether the columns of a `2n × k` matrix span an isotropic subspace,
/// i.e. `ᵗM J M = 0` with `J = [[0, I], [I, 0]]`.
pub fn is_isotropic(m: &BitMatrix) -> Result<bool> {
    if !m.rows().is_multiple_of(2) {
        return Err(Error::SizeMismatch {
            expected: m.rows() + 1,
            found: m.rows(),
        });
    }
    let n = m.rows() / 2;
    let cols = m.transpose();
    for i in 0..cols.rows() {
        let a = cols.row(i);
        for j in i + 1..cols.rows() {
            let b = cols.row(j);
            let form = a.slice(0, n).dot(&b.slice(n, n)) ^ a.slice(n, n).dot(&b.slice(0, n));
            if form {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `∏_{i=1}^{n} (2^i + 1)`, the number of Lagrangian subspaces of `F₂^{2n}`.
pub fn lagrangian_count(n: usize) -> u64 {
    (1..=n as u32).map(|i| (1u64 << i) + 1).product()
}

/// Every Lagrangian subspace exactly once.
///
/// Candidates are the translates `H_T · span [Iₙ; S]` over all subsets `T`
/// (graded-lex) and symmetric `S`; a candidate is kept only when `T` is the
/// least subset whose chart contains it, which removes duplicates without a
/// visited set.
pub fn enumerate_lagrangians(n: usize) -> Result<impl Iterator<Item = Lagrangian>> {
    enumerate_lagrangians_bounded(n, ENUMERATION_BOUND)
}

pub fn enumerate_lagrangians_bounded(
    n: usize,
    bound: usize,
) -> Result<impl Iterator<Item = Lagrangian>> {
    if n == 0 || n > bound || n > MAX_QUBITS {
        return Err(Error::BoundExceeded { n, bound });
    }
    let subsets: Vec<u64> = graded_lex(n).map(Subset::mask).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let n_sym = 1u64 << pairs.len();
    Ok((0..subsets.len()).flat_map(move |ti| {
        let t = subsets[ti];
        let earlier = subsets[..ti].to_vec();
        let pairs = pairs.clone();
        (0..n_sym).filter_map(move |code| {
            let mut s = [0u64; MAX_QUBITS];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if code >> b & 1 == 1 {
                    s[i] |= 1 << j;
                    s[j] |= 1 << i;
                }
            }
            let mut words = [0u64; MAX_QUBITS];
            for i in 0..n {
                words[i] = swap_blocks(1 << i | s[i] << n, n, t);
            }
            let in_earlier_chart = earlier.iter().any(|&u| {
                let mut block = [0u64; MAX_QUBITS];
                for i in 0..n {
                    block[i] = top_block(words[i], n, u);
                }
                rank_u64(&mut block[..n]) == n
            });
            if in_earlier_chart {
                return None;
            }
            let mut rows = BitMatrix::zeros(n, 2 * n);
            for (i, &w) in words[..n].iter().enumerate() {
                rows.row_words_mut(i)[0] = w;
            }
            Some(Lagrangian::from_isotropic_rows_unchecked(rows))
        })
    }))
}
