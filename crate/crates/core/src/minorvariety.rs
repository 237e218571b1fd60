//! The principal-minor map from Lagrangian subspaces to points of
//! `Zₙ ⊂ P(F₂^{2ⁿ})`, and its inverse.
//!
//! Coordinates are indexed by subsets `T ⊆ {1..n}`. Internally `z_T` sits
//! at bit `mask(T)` of a `2ⁿ`-bit vector (the tensor basis order); the
//! graded-lex order only appears in text I/O.
//!
//! For a basis matrix `M = [A; B]` (`A` the μ-block, `B` the ν-block),
//! `z_T` is the `n × n` minor on rows `T̄` of `A` and rows `T` of `B`. On the
//! chart `M = [Iₙ; S]` this is the principal minor `S_[T]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::f2core::{principal_minor_u64, rank_u64, BitMatrix, BitVector};
use crate::groupaction::Local2;
use crate::lagrangian::{swap_blocks, Lagrangian};
use crate::subset::{graded_lex, Subset};

/// Largest `n` for which points are materialized (`2ⁿ` bits).
pub const MAX_POINT_QUBITS: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorPoint {
    n: usize,
    bits: BitVector,
}

/// Masks of the indices whose bit `s` is clear, for `s < 6`.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

#[inline]
fn mix(m: Local2, lo: u64, hi: u64) -> (u64, u64) {
    let pick = |bit: bool, w: u64| if bit { w } else { 0 };
    (pick(m.a, lo) ^ pick(m.b, hi), pick(m.c, lo) ^ pick(m.d, hi))
}

/// [`MinorPoint::mix_slot`] on one 64-coordinate word, `slot < 6`.
#[inline]
pub(crate) fn mix_word(w: u64, slot: usize, m: Local2) -> u64 {
    let shift = 1 << slot;
    let low = LOW_HALF[slot];
    let (lo, hi) = mix(m, w & low, (w >> shift) & low);
    lo | hi << shift
}

/// Exchanges tensor slots `i` and `i + 1` of a 64-coordinate word.
#[inline]
pub(crate) fn swap_adjacent_word(w: u64, i: usize) -> u64 {
    // indices with bit i set and bit i+1 clear trade places with their
    // partners 2^i above
    let mask = LOW_HALF[i + 1] & !LOW_HALF[i];
    let shift = 1 << i;
    let t = (w ^ (w >> shift)) & mask;
    w ^ t ^ (t << shift)
}

fn check_point_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_POINT_QUBITS {
        return Err(Error::BoundExceeded {
            n,
            bound: MAX_POINT_QUBITS,
        });
    }
    Ok(())
}

impl MinorPoint {
    /// Wraps a `2ⁿ`-bit vector; the zero vector is not a projective point.
    pub fn from_bits(n: usize, bits: BitVector) -> Result<Self> {
        check_point_n(n)?;
        if bits.len() != 1 << n {
            return Err(Error::SizeMismatch {
                expected: 1 << n,
                found: bits.len(),
            });
        }
        if bits.is_zero() {
            return Err(Error::NotOnVariety);
        }
        Ok(Self { n, bits })
    }

    /// The point whose only nonzero coordinate is `z_T`.
    pub fn unit(n: usize, t: Subset) -> Result<Self> {
        check_point_n(n)?;
        let mut bits = BitVector::zeros(1 << n);
        bits.set(t.mask() as usize, true);
        Ok(Self { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn get(&self, t: Subset) -> bool {
        self.bits.get(t.mask() as usize)
    }

    /// The integer key (`n ≤ 6`).
    pub fn key(&self) -> Option<u64> {
        self.bits.as_u64()
    }

    /// Applies `m` to the tensor slot `slot` (0-based): each coordinate pair
    /// `(z_T, z_{T∪{slot}})` with `slot ∉ T` is mapped like `(μ, ν)`.
    pub fn mix_slot(&mut self, slot: usize, m: Local2) {
        debug_assert!(slot < self.n);
        if m.is_identity() {
            return;
        }
        let words = self.bits.words_mut();
        if slot < 6 {
            for w in words.iter_mut() {
                *w = mix_word(*w, slot, m);
            }
        } else {
            let stride = 1 << (slot - 6);
            for j in 0..words.len() {
                if j & stride == 0 {
                    let (lo, hi) = mix(m, words[j], words[j + stride]);
                    words[j] = lo;
                    words[j + stride] = hi;
                }
            }
        }
    }

    /// Relabels coordinates: `z'_{σ(T)} = z_T` where `σ(i) = perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> MinorPoint {
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return self.clone();
        }
        let mut bits = BitVector::zeros(self.bits.len());
        for idx in self.bits.iter_ones() {
            let mut out = 0usize;
            for (i, &p) in perm.iter().enumerate() {
                out |= (idx >> i & 1) << p;
            }
            bits.set(out, true);
        }
        MinorPoint { n: self.n, bits }
    }

    /// Applies the Hadamard image on every slot of `t`: `z'_U = z_{U ⊕ T}`.
    pub fn hadamard(&self, t: Subset) -> MinorPoint {
        let mut out = self.clone();
        for i in 0..self.n {
            if t.contains(i) {
                out.mix_slot(i, Local2::HAD);
            }
        }
        out
    }

    pub fn to_string_in(&self, order: IndexOrder) -> String {
        let masks: Vec<u64> = match order {
            IndexOrder::Bitmask => (0..1u64 << self.n).collect(),
            IndexOrder::GradedLex => graded_lex(self.n).map(Subset::mask).collect(),
        };
        let body: Vec<&str> = masks
            .iter()
            .map(|&m| if self.bits.get(m as usize) { "1" } else { "0" })
            .collect();
        format!("[{}]", body.join(":"))
    }

    /// Parses `[b:b:…]` written in the given order; `n` follows from the
    /// number of entries.
    pub fn parse_in(s: &str, order: IndexOrder) -> Result<MinorPoint> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..] around point, got {s:?}")))?;
        let entries = inner
            .split(':')
            .map(|t| match t.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse(format!("invalid coordinate {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let len = entries.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::Parse(format!("{len} coordinates is not 2^n for n >= 1")));
        }
        let n = len.trailing_zeros() as usize;
        check_point_n(n)?;
        let mut bits = BitVector::zeros(len);
        let masks: Vec<u64> = match order {
            IndexOrder::Bitmask => (0..len as u64).collect(),
            IndexOrder::GradedLex => graded_lex(n).map(Subset::mask).collect(),
        };
        for (pos, &b) in entries.iter().enumerate() {
            bits.set(masks[pos] as usize, b);
        }
        MinorPoint::from_bits(n, bits)
    }
}

/// Graded-lex text form, matching `[1:0:0:…]`.
impl fmt::Display for MinorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in(IndexOrder::GradedLex))
    }
}

impl fmt::Debug for MinorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MinorPoint({self})")
    }
}

impl FromStr for MinorPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MinorPoint::parse_in(s, IndexOrder::GradedLex)
    }
}

/// The point of a Lagrangian subspace. Independent of the chosen basis:
/// a basis change multiplies every minor by its determinant, which is 1.
pub fn minor_point(l: &Lagrangian) -> MinorPoint {
    let n = l.n();
    assert!(n <= MAX_POINT_QUBITS, "point too large to materialize");
    let words: Vec<u64> = l.row_words().collect();
    let low = (1u64 << n) - 1;
    let mut bits = BitVector::zeros(1 << n);
    let mut block = vec![0u64; n];
    for t in 0..1u64 << n {
        for (b, &w) in block.iter_mut().zip(&words) {
            *b = swap_blocks(w, n, t) & low;
        }
        if rank_u64(&mut block) == n {
            bits.set(t as usize, true);
        }
    }
    MinorPoint { n, bits }
}

/// The vector of principal minors `[1 : s_ii : S_[ij] : … : det S]`.
pub fn from_symmetric(s: &BitMatrix) -> Result<MinorPoint> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = s.rows();
    check_point_n(n)?;
    let rows: Vec<u64> = (0..n).map(|r| s.row_u64(r)).collect();
    let mut bits = BitVector::zeros(1 << n);
    for mask in 0..1u64 << n {
        if principal_minor_u64(&rows, mask) {
            bits.set(mask as usize, true);
        }
    }
    Ok(MinorPoint { n, bits })
}

/// Inverts [`from_symmetric`] on the chart `z_∅ = 1`, reading
/// `s_ii = z_{i}` and `s_ij = z_{ij} + s_ii·s_jj`, and checking that every
/// higher minor agrees.
pub fn reconstruct_symmetric(p: &MinorPoint) -> Result<BitMatrix> {
    if !p.get(Subset::EMPTY) {
        return Err(Error::NotChartPoint);
    }
    let n = p.n();
    let mut s = BitMatrix::zeros(n, n);
    for i in 0..n {
        s.set(i, i, p.get(Subset(1 << i)));
    }
    for i in 0..n {
        for j in i + 1..n {
            let v = p.get(Subset(1 << i | 1 << j)) ^ (s.get(i, i) & s.get(j, j));
            s.set(i, j, v);
            s.set(j, i, v);
        }
    }
    if from_symmetric(&s)? != *p {
        return Err(Error::InconsistentPoint);
    }
    Ok(s)
}

/// The Lagrangian subspace of a point of `Zₙ`.
pub fn lagrangian_from_point(p: &MinorPoint) -> Result<Lagrangian> {
    let n = p.n();
    let t = graded_lex(n)
        .find(|&t| p.get(t))
        .ok_or(Error::NotOnVariety)?;
    let s = reconstruct_symmetric(&p.hadamard(t)).map_err(|_| Error::NotOnVariety)?;
    let base = Lagrangian::from_symmetric(&s)?;
    let mut rows = BitMatrix::zeros(n, 2 * n);
    for (r, w) in base.row_words().enumerate() {
        rows.row_words_mut(r)[0] = swap_blocks(w, n, t.mask());
    }
    Ok(Lagrangian::from_isotropic_rows_unchecked(rows))
}

/// Coordinate orderings of `F₂^{2ⁿ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexOrder {
    /// Index = subset bitmask (tensor basis order).
    Bitmask,
    /// Subsets by cardinality, then lexicographically.
    GradedLex,
}

pub fn index_convert(i: usize, n: usize, from: IndexOrder, to: IndexOrder) -> Result<usize> {
    check_point_n(n)?;
    if i >= 1 << n {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: 1 << n,
        });
    }
    let mask = match from {
        IndexOrder::Bitmask => i as u64,
        IndexOrder::GradedLex => graded_lex(n).nth(i).expect("in range").mask(),
    };
    Ok(match to {
        IndexOrder::Bitmask => mask as usize,
        IndexOrder::GradedLex => graded_lex(n)
            .position(|t| t.mask() == mask)
            .expect("graded-lex is a bijection"),
    })
}
