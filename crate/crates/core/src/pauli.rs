//! The n-qubit Pauli group with exact phase tracking.
//!
//! An element is stored as `i^k · Z^μ₁X^ν₁ ⊗ … ⊗ Z^μₙX^νₙ`: the Z factor
//! always precedes the X factor on each qubit, so `Y = i·ZX` is not a
//! primitive and only shows up in the string form.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::f2core::{BitMatrix, BitVector};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    k: u8,
    mu: BitVector,
    nu: BitVector,
}

impl PauliOp {
    pub fn new(k: u8, mu: BitVector, nu: BitVector) -> Result<Self> {
        if mu.len() != nu.len() {
            return Err(Error::SizeMismatch {
                expected: mu.len(),
                found: nu.len(),
            });
        }
        Ok(Self { k: k % 4, mu, nu })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            k: 0,
            mu: BitVector::zeros(n),
            nu: BitVector::zeros(n),
        }
    }

    /// The Hermitian element with the given binary part and sign `+`.
    pub fn hermitian(mu: BitVector, nu: BitVector) -> Result<Self> {
        let k = u8::from(mu.dot(&nu));
        Self::new(k, mu, nu)
    }

    /// `Z` on qubit `q` (0-based).
    pub fn z(n: usize, q: usize) -> Self {
        let mut p = Self::identity(n);
        p.mu.set(q, true);
        p
    }

    /// `X` on qubit `q` (0-based).
    pub fn x(n: usize, q: usize) -> Self {
        let mut p = Self::identity(n);
        p.nu.set(q, true);
        p
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    /// Phase exponent: the operator carries the scalar `i^k`.
    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn mu(&self) -> &BitVector {
        &self.mu
    }

    pub fn nu(&self) -> &BitVector {
        &self.nu
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut u8, &mut BitVector, &mut BitVector) {
        (&mut self.k, &mut self.mu, &mut self.nu)
    }

    pub fn with_phase(&self, k: u8) -> Self {
        Self {
            k: k % 4,
            ..self.clone()
        }
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.mu.is_zero() && self.nu.is_zero()
    }

    /// `P² = i^{2k}·(-1)^{μ·ν}`, so `P` is Hermitian iff `k + μ·ν` is even.
    pub fn is_hermitian(&self) -> bool {
        (self.k + u8::from(self.mu.dot(&self.nu))).is_multiple_of(2)
    }

    fn check_size(&self, other: &PauliOp) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// The product `self · other`. Moving each X of `self` past a Z of
    /// `other` contributes a factor `-1`.
    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check_size(other)?;
        let swaps = u8::from(self.nu.dot(&other.mu));
        Ok(PauliOp {
            k: (self.k + other.k + 2 * swaps) % 4,
            mu: self.mu.xor(&other.mu),
            nu: self.nu.xor(&other.nu),
        })
    }

    pub fn inverse(&self) -> PauliOp {
        // P·P = i^{2k}(-1)^{μ·ν} I, so P⁻¹ = P·(that scalar)⁻¹.
        let sq = (2 * self.k + 2 * u8::from(self.mu.dot(&self.nu))) % 4;
        self.with_phase(self.k + (4 - sq) % 4)
    }

    /// `⟨A, B⟩ = μ_A·ν_B + ν_A·μ_B`; zero iff the operators commute.
    pub fn symplectic_form(&self, other: &PauliOp) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.mu.dot(&other.nu) ^ self.nu.dot(&other.mu))
    }

    pub fn commutes(&self, other: &PauliOp) -> Result<bool> {
        Ok(!self.symplectic_form(other)?)
    }

    /// The projective point `(μ ‖ ν) ∈ F₂^{2n}`; the phase is discarded.
    pub fn to_point(&self) -> Result<BitVector> {
        if self.is_identity_up_to_phase() {
            return Err(Error::IdentityPoint);
        }
        Ok(self.mu.concat(&self.nu))
    }

    pub fn symplectic_vector(&self) -> BitVector {
        self.mu.concat(&self.nu)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ys = (0..self.n())
            .filter(|&q| self.mu.get(q) && self.nu.get(q))
            .count();
        let prefix = match (self.k as usize + 4 - ys % 4) % 4 {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.n() {
            f.write_str(match (self.mu.get(q), self.nu.get(q)) {
                (false, false) => "I",
                (false, true) => "X",
                (true, false) => "Z",
                (true, true) => "Y",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self}; k={}, mu={}, nu={})", self.k, self.mu, self.nu)
    }
}

/// Grammar: `[+|-|i|-i]?[IXYZ]+`.
impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (k0, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3u8, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string {s:?}")));
        }
        let n = body.chars().count();
        let mut mu = BitVector::zeros(n);
        let mut nu = BitVector::zeros(n);
        let mut k = k0;
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' => nu.set(q, true),
                'Z' => mu.set(q, true),
                'Y' => {
                    mu.set(q, true);
                    nu.set(q, true);
                    k += 1;
                }
                _ => return Err(Error::Parse(format!("invalid Pauli symbol {c:?} in {s:?}"))),
            }
        }
        PauliOp::new(k, mu, nu)
    }
}

/// A maximal abelian subgroup of the Pauli group given by `n` commuting,
/// independent generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOp>,
}

impl StabilizerGroup {
    /// Validates `gs` as a generating set. Generator indices in errors are
    /// 1-based.
    pub fn from_generators(gs: Vec<PauliOp>) -> Result<Self> {
        let n = gs.first().map_or(0, PauliOp::n);
        if let Some(g) = gs.iter().find(|g| g.n() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: g.n(),
            });
        }
        if gs.len() != n || n == 0 {
            return Err(Error::WrongCount {
                expected: n,
                found: gs.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if gs[i].symplectic_form(&gs[j])? {
                    return Err(Error::NotCommuting(i + 1, j + 1));
                }
            }
        }
        let group = Self { n, generators: gs };
        if group.symplectic_matrix().rank() != n {
            return Err(Error::NotIndependent);
        }
        Ok(group)
    }

    /// Parses a comma- or whitespace-separated generator list.
    pub fn parse(s: &str) -> Result<Self> {
        let gs = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<PauliOp>>>()?;
        Self::from_generators(gs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    /// `n × 2n` matrix whose rows are the generators' `(μ ‖ ν)` vectors.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        let rows: Vec<BitVector> = self
            .generators
            .iter()
            .map(PauliOp::symplectic_vector)
            .collect();
        BitMatrix::from_rows(2 * self.n, &rows)
    }

    /// Whether `-I` lies in the generated group.
    ///
    /// Every element is `∏ gᵢ^{cᵢ}` up to reordering (the gᵢ commute), and
    /// its binary part is `Σ (cᵢ mod 2)·vᵢ`. Independence of the vᵢ means the
    /// only elements with zero binary part are products of squares `gᵢ²`,
    /// each of which is `±I`. Hence `-I` is present iff some `gᵢ² = -I`,
    /// i.e. some generator is not Hermitian.
    pub fn contains_minus_identity(&self) -> bool {
        self.generators.iter().any(|g| !g.is_hermitian())
    }

    /// Splits each generator into a `+` Hermitian representative and a sign
    /// bit: `gᵢ = (-1)^{γᵢ} · g⁰ᵢ`.
    pub fn sign_normalize(&self) -> Result<(StabilizerGroup, BitVector)> {
        if self.contains_minus_identity() {
            return Err(Error::NotAStabilizerStateGroup);
        }
        let mut gamma = BitVector::zeros(self.n);
        let mut gens = Vec::with_capacity(self.n);
        for (i, g) in self.generators.iter().enumerate() {
            let base = u8::from(g.mu().dot(g.nu()));
            if g.k() != base {
                gamma.set(i, true);
            }
            gens.push(g.with_phase(base));
        }
        Ok((
            StabilizerGroup {
                n: self.n,
                generators: gens,
            },
            gamma,
        ))
    }

    /// Multiplies generator `i` by `-1`.
    pub fn flip_sign(&self, i: usize) -> StabilizerGroup {
        let mut out = self.clone();
        let g = &mut out.generators[i];
        *g = g.with_phase(g.k() + 2);
        out
    }

    pub(crate) fn from_parts_unchecked(n: usize, generators: Vec<PauliOp>) -> Self {
        Self { n, generators }
    }
}

impl fmt::Display for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_z_is_minus_zx() {
        let prod = p("X").mul(&p("Z")).unwrap();
        assert_eq!((prod.k(), prod.mu().get(0), prod.nu().get(0)), (2, true, true));
        // the label Y stands for iZX, so -ZX prints as iY
        assert_eq!(prod.to_string(), "iY");
    }

    #[test]
    fn inverse_gives_identity() {
        for s in ["X", "iY", "-ZXY", "-iXZ", "ZX"] {
            let a = p(s);
            let e = a.mul(&a.inverse()).unwrap();
            assert_eq!(e, PauliOp::identity(a.n()), "{s}");
        }
    }

    #[test]
    fn zx_squared_is_minus_identity() {
        let zx = PauliOp::new(0, "1".parse().unwrap(), "1".parse().unwrap()).unwrap();
        let sq = zx.mul(&zx).unwrap();
        assert_eq!(sq, PauliOp::identity(1).with_phase(2));
    }

    #[test]
    fn symplectic_form_examples() {
        assert!(!p("XZY").symplectic_form(&p("XZY")).unwrap());
        assert!(p("XI").symplectic_form(&p("ZI")).unwrap());
        assert!(!p("XZ").symplectic_form(&p("ZX")).unwrap());
        assert!(p("X").symplectic_form(&p("XX")).is_err());
    }

    #[test]
    fn to_point_examples() {
        assert_eq!(p("ZI").to_point().unwrap().to_string(), "1000");
        assert_eq!(p("IX").to_point().unwrap().to_string(), "0001");
        assert_eq!(p("iY").to_point().unwrap().to_string(), "11");
        assert_eq!(p("-II").to_point(), Err(Error::IdentityPoint));
    }

    #[test]
    fn parse_examples() {
        let a = p("ZXIII");
        assert_eq!(a.k(), 0);
        assert_eq!(a.mu().to_string(), "10000");
        assert_eq!(a.nu().to_string(), "01000");
        let my = p("-Y");
        assert_eq!((my.k(), my.mu().get(0), my.nu().get(0)), (3, true, true));
        for s in ["ZXIII", "-Y", "iXYZ", "-iIIY", "YYYY", "-I"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!("ZQ".parse::<PauliOp>().is_err());
        assert!("-".parse::<PauliOp>().is_err());
    }

    #[test]
    fn group_validation() {
        assert!(StabilizerGroup::parse("ZII,IZI,IIZ").is_ok());
        assert!(StabilizerGroup::parse("XX ZZ").is_ok());
        assert_eq!(
            StabilizerGroup::parse("XI,ZI"),
            Err(Error::NotCommuting(1, 2))
        );
        assert_eq!(StabilizerGroup::parse("ZI,ZI"), Err(Error::NotIndependent));
        assert!(matches!(
            StabilizerGroup::parse("ZI"),
            Err(Error::WrongCount { expected: 2, found: 1 })
        ));
        assert!(matches!(
            StabilizerGroup::parse("ZI,Z"),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn minus_identity_membership() {
        assert!(!StabilizerGroup::parse("ZI,IX").unwrap().contains_minus_identity());
        let zx = PauliOp::new(0, "1".parse().unwrap(), "1".parse().unwrap()).unwrap();
        assert!(StabilizerGroup::from_generators(vec![zx])
            .unwrap()
            .contains_minus_identity());
        assert!(!StabilizerGroup::parse("Y").unwrap().contains_minus_identity());
    }

    #[test]
    fn sign_normalize_examples() {
        let g = StabilizerGroup::parse("XZ,ZX").unwrap();
        let (g0, gamma) = g.sign_normalize().unwrap();
        assert_eq!(g0, g);
        assert!(gamma.is_zero());

        let (g0, gamma) = g.flip_sign(0).sign_normalize().unwrap();
        assert_eq!(g0, g);
        assert_eq!(gamma.to_string(), "10");

        let (g0, gamma) = StabilizerGroup::parse("-Y").unwrap().sign_normalize().unwrap();
        assert_eq!(g0, StabilizerGroup::parse("Y").unwrap());
        assert_eq!(gamma.to_string(), "1");

        let zx = PauliOp::new(0, "1".parse().unwrap(), "1".parse().unwrap()).unwrap();
        let bad = StabilizerGroup::from_generators(vec![zx]).unwrap();
        assert_eq!(bad.sign_normalize(), Err(Error::NotAStabilizerStateGroup));
    }
}
