//! Dense state vectors: a slow, independent check of the stabilizer
//! picture.
//!
//! Amplitude `b` is the coefficient of the basis state in which qubit `i`
//! (1-based) holds bit `i - 1` of `b`. Printed kets list qubit 1 first.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::f2core::BitVector;
use crate::lagrangian::enumerate_lagrangians;
use crate::pauli::{PauliOp, StabilizerGroup};

pub const MAX_STATE_QUBITS: usize = 12;
pub const MAX_STABILIZED_QUBITS: usize = 10;
pub const MAX_CENSUS_QUBITS: usize = 3;

pub const RESIDUAL_TOL: f64 = 1e-12;
pub const RAY_TOL: f64 = 1e-9;

const SEEDS: [u64; 2] = [0x5eed_0001, 0x5eed_0002];

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_n(n, MAX_STATE_QUBITS)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::SizeMismatch {
                expected: len.next_power_of_two(),
                found: len,
            });
        }
        let n = len.trailing_zeros() as usize;
        check_n(n, MAX_STATE_QUBITS)?;
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    /// Scales to unit norm with the first non-negligible amplitude real and
    /// positive.
    pub fn canonicalize(&mut self) {
        let norm = self.norm();
        let lead = self
            .amps
            .iter()
            .copied()
            .find(|a| a.norm() > RAY_TOL)
            .unwrap_or(Complex64::new(1.0, 0.0));
        let scale = lead.conj() / (lead.norm() * norm);
        for a in &mut self.amps {
            *a *= scale;
        }
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn key(&self) -> Vec<(i64, i64)> {
        self.amps
            .iter()
            .map(|a| ((a.re / RAY_TOL).round() as i64, (a.im / RAY_TOL).round() as i64))
            .collect()
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, a) in self.amps.iter().enumerate() {
            if a.norm() <= RAY_TOL {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let ket: String = (0..self.n).map(|i| if b >> i & 1 == 1 { '1' } else { '0' }).collect();
            write!(f, "({:.6}{:+.6}i)|{ket}>", a.re, a.im)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn check_n(n: usize, bound: usize) -> Result<()> {
    if n == 0 || n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    Ok(())
}

fn mask_of(v: &BitVector) -> usize {
    v.iter_ones().fold(0, |m, i| m | 1 << i)
}

const PHASES: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// `i^k Z^μ X^ν |b⟩ = i^k (-1)^{μ·(b⊕ν)} |b⊕ν⟩`.
pub fn apply_pauli(p: &PauliOp, v: &StateVector) -> Result<StateVector> {
    if p.n() != v.n {
        return Err(Error::SizeMismatch {
            expected: v.n,
            found: p.n(),
        });
    }
    let (mu, nu) = (mask_of(p.mu()), mask_of(p.nu()));
    let phase = PHASES[p.k() as usize % 4];
    let mut out = vec![Complex64::new(0.0, 0.0); v.amps.len()];
    for (b, &a) in v.amps.iter().enumerate() {
        let t = b ^ nu;
        let sign = if (mu & t).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[t] = a * phase * sign;
    }
    Ok(StateVector { n: v.n, amps: out })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizedState {
    pub state: StateVector,
    /// Largest `‖(−1)^{γ_i} M_i φ − φ‖_∞`.
    pub residual: f64,
    /// Largest amplitude difference between the two seeded projections.
    pub seed_agreement: f64,
}

fn project(s: &StabilizerGroup, gamma: &BitVector, seed: u64) -> Result<StateVector> {
    let mut rng = StdRng::seed_from_u64(seed);
    let dim = 1 << s.n();
    for _ in 0..8 {
        let amps = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mut v = StateVector { n: s.n(), amps };
        for (i, m) in s.generators().iter().enumerate() {
            let mv = apply_pauli(m, &v)?;
            let sign = if gamma.get(i) { -1.0 } else { 1.0 };
            for (a, b) in v.amps.iter_mut().zip(&mv.amps) {
                *a = (*a + b * sign) * 0.5;
            }
        }
        if v.norm() > 1e-6 {
            v.canonicalize();
            return Ok(v);
        }
    }
    Err(Error::RankAboveOne(0.0))
}

/// The common eigenvector with `(−1)^{γ_i} M_i φ = φ`, from the projector
/// `∏ (I + (−1)^{γ_i} M_i)/2` applied to two seeded random vectors.
pub fn stabilized_state(s: &StabilizerGroup, gamma: &BitVector) -> Result<StabilizedState> {
    check_n(s.n(), MAX_STABILIZED_QUBITS)?;
    if gamma.len() != s.n() {
        return Err(Error::SizeMismatch {
            expected: s.n(),
            found: gamma.len(),
        });
    }
    if s.contains_minus_identity() {
        return Err(Error::NotAStabilizerStateGroup);
    }
    let state = project(s, gamma, SEEDS[0])?;
    let other = project(s, gamma, SEEDS[1])?;
    let seed_agreement = state.distance(&other);
    if seed_agreement > RAY_TOL {
        return Err(Error::RankAboveOne(seed_agreement));
    }
    let mut residual: f64 = 0.0;
    for (i, m) in s.generators().iter().enumerate() {
        let mv = apply_pauli(m, &state)?;
        let sign = if gamma.get(i) { -1.0 } else { 1.0 };
        for (a, b) in state.amps.iter().zip(&mv.amps) {
            residual = residual.max((b * sign - a).norm());
        }
    }
    if residual > RESIDUAL_TOL {
        return Err(Error::ResidualTooLarge(residual));
    }
    Ok(StabilizedState {
        state,
        residual,
        seed_agreement,
    })
}

/// Number of distinct stabilizer state rays on `n` qubits, by brute force
/// over all Lagrangians and sign vectors.
pub fn census_stabilizer_states(n: usize) -> Result<usize> {
    check_n(n, MAX_CENSUS_QUBITS)?;
    let mut rays = HashSet::new();
    for l in enumerate_lagrangians(n)? {
        let group = l.to_group();
        for g in 0u64..1 << n {
            let gamma = BitVector::from_u64(n, g);
            rays.insert(stabilized_state(&group, &gamma)?.state.key());
        }
    }
    Ok(rays.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_qubit_paulis() {
        let zero = StateVector::basis(1, 0).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        assert_eq!(apply_pauli(&op("Z"), &zero).unwrap(), zero);
        assert_eq!(apply_pauli(&op("Z"), &one).unwrap().amplitudes(), &[c(0.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(apply_pauli(&op("X"), &zero).unwrap(), one);
    }

    #[test]
    fn z_string_state() {
        let s = StabilizerGroup::parse("ZII,IZI,IIZ").unwrap();
        let st = stabilized_state(&s, &BitVector::zeros(3)).unwrap();
        assert!(st.state.distance(&StateVector::basis(3, 0).unwrap()) < 1e-12);
        let flipped = stabilized_state(&s, &BitVector::from_u64(3, 0b010)).unwrap();
        assert!(flipped.state.distance(&StateVector::basis(3, 0b010).unwrap()) < 1e-12);
    }

    #[test]
    fn edge_graph_state() {
        let s = StabilizerGroup::parse("XZ,ZX").unwrap();
        let st = stabilized_state(&s, &BitVector::zeros(2)).unwrap();
        let want = [c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)];
        for (a, b) in st.state.amplitudes().iter().zip(want) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(st.residual <= RESIDUAL_TOL);
    }

    #[test]
    fn rejects_groups_with_minus_identity() {
        let mut y = op("Y");
        y = y.with_phase(y.k() + 1);
        let s = StabilizerGroup::from_generators(vec![y]).unwrap();
        assert_eq!(stabilized_state(&s, &BitVector::zeros(1)), Err(Error::NotAStabilizerStateGroup));
    }

    #[test]
    fn census_counts() {
        assert_eq!(census_stabilizer_states(1).unwrap(), 6);
        assert_eq!(census_stabilizer_states(2).unwrap(), 60);
        assert!(census_stabilizer_states(4).is_err());
    }

    #[test]
    fn display_lists_qubit_one_first() {
        let v = StateVector::basis(3, 0b001).unwrap();
        assert_eq!(v.to_string(), "(1.000000+0.000000i)|100>");
    }
}
