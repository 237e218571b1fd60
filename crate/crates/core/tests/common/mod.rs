#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use zminor_core::{BitMatrix, BitVector, GroupElement, Lagrangian, Local2, PauliOp};

pub fn bits(n: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|v| BitVector::from_bools(&v))
}

pub fn pauli(n: usize) -> impl Strategy<Value = PauliOp> {
    (0u8..4, bits(n), bits(n)).prop_map(|(k, mu, nu)| PauliOp::new(k, mu, nu).unwrap())
}

pub fn symmetric(n: usize) -> impl Strategy<Value = BitMatrix> {
    proptest::collection::vec(any::<bool>(), n * n).prop_map(move |v| {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, v[i * n + j]);
                m.set(j, i, v[i * n + j]);
            }
        }
        m
    })
}

pub fn local2() -> impl Strategy<Value = Local2> {
    (0usize..6).prop_map(|i| Local2::all().nth(i).unwrap())
}

pub fn element(n: usize) -> impl Strategy<Value = GroupElement> {
    (
        proptest::collection::vec(local2(), n),
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
    )
        .prop_map(|(slots, perm)| GroupElement::new(slots, perm).unwrap())
}

/// Chart subspace `span[I; S]` moved by an arbitrary group element, which
/// reaches every Lagrangian.
pub fn lagrangian(n: usize) -> impl Strategy<Value = Lagrangian> {
    (symmetric(n), element(n))
        .prop_map(|(s, g)| g.act_on_lagrangian(&Lagrangian::from_symmetric(&s).unwrap()).unwrap())
}

/// Dense `2ⁿ × 2ⁿ` matrix, row-major; qubit `q` is bit `q` of the index.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub dim: usize,
    pub a: Vec<Complex64>,
}

impl Dense {
    pub fn identity(dim: usize) -> Self {
        let mut a = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            a[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Dense { dim, a }
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let d = self.dim;
        let mut a = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let x = self.a[i * d + k];
                if x.norm() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    a[i * d + j] += x * o.a[k * d + j];
                }
            }
        }
        Dense { dim: d, a }
    }

    pub fn scale(&self, c: Complex64) -> Dense {
        Dense {
            dim: self.dim,
            a: self.a.iter().map(|x| x * c).collect(),
        }
    }

    pub fn dagger(&self) -> Dense {
        let d = self.dim;
        let mut a = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                a[j * d + i] = self.a[i * d + j].conj();
            }
        }
        Dense { dim: d, a }
    }

    pub fn close(&self, o: &Dense) -> bool {
        self.a.iter().zip(&o.a).all(|(x, y)| (x - y).norm() < 1e-12)
    }

    /// `m` acting on qubit `q` of `n`, identity elsewhere.
    pub fn on_qubit(n: usize, q: usize, m: [[Complex64; 2]; 2]) -> Dense {
        let d = 1 << n;
        let mut a = vec![Complex64::new(0.0, 0.0); d * d];
        for row in 0..d {
            for col in 0..d {
                if (row ^ col) & !(1 << q) != 0 {
                    continue;
                }
                a[row * d + col] = m[row >> q & 1][col >> q & 1];
            }
        }
        Dense { dim: d, a }
    }
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const X: [[Complex64; 2]; 2] = [
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
];
pub const Z: [[Complex64; 2]; 2] = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
];

/// `i^k Z^μ X^ν` built factor by factor.
pub fn dense_pauli(p: &PauliOp) -> Dense {
    let n = p.n();
    let mut m = Dense::identity(1 << n);
    for q in 0..n {
        if p.mu().get(q) {
            m = m.mul(&Dense::on_qubit(n, q, Z));
        }
        if p.nu().get(q) {
            m = m.mul(&Dense::on_qubit(n, q, X));
        }
    }
    let phase = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][p.k() as usize];
    m.scale(phase)
}
