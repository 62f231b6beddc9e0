use crate::hamiltonian::{DenseHermitian, PauliSum};
use crate::C64;

/// A Hermitian operator available through matrix-vector products.
pub trait HamiltonianAction: Send + Sync {
    fn dim(&self) -> usize;

    /// Writes `H x` into `y`.
    fn apply(&self, x: &[C64], y: &mut [C64]);
}

impl HamiltonianAction for DenseHermitian {
    fn dim(&self) -> usize {
        DenseHermitian::dim(self)
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        self.matvec(x, y);
    }
}

/// `H` in its own eigenbasis; states are eigen-coefficient vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalAction {
    energies: Vec<f64>,
}

impl DiagonalAction {
    pub fn new(energies: Vec<f64>) -> Self {
        Self { energies }
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }
}

impl HamiltonianAction for DiagonalAction {
    fn dim(&self) -> usize {
        self.energies.len()
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        for ((yi, xi), e) in y.iter_mut().zip(x).zip(&self.energies) {
            *yi = xi * *e;
        }
    }
}

/// Full `2^n` qubit space action of a Pauli sum.
impl HamiltonianAction for PauliSum {
    fn dim(&self) -> usize {
        1usize << self.num_qubits()
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        for &(c, w) in self.terms() {
            for (b, amp) in x.iter().enumerate() {
                let (ph, b2) = w.apply_basis(b as u64);
                y[b2 as usize] += ph * c * amp;
            }
        }
    }
}

/// Subnormalization model for block encodings of shifted operators
/// `(H - a)/(S - a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleNorm {
    /// LCU over Pauli words: the shift merges into the identity coefficient,
    /// so `alpha(H - a) = rest + |c_I - a|`.
    Pauli { identity: f64, rest: f64 },
    /// Tightest possible scale for a spectrum inside `[lo, hi]`:
    /// `alpha(H - a) = max(|lo - a|, |hi - a|)`.
    Spectral { lo: f64, hi: f64 },
}

impl OracleNorm {
    pub fn from_pauli(sum: &PauliSum) -> Self {
        OracleNorm::Pauli {
            identity: sum.identity_coefficient(),
            rest: sum.non_identity_norm(),
        }
    }

    /// One-norm of the unnormalized shifted operator `H - a`.
    pub fn shifted(&self, a: f64) -> f64 {
        match *self {
            OracleNorm::Pauli { identity, rest } => rest + (identity - a).abs(),
            OracleNorm::Spectral { lo, hi } => (lo - a).abs().max((hi - a).abs()),
        }
    }

    /// Subnormalization `alpha_nu` of `(H - a)/(S - a)`.
    pub fn factor(&self, a: f64, s: f64) -> f64 {
        self.shifted(a) / (s - a).abs()
    }

    /// One-norm of `H` itself.
    pub fn one_norm(&self) -> f64 {
        self.shifted(0.0)
    }
}
