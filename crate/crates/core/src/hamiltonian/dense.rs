use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::C64;

pub const HERMITIAN_TOL: f64 = 1e-12;

/// Hermitian matrix over an explicit determinant basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitian {
    matrix: DMatrix<C64>,
    basis: Vec<u64>,
    n_orbitals: usize,
}

impl DenseHermitian {
    /// Checks squareness, basis length and Hermiticity to [`HERMITIAN_TOL`].
    pub fn new(matrix: DMatrix<C64>, basis: Vec<u64>, n_orbitals: usize) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if basis.len() != matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: basis.len(),
            });
        }
        if basis.is_empty() {
            return Err(Error::EmptySector);
        }
        let deviation = (&matrix - matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self {
            matrix,
            basis,
            n_orbitals,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Occupation bitmask of each basis determinant.
    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn n_orbitals(&self) -> usize {
        self.n_orbitals
    }

    /// Number of spin-orbitals, i.e. qubits under Jordan-Wigner.
    pub fn num_modes(&self) -> usize {
        2 * self.n_orbitals
    }

    pub fn diagonal(&self, k: usize) -> f64 {
        self.matrix[(k, k)].re
    }

    /// `"up|down"` occupation strings, orbital 0 first.
    pub fn basis_labels(&self) -> Vec<String> {
        let n = self.n_orbitals;
        self.basis
            .iter()
            .map(|&b| {
                let up: String = (0..n).map(|i| if b >> i & 1 == 1 { '1' } else { '0' }).collect();
                let dn: String = (0..n)
                    .map(|i| if b >> (n + i) & 1 == 1 { '1' } else { '0' })
                    .collect();
                format!("{up}|{dn}")
            })
            .collect()
    }

    /// `y = H x`.
    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        let n = self.dim();
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        let data = self.matrix.as_slice();
        for (j, xj) in x.iter().enumerate() {
            if xj.re == 0.0 && xj.im == 0.0 {
                continue;
            }
            let col = &data[j * n..(j + 1) * n];
            for (yi, a) in y.iter_mut().zip(col) {
                *yi += a * xj;
            }
        }
    }

    pub fn diagonalize(&self) -> Spectrum {
        Spectrum::of(&self.matrix)
    }
}

/// Eigenvalues in ascending order with matching eigenvectors (columns).
///
/// Each eigenvector's phase is fixed so that its largest-magnitude component
/// is real and positive.
#[derive(Debug, Clone)]
pub struct Spectrum {
    energies: Vec<f64>,
    vectors: DMatrix<C64>,
}

impl Spectrum {
    pub fn of(matrix: &DMatrix<C64>) -> Self {
        let eig = SymmetricEigen::new(matrix.clone());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let n = matrix.nrows();
        let mut vectors = DMatrix::zeros(n, n);
        let mut energies = Vec::with_capacity(n);
        for (col, &idx) in order.iter().enumerate() {
            energies.push(eig.eigenvalues[idx]);
            let v = eig.eigenvectors.column(idx);
            let pivot = v
                .iter()
                .copied()
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .unwrap_or(C64::new(1.0, 0.0));
            let phase = pivot.conj() / pivot.norm();
            vectors.set_column(col, &(v * phase));
        }
        Self { energies, vectors }
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn vectors(&self) -> &DMatrix<C64> {
        &self.vectors
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn max_energy(&self) -> f64 {
        *self.energies.last().expect("non-empty spectrum")
    }

    pub fn ground_state(&self) -> DVector<C64> {
        self.vectors.column(0).into_owned()
    }

    /// `E_1 - E_0`; zero for a one-dimensional space.
    pub fn gap(&self) -> f64 {
        if self.energies.len() < 2 {
            0.0
        } else {
            self.energies[1] - self.energies[0]
        }
    }

    /// Eigenbasis coefficients `V^dagger v`.
    pub fn to_eigenbasis(&self, v: &[C64]) -> Vec<C64> {
        let n = self.energies.len();
        (0..n)
            .map(|k| {
                self.vectors
                    .column(k)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a.conj() * b)
                    .sum()
            })
            .collect()
    }

    pub fn from_eigenbasis(&self, c: &[C64]) -> Vec<C64> {
        let n = self.energies.len();
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (k, ck) in c.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.vectors.column(k).iter()) {
                *o += a * ck;
            }
        }
        out
    }
}
