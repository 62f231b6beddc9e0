use std::collections::HashMap;

use nalgebra::DMatrix;

use super::dense::DenseHermitian;
use super::fermion::FermionicSum;
use super::pauli::PauliSum;
use super::sector::sector_basis;
use crate::error::{invalid, Error, Result};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

/// One-dimensional Fermi-Hubbard chain
/// `-t sum_<ij>,s (c+_is c_js + h.c.) + U sum_i n_i_up n_i_down`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HubbardParams {
    pub sites: usize,
    pub hopping: f64,
    pub interaction: f64,
    pub n_up: usize,
    pub n_down: usize,
    pub boundary: Boundary,
}

pub const MAX_SITES: usize = 6;

impl HubbardParams {
    /// Open chain with `t = 1`.
    pub fn new(sites: usize, interaction: f64, n_up: usize, n_down: usize) -> Self {
        Self {
            sites,
            hopping: 1.0,
            interaction,
            n_up,
            n_down,
            boundary: Boundary::Open,
        }
    }

    pub fn with_hopping(mut self, t: f64) -> Self {
        self.hopping = t;
        self
    }

    pub fn with_boundary(mut self, b: Boundary) -> Self {
        self.boundary = b;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.sites == 0 || self.sites > MAX_SITES {
            return Err(invalid(format!("sites must be in 1..={MAX_SITES}, got {}", self.sites)));
        }
        if !self.hopping.is_finite() || !self.interaction.is_finite() {
            return Err(invalid("non-finite Hubbard parameter"));
        }
        if self.n_up > self.sites || self.n_down > self.sites {
            return Err(Error::EmptySector);
        }
        Ok(())
    }

    /// Nearest-neighbour bonds; a periodic two-site ring is not doubled.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.sites;
        let mut bonds: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        if self.boundary == Boundary::Periodic && n > 2 {
            bonds.push((n - 1, 0));
        }
        bonds
    }
}

/// Second-quantized form over `2 * sites` modes.
pub fn hubbard_fermionic(p: &HubbardParams) -> Result<FermionicSum> {
    p.validate()?;
    let n = p.sites;
    let mut f = FermionicSum::new(2 * n);
    for (i, j) in p.bonds() {
        for spin in 0..2 {
            let (a, b) = (spin * n + i, spin * n + j);
            f.push(-p.hopping, vec![(a, true), (b, false)])?;
            f.push(-p.hopping, vec![(b, true), (a, false)])?;
        }
    }
    for i in 0..n {
        f.push(p.interaction, vec![(i, true), (i, false), (n + i, true), (n + i, false)])?;
    }
    Ok(f)
}

/// Dense matrix in the `(n_up, n_down)` sector.
pub fn build_hubbard(p: &HubbardParams) -> Result<DenseHermitian> {
    let f = hubbard_fermionic(p)?;
    let basis = sector_basis(p.sites, p.n_up, p.n_down);
    let index: HashMap<u64, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let dim = basis.len();
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for (col, &b) in basis.iter().enumerate() {
        for (c, b2) in f.apply_basis(b) {
            let row = index[&b2];
            m[(row, col)] += C64::new(c, 0.0);
        }
    }
    DenseHermitian::new(m, basis, p.sites)
}

/// Jordan-Wigner Pauli sum on `2 * sites` qubits (all particle sectors).
pub fn jw_decompose(p: &HubbardParams) -> Result<PauliSum> {
    hubbard_fermionic(p)?.to_pauli()
}
