#![allow(dead_code)]

use wallcheb::engine::{DiagonalAction, OracleNorm, StateVector};
use wallcheb::hamiltonian::{build_hubbard, gershgorin_bounds, jw_decompose, DenseHermitian, HubbardParams, Spectrum};

pub struct Hubbard2 {
    pub u: f64,
    pub h: DenseHermitian,
    pub spectrum: Spectrum,
    pub ground: StateVector,
    pub hf: StateVector,
    pub oracle: OracleNorm,
    pub one_norm: f64,
    pub lower: f64,
}

pub fn hubbard2(u: f64) -> Hubbard2 {
    let p = HubbardParams::new(2, u, 1, 1);
    let h = build_hubbard(&p).unwrap();
    let spectrum = h.diagonalize();
    let ground = StateVector::new(spectrum.ground_state().iter().copied().collect()).unwrap();
    let hf = wallcheb::engine::init_reference(&h, &wallcheb::engine::ReferenceChoice::LowestDiagonal).unwrap();
    let pauli = jw_decompose(&p).unwrap();
    Hubbard2 {
        u,
        oracle: OracleNorm::from_pauli(&pauli),
        one_norm: pauli.one_norm(),
        lower: gershgorin_bounds(&h).0,
        h,
        spectrum,
        ground,
        hf,
    }
}

impl Hubbard2 {
    pub fn e0(&self) -> f64 {
        self.spectrum.ground_energy()
    }

    pub fn diagonal(&self) -> DiagonalAction {
        DiagonalAction::new(self.spectrum.energies().to_vec())
    }

    pub fn to_eigen(&self, s: &StateVector) -> StateVector {
        StateVector::new(self.spectrum.to_eigenbasis(s.amplitudes())).unwrap()
    }
}
