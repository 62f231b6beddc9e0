//! Model Hamiltonians in occupation-number bases, their Pauli decompositions
//! and Gershgorin spectral-window estimates.
//!
//! Spin-orbital (mode) ordering is the same everywhere: the `n` up-spin
//! modes occupy bits `0..n`, the down-spin modes bits `n..2n`, ascending by
//! site or orbital. Qubit `j` of a Pauli word acts on mode `j`.

mod dense;
mod fermion;
mod gershgorin;
mod hubbard;
mod pauli;
mod sector;

pub use dense::{DenseHermitian, Spectrum, HERMITIAN_TOL};
pub use fermion::{annihilation_sign, creation_sign, FermionicSum, LadderOp};
pub use gershgorin::{
    gershgorin_bounds, gershgorin_upper, highest_diagonal_row, lowest_diagonal_row, make_window,
    RowChoice, DEFAULT_ALPHA_STRETCH,
};
pub use hubbard::{build_hubbard, hubbard_fermionic, jw_decompose, Boundary, HubbardParams};
pub use pauli::{PauliSum, PauliWord};
pub use sector::{binomial, sector_basis};
