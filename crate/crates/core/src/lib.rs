//! Wall-Chebyshev ground-state projection.
//!
//! The crate holds the scalar polynomial machinery for the wall-Chebyshev
//! projector and its competitors (eigenstate filter, step function,
//! Chebyshev-expanded imaginary time evolution), model Hamiltonians
//! (Hubbard chains and FCIDUMP molecular integrals), an exact statevector
//! projection engine with postselection bookkeeping, and an ancilla-level
//! simulation of the LCU block encodings used to apply each linear factor.

pub mod engine;
pub mod error;
pub mod fcidump;
pub mod hamiltonian;
pub mod lcu;
pub mod poly;
pub mod window;

pub use error::{Error, Result};
pub use window::SpectralWindow;

/// Complex amplitude type used for states and matrices.
pub type C64 = nalgebra::Complex<f64>;
