use crate::error::{invalid, Error, Result};
use crate::hamiltonian::{lowest_diagonal_row, DenseHermitian};
use crate::C64;

/// Normalized amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Normalizes `amps`; rejects the zero vector and non-finite entries.
    pub fn new(mut amps: Vec<C64>) -> Result<Self> {
        let norm = norm_sqr(&amps).sqrt();
        if !norm.is_finite() {
            return Err(invalid("non-finite amplitudes"));
        }
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(invalid(format!("basis index {k} outside dimension {dim}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &StateVector) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Euclidean distance `||self - other||`.
    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Global phase chosen so that `<reference|self>` is real and
    /// non-negative.
    pub fn aligned_to(mut self, reference: &StateVector) -> Self {
        let ov = reference.overlap(&self);
        if ov.norm() > 0.0 {
            let phase = ov.conj() / ov.norm();
            self.amps.iter_mut().for_each(|a| *a *= phase);
        }
        self
    }

    pub(crate) fn from_normalized(amps: Vec<C64>) -> Self {
        Self { amps }
    }
}

pub(crate) fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceChoice {
    /// Determinant with the smallest diagonal element (first on ties).
    LowestDiagonal,
    BasisIndex(usize),
    Custom(Vec<C64>),
}

pub fn init_reference(h: &DenseHermitian, choice: &ReferenceChoice) -> Result<StateVector> {
    match choice {
        ReferenceChoice::LowestDiagonal => StateVector::basis(h.dim(), lowest_diagonal_row(h)),
        ReferenceChoice::BasisIndex(k) => StateVector::basis(h.dim(), *k),
        ReferenceChoice::Custom(v) => {
            if v.len() != h.dim() {
                return Err(Error::DimensionMismatch { expected: h.dim(), found: v.len() });
            }
            StateVector::new(v.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_hubbard, HubbardParams};

    #[test]
    fn hubbard_reference_is_singly_occupied() {
        let h = build_hubbard(&HubbardParams::new(2, 1.0, 1, 1)).unwrap();
        let psi = init_reference(&h, &ReferenceChoice::LowestDiagonal).unwrap();
        let k = psi.amplitudes().iter().position(|a| a.norm() == 1.0).unwrap();
        assert_eq!(h.diagonal(k), 0.0);
        assert_eq!(h.basis()[k].count_ones(), 2);
        assert_ne!(h.basis()[k] & 0b11, 0b11);
    }

    #[test]
    fn custom_is_normalized_and_zero_rejected() {
        let h = build_hubbard(&HubbardParams::new(2, 1.0, 1, 0)).unwrap();
        let psi = init_reference(&h, &ReferenceChoice::Custom(vec![C64::new(1.0, 0.0); 2])).unwrap();
        assert!((norm_sqr(psi.amplitudes()) - 1.0).abs() < 1e-15);
        assert!(matches!(
            init_reference(&h, &ReferenceChoice::Custom(vec![C64::new(0.0, 0.0); 2])),
            Err(Error::ZeroVector)
        ));
        let e0 = init_reference(&h, &ReferenceChoice::BasisIndex(0)).unwrap();
        assert_eq!(e0.amplitudes()[0], C64::new(1.0, 0.0));
    }
}
