//! Affine map of an energy interval onto the Chebyshev interval.

use crate::error::{invalid, Error, Result};

/// Ground-state estimate `S`, Gershgorin upper estimate and stretch factor,
/// together with the range `R` they imply.
///
/// The map `x(E) = 2(E - S)/R - 1` sends `S` to `-1` and the stretched upper
/// estimate to `+1`. The stretch is applied away from zero,
/// `E_top = E_upper + (alpha - 1)|E_upper|`, which equals `alpha * E_upper`
/// for non-negative estimates and still enlarges the window when the upper
/// estimate is negative (total molecular energies).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralWindow {
    estimate: f64,
    upper_estimate: f64,
    alpha_stretch: f64,
    range: f64,
}

impl SpectralWindow {
    pub fn new(estimate: f64, upper_estimate: f64, alpha_stretch: f64) -> Result<Self> {
        if !(alpha_stretch >= 1.0) || !alpha_stretch.is_finite() {
            return Err(invalid(format!(
                "alpha_stretch must be >= 1, got {alpha_stretch}"
            )));
        }
        if !estimate.is_finite() || !upper_estimate.is_finite() {
            return Err(invalid("window energies must be finite"));
        }
        let top = upper_estimate + (alpha_stretch - 1.0) * upper_estimate.abs();
        let range = top - estimate;
        if !(range > 0.0) {
            return Err(Error::DegenerateWindow { range });
        }
        Ok(Self {
            estimate,
            upper_estimate,
            alpha_stretch,
            range,
        })
    }

    /// Window `[S, S + R]` with no stretch.
    pub fn from_range(estimate: f64, range: f64) -> Result<Self> {
        if !(range > 0.0) || !range.is_finite() {
            return Err(Error::DegenerateWindow { range });
        }
        Ok(Self {
            estimate,
            upper_estimate: estimate + range,
            alpha_stretch: 1.0,
            range,
        })
    }

    /// Same upper estimate and stretch, new ground-state estimate.
    pub fn with_estimate(&self, estimate: f64) -> Result<Self> {
        if self.alpha_stretch == 1.0 && self.upper_estimate == self.estimate + self.range {
            let top = self.top();
            return Self::from_range(estimate, top - estimate);
        }
        Self::new(estimate, self.upper_estimate, self.alpha_stretch)
    }

    pub fn estimate(&self) -> f64 {
        self.estimate
    }

    pub fn upper_estimate(&self) -> f64 {
        self.upper_estimate
    }

    pub fn alpha_stretch(&self) -> f64 {
        self.alpha_stretch
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    /// Energy mapped to `+1`.
    pub fn top(&self) -> f64 {
        self.estimate + self.range
    }

    pub fn to_unit(&self, energy: f64) -> f64 {
        2.0 * (energy - self.estimate) / self.range - 1.0
    }

    pub fn from_unit(&self, x: f64) -> f64 {
        self.estimate + 0.5 * self.range * (x + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor_maps_to_minus_one() {
        let w = SpectralWindow::new(-0.7, 3.0, 1.1).unwrap();
        assert_eq!(w.to_unit(-0.7), -1.0);
        assert!((w.to_unit(w.top()) - 1.0).abs() < 1e-15);
        assert!((w.from_unit(w.to_unit(0.3)) - 0.3).abs() < 1e-14);
    }

    #[test]
    fn stretch_matches_product_for_positive_upper() {
        let w = SpectralWindow::new(0.0, 3.0, 1.1).unwrap();
        assert_eq!(w.range(), 1.1 * 3.0);
    }

    #[test]
    fn stretch_enlarges_negative_upper() {
        let w = SpectralWindow::new(-0.93, -0.31, 1.1).unwrap();
        assert!(w.top() > -0.31);
        assert!((w.top() - (-0.31 + 0.031)).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(
            SpectralWindow::new(5.0, 3.0, 1.0),
            Err(Error::DegenerateWindow { .. })
        ));
        assert!(SpectralWindow::new(0.0, 3.0, 0.9).is_err());
        assert!(SpectralWindow::from_range(0.0, 0.0).is_err());
    }

    #[test]
    fn with_estimate_keeps_top() {
        let w = SpectralWindow::new(0.0, 3.0, 1.1).unwrap();
        let v = w.with_estimate(-1.0).unwrap();
        assert!((v.top() - w.top()).abs() < 1e-15);
        let u = SpectralWindow::from_range(0.0, 2.0).unwrap();
        assert!((u.with_estimate(0.5).unwrap().top() - 2.0).abs() < 1e-15);
    }
}
