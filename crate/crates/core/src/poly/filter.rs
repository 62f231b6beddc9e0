//! Eigenstate filter `R_l(x; Delta)`.

use super::{cheb_eval, ChebSeries};
use crate::error::{invalid, Result};

/// `R_l(x; Delta) = T_l(y(x)) / T_l(y(0))` with
/// `y(x) = -1 + 2 (x^2 - Delta^2) / (1 - Delta^2)`.
///
/// As a polynomial in `x` it has degree `2l` and is even; it is stored as a
/// single-term Chebyshev series in the inner variable `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenstateFilter {
    half_degree: usize,
    delta: f64,
    denominator: f64,
}

impl EigenstateFilter {
    pub fn new(half_degree: usize, delta: f64) -> Result<Self> {
        if half_degree == 0 {
            return Err(invalid("eigenstate filter needs l >= 1"));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(invalid(format!("filter gap must lie in (0, 1), got {delta}")));
        }
        let y0 = -1.0 - 2.0 * delta * delta / (1.0 - delta * delta);
        Ok(Self {
            half_degree,
            delta,
            denominator: cheb_eval(half_degree, y0),
        })
    }

    pub fn half_degree(&self) -> usize {
        self.half_degree
    }

    /// Polynomial degree in `x`, i.e. the Hamiltonian-application count.
    pub fn degree(&self) -> usize {
        2 * self.half_degree
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn inner(&self, x: f64) -> f64 {
        let d2 = self.delta * self.delta;
        -1.0 + 2.0 * (x * x - d2) / (1.0 - d2)
    }

    /// Series in the inner variable `y`.
    pub fn inner_series(&self) -> ChebSeries {
        ChebSeries::basis(self.half_degree, 1.0 / self.denominator)
    }

    pub fn eval(&self, x: f64) -> f64 {
        cheb_eval(self.half_degree, self.inner(x)) / self.denominator
    }
}

pub fn eigenstate_filter_eval(half_degree: usize, delta: f64, x: f64) -> Result<f64> {
    Ok(EigenstateFilter::new(half_degree, delta)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_at_origin() {
        for l in 1..40 {
            for d in [0.01, 0.2, 0.7] {
                assert!((eigenstate_filter_eval(l, d, 0.0).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn first_order_value() {
        // numerator argument 1, denominator argument -5/3
        let v = eigenstate_filter_eval(1, 0.5, 1.0).unwrap();
        assert!((v - (1.0 / (-5.0 / 3.0))).abs() < 1e-15);
        assert!((v + 0.6).abs() < 1e-15);
    }

    #[test]
    fn even_in_x() {
        let f = EigenstateFilter::new(7, 0.1).unwrap();
        for x in [0.05, 0.3, 0.99] {
            assert_eq!(f.eval(x), f.eval(-x));
        }
    }

    #[test]
    fn decay_lemma_sample() {
        let bound = 2.0 * (-(2.0f64).sqrt() * 60.0 / 12.0).exp();
        assert!(eigenstate_filter_eval(60, 1.0 / 12.0, 0.5).unwrap().abs() <= bound);
    }

    #[test]
    fn rejects_bad_gap() {
        assert!(eigenstate_filter_eval(3, 1.0, 0.2).is_err());
        assert!(eigenstate_filter_eval(3, 0.0, 0.2).is_err());
        assert!(eigenstate_filter_eval(0, 0.5, 0.2).is_err());
    }

    #[test]
    fn bounded_on_unit_interval() {
        let f = EigenstateFilter::new(25, 0.05).unwrap();
        for i in 0..=2000 {
            let x = -1.0 + i as f64 / 1000.0;
            assert!(f.eval(x).abs() <= 1.0 + 1e-12);
        }
    }
}
