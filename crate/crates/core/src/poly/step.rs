//! Polynomial approximation of `sgn(x)` away from a gap `(-delta, delta)`.
//!
//! The fit is a discrete least-squares problem on Chebyshev points restricted
//! to `|x| >= delta`, using only odd Chebyshev polynomials. The result is then
//! scaled down uniformly if it exceeds one anywhere on `[-1, 1]`, and its
//! accuracy on the plateaus is measured on a dense grid and reported as is.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use super::ChebSeries;
use crate::error::{invalid, Result};

const BOUND_GRID: usize = 10_000;
const PLATEAU_GRID: usize = 5_000;

#[derive(Debug, Clone, PartialEq)]
pub struct StepFit {
    series: ChebSeries,
    delta: f64,
    achieved_eps: f64,
    max_abs: f64,
}

impl StepFit {
    pub fn series(&self) -> &ChebSeries {
        &self.series
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `max |S(x) - sgn(x)|` over the plateau grid.
    pub fn achieved_eps(&self) -> f64 {
        self.achieved_eps
    }

    /// `max |S(x)|` over the `[-1, 1]` grid after rescaling.
    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.series.eval(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    Fitted(StepFit),
    /// The fit exists but misses the requested plateau accuracy.
    InsufficientDegree { fit: StepFit, target: f64 },
}

impl StepOutcome {
    pub fn fit(&self) -> &StepFit {
        match self {
            StepOutcome::Fitted(fit) | StepOutcome::InsufficientDegree { fit, .. } => fit,
        }
    }

    pub fn into_fit(self) -> StepFit {
        match self {
            StepOutcome::Fitted(fit) | StepOutcome::InsufficientDegree { fit, .. } => fit,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, StepOutcome::Fitted(_))
    }
}

pub fn step_poly_fit(degree: usize, delta: f64, eps_target: f64) -> Result<StepOutcome> {
    if degree < 3 {
        return Err(invalid(format!("step polynomial needs degree >= 3, got {degree}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("step gap must lie in (0, 1), got {delta}")));
    }
    if !(eps_target > 0.0) {
        return Err(invalid("target accuracy must be positive"));
    }

    let odd: Vec<usize> = (1..=degree).step_by(2).collect();
    let n_points = 4 * (degree + 1) + 512;
    // positive half of the Chebyshev grid; the odd basis mirrors it
    let xs: Vec<f64> = (0..n_points)
        .map(|j| ((j as f64 + 0.5) * PI / n_points as f64).cos())
        .filter(|&x| x >= delta)
        .collect();

    let basis = DMatrix::from_fn(xs.len(), odd.len(), |i, j| odd_basis_value(odd[j], xs[i]));
    let rhs = DVector::from_element(xs.len(), 1.0);
    let solution = least_squares(basis, rhs)
        .ok_or_else(|| invalid("step fit normal system is singular"))?;

    let mut coefficients = vec![0.0; degree + 1];
    for (k, c) in odd.iter().zip(solution.iter()) {
        coefficients[*k] = *c;
    }
    let mut series = ChebSeries::new(coefficients);

    let raw_max = series.max_abs_on_unit(BOUND_GRID);
    if raw_max > 1.0 {
        series = series.scaled(1.0 / raw_max);
    }
    let max_abs = series.max_abs_on_unit(BOUND_GRID);
    let achieved_eps = plateau_error(&series, delta);

    let fit = StepFit {
        series,
        delta,
        achieved_eps,
        max_abs,
    };
    Ok(if achieved_eps <= eps_target {
        StepOutcome::Fitted(fit)
    } else {
        StepOutcome::InsufficientDegree {
            fit,
            target: eps_target,
        }
    })
}

fn odd_basis_value(k: usize, x: f64) -> f64 {
    (k as f64 * x.clamp(-1.0, 1.0).acos()).cos()
}

fn least_squares(a: DMatrix<f64>, b: DVector<f64>) -> Option<DVector<f64>> {
    let qr = a.qr();
    let rhs = qr.q().transpose() * b;
    qr.r().solve_upper_triangular(&rhs)
}

fn plateau_error(series: &ChebSeries, delta: f64) -> f64 {
    (0..PLATEAU_GRID)
        .map(|i| delta + (1.0 - delta) * i as f64 / (PLATEAU_GRID - 1) as f64)
        .flat_map(|x| {
            [
                (series.eval(x) - 1.0).abs(),
                (series.eval(-x) + 1.0).abs(),
            ]
        })
        .fold(0.0, f64::max)
}
