use super::state::{norm_sqr, StateVector};
use super::trace::{ProjectionTrace, StepRecord, TraceStatus, PROJECTED_OUT_CUTOFF};
use super::Problem;
use crate::error::{invalid, Error, Result};
use crate::poly::{ChebSeries, Method};
use crate::C64;

/// How the series variable is formed from `H`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InnerMap {
    /// `x = (H - shift)/scale`.
    Affine { shift: f64, scale: f64 },
    /// `y = -1 + 2(x^2 - delta^2)/(1 - delta^2)` with `x = (H - shift)/scale`,
    /// the argument of the eigenstate filter.
    FilterQuadratic { shift: f64, scale: f64, delta: f64 },
}

impl InnerMap {
    fn shift_scale(&self) -> (f64, f64) {
        match *self {
            InnerMap::Affine { shift, scale } | InnerMap::FilterQuadratic { shift, scale, .. } => (shift, scale),
        }
    }

    /// Series variable as a function of the rescaled `x`.
    pub fn inner(&self, x: f64) -> f64 {
        match *self {
            InnerMap::Affine { .. } => x,
            InnerMap::FilterQuadratic { delta, .. } => {
                let d2 = delta * delta;
                -1.0 + 2.0 * (x * x - d2) / (1.0 - d2)
            }
        }
    }

    /// Hamiltonian applications per series degree.
    pub fn degree_multiplier(&self) -> usize {
        match self {
            InnerMap::Affine { .. } => 1,
            InnerMap::FilterQuadratic { .. } => 2,
        }
    }

    pub fn to_unit(&self, energy: f64) -> f64 {
        let (shift, scale) = self.shift_scale();
        (energy - shift) / scale
    }

    fn validate(&self) -> Result<()> {
        let (shift, scale) = self.shift_scale();
        if !(scale > 0.0) || !shift.is_finite() || !scale.is_finite() {
            return Err(invalid("inner map needs finite shift and positive scale"));
        }
        if let InnerMap::FilterQuadratic { delta, .. } = *self {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(invalid(format!("filter delta must lie in (0, 1), got {delta}")));
            }
        }
        Ok(())
    }
}

/// Largest `|p(inner(x))|` on `[-1, 1]`, sampled densely and at the
/// stationary point `x = 0` of the quadratic map.
fn max_abs_composite(series: &ChebSeries, map: &InnerMap) -> f64 {
    let n = 4001;
    (0..n)
        .map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
        .chain([0.0])
        .map(|x| series.eval(map.inner(x)).abs())
        .fold(0.0, f64::max)
}

/// Applies `p(inner(H))` to the state in one shot.
///
/// The recorded probability is `||p(H) psi||^2` after scaling `p` so that
/// its maximum modulus on `[-1, 1]` does not exceed one.
pub fn apply_poly_projector(
    problem: &Problem<'_>,
    map: &InnerMap,
    series: &ChebSeries,
    method: Method,
    state: &StateVector,
) -> Result<(StateVector, ProjectionTrace)> {
    map.validate()?;
    if series.coefficients().iter().any(|c| !c.is_finite()) {
        return Err(invalid("series has non-finite coefficients"));
    }
    let dim = problem.action.dim();
    if state.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: state.dim() });
    }
    let (shift, scale) = map.shift_scale();
    let mut tmp = vec![C64::new(0.0, 0.0); dim];
    let rescaled = |x: &[C64], y: &mut [C64]| {
        problem.action.apply(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = (*yi - xi * shift) / scale;
        }
    };
    let out = match *map {
        InnerMap::Affine { .. } => series.apply(state.amplitudes(), rescaled),
        InnerMap::FilterQuadratic { delta, .. } => {
            let d2 = delta * delta;
            let (c0, c2) = (-1.0 - 2.0 * d2 / (1.0 - d2), 2.0 / (1.0 - d2));
            series.apply(state.amplitudes(), |x, y| {
                rescaled(x, &mut tmp);
                rescaled(&tmp, y);
                for (yi, xi) in y.iter_mut().zip(x) {
                    *yi = *yi * c2 + xi * c0;
                }
            })
        }
    };
    let norm = max_abs_composite(series, map).max(1.0);
    let n2 = norm_sqr(&out);
    let probability = n2 / (norm * norm);
    let mut trace = ProjectionTrace::new(method);
    let applications = series.degree() * map.degree_multiplier();
    if !(probability >= PROJECTED_OUT_CUTOFF) {
        trace.status = TraceStatus::ProjectedOut { step: 1 };
        return Ok((state.clone(), trace));
    }
    let psi = StateVector::new(out)?;
    trace.records.push(StepRecord {
        step: 1,
        repeat: 0,
        parameter: applications as f64,
        probability,
        cumulative_probability: probability,
        energy: problem.energy(&psi),
        fidelity: problem.fidelity(&psi),
        s: shift,
        r: scale,
        applications,
    });
    Ok((psi, trace))
}
