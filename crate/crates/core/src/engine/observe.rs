use super::action::HamiltonianAction;
use super::spec::SPolicy;
use super::state::StateVector;
use super::trace::ProjectionTrace;
use crate::error::{Error, Result};
use crate::C64;

pub(crate) fn expectation(h: &dyn HamiltonianAction, v: &[C64]) -> f64 {
    let mut hv = vec![C64::new(0.0, 0.0); v.len()];
    h.apply(v, &mut hv);
    v.iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observables {
    pub energy: f64,
    pub fidelity: f64,
    /// `|<Psi_0|psi>|`, the ground-state weight with phase fixed positive.
    pub c0: f64,
}

pub fn observables(state: &StateVector, h: &dyn HamiltonianAction, ground: &StateVector) -> Result<Observables> {
    for d in [h.dim(), ground.dim()] {
        if d != state.dim() {
            return Err(Error::DimensionMismatch { expected: d, found: state.dim() });
        }
    }
    let c0 = ground.overlap(state).norm().min(1.0);
    Ok(Observables { energy: expectation(h, state.amplitudes()), fidelity: c0, c0 })
}

/// The estimate in force after applying `policy` to a finished repeat.
pub fn s_update(trace: &ProjectionTrace, policy: SPolicy, current: f64) -> f64 {
    match (policy, trace.final_energy()) {
        (SPolicy::EveryRepeat, Some(e)) => e,
        _ => current,
    }
}

/// `1 / (1 + max_{i>0} |g(E_i)/g(E_0)| / c0)`.
///
/// `ground_value` is `g(E_0)`; `excited_values` the polynomial at every
/// other eigenvalue. Returns 0 when `g(E_0) = 0` or `c0 = 0`.
pub fn fidelity_lower_bound(c0: f64, ground_value: f64, excited_values: &[f64]) -> f64 {
    if c0 <= 0.0 || ground_value == 0.0 {
        return 0.0;
    }
    let worst = excited_values
        .iter()
        .map(|g| (g / ground_value).abs())
        .fold(0.0, f64::max);
    1.0 / (1.0 + worst / c0)
}
