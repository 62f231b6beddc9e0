//! Exact statevector application of ground-state projectors on the
//! postselected (success) branch.
//!
//! Every run returns the renormalized state together with a
//! [`ProjectionTrace`] recording per-step success probabilities, energies
//! and, when the exact ground state is supplied, fidelities.

mod action;
mod ite;
mod observe;
mod polyproj;
mod sampling;
mod spec;
mod state;
mod trace;
mod wall;

pub use action::{DiagonalAction, HamiltonianAction, OracleNorm};
pub use ite::run_ite;
pub use observe::{fidelity_lower_bound, observables, s_update, Observables};
pub use polyproj::{apply_poly_projector, InnerMap};
pub use sampling::{sample_postselection, SamplingSummary};
pub use spec::{IteSpec, IteStep, IteTarget, ProjectorSpec, SPolicy, StepSpec, WallChebSpec, FilterSpec};
pub use state::{init_reference, ReferenceChoice, StateVector};
pub use trace::{ProjectionTrace, StepRecord, TraceEvent, TraceStatus, PROJECTED_OUT_CUTOFF};
pub use wall::apply_wall_cheb;

use crate::error::Result;
use crate::poly::{step_poly_fit, ChebSeries, EigenstateFilter, Method, StepOutcome};
use crate::window::SpectralWindow;

/// Runs any projector. The window is used by the wall-Chebyshev variant
/// only; the others carry their own shift and scale.
pub fn run_projector(
    problem: &Problem<'_>,
    window: &SpectralWindow,
    spec: &ProjectorSpec,
    state: &StateVector,
) -> Result<(StateVector, ProjectionTrace)> {
    spec.validate()?;
    match spec {
        ProjectorSpec::WallCheb(w) => apply_wall_cheb(problem, window, w, state),
        ProjectorSpec::EigFilter(f) => {
            let filter = EigenstateFilter::new(f.half_degree, f.delta)?;
            let map = InnerMap::FilterQuadratic { shift: f.shift, scale: f.scale, delta: f.delta };
            apply_poly_projector(problem, &map, &filter.inner_series(), Method::EigFilter, state)
        }
        ProjectorSpec::Step(s) => {
            let outcome = step_poly_fit(s.degree, s.delta, s.eps)?;
            let series = step_projector_series(outcome.fit().series());
            let map = InnerMap::Affine { shift: s.threshold, scale: s.scale };
            let (psi, mut trace) = apply_poly_projector(problem, &map, &series, Method::Step, state)?;
            if let (StepOutcome::InsufficientDegree { fit, target }, TraceStatus::Completed) = (&outcome, trace.status) {
                trace.status = TraceStatus::InsufficientDegree { achieved_eps: fit.achieved_eps(), target_eps: *target };
            }
            Ok((psi, trace))
        }
        ProjectorSpec::Ite(i) => run_ite(problem, i, state),
    }
}

/// `(1 - S(x))/2` from the sign approximation `S`.
pub fn step_projector_series(sign: &ChebSeries) -> ChebSeries {
    let mut c: Vec<f64> = sign.coefficients().iter().map(|v| -0.5 * v).collect();
    if c.is_empty() {
        c.push(0.0);
    }
    c[0] += 0.5;
    ChebSeries::new(c)
}

/// What a run needs besides the state: the operator, the LCU one-norm
/// model and, optionally, exact ground-state data for fidelities.
pub struct Problem<'a> {
    pub action: &'a dyn HamiltonianAction,
    pub oracle: OracleNorm,
    pub ground: Option<&'a StateVector>,
    pub ground_energy: Option<f64>,
}

impl<'a> Problem<'a> {
    pub fn new(action: &'a dyn HamiltonianAction, oracle: OracleNorm) -> Self {
        Self { action, oracle, ground: None, ground_energy: None }
    }

    pub fn with_ground(mut self, ground: &'a StateVector, energy: f64) -> Self {
        self.ground = Some(ground);
        self.ground_energy = Some(energy);
        self
    }

    pub(crate) fn fidelity(&self, psi: &StateVector) -> Option<f64> {
        self.ground.map(|g| g.overlap(psi).norm().min(1.0))
    }

    pub(crate) fn energy(&self, psi: &StateVector) -> f64 {
        observe::expectation(self.action, psi.amplitudes())
    }
}
