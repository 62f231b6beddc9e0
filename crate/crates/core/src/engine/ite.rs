use super::polyproj::{apply_poly_projector, InnerMap};
use super::spec::{IteSpec, IteStep, IteTarget, ProjectorSpec};
use super::state::StateVector;
use super::trace::{ProjectionTrace, TraceStatus};
use super::Problem;
use crate::error::{invalid, Result};
use crate::poly::{ite_cheb_coefficients, ite_timestep_select, Method};

/// Repeated truncated imaginary-time steps with `H' = (H - lbar)/dl`,
/// `lbar = (l+ + l-)/2`, `dl = l+ - l-`.
///
/// Each step is one shot of [`apply_poly_projector`]; the trace holds one
/// record per step with `parameter = tau`.
pub fn run_ite(problem: &Problem<'_>, spec: &IteSpec, state: &StateVector) -> Result<(StateVector, ProjectionTrace)> {
    ProjectorSpec::Ite(*spec).validate()?;
    let (tau, q) = match spec.step {
        IteStep::FirstOrder { budget } => (ite_timestep_select(budget)?, 1),
        IteStep::Truncated { tau, q } => (tau, q),
    };
    let steps_cap = match spec.target {
        IteTarget::Time(t) => ((t / tau).ceil() as usize).clamp(1, spec.max_steps),
        IteTarget::Fidelity(_) => {
            if problem.ground.is_none() {
                return Err(invalid("a fidelity target needs the exact ground state"));
            }
            spec.max_steps
        }
    };
    let map = InnerMap::Affine {
        shift: 0.5 * (spec.lambda_plus + spec.lambda_minus),
        scale: spec.lambda_plus - spec.lambda_minus,
    };
    let series = ite_cheb_coefficients(tau, q);
    let mut trace = ProjectionTrace::new(Method::Ite);
    let mut psi = state.clone();
    let mut cumulative = 1.0;
    for k in 1..=steps_cap {
        let (next, one) = apply_poly_projector(problem, &map, &series, Method::Ite, &psi)?;
        if one.status != TraceStatus::Completed {
            trace.status = TraceStatus::ProjectedOut { step: k };
            return Ok((psi, trace));
        }
        let mut rec = one.records.into_iter().next().expect("one record per shot");
        cumulative *= rec.probability;
        rec.step = k;
        rec.parameter = tau;
        rec.cumulative_probability = cumulative;
        rec.applications = k * q;
        let reached = matches!(spec.target, IteTarget::Fidelity(f) if rec.fidelity.is_some_and(|x| x >= f));
        trace.records.push(rec);
        psi = next;
        if reached {
            break;
        }
    }
    Ok((psi, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{DiagonalAction, OracleNorm};

    fn spec(target: IteTarget) -> IteSpec {
        IteSpec { lambda_minus: -2.0, lambda_plus: 3.0, target, step: IteStep::default(), max_steps: 10_000 }
    }

    #[test]
    fn ground_state_unchanged() {
        let h = DiagonalAction::new(vec![-1.0, 0.0, 2.0]);
        let g = StateVector::basis(3, 0).unwrap();
        let p = Problem::new(&h, OracleNorm::Spectral { lo: -1.0, hi: 2.0 }).with_ground(&g, -1.0);
        let (out, trace) = run_ite(&p, &spec(IteTarget::Time(5.0)), &g).unwrap();
        assert!(out.distance(&g) < 1e-14);
        assert!(trace.records.len() > 1);
    }

    #[test]
    fn reaches_fidelity_target_and_counts_steps() {
        let h = DiagonalAction::new(vec![-1.0, 0.0, 2.0]);
        let g = StateVector::basis(3, 0).unwrap();
        let psi = StateVector::from_real(&[0.5, 0.7, 0.5]).unwrap();
        let p = Problem::new(&h, OracleNorm::Spectral { lo: -1.0, hi: 2.0 }).with_ground(&g, -1.0);
        let (_, trace) = run_ite(&p, &spec(IteTarget::Fidelity(0.9999)), &psi).unwrap();
        assert!(trace.final_fidelity().unwrap() >= 0.9999);
        assert_eq!(trace.applications(), trace.records.len());
        let f: Vec<f64> = trace.records.iter().map(|r| r.fidelity.unwrap()).collect();
        assert!(f.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    }
}
