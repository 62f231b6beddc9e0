use super::spec::{SPolicy, WallChebSpec};
use super::state::{norm_sqr, StateVector};
use super::trace::{ProjectionTrace, StepRecord, TraceEvent, TraceStatus, PROJECTED_OUT_CUTOFF};
use super::{observe, Problem};
use crate::error::{Error, Result};
use crate::poly::{wall_cheb_nodes, Method};
use crate::window::SpectralWindow;
use crate::C64;

/// Applies the `m` factors `(H - a_nu)/(S - a_nu)` one at a time, `repeats`
/// times, renormalizing after each factor.
///
/// Each step's probability is `||(H - a_nu) psi||^2 / alpha(H - a_nu)^2`,
/// i.e. the squared norm of the encoded factor divided by its
/// subnormalization squared.
pub fn apply_wall_cheb(
    problem: &Problem<'_>,
    window: &SpectralWindow,
    spec: &WallChebSpec,
    state: &StateVector,
) -> Result<(StateVector, ProjectionTrace)> {
    super::ProjectorSpec::WallCheb(*spec).validate()?;
    let dim = problem.action.dim();
    if state.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: state.dim() });
    }
    let mut trace = ProjectionTrace::new(Method::WallCheb);
    let mut window = *window;
    let mut psi = state.amplitudes().to_vec();
    let mut hpsi = vec![C64::new(0.0, 0.0); dim];
    let mut cumulative = 1.0;
    let mut step = 0;
    for repeat in 0..spec.repeats {
        let nodes = wall_cheb_nodes(spec.order, &window)?;
        let s = window.estimate();
        for &a in nodes.nodes() {
            step += 1;
            problem.action.apply(&psi, &mut hpsi);
            let mut next: Vec<C64> = hpsi.iter().zip(&psi).map(|(h, p)| h - p * a).collect();
            let n2 = norm_sqr(&next);
            let probability = n2 / problem.oracle.shifted(a).powi(2);
            if !(probability >= PROJECTED_OUT_CUTOFF) {
                trace.status = TraceStatus::ProjectedOut { step };
                return Ok((StateVector::from_normalized(psi), trace));
            }
            let scale = (s - a).signum() / n2.sqrt();
            next.iter_mut().for_each(|v| *v *= scale);
            psi = next;
            cumulative *= probability;
            let current = StateVector::from_normalized(psi);
            trace.records.push(StepRecord {
                step,
                repeat,
                parameter: a,
                probability,
                cumulative_probability: cumulative,
                energy: problem.energy(&current),
                fidelity: problem.fidelity(&current),
                s,
                r: window.range(),
                applications: step,
            });
            psi = current.into_amplitudes();
        }
        if spec.s_update == SPolicy::EveryRepeat && repeat + 1 < spec.repeats {
            let new_s = observe::s_update(&trace, spec.s_update, s);
            trace.events.push(TraceEvent::SUpdated { repeat, old: s, new: new_s });
            if let Some(e0) = problem.ground_energy {
                if new_s < e0 {
                    trace.events.push(TraceEvent::SBelowGround { repeat, s: new_s, ground: e0 });
                }
            }
            window = window.with_estimate(new_s)?;
        }
    }
    Ok((StateVector::from_normalized(psi), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{DiagonalAction, OracleNorm};

    fn toy() -> (DiagonalAction, StateVector, SpectralWindow) {
        let energies = vec![-1.0, -0.2, 0.4, 1.5];
        let w = SpectralWindow::from_range(-1.0, 3.0).unwrap();
        (DiagonalAction::new(energies), StateVector::from_real(&[0.5, 0.5, 0.5, 0.5]).unwrap(), w)
    }

    #[test]
    fn eigenstate_is_fixed_point() {
        let (h, _, w) = toy();
        let g = StateVector::basis(4, 0).unwrap();
        let oracle = OracleNorm::Spectral { lo: -1.0, hi: 1.5 };
        let p = Problem::new(&h, oracle).with_ground(&g, -1.0);
        let (out, trace) = apply_wall_cheb(&p, &w, &WallChebSpec::new(6), &g).unwrap();
        assert!(out.distance(&g) < 1e-14);
        for (r, a) in trace.records.iter().zip(crate::poly::wall_cheb_nodes(6, &w).unwrap().nodes()) {
            assert!((r.fidelity.unwrap() - 1.0).abs() < 1e-14);
            let expect = ((-1.0 - a) / oracle.shifted(*a)).powi(2);
            assert!((r.probability - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn sequential_equals_full_product() {
        let (h, psi, w) = toy();
        let p = Problem::new(&h, OracleNorm::Spectral { lo: -1.0, hi: 1.5 });
        let m = 5;
        let (out, trace) = apply_wall_cheb(&p, &w, &WallChebSpec::new(m).with_repeats(2, SPolicy::Never), &psi).unwrap();
        let nodes = crate::poly::wall_cheb_nodes(m, &w).unwrap();
        let raw: Vec<f64> = h.energies().iter().map(|&e| 0.5 * nodes.product(e).powi(2)).collect();
        let direct = StateVector::from_real(&raw).unwrap();
        assert!(out.distance(&direct) < 1e-10);
        let product: f64 = trace.records.iter().map(|r| r.probability).product();
        assert!((trace.cumulative_probability() - product).abs() < 1e-12 * product.max(1e-300));
    }

    #[test]
    fn projected_out_stops_run() {
        // a node sits exactly on the only populated eigenvalue
        let w = SpectralWindow::from_range(0.0, 1.0).unwrap();
        let h = DiagonalAction::new(vec![0.75, 0.0]);
        let psi = StateVector::basis(2, 0).unwrap();
        let p = Problem::new(&h, OracleNorm::Spectral { lo: 0.0, hi: 1.0 });
        let (out, trace) = apply_wall_cheb(&p, &w, &WallChebSpec::new(1), &psi).unwrap();
        assert_eq!(trace.status, TraceStatus::ProjectedOut { step: 1 });
        assert_eq!(out, psi);
    }

    #[test]
    fn s_update_tracks_energy() {
        let (h, psi, w) = toy();
        let w = w.with_estimate(0.0).unwrap();
        let g = StateVector::basis(4, 0).unwrap();
        let p = Problem::new(&h, OracleNorm::Spectral { lo: -1.0, hi: 1.5 }).with_ground(&g, -1.0);
        let spec = WallChebSpec::new(4).with_repeats(4, SPolicy::EveryRepeat);
        let (_, trace) = apply_wall_cheb(&p, &w, &spec, &psi).unwrap();
        let s: Vec<f64> = trace.records.iter().map(|r| r.s).collect();
        assert!(s.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        assert!(s[0] == 0.0 && *s.last().unwrap() < 0.0);
        let never = WallChebSpec::new(4).with_repeats(4, SPolicy::Never);
        let (_, t2) = apply_wall_cheb(&p, &w, &never, &psi).unwrap();
        assert!(t2.records.iter().all(|r| r.s == 0.0));
    }
}
