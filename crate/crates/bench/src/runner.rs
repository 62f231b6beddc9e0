//! Order sweeps for each projector.
//!
//! The x-axis is the number of Hamiltonian applications: `m * repeats` for
//! the wall-Chebyshev projector, the polynomial degree for the filter and
//! the step projector, and the step count for imaginary time evolution.

use std::collections::BTreeMap;

use rayon::prelude::*;
use wallcheb::engine::{
    apply_poly_projector, apply_wall_cheb, fidelity_lower_bound, run_ite, step_projector_series, InnerMap, IteSpec,
    IteStep, IteTarget, ProjectionTrace, SPolicy, TraceStatus, WallChebSpec,
};
use wallcheb::poly::{
    ite_cheb_coefficients, ite_timestep_select, step_poly_fit, wall_cheb_eval, ChebSeries, EigenstateFilter, EvalMode,
    Method,
};

use crate::config::{Config, MethodSection, SChoice};
use crate::error::{config_err, Result};
use crate::system::PreparedSystem;

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub system: String,
    pub method: Method,
    pub order: usize,
    pub repeats: usize,
    pub s_used: f64,
    pub r_used: f64,
    pub energy: f64,
    pub energy_error: f64,
    pub fidelity: f64,
    /// Lower bound on the fidelity from the polynomial at the exact spectrum.
    pub fidelity_bound: f64,
    pub cumulative_success_prob: f64,
    pub status: String,
}

impl SweepPoint {
    /// Whether the row describes a state the projector actually produced.
    pub fn usable(&self) -> bool {
        matches!(self.status.as_str(), "ok" | "insufficient_degree" | "reference")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub s_choice: SChoice,
    pub alpha_stretch: f64,
    pub order_min: usize,
    pub order_max: usize,
    pub repeats: usize,
    pub s_update: SPolicy,
    pub method: MethodSection,
}

impl SweepSettings {
    pub fn from_config(cfg: &Config) -> Result<Self> {
        Ok(Self {
            s_choice: cfg.s_choice()?,
            alpha_stretch: cfg.scenario.alpha_stretch,
            order_min: cfg.scenario.order_min,
            order_max: cfg.scenario.order_max,
            repeats: cfg.scenario.repeats,
            s_update: cfg.scenario.s_update.into(),
            method: cfg.method,
        })
    }

    pub fn with_order_max(mut self, order_max: usize) -> Self {
        self.order_max = order_max;
        self.order_min = self.order_min.min(order_max);
        self
    }
}

/// Runs every method on every system. Jobs may run in parallel; the result
/// order is always system-major, then method in configuration order.
pub fn sweep_all(
    systems: &[PreparedSystem],
    methods: &[Method],
    settings: &SweepSettings,
    parallel: bool,
) -> Result<Vec<SweepPoint>> {
    let jobs: Vec<(&PreparedSystem, Method)> =
        systems.iter().flat_map(|s| methods.iter().map(move |m| (s, *m))).collect();
    let run = |(sys, m): &(&PreparedSystem, Method)| sweep(sys, *m, settings);
    let chunks: Vec<Result<Vec<SweepPoint>>> =
        if parallel { jobs.par_iter().map(run).collect() } else { jobs.iter().map(run).collect() };
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

pub fn sweep(sys: &PreparedSystem, method: Method, settings: &SweepSettings) -> Result<Vec<SweepPoint>> {
    let mut out = Vec::new();
    if settings.order_min == 0 {
        out.push(reference_point(sys, method, settings));
    }
    match method {
        Method::WallCheb => sweep_wall(sys, settings, &mut out)?,
        Method::EigFilter => sweep_filter(sys, settings, &mut out)?,
        Method::Step => sweep_step(sys, settings, &mut out)?,
        Method::Ite => sweep_ite(sys, settings, &mut out)?,
    }
    Ok(out)
}

fn reference_point(sys: &PreparedSystem, method: Method, st: &SweepSettings) -> SweepPoint {
    let energy = expectation(sys, sys.reference.amplitudes());
    let c0 = sys.c0();
    SweepPoint {
        system: sys.name.clone(),
        method,
        order: 0,
        repeats: st.repeats,
        s_used: sys.estimate(st.s_choice),
        r_used: f64::NAN,
        energy,
        energy_error: energy - sys.e0(),
        fidelity: c0,
        fidelity_bound: fidelity_lower_bound(c0, 1.0, &vec![1.0; sys.energies().len() - 1]),
        cumulative_success_prob: 1.0,
        status: "reference".into(),
    }
}

fn expectation(sys: &PreparedSystem, amps: &[wallcheb::C64]) -> f64 {
    amps.iter().zip(sys.energies()).map(|(a, e)| a.norm_sqr() * e).sum()
}

/// Bound from the values of the applied polynomial at each eigenvalue.
fn bound_from<F: Fn(f64) -> f64>(sys: &PreparedSystem, p: F) -> f64 {
    let e = sys.energies();
    let excited: Vec<f64> = e[1..].iter().map(|&x| p(x)).collect();
    fidelity_lower_bound(sys.c0(), p(e[0]), &excited)
}

fn point_from_trace(
    sys: &PreparedSystem,
    method: Method,
    order: usize,
    repeats: usize,
    s_used: f64,
    r_used: f64,
    trace: &ProjectionTrace,
    fidelity_bound: f64,
) -> SweepPoint {
    let last = trace.records.last();
    let energy = last.map_or(f64::NAN, |r| r.energy);
    SweepPoint {
        system: sys.name.clone(),
        method,
        order,
        repeats,
        s_used,
        r_used,
        energy,
        energy_error: energy - sys.e0(),
        fidelity: last.and_then(|r| r.fidelity).unwrap_or(f64::NAN),
        fidelity_bound,
        cumulative_success_prob: trace.cumulative_probability(),
        status: trace.status.label().into(),
    }
}

fn failed_point(sys: &PreparedSystem, method: Method, order: usize, st: &SweepSettings, s: f64, r: f64) -> SweepPoint {
    SweepPoint {
        system: sys.name.clone(),
        method,
        order,
        repeats: st.repeats,
        s_used: s,
        r_used: r,
        energy: f64::NAN,
        energy_error: f64::NAN,
        fidelity: f64::NAN,
        fidelity_bound: f64::NAN,
        cumulative_success_prob: 0.0,
        status: "failed".into(),
    }
}

fn sweep_wall(sys: &PreparedSystem, st: &SweepSettings, out: &mut Vec<SweepPoint>) -> Result<()> {
    let s = sys.estimate(st.s_choice);
    let m_min = st.order_min.div_ceil(st.repeats).max(1);
    let m_max = st.order_max / st.repeats;
    let Ok(window) = sys.window(s, st.alpha_stretch) else {
        // S at or above the window top
        for m in m_min..=m_max {
            out.push(failed_point(sys, Method::WallCheb, m * st.repeats, st, s, f64::NAN));
            out.last_mut().expect("just pushed").status = "invalid_window".into();
        }
        return Ok(());
    };
    let problem = sys.problem();
    for m in m_min..=m_max {
        let spec = WallChebSpec::new(m).with_repeats(st.repeats, st.s_update);
        let (_, trace) = apply_wall_cheb(&problem, &window, &spec, &sys.reference)?;
        // one window per repeat, as recorded
        let mut windows = Vec::with_capacity(st.repeats);
        for r in 0..st.repeats {
            let s_r = trace.records.iter().find(|rec| rec.repeat == r).map_or(s, |rec| rec.s);
            windows.push(window.with_estimate(s_r)?);
        }
        let bound = if trace.status == TraceStatus::Completed {
            bound_from(sys, |e| windows.iter().map(|w| wall_cheb_eval(m, w, e, EvalMode::Product)).product())
        } else {
            f64::NAN
        };
        out.push(point_from_trace(sys, Method::WallCheb, m * st.repeats, st.repeats, s, window.range(), &trace, bound));
    }
    Ok(())
}

fn filter_params(sys: &PreparedSystem, st: &SweepSettings) -> (f64, f64, Option<f64>) {
    let lambda = sys.estimate(st.s_choice);
    let scale = sys.one_norm + lambda.abs();
    let delta = st.method.filter_delta.unwrap_or(sys.gap() / scale);
    let delta = (delta > 0.0 && delta < 1.0).then_some(delta);
    (lambda, scale, delta)
}

fn sweep_filter(sys: &PreparedSystem, st: &SweepSettings, out: &mut Vec<SweepPoint>) -> Result<()> {
    let (lambda, scale, delta) = filter_params(sys, st);
    let problem = sys.problem();
    for order in st.order_min.max(2)..=st.order_max {
        if order % 2 == 1 {
            continue;
        }
        let Some(delta) = delta else {
            out.push(failed_point(sys, Method::EigFilter, order, st, lambda, scale));
            continue;
        };
        let filter = EigenstateFilter::new(order / 2, delta)?;
        let map = InnerMap::FilterQuadratic { shift: lambda, scale, delta };
        let (_, trace) = apply_poly_projector(&problem, &map, &filter.inner_series(), Method::EigFilter, &sys.reference)?;
        let bound = bound_from(sys, |e| filter.eval((e - lambda) / scale));
        out.push(point_from_trace(sys, Method::EigFilter, order, 1, lambda, scale, &trace, bound));
    }
    Ok(())
}

/// Threshold `mu`, rescaling and half-width of the step projector.
fn step_params(sys: &PreparedSystem, st: &SweepSettings) -> (f64, f64, f64) {
    let guess = st.method.step_gap_guess.unwrap_or(sys.gap());
    let mu = sys.estimate(st.s_choice) + 0.5 * guess;
    let scale = sys.one_norm + mu.abs();
    let delta = guess / (4.0 * sys.one_norm);
    (mu, scale, delta)
}

fn sweep_step(sys: &PreparedSystem, st: &SweepSettings, out: &mut Vec<SweepPoint>) -> Result<()> {
    let (mu, scale, delta) = step_params(sys, st);
    let problem = sys.problem();
    let valid = delta > 0.0 && delta < 1.0 && st.method.step_eps > 0.0;
    // even degrees reuse the odd fit one below
    let mut fits: BTreeMap<usize, (ChebSeries, bool, f64)> = BTreeMap::new();
    for order in st.order_min.max(3)..=st.order_max {
        if !valid {
            out.push(failed_point(sys, Method::Step, order, st, mu, scale));
            continue;
        }
        let odd = if order % 2 == 0 { order - 1 } else { order };
        if !fits.contains_key(&odd) {
            let outcome = step_poly_fit(odd, delta, st.method.step_eps)?;
            let feasible = outcome.is_feasible();
            let eps = outcome.fit().achieved_eps();
            fits.insert(odd, (step_projector_series(outcome.fit().series()), feasible, eps));
        }
        let (series, feasible, achieved) = &fits[&odd];
        let map = InnerMap::Affine { shift: mu, scale };
        let (_, mut trace) = apply_poly_projector(&problem, &map, series, Method::Step, &sys.reference)?;
        if !feasible && trace.status == TraceStatus::Completed {
            trace.status = TraceStatus::InsufficientDegree { achieved_eps: *achieved, target_eps: st.method.step_eps };
        }
        let bound = bound_from(sys, |e| series.eval((e - mu) / scale));
        out.push(point_from_trace(sys, Method::Step, order, 1, mu, scale, &trace, bound));
    }
    Ok(())
}

/// Spectral bounds used to rescale the imaginary-time generator.
pub fn ite_bounds(sys: &PreparedSystem, alpha_stretch: f64) -> Result<(f64, f64)> {
    let top = sys.upper + (alpha_stretch - 1.0) * sys.upper.abs();
    if !(top > sys.lower) {
        return Err(config_err(format!("system {}: empty ITE interval [{}, {top}]", sys.name, sys.lower)));
    }
    Ok((sys.lower, top))
}

fn sweep_ite(sys: &PreparedSystem, st: &SweepSettings, out: &mut Vec<SweepPoint>) -> Result<()> {
    if st.order_max == 0 {
        return Ok(());
    }
    let (lo, hi) = ite_bounds(sys, st.alpha_stretch)?;
    let tau = ite_timestep_select(st.method.ite_budget)?;
    let spec = IteSpec {
        lambda_minus: lo,
        lambda_plus: hi,
        target: IteTarget::Time(tau * st.order_max as f64),
        step: IteStep::FirstOrder { budget: st.method.ite_budget },
        max_steps: st.order_max,
    };
    let problem = sys.problem();
    let (_, trace) = run_ite(&problem, &spec, &sys.reference)?;
    let (shift, scale) = (0.5 * (lo + hi), hi - lo);
    let one_step = ite_cheb_coefficients(tau, 1);
    for rec in &trace.records {
        if rec.step < st.order_min {
            continue;
        }
        let k = rec.step as i32;
        let bound = bound_from(sys, |e| one_step.eval((e - shift) / scale).powi(k));
        out.push(SweepPoint {
            system: sys.name.clone(),
            method: Method::Ite,
            order: rec.applications,
            repeats: 1,
            s_used: shift,
            r_used: scale,
            energy: rec.energy,
            energy_error: rec.energy - sys.e0(),
            fidelity: rec.fidelity.unwrap_or(f64::NAN),
            fidelity_bound: bound,
            cumulative_success_prob: rec.cumulative_probability,
            status: "ok".into(),
        });
    }
    if let TraceStatus::ProjectedOut { step } = trace.status {
        out.push(failed_point(sys, Method::Ite, step, st, shift, scale));
        out.last_mut().expect("just pushed").status = "projected_out".into();
    }
    Ok(())
}

/// Gap of `sys` in the units of `method`'s polynomial variable.
pub fn rescaled_gap(sys: &PreparedSystem, method: Method, st: &SweepSettings) -> Result<f64> {
    let gap = sys.gap();
    Ok(match method {
        Method::WallCheb => 2.0 * gap / sys.window(sys.estimate(st.s_choice), st.alpha_stretch)?.range(),
        Method::EigFilter => gap / filter_params(sys, st).1,
        Method::Step => gap / step_params(sys, st).1,
        Method::Ite => {
            let (lo, hi) = ite_bounds(sys, st.alpha_stretch)?;
            gap / (hi - lo)
        }
    })
}

/// `f(E_i)` at every eigenvalue for the projector `method` would apply at
/// `order` (wall-Chebyshev repeats use a fixed estimate here).
pub fn projector_values(sys: &PreparedSystem, method: Method, order: usize, st: &SweepSettings) -> Result<Vec<f64>> {
    let e = sys.energies();
    Ok(match method {
        Method::WallCheb => {
            let m = (order / st.repeats).max(1);
            let w = sys.window(sys.estimate(st.s_choice), st.alpha_stretch)?;
            e.iter().map(|&x| wall_cheb_eval(m, &w, x, EvalMode::Product).powi(st.repeats as i32)).collect()
        }
        Method::EigFilter => {
            let (lambda, scale, delta) = filter_params(sys, st);
            let delta = delta.ok_or_else(|| config_err(format!("system {}: filter width outside (0, 1)", sys.name)))?;
            let f = EigenstateFilter::new((order / 2).max(1), delta)?;
            e.iter().map(|&x| f.eval((x - lambda) / scale)).collect()
        }
        Method::Step => {
            let (mu, scale, delta) = step_params(sys, st);
            let fit = step_poly_fit(order.max(3), delta, st.method.step_eps)?;
            let series = step_projector_series(fit.fit().series());
            e.iter().map(|&x| series.eval((x - mu) / scale)).collect()
        }
        Method::Ite => {
            let (lo, hi) = ite_bounds(sys, st.alpha_stretch)?;
            let tau = ite_timestep_select(st.method.ite_budget)?;
            let one = ite_cheb_coefficients(tau, 1);
            let (shift, scale) = (0.5 * (lo + hi), hi - lo);
            e.iter().map(|&x| one.eval((x - shift) / scale).powi(order as i32)).collect()
        }
    })
}
