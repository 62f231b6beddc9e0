//! Log-log fits of threshold order against spectral gap.

use std::io::Write;

use wallcheb::poly::Method;

use crate::config::Config;
use crate::error::{config_err, BenchError, Result};
use crate::runner::{rescaled_gap, sweep, SweepSettings};
use crate::scenario::fmt;
use crate::system::PreparedSystem;
use crate::thresholds::{threshold_order, Criterion, ThresholdMode};

/// Least-squares slope of `ln(order)` against `ln(gap)`.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.iter().any(|&(g, o)| !(g > 0.0) || !(o > 0.0)) {
        return Err(config_err("scaling fit needs positive gaps and orders"));
    }
    let mut gaps: Vec<f64> = points.iter().map(|p| p.0).collect();
    gaps.sort_by(f64::total_cmp);
    gaps.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    if gaps.len() < 2 {
        return Err(config_err(format!("scaling fit needs at least 2 distinct gaps, got {}", gaps.len())));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingPoint {
    pub system: String,
    pub gap: f64,
    pub rescaled_gap: f64,
    pub order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingResult {
    pub method: Method,
    pub points: Vec<ScalingPoint>,
    /// `None` when fewer than two systems reached the target.
    pub slope: Option<f64>,
}

/// Threshold order per system for one method, fitted against the gap in
/// the method's own rescaled variable. Systems that never reach the target
/// are reported and left out of the fit.
pub fn scaling_for_method(
    systems: &[PreparedSystem],
    method: Method,
    settings: &SweepSettings,
    criterion: Criterion,
    mode: ThresholdMode,
) -> Result<ScalingResult> {
    let mut points = Vec::new();
    for sys in systems {
        let sweep_points = sweep(sys, method, settings)?;
        points.push(ScalingPoint {
            system: sys.name.clone(),
            gap: sys.gap(),
            rescaled_gap: rescaled_gap(sys, method, settings)?,
            order: threshold_order(&sweep_points, criterion, mode, settings.order_max),
        });
    }
    let data: Vec<(f64, f64)> =
        points.iter().filter_map(|p| p.order.map(|o| (p.rescaled_gap, o as f64))).collect();
    let slope = fit_slope(&data).ok();
    Ok(ScalingResult { method, points, slope })
}

pub fn scaling_fit(cfg: &Config, cap: Option<usize>) -> Result<Vec<ScalingResult>> {
    let sc = &cfg.scaling;
    let systems = PreparedSystem::load_all(cfg)?;
    if systems.len() < 2 {
        return Err(config_err("scaling needs at least two systems"));
    }
    let settings = SweepSettings::from_config(cfg)?.with_order_max(cap.unwrap_or(sc.max_order));
    let criterion = Criterion::Fidelity(sc.fidelity);
    cfg.methods()?
        .into_iter()
        .map(|m| scaling_for_method(&systems, m, &settings, criterion, sc.mode.into()))
        .collect()
}

pub fn write_scaling<W: Write>(results: &[ScalingResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["method", "system", "gap", "rescaled_gap", "order", "slope"])?;
    for r in results {
        let slope = r.slope.map_or("-".into(), |s| format!("{s:.6}"));
        for p in &r.points {
            w.write_record([
                r.method.name().to_string(),
                p.system.clone(),
                fmt(p.gap),
                fmt(p.rescaled_gap),
                p.order.map_or("-".into(), |o| o.to_string()),
                slope.clone(),
            ])?;
        }
    }
    w.flush().map_err(|e| BenchError::io("<csv>", e))?;
    Ok(())
}
