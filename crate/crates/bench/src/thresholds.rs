//! Smallest order at which a sweep meets an accuracy target.

use std::fmt;
use std::io::Write;

use wallcheb::poly::Method;

use crate::config::{Config, MetricKind, ThresholdModeValue};
use crate::error::{BenchError, Result};
use crate::runner::{sweep_all, SweepPoint, SweepSettings};
use crate::system::PreparedSystem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// `|E - E_0| < tol`.
    EnergyError(f64),
    /// `f >= target`.
    Fidelity(f64),
}

impl Criterion {
    pub fn met(&self, p: &SweepPoint) -> bool {
        if !p.usable() {
            return false;
        }
        match *self {
            Criterion::EnergyError(tol) => p.energy_error.abs() < tol,
            Criterion::Fidelity(f) => p.fidelity >= f,
        }
    }

    pub fn from_config(metric: MetricKind, energy_tol: f64, fidelity: f64) -> Self {
        match metric {
            MetricKind::Energy => Criterion::EnergyError(energy_tol),
            MetricKind::Fidelity => Criterion::Fidelity(fidelity),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::EnergyError(t) => write!(f, "energy_error<{t}"),
            Criterion::Fidelity(v) => write!(f, "fidelity>={v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdMode {
    /// First order meeting the criterion.
    #[default]
    FirstHit,
    /// First order from which every later swept order up to the cap meets it.
    Sustained,
}

impl From<ThresholdModeValue> for ThresholdMode {
    fn from(v: ThresholdModeValue) -> Self {
        match v {
            ThresholdModeValue::FirstHit => ThresholdMode::FirstHit,
            ThresholdModeValue::Sustained => ThresholdMode::Sustained,
        }
    }
}

/// Minimal order among `points` (one system, one method) with `order <= cap`,
/// or `None` when the cap is hit.
pub fn threshold_order(points: &[SweepPoint], criterion: Criterion, mode: ThresholdMode, cap: usize) -> Option<usize> {
    let mut pts: Vec<&SweepPoint> = points.iter().filter(|p| p.order <= cap).collect();
    pts.sort_by_key(|p| p.order);
    match mode {
        ThresholdMode::FirstHit => pts.iter().find(|p| criterion.met(p)).map(|p| p.order),
        ThresholdMode::Sustained => {
            let mut best = None;
            for p in pts.iter().rev() {
                if criterion.met(p) {
                    best = Some(p.order);
                } else {
                    break;
                }
            }
            best
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdRow {
    pub system: String,
    pub method: Method,
    pub s_policy: String,
    pub criterion: Criterion,
    pub mode: ThresholdMode,
    pub order: Option<usize>,
}

impl ThresholdRow {
    pub fn order_label(&self) -> String {
        self.order.map_or("-".into(), |o| o.to_string())
    }
}

/// Groups sweep points by (system, method) in first-appearance order and
/// takes the threshold of each group.
pub fn threshold_table(
    points: &[SweepPoint],
    s_policy: &str,
    criterion: Criterion,
    mode: ThresholdMode,
    cap: usize,
) -> Vec<ThresholdRow> {
    let mut keys: Vec<(String, Method)> = Vec::new();
    for p in points {
        let k = (p.system.clone(), p.method);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(system, method)| {
            let group: Vec<SweepPoint> =
                points.iter().filter(|p| p.system == system && p.method == method).cloned().collect();
            ThresholdRow {
                order: threshold_order(&group, criterion, mode, cap),
                system,
                method,
                s_policy: s_policy.to_string(),
                criterion,
                mode,
            }
        })
        .collect()
}

/// Sweeps every configured system up to the threshold cap and tabulates.
pub fn threshold_search(cfg: &Config, cap: Option<usize>) -> Result<Vec<ThresholdRow>> {
    let t = &cfg.thresholds;
    let cap = cap.unwrap_or(t.max_order);
    let systems = PreparedSystem::load_all(cfg)?;
    let settings = SweepSettings::from_config(cfg)?.with_order_max(cap);
    let points = sweep_all(&systems, &cfg.methods()?, &settings, cfg.scenario.parallel)?;
    let criterion = Criterion::from_config(t.metric, t.energy_tol, t.fidelity);
    Ok(threshold_table(&points, &settings.s_choice.label(), criterion, t.mode.into(), cap))
}

pub fn write_thresholds<W: Write>(rows: &[ThresholdRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["system", "method", "s_policy", "criterion", "mode", "order"])?;
    for r in rows {
        let mode = match r.mode {
            ThresholdMode::FirstHit => "first_hit",
            ThresholdMode::Sustained => "sustained",
        };
        w.write_record([
            r.system.clone(),
            r.method.name().into(),
            r.s_policy.clone(),
            r.criterion.to_string(),
            mode.into(),
            r.order_label(),
        ])?;
    }
    w.flush().map_err(|e| BenchError::io("<csv>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(order: usize, fidelity: f64) -> SweepPoint {
        SweepPoint {
            system: "s".into(),
            method: Method::WallCheb,
            order,
            repeats: 1,
            s_used: 0.0,
            r_used: 1.0,
            energy: 0.0,
            energy_error: 1.0 - fidelity,
            fidelity,
            fidelity_bound: 0.0,
            cumulative_success_prob: 1.0,
            status: "ok".into(),
        }
    }

    #[test]
    fn first_hit_and_sustained_differ_on_dips() {
        let pts: Vec<_> = [0.5, 0.9995, 0.98, 0.9992, 0.9999].iter().enumerate().map(|(i, &f)| pt(i + 1, f)).collect();
        let c = Criterion::Fidelity(0.999);
        assert_eq!(threshold_order(&pts, c, ThresholdMode::FirstHit, 150), Some(2));
        assert_eq!(threshold_order(&pts, c, ThresholdMode::Sustained, 150), Some(4));
        assert_eq!(threshold_order(&pts, c, ThresholdMode::FirstHit, 1), None);
    }

    #[test]
    fn failed_rows_never_count() {
        let mut p = pt(1, 1.0);
        p.status = "projected_out".into();
        assert_eq!(threshold_order(&[p], Criterion::Fidelity(0.5), ThresholdMode::FirstHit, 10), None);
    }
}
