//! Scenario execution and CSV output.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::Config;
use crate::error::{BenchError, Result};
use crate::runner::{sweep_all, SweepPoint, SweepSettings};
use crate::system::PreparedSystem;

pub const SCENARIO_HEADER: [&str; 12] = [
    "system",
    "method",
    "order",
    "repeats",
    "S_used",
    "R_used",
    "energy",
    "energy_error",
    "fidelity",
    "fidelity_bound",
    "cumulative_success_prob",
    "status",
];

pub fn run_scenario(cfg: &Config, order_max: Option<usize>) -> Result<Vec<SweepPoint>> {
    let systems = PreparedSystem::load_all(cfg)?;
    let mut settings = SweepSettings::from_config(cfg)?;
    if let Some(m) = order_max {
        settings = settings.with_order_max(m);
    }
    sweep_all(&systems, &cfg.methods()?, &settings, cfg.scenario.parallel)
}

pub fn write_points<W: Write>(points: &[SweepPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCENARIO_HEADER)?;
    for p in points {
        w.write_record([
            p.system.clone(),
            p.method.name().to_string(),
            p.order.to_string(),
            p.repeats.to_string(),
            fmt(p.s_used),
            fmt(p.r_used),
            fmt(p.energy),
            fmt(p.energy_error),
            fmt(p.fidelity),
            fmt(p.fidelity_bound),
            fmt(p.cumulative_success_prob),
            p.status.clone(),
        ])?;
    }
    w.flush().map_err(|e| BenchError::io("<csv>", e))?;
    Ok(())
}

/// Shortest scientific form that parses back to the same `f64`.
pub(crate) fn fmt(v: f64) -> String {
    if v.is_nan() { "nan".into() } else { format!("{v:e}") }
}

pub fn write_csv_file(points: &[SweepPoint], path: &Path) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| BenchError::io(path, e))?;
    write_points(points, std::io::BufWriter::new(f))
}

/// Runs the scenario and writes `<out>/<name>.csv`.
pub fn run_to_dir(cfg: &Config, out: &Path, order_max: Option<usize>) -> Result<PathBuf> {
    std::fs::create_dir_all(out).map_err(|e| BenchError::io(out, e))?;
    let points = run_scenario(cfg, order_max)?;
    let path = out.join(format!("{}.csv", cfg.scenario.name));
    write_csv_file(&points, &path)?;
    Ok(path)
}

/// Replays the wall-Chebyshev postselections of every swept order with
/// random measurement outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingRow {
    pub system: String,
    pub order: usize,
    pub expected: f64,
    pub summary: wallcheb::engine::SamplingSummary,
}

pub fn sampling_demo(cfg: &Config, seed: u64, shots: usize, order_max: Option<usize>) -> Result<Vec<SamplingRow>> {
    use wallcheb::engine::{apply_wall_cheb, sample_postselection, WallChebSpec};

    let mut settings = SweepSettings::from_config(cfg)?;
    if let Some(m) = order_max {
        settings = settings.with_order_max(m);
    }
    let mut rows = Vec::new();
    for sys in PreparedSystem::load_all(cfg)? {
        let window = sys.window(sys.estimate(settings.s_choice), settings.alpha_stretch)?;
        let problem = sys.problem();
        for m in settings.order_min.div_ceil(settings.repeats).max(1)..=settings.order_max / settings.repeats {
            let spec = WallChebSpec::new(m).with_repeats(settings.repeats, settings.s_update);
            let (_, trace) = apply_wall_cheb(&problem, &window, &spec, &sys.reference)?;
            // one stream per order, so adding orders leaves earlier rows alone
            let summary = sample_postselection(&trace, shots, seed.wrapping_add(m as u64));
            rows.push(SamplingRow {
                system: sys.name.clone(),
                order: m * settings.repeats,
                expected: trace.cumulative_probability(),
                summary,
            });
        }
    }
    Ok(rows)
}

pub fn write_sampling<W: Write>(rows: &[SamplingRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["system", "order", "shots", "successes", "success_rate", "expected", "boxes_executed"])?;
    for r in rows {
        w.write_record([
            r.system.clone(),
            r.order.to_string(),
            r.summary.shots.to_string(),
            r.summary.successes.to_string(),
            fmt(r.summary.success_rate()),
            fmt(r.expected),
            r.summary.boxes_executed.to_string(),
        ])?;
    }
    w.flush().map_err(|e| BenchError::io("<csv>", e))?;
    Ok(())
}
