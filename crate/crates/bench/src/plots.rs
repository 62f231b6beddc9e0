//! Plot-data files: two whitespace-separated columns per file, plus a CSV
//! holding every bar-chart column side by side.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use wallcheb::lcu::success_prob_curve;
use wallcheb::poly::{wall_cheb_coefficients, wall_cheb_nodes, Method};
use wallcheb::SpectralWindow;

use crate::config::Config;
use crate::error::{config_err, BenchError, Result};
use crate::runner::{projector_values, SweepSettings};
use crate::scenario::fmt;
use crate::system::PreparedSystem;

/// `n` points spanning `[-1.1, 1.1]`.
pub fn plot_grid(n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|i| -1.1 + 2.2 * i as f64 / (n - 1) as f64).collect()
}

/// `G_m(x)` on the plot grid.
pub fn wall_function_curve(order: usize, points: usize) -> Vec<(f64, f64)> {
    let series = wall_cheb_coefficients(order);
    plot_grid(points).into_iter().map(|x| (x, series.eval(x))).collect()
}

pub fn two_columns(rows: &[(f64, f64)]) -> String {
    let mut s = String::new();
    for (x, y) in rows {
        let _ = writeln!(s, "{} {}", fmt(*x), fmt(*y));
    }
    s
}

/// Eigenbasis weights of the reference state before and after one
/// projector of each method.
#[derive(Debug, Clone, PartialEq)]
pub struct BarChart {
    pub energies: Vec<f64>,
    /// `|C_i|`.
    pub before: Vec<f64>,
    /// Per method: `|f(E_i) C_i|` and the same renormalized to unit norm.
    pub after: Vec<(Method, Vec<f64>, Vec<f64>)>,
}

pub fn barchart(sys: &PreparedSystem, methods: &[Method], order: usize, st: &SweepSettings) -> Result<BarChart> {
    let before: Vec<f64> = sys.reference.amplitudes().iter().map(|c| c.norm()).collect();
    let mut after = Vec::new();
    for &m in methods {
        let f = projector_values(sys, m, order, st)?;
        let raw: Vec<f64> = f.iter().zip(&before).map(|(f, c)| (f * c).abs()).collect();
        let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(config_err(format!("{m} annihilates the reference state of {}", sys.name)));
        }
        let normalized = raw.iter().map(|v| v / norm).collect();
        after.push((m, raw, normalized));
    }
    Ok(BarChart { energies: sys.energies().to_vec(), before, after })
}

impl BarChart {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["index".to_string(), "energy".into(), "before".into()];
        for (m, _, _) in &self.after {
            header.push(format!("{m}_raw"));
            header.push(format!("{m}_normalized"));
        }
        w.write_record(&header)?;
        for i in 0..self.energies.len() {
            let mut row = vec![i.to_string(), fmt(self.energies[i]), fmt(self.before[i])];
            for (_, raw, norm) in &self.after {
                row.push(fmt(raw[i]));
                row.push(fmt(norm[i]));
            }
            w.write_record(&row)?;
        }
        let bytes = w.into_inner().map_err(|e| BenchError::io("<csv>", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Two-level toy `{E_0, E_1} = {-1, 0}` in the window `[-1, 2]`, with `S`
/// exact and overestimated by `offset` gaps: projector shape against the
/// rescaled energy, and success probability against the initial overlap.
pub struct ToyCurves {
    pub shape_exact: Vec<(f64, f64)>,
    pub shape_over: Vec<(f64, f64)>,
    pub success_exact: Vec<(f64, f64)>,
    pub success_over: Vec<(f64, f64)>,
}

pub fn toy_curves(order: usize, offset: f64, grid: usize, points: usize) -> Result<ToyCurves> {
    let (e0, e1) = (-1.0, 0.0);
    let exact = SpectralWindow::from_range(e0, 3.0)?;
    let over = exact.with_estimate(e0 + offset * (e1 - e0))?;
    let c0: Vec<f64> = (1..=grid.max(1)).map(|k| k as f64 / grid.max(1) as f64).collect();
    let mut curves = Vec::new();
    for w in [&exact, &over] {
        let nodes = wall_cheb_nodes(order, w)?;
        let norm = nodes.product(e0).abs().max(1e-300);
        // scaled energy of the exact window on the x-axis for both shapes
        let shape = plot_grid(points)
            .into_iter()
            .map(|x| {
                let e = exact.estimate() + 0.5 * (x + 1.0) * exact.range();
                (x, nodes.product(e) / norm)
            })
            .collect::<Vec<_>>();
        let success = success_prob_curve(order, &nodes, e0, e1, &c0)?
            .into_iter()
            .map(|p| (p.c0, p.probability))
            .collect::<Vec<_>>();
        curves.push((shape, success));
    }
    let (shape_over, success_over) = curves.pop().expect("two windows");
    let (shape_exact, success_exact) = curves.pop().expect("two windows");
    Ok(ToyCurves { shape_exact, shape_over, success_exact, success_over })
}

fn write(path: PathBuf, text: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    std::fs::write(&path, text).map_err(|e| BenchError::io(&path, e))?;
    written.push(path);
    Ok(())
}

/// Writes every plot-data file into `out` and returns their paths.
pub fn emit_plots(cfg: &Config, out: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out).map_err(|e| BenchError::io(out, e))?;
    let p = &cfg.plots;
    let mut written = Vec::new();
    for &m in &p.orders {
        if m == 0 {
            return Err(config_err("plot orders must be >= 1"));
        }
        write(out.join(format!("wall_m{m}.dat")), &two_columns(&wall_function_curve(m, p.points)), &mut written)?;
    }

    let name = p.barchart_system.clone().or_else(|| cfg.system.keys().next().cloned());
    if let Some(name) = name {
        let sys = PreparedSystem::from_spec(&name, &cfg.system[&name], cfg)?;
        let st = SweepSettings::from_config(cfg)?;
        let chart = barchart(&sys, &cfg.methods()?, p.barchart_order, &st)?;
        let idx = |v: &[f64]| v.iter().enumerate().map(|(i, y)| (i as f64, *y)).collect::<Vec<_>>();
        write(out.join("barchart_before.dat"), &two_columns(&idx(&chart.before)), &mut written)?;
        for (m, _, norm) in &chart.after {
            write(out.join(format!("barchart_{m}.dat")), &two_columns(&idx(norm)), &mut written)?;
        }
        write(out.join("barchart.csv"), &chart.to_csv()?, &mut written)?;
    }

    let toy = toy_curves(p.curve_order, p.curve_offset, p.curve_points, p.points)?;
    write(out.join("projector_exact.dat"), &two_columns(&toy.shape_exact), &mut written)?;
    write(out.join("projector_over.dat"), &two_columns(&toy.shape_over), &mut written)?;
    write(out.join("success_exact.dat"), &two_columns(&toy.success_exact), &mut written)?;
    write(out.join("success_over.dat"), &two_columns(&toy.success_over), &mut written)?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor_on_grid() {
        let curve = wall_function_curve(5, 441);
        let (x, y) = curve[20];
        assert!((x + 1.0).abs() < 1e-14);
        assert!((y - 1.0).abs() < 1e-12);
        let series = wall_cheb_coefficients(5);
        assert!(curve.iter().all(|&(x, y)| y == series.eval(x)));
    }

    #[test]
    fn toy_success_curves() {
        let toy = toy_curves(6, 0.5, 20, 101).unwrap();
        assert!(toy.success_exact.windows(2).all(|w| w[1].1 >= w[0].1));
        for (a, b) in toy.success_exact.iter().zip(&toy.success_over) {
            if a.0 < 1.0 {
                assert!(b.1 < a.1);
            }
        }
    }
}
