//! Scenario configuration.
//!
//! The format is TOML: flat `key = value` lines under section headers. A
//! file holds one `[scenario]` section, optional `[method]`,
//! `[thresholds]`, `[scaling]` and `[plots]` sections, and one
//! `[system.<name>]` section per Hamiltonian:
//!
//! ```toml
//! [scenario]
//! methods = ["wall_cheb", "eig_filter", "step", "ite"]
//! s_policy = "exact_e0"        # or "reference_energy", or a number
//! alpha_stretch = 1.1
//! order_min = 1
//! order_max = 100
//!
//! [system.u1]
//! kind = "hubbard"
//! sites = 2
//! u = 1.0
//! n_up = 1
//! n_down = 1
//!
//! [system."h2_r1.00"]
//! kind = "fcidump"
//! path = "fixtures/hydrogen/h2_r1.00.fcidump"
//! ```
//!
//! Relative fixture paths resolve against the config file's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use wallcheb::engine::SPolicy;
use wallcheb::hamiltonian::{Boundary, DEFAULT_ALPHA_STRETCH};
use wallcheb::poly::{Method, DEFAULT_TRUNCATION_BUDGET};

use crate::error::{config_err, BenchError, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub scenario: ScenarioSection,
    #[serde(default)]
    pub method: MethodSection,
    #[serde(default)]
    pub thresholds: ThresholdSection,
    #[serde(default)]
    pub scaling: ScalingSection,
    #[serde(default)]
    pub plots: PlotSection,
    #[serde(default)]
    pub system: BTreeMap<String, SystemSpec>,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    #[serde(default = "default_name")]
    pub name: String,
    pub methods: Vec<String>,
    #[serde(default = "default_policy")]
    pub s_policy: SPolicyValue,
    #[serde(default = "default_alpha")]
    pub alpha_stretch: f64,
    /// 0 adds an unprojected reference row per method.
    #[serde(default = "one")]
    pub order_min: usize,
    pub order_max: usize,
    #[serde(default = "one")]
    pub repeats: usize,
    #[serde(default)]
    pub s_update: SUpdate,
    #[serde(default)]
    pub parallel: bool,
}

fn default_name() -> String {
    "scenario".into()
}
fn default_policy() -> SPolicyValue {
    SPolicyValue::Named("exact_e0".into())
}
fn default_alpha() -> f64 {
    DEFAULT_ALPHA_STRETCH
}
fn one() -> usize {
    1
}

/// `"exact_e0"`, `"reference_energy"` or an explicit energy.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum SPolicyValue {
    Named(String),
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SChoice {
    ExactGround,
    ReferenceEnergy,
    Explicit(f64),
}

impl SChoice {
    pub fn label(&self) -> String {
        match self {
            SChoice::ExactGround => "exact_e0".into(),
            SChoice::ReferenceEnergy => "reference_energy".into(),
            SChoice::Explicit(v) => format!("{v}"),
        }
    }
}

impl SPolicyValue {
    pub fn resolve(&self) -> Result<SChoice> {
        match self {
            SPolicyValue::Value(v) if v.is_finite() => Ok(SChoice::Explicit(*v)),
            SPolicyValue::Value(v) => Err(config_err(format!("s_policy value {v} is not finite"))),
            SPolicyValue::Named(s) => match s.as_str() {
                "exact_e0" => Ok(SChoice::ExactGround),
                "reference_energy" => Ok(SChoice::ReferenceEnergy),
                other => Err(config_err(format!("unknown s_policy {other:?}"))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SUpdate {
    #[default]
    Never,
    EveryRepeat,
}

impl From<SUpdate> for SPolicy {
    fn from(v: SUpdate) -> Self {
        match v {
            SUpdate::Never => SPolicy::Never,
            SUpdate::EveryRepeat => SPolicy::EveryRepeat,
        }
    }
}

/// Per-method knobs shared by every system in the file.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodSection {
    /// Sign-approximation error target of the step polynomial.
    #[serde(default = "default_step_eps")]
    pub step_eps: f64,
    /// Gap guess for the step threshold and width; the exact gap if unset.
    pub step_gap_guess: Option<f64>,
    /// Filter width in rescaled units; the exact rescaled gap if unset.
    pub filter_delta: Option<f64>,
    #[serde(default = "default_budget")]
    pub ite_budget: f64,
}

fn default_step_eps() -> f64 {
    1e-3
}
fn default_budget() -> f64 {
    DEFAULT_TRUNCATION_BUDGET
}

impl Default for MethodSection {
    fn default() -> Self {
        Self { step_eps: default_step_eps(), step_gap_guess: None, filter_delta: None, ite_budget: default_budget() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdModeValue {
    #[default]
    FirstHit,
    Sustained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    #[default]
    Energy,
    Fidelity,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdSection {
    #[serde(default)]
    pub metric: MetricKind,
    #[serde(default = "default_energy_tol")]
    pub energy_tol: f64,
    #[serde(default = "default_fidelity")]
    pub fidelity: f64,
    #[serde(default)]
    pub mode: ThresholdModeValue,
    #[serde(default = "default_cap")]
    pub max_order: usize,
}

fn default_energy_tol() -> f64 {
    1e-3
}
fn default_fidelity() -> f64 {
    0.999
}
fn default_cap() -> usize {
    150
}

impl Default for ThresholdSection {
    fn default() -> Self {
        Self {
            metric: MetricKind::default(),
            energy_tol: default_energy_tol(),
            fidelity: default_fidelity(),
            mode: ThresholdModeValue::default(),
            max_order: default_cap(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingSection {
    #[serde(default = "default_fidelity")]
    pub fidelity: f64,
    #[serde(default = "default_scaling_mode")]
    pub mode: ThresholdModeValue,
    #[serde(default = "default_scaling_cap")]
    pub max_order: usize,
}

fn default_scaling_mode() -> ThresholdModeValue {
    ThresholdModeValue::Sustained
}
fn default_scaling_cap() -> usize {
    400
}

impl Default for ScalingSection {
    fn default() -> Self {
        Self { fidelity: default_fidelity(), mode: default_scaling_mode(), max_order: default_scaling_cap() }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotSection {
    /// Wall-Chebyshev orders drawn on `[-1.1, 1.1]`.
    #[serde(default = "default_plot_orders")]
    pub orders: Vec<usize>,
    #[serde(default = "default_plot_points")]
    pub points: usize,
    /// System used for the projector bar charts; the first one if unset.
    pub barchart_system: Option<String>,
    #[serde(default = "default_bar_order")]
    pub barchart_order: usize,
    /// Overlap grid size of the success-probability curves.
    #[serde(default = "default_curve_points")]
    pub curve_points: usize,
    /// Order of the two-level success-probability and projector-shape toy.
    #[serde(default = "default_curve_order")]
    pub curve_order: usize,
    /// Overestimate of `S` in units of the gap for the toy curves.
    #[serde(default = "default_curve_offset")]
    pub curve_offset: f64,
}

fn default_plot_orders() -> Vec<usize> {
    vec![1, 2, 5, 10, 20]
}
fn default_plot_points() -> usize {
    441
}
fn default_bar_order() -> usize {
    10
}
fn default_curve_points() -> usize {
    100
}
fn default_curve_order() -> usize {
    6
}
fn default_curve_offset() -> f64 {
    0.5
}

impl Default for PlotSection {
    fn default() -> Self {
        Self {
            orders: default_plot_orders(),
            points: default_plot_points(),
            barchart_system: None,
            barchart_order: default_bar_order(),
            curve_points: default_curve_points(),
            curve_order: default_curve_order(),
            curve_offset: default_curve_offset(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSpec {
    Hubbard {
        sites: usize,
        #[serde(default = "unit_hopping")]
        t: f64,
        u: f64,
        n_up: usize,
        n_down: usize,
        #[serde(default)]
        boundary: BoundaryValue,
    },
    Fcidump {
        path: PathBuf,
        n_alpha: Option<usize>,
        n_beta: Option<usize>,
        /// Accept a sector that disagrees with the header.
        #[serde(default)]
        override_sector: bool,
    },
}

fn unit_hopping() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryValue {
    #[default]
    Open,
    Periodic,
}

impl From<BoundaryValue> for Boundary {
    fn from(b: BoundaryValue) -> Self {
        match b {
            BoundaryValue::Open => Boundary::Open,
            BoundaryValue::Periodic => Boundary::Periodic,
        }
    }
}

impl Config {
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: Config =
            toml::from_str(text).map_err(|source| BenchError::ConfigSyntax { path: base_dir.to_path_buf(), source })?;
        cfg.base_dir = base_dir.to_path_buf();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let mut cfg: Config =
            toml::from_str(&text).map_err(|source| BenchError::ConfigSyntax { path: path.to_path_buf(), source })?;
        cfg.base_dir = dir.to_path_buf();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn methods(&self) -> Result<Vec<Method>> {
        self.scenario
            .methods
            .iter()
            .map(|m| m.parse::<Method>().map_err(|_| config_err(format!("unknown method {m:?}"))))
            .collect()
    }

    pub fn s_choice(&self) -> Result<SChoice> {
        self.scenario.s_policy.resolve()
    }

    pub fn orders(&self) -> Vec<usize> {
        (self.scenario.order_min..=self.scenario.order_max).collect()
    }

    pub fn resolve_path(&self, p: &Path) -> PathBuf {
        if p.is_absolute() { p.to_path_buf() } else { self.base_dir.join(p) }
    }

    fn validate(&self) -> Result<()> {
        let sc = &self.scenario;
        if sc.methods.is_empty() {
            return Err(config_err("scenario.methods is empty"));
        }
        self.methods()?;
        self.s_choice()?;
        if sc.order_min > sc.order_max {
            return Err(config_err(format!("empty order sweep {}..={}", sc.order_min, sc.order_max)));
        }
        if sc.repeats == 0 {
            return Err(config_err("scenario.repeats must be >= 1"));
        }
        if !(sc.alpha_stretch >= 1.0) {
            return Err(config_err("scenario.alpha_stretch must be >= 1"));
        }
        if self.system.is_empty() {
            return Err(config_err("no [system.<name>] sections"));
        }
        for (name, sys) in &self.system {
            if let SystemSpec::Fcidump { path, .. } = sys {
                let full = self.resolve_path(path);
                if !full.is_file() {
                    return Err(config_err(format!("system {name}: file {} not found", full.display())));
                }
            }
        }
        if let Some(name) = &self.plots.barchart_system {
            if !self.system.contains_key(name) {
                return Err(config_err(format!("plots.barchart_system {name:?} is not a configured system")));
            }
        }
        if self.thresholds.max_order == 0 || self.scaling.max_order == 0 {
            return Err(config_err("max_order must be >= 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[scenario]
methods = ["wall_cheb", "ite"]
order_max = 10

[system.u1]
kind = "hubbard"
sites = 2
u = 1.0
n_up = 1
n_down = 1
"#;

    #[test]
    fn parses_minimal() {
        let c = Config::parse(MINIMAL, Path::new(".")).unwrap();
        assert_eq!(c.methods().unwrap(), vec![Method::WallCheb, Method::Ite]);
        assert_eq!(c.s_choice().unwrap(), SChoice::ExactGround);
        assert_eq!(c.orders().len(), 10);
        assert_eq!(c.thresholds.max_order, 150);
        assert!(matches!(c.system["u1"], SystemSpec::Hubbard { t, .. } if t == 1.0));
    }

    #[test]
    fn rejects_empty_sweep_and_methods() {
        let empty = MINIMAL.replace("order_max = 10", "order_min = 5\norder_max = 4");
        assert!(matches!(Config::parse(&empty, Path::new(".")), Err(BenchError::Config(_))));
        let none = MINIMAL.replace(r#"["wall_cheb", "ite"]"#, "[]");
        assert!(Config::parse(&none, Path::new(".")).is_err());
        let bad = MINIMAL.replace(r#""ite""#, r#""qpe""#);
        assert!(Config::parse(&bad, Path::new(".")).is_err());
    }

    #[test]
    fn explicit_estimate_and_missing_file() {
        let s = MINIMAL.replace("order_max = 10", "order_max = 10\ns_policy = 0.0");
        assert_eq!(Config::parse(&s, Path::new(".")).unwrap().s_choice().unwrap(), SChoice::Explicit(0.0));
        let f = format!("{MINIMAL}\n[system.h2]\nkind = \"fcidump\"\npath = \"nope.fcidump\"\n");
        assert!(Config::parse(&f, Path::new(".")).is_err());
    }
}
