use crate::error::{invalid, Result};
use crate::poly::{Method, DEFAULT_TRUNCATION_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SPolicy {
    #[default]
    Never,
    /// Replace `S` by the current energy after each repeat.
    EveryRepeat,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallChebSpec {
    pub order: usize,
    pub repeats: usize,
    pub s_update: SPolicy,
}

impl WallChebSpec {
    pub fn new(order: usize) -> Self {
        Self { order, repeats: 1, s_update: SPolicy::Never }
    }

    pub fn with_repeats(mut self, repeats: usize, s_update: SPolicy) -> Self {
        self.repeats = repeats;
        self.s_update = s_update;
        self
    }
}

/// `R_l((H - shift)/scale; delta)`; `scale` is normally `alpha + |shift|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    pub half_degree: usize,
    pub delta: f64,
    pub shift: f64,
    pub scale: f64,
}

/// `(1 - S((H - threshold)/scale))/2` with `S` the fitted sign polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSpec {
    pub degree: usize,
    pub delta: f64,
    pub eps: f64,
    pub threshold: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IteTarget {
    /// Total imaginary time (in units of the rescaled Hamiltonian).
    Time(f64),
    /// Stop once the fidelity reaches this value; needs the exact ground state.
    Fidelity(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IteStep {
    /// `I_0(tau) - 2 I_1(tau) T_1` with `tau` the largest step whose
    /// truncation error stays within `budget`.
    FirstOrder { budget: f64 },
    /// Jacobi-Anger series truncated at order `q` with step `tau`.
    Truncated { tau: f64, q: usize },
}

impl Default for IteStep {
    fn default() -> Self {
        IteStep::FirstOrder { budget: DEFAULT_TRUNCATION_BUDGET }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IteSpec {
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub target: IteTarget,
    pub step: IteStep,
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProjectorSpec {
    WallCheb(WallChebSpec),
    EigFilter(FilterSpec),
    Step(StepSpec),
    Ite(IteSpec),
}

impl ProjectorSpec {
    pub fn method(&self) -> Method {
        match self {
            ProjectorSpec::WallCheb(_) => Method::WallCheb,
            ProjectorSpec::EigFilter(_) => Method::EigFilter,
            ProjectorSpec::Step(_) => Method::Step,
            ProjectorSpec::Ite(_) => Method::Ite,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: f64, what: &str| {
            if v.is_finite() { Ok(()) } else { Err(invalid(format!("{what} must be finite"))) }
        };
        match *self {
            ProjectorSpec::WallCheb(w) => {
                if w.order == 0 || w.repeats == 0 {
                    return Err(invalid("wall-Chebyshev needs order >= 1 and repeats >= 1"));
                }
            }
            ProjectorSpec::EigFilter(f) => {
                if f.half_degree == 0 {
                    return Err(invalid("filter half-degree must be >= 1"));
                }
                if !(f.delta > 0.0 && f.delta < 1.0) {
                    return Err(invalid(format!("filter delta must lie in (0, 1), got {}", f.delta)));
                }
                finite(f.shift, "filter shift")?;
                if !(f.scale > 0.0) {
                    return Err(invalid("filter scale must be positive"));
                }
            }
            ProjectorSpec::Step(s) => {
                if s.degree < 3 {
                    return Err(invalid("step degree must be >= 3"));
                }
                if !(s.delta > 0.0 && s.delta < 1.0) || !(s.eps > 0.0) {
                    return Err(invalid("step needs delta in (0, 1) and eps > 0"));
                }
                finite(s.threshold, "step threshold")?;
                if !(s.scale > 0.0) {
                    return Err(invalid("step scale must be positive"));
                }
            }
            ProjectorSpec::Ite(i) => {
                if !(i.lambda_plus > i.lambda_minus) {
                    return Err(invalid("ITE needs lambda_plus > lambda_minus"));
                }
                match i.target {
                    IteTarget::Time(t) if !(t > 0.0) => return Err(invalid("ITE time must be positive")),
                    IteTarget::Fidelity(f) if !(f > 0.0 && f <= 1.0) => {
                        return Err(invalid("ITE fidelity target must lie in (0, 1]"))
                    }
                    _ => {}
                }
                match i.step {
                    IteStep::FirstOrder { budget } if !(budget > 0.0 && budget < 0.5) => {
                        return Err(invalid("ITE truncation budget must lie in (0, 0.5)"))
                    }
                    IteStep::Truncated { tau, q } if !(tau > 0.0) || q == 0 => {
                        return Err(invalid("ITE step needs tau > 0 and q >= 1"))
                    }
                    _ => {}
                }
                if i.max_steps == 0 {
                    return Err(invalid("ITE max_steps must be >= 1"));
                }
            }
        }
        Ok(())
    }
}
