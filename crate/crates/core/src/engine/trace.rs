use crate::poly::Method;

/// Step probabilities below this terminate a run.
pub const PROJECTED_OUT_CUTOFF: f64 = 1e-28;

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    /// 1-based index over the whole run.
    pub step: usize,
    /// 0-based repeat (wall-Chebyshev) or 0.
    pub repeat: usize,
    /// Node `a_nu`, time step `tau` or polynomial degree.
    pub parameter: f64,
    /// Postselection probability of this step.
    pub probability: f64,
    pub cumulative_probability: f64,
    pub energy: f64,
    pub fidelity: Option<f64>,
    pub s: f64,
    pub r: f64,
    /// Hamiltonian applications so far.
    pub applications: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceEvent {
    SUpdated { repeat: usize, old: f64, new: f64 },
    /// The estimate fell below the exact ground energy.
    SBelowGround { repeat: usize, s: f64, ground: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TraceStatus {
    Completed,
    /// The state was annihilated at this step; the returned state is the
    /// last one with nonzero norm.
    ProjectedOut { step: usize },
    /// The step polynomial missed its error target; the run still applied
    /// the best fit of the requested degree.
    InsufficientDegree { achieved_eps: f64, target_eps: f64 },
}

impl TraceStatus {
    pub fn label(&self) -> &'static str {
        match self {
            TraceStatus::Completed => "ok",
            TraceStatus::ProjectedOut { .. } => "projected_out",
            TraceStatus::InsufficientDegree { .. } => "insufficient_degree",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionTrace {
    pub method: Method,
    pub records: Vec<StepRecord>,
    pub events: Vec<TraceEvent>,
    pub status: TraceStatus,
}

impl ProjectionTrace {
    pub fn new(method: Method) -> Self {
        Self { method, records: Vec::new(), events: Vec::new(), status: TraceStatus::Completed }
    }

    pub fn cumulative_probability(&self) -> f64 {
        self.records.last().map_or(1.0, |r| r.cumulative_probability)
    }

    pub fn final_energy(&self) -> Option<f64> {
        self.records.last().map(|r| r.energy)
    }

    pub fn final_fidelity(&self) -> Option<f64> {
        self.records.last().and_then(|r| r.fidelity)
    }

    pub fn applications(&self) -> usize {
        self.records.last().map_or(0, |r| r.applications)
    }

    pub fn is_completed(&self) -> bool {
        self.status == TraceStatus::Completed
    }

    pub fn flagged_below_ground(&self) -> bool {
        self.events.iter().any(|e| matches!(e, TraceEvent::SBelowGround { .. }))
    }
}
