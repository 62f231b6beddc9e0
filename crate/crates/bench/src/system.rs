//! Turning a configured system into the exact data every run needs.
//!
//! Sweeps run in the eigenbasis of the sector Hamiltonian: the operator is
//! diagonal there, so each application is `O(dim)` and the ground state is a
//! basis vector. The LCU one-norm still comes from the Jordan-Wigner Pauli
//! sum so success probabilities carry the physical subnormalization.

use wallcheb::engine::{init_reference, DiagonalAction, OracleNorm, Problem, ReferenceChoice, StateVector};
use wallcheb::fcidump::{build_molecular_hamiltonian, jw_molecular, parse_fcidump, SectorCheck};
use wallcheb::hamiltonian::{
    build_hubbard, gershgorin_bounds, gershgorin_upper, jw_decompose, lowest_diagonal_row, DenseHermitian,
    HubbardParams, PauliSum, RowChoice, Spectrum,
};
use wallcheb::SpectralWindow;

use crate::config::{Config, SChoice, SystemSpec};
use crate::error::{config_err, BenchError, Result};

pub struct PreparedSystem {
    pub name: String,
    pub h: DenseHermitian,
    pub pauli: PauliSum,
    pub spectrum: Spectrum,
    /// `H` in its own eigenbasis.
    pub action: DiagonalAction,
    /// `e_0` in the eigenbasis.
    pub ground: StateVector,
    /// Lowest-diagonal determinant, in the eigenbasis.
    pub reference: StateVector,
    pub reference_energy: f64,
    pub oracle: OracleNorm,
    pub one_norm: f64,
    /// Gershgorin estimate from the highest-diagonal row.
    pub upper: f64,
    /// Lowest Gershgorin disc edge over all rows.
    pub lower: f64,
}

impl PreparedSystem {
    pub fn from_spec(name: &str, spec: &SystemSpec, cfg: &Config) -> Result<Self> {
        let (h, pauli) = match spec {
            SystemSpec::Hubbard { sites, t, u, n_up, n_down, boundary } => {
                let p = HubbardParams::new(*sites, *u, *n_up, *n_down)
                    .with_hopping(*t)
                    .with_boundary((*boundary).into());
                (build_hubbard(&p)?, jw_decompose(&p)?)
            }
            SystemSpec::Fcidump { path, n_alpha, n_beta, override_sector } => {
                let full = cfg.resolve_path(path);
                let file = std::fs::File::open(&full).map_err(|e| BenchError::io(&full, e))?;
                let ints = parse_fcidump(std::io::BufReader::new(file))?;
                let (ha, hb) = ints.sector()?;
                let check = if *override_sector { SectorCheck::Override } else { SectorCheck::Strict };
                let h = build_molecular_hamiltonian(&ints, n_alpha.unwrap_or(ha), n_beta.unwrap_or(hb), check)?;
                (h, jw_molecular(&ints)?)
            }
        };
        Self::new(name, h, pauli)
    }

    pub fn new(name: &str, h: DenseHermitian, pauli: PauliSum) -> Result<Self> {
        let spectrum = h.diagonalize();
        let dim = h.dim();
        let reference = init_reference(&h, &ReferenceChoice::LowestDiagonal)?;
        let reference_energy = h.diagonal(lowest_diagonal_row(&h));
        let reference = StateVector::new(spectrum.to_eigenbasis(reference.amplitudes()))?;
        let (lower, _) = gershgorin_bounds(&h);
        let upper = gershgorin_upper(&h, RowChoice::HighestDiagonal)?;
        Ok(Self {
            name: name.to_string(),
            action: DiagonalAction::new(spectrum.energies().to_vec()),
            ground: StateVector::basis(dim, 0)?,
            oracle: OracleNorm::from_pauli(&pauli),
            one_norm: pauli.one_norm(),
            reference,
            reference_energy,
            upper,
            lower,
            spectrum,
            pauli,
            h,
        })
    }

    pub fn load_all(cfg: &Config) -> Result<Vec<Self>> {
        cfg.system.iter().map(|(name, spec)| Self::from_spec(name, spec, cfg)).collect()
    }

    pub fn e0(&self) -> f64 {
        self.spectrum.ground_energy()
    }

    pub fn gap(&self) -> f64 {
        self.spectrum.gap()
    }

    pub fn energies(&self) -> &[f64] {
        self.spectrum.energies()
    }

    /// `|<Psi_0|reference>|`.
    pub fn c0(&self) -> f64 {
        self.ground.overlap(&self.reference).norm()
    }

    pub fn estimate(&self, choice: SChoice) -> f64 {
        match choice {
            SChoice::ExactGround => self.e0(),
            SChoice::ReferenceEnergy => self.reference_energy,
            SChoice::Explicit(v) => v,
        }
    }

    pub fn window(&self, estimate: f64, alpha_stretch: f64) -> Result<SpectralWindow> {
        SpectralWindow::new(estimate, self.upper, alpha_stretch).map_err(|e| {
            config_err(format!("system {}: window for S = {estimate}: {e}", self.name))
        })
    }

    pub fn problem(&self) -> Problem<'_> {
        Problem::new(&self.action, self.oracle).with_ground(&self.ground, self.e0())
    }
}
