//! Scenario files: TOML with one table per concern, unknown keys rejected.

use std::path::{Path, PathBuf};

use gme_core::baths::BathParams;
use gme_core::hilbert::HilbertDims;
use gme_core::liouvillian::MasterEquationKind;
use gme_core::model::SystemParams;
use gme_core::system::HybridSystem;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    /// The message carries the line and column of the offending token.
    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },
    #[error("invalid value for `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error("unknown preset `{0}`; available: {list}", list = crate::presets::names().join(", "))]
    UnknownPreset(String),
}

fn invalid(field: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { field: field.to_string(), reason: reason.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    /// Dressed energies against one Hamiltonian parameter.
    Eigensweep,
    /// Cavity emission spectrum against `ω − ω_L`.
    Spectrum,
    /// Steady-state populations against `ω_L − ω_x`.
    DetuningSweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindSelection {
    Sme,
    Gme,
    Both,
}

impl KindSelection {
    /// GME first, matching the column order of the output tables.
    pub fn kinds(self) -> Vec<MasterEquationKind> {
        match self {
            KindSelection::Sme => vec![MasterEquationKind::Sme],
            KindSelection::Gme => vec![MasterEquationKind::Gme],
            KindSelection::Both => vec![MasterEquationKind::Gme, MasterEquationKind::Sme],
        }
    }
}

impl std::str::FromStr for KindSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sme" => Ok(Self::Sme),
            "gme" => Ok(Self::Gme),
            "both" => Ok(Self::Both),
            other => Err(format!("expected sme, gme or both, got `{other}`")),
        }
    }
}

/// Units of the grid values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridScale {
    /// Multiples of `ω_m`.
    #[default]
    OmegaM,
    /// Values used as given (meV, or dimensionless for `d0`).
    Absolute,
}

/// Hamiltonian parameter swept by an eigensweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    G,
    D0,
    OmegaM,
    OmegaX,
}

impl SweepParameter {
    pub fn label(self) -> &'static str {
        match self {
            SweepParameter::G => "g",
            SweepParameter::D0 => "d0",
            SweepParameter::OmegaM => "omega_m",
            SweepParameter::OmegaX => "omega_x",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: GridScale,
}

impl GridConfig {
    /// Evenly spaced values, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.start + step * i as f64).collect()
    }

    /// Grid values times `unit` when the scale is `omega_m`.
    pub fn scaled(&self, unit: f64) -> Vec<f64> {
        match self.scale {
            GridScale::OmegaM => self.values().into_iter().map(|v| v * unit).collect(),
            GridScale::Absolute => self.values(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigensweepConfig {
    pub parameter: SweepParameter,
    /// Excitation-number sectors to report; all when empty.
    #[serde(default)]
    pub sectors: Vec<usize>,
    /// Lowest levels reported per sector; all when absent.
    #[serde(default)]
    pub max_per_sector: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub task: Task,
    #[serde(default = "default_kind")]
    pub kind: KindSelection,
    /// Retained dressed levels.
    pub levels: usize,
    /// Divide each spectrum by its maximum magnitude.
    #[serde(default)]
    pub normalize: bool,
    pub system: SystemParams,
    #[serde(default)]
    pub baths: BathParams,
    pub dims: HilbertDims,
    pub grid: GridConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigensweep: Option<EigensweepConfig>,
}

fn default_kind() -> KindSelection {
    KindSelection::Both
}

/// Largest dressed basis the dense generator is allowed to reach.
pub const MAX_LEVELS: usize = 100;

impl ScenarioConfig {
    pub fn from_toml(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let cfg: Self =
            toml::from_str(text).map_err(|e| ConfigError::Parse { origin: origin.to_string(), message: e.to_string() })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml(&text, &path.display().to_string())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.system.validate().map_err(|e| field_error("system", e))?;
        self.baths.validate().map_err(|e| field_error("baths", e))?;
        HilbertDims::new(self.dims.n_ph, self.dims.n_vib).map_err(|e| invalid("dims", e.to_string()))?;
        let dim = self.dims.dim();
        if self.levels == 0 || self.levels > dim {
            return Err(invalid("levels", format!("must be in 1..={dim} for these cutoffs, got {}", self.levels)));
        }
        if self.task != Task::Eigensweep && self.levels > MAX_LEVELS {
            return Err(invalid("levels", format!("at most {MAX_LEVELS} for dense generators, got {}", self.levels)));
        }
        if self.grid.points == 0 {
            return Err(invalid("grid.points", "grid must not be empty"));
        }
        if !self.grid.start.is_finite() || !self.grid.stop.is_finite() {
            return Err(invalid("grid", "start and stop must be finite"));
        }
        match (self.task, &self.eigensweep) {
            (Task::Eigensweep, None) => {
                return Err(invalid("eigensweep", "required for task = \"eigensweep\""));
            }
            (Task::Eigensweep, Some(_)) => {}
            (_, Some(_)) => {
                return Err(invalid("eigensweep", "only valid for task = \"eigensweep\""));
            }
            (_, None) => {}
        }
        if self.task == Task::DetuningSweep {
            let lowest = self.system.omega_x + self.grid.scaled(self.system.omega_m).into_iter().fold(f64::INFINITY, f64::min);
            if lowest < 0.0 {
                return Err(invalid("grid", "laser frequency would become negative"));
            }
        }
        Ok(())
    }

    /// Dressed system for the configured parameters.
    pub fn hybrid_system(&self) -> gme_core::Result<HybridSystem> {
        HybridSystem::new(self.system, self.baths, self.dims, self.levels)
    }

    /// Spectrum detunings `ω − ω_L` in meV.
    pub fn detunings(&self) -> Vec<f64> {
        self.grid.scaled(self.system.omega_m)
    }

    /// Laser frequencies of a detuning sweep, `ω_x + grid` in meV.
    pub fn laser_frequencies(&self) -> Vec<f64> {
        self.grid.scaled(self.system.omega_m).into_iter().map(|d| self.system.omega_x + d).collect()
    }
}

/// Core validation messages start with the offending field name.
fn field_error(table: &str, e: gme_core::Error) -> ConfigError {
    match e {
        gme_core::Error::Config(msg) => match msg.split_once(' ') {
            Some((field, reason)) => invalid(&format!("{table}.{field}"), reason),
            None => invalid(table, msg),
        },
        other => invalid(table, other.to_string()),
    }
}
