//! Experiment configuration: JSON config files plus CLI flag overrides.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::HarnessError;

/// Which experiment a config file is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Figure1,
    RazorEdge,
    PatternSearch,
    Basin,
    Certify,
    RegionScan,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NRange {
    pub min: u64,
    pub max: u64,
}

/// Optional overrides for module defaults.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Newton target on the rhs ∞-norm (default 1e−12).
    pub refine_tol: Option<f64>,
    /// Zero-eigenvalue tolerance per node (default 1e−8, scaled by n).
    pub zero_tol_per_node: Option<f64>,
    /// Sync requires ρ₁ > 1 − gap (default gap 1e−6).
    pub sync_rho1_gap: Option<f64>,
    /// Sync requires rhs ∞-norm below this (default 1e−8).
    pub sync_residual: Option<f64>,
    /// Early exit at any equilibrium below this residual (default 1e−8).
    pub equilibrium_residual: Option<f64>,
    /// Fixed RK4 step (default 0.01).
    pub dt: Option<f64>,
    /// Basin integration horizon (default 1e3).
    pub t_end: Option<f64>,
}

/// JSON config mirroring the CLI surface. Unknown keys are rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub experiment: Option<ExperimentKind>,
    pub n_range: Option<NRange>,
    pub n: Option<u64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub output_path: Option<PathBuf>,
    pub budget: Option<usize>,
    pub m_max: Option<usize>,
    pub mu_tilde: Option<f64>,
    pub grid_step: Option<f64>,
    pub graph_file: Option<PathBuf>,
    pub state_file: Option<PathBuf>,
    pub csv_output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Loads a config file and checks it targets the expected experiment.
    pub fn load(path: &Path, expected: ExperimentKind) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        if let Some(kind) = cfg.experiment {
            if kind != expected {
                return Err(HarnessError::Config(format!(
                    "{}: config is for {kind:?}, not this subcommand",
                    path.display()
                )));
            }
        }
        Ok(cfg)
    }

    /// Loads the config when a path is given, otherwise an empty default.
    pub fn load_opt(path: Option<&PathBuf>, expected: ExperimentKind) -> Result<Self, HarnessError> {
        match path {
            Some(p) => Self::load(p, expected),
            None => Ok(ExperimentConfig::default()),
        }
    }
}

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_T_END: f64 = 1e3;
pub const DEFAULT_PATTERN_BUDGET: usize = 2000;
pub const DEFAULT_FIGURE1_BUDGET: usize = 200;
pub const DEFAULT_REGION_GRID_STEP: f64 = 1e-3;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_keys() {
        let text = r#"{ "experiment": "basin", "bogus": 1 }"#;
        let err = serde_json::from_str::<ExperimentConfig>(text).unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn parses_full_config() {
        let text = r#"{
            "experiment": "razor_edge",
            "m_max": 8,
            "trials": 50,
            "seed": 42,
            "tolerances": { "dt": 0.02 },
            "output_path": "out.json"
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.experiment, Some(ExperimentKind::RazorEdge));
        assert_eq!(cfg.m_max, Some(8));
        assert_eq!(cfg.tolerances.dt, Some(0.02));
    }
}
