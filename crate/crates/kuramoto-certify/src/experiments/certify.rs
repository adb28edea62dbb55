//! Batch certification of one (graph file, state file) pair: refine the
//! state to an equilibrium, classify it spectrally, evaluate the full
//! certificate chain, and check the two views agree.

use std::path::Path;

use kuramoto_sync::{
    full_report, normalize_phase, refine_equilibrium, residual, spectrum_with, CertificateReport,
    Graph, PhaseGauge, PhaseState, SpectrumReport,
};
use serde::Serialize;

use crate::config::Tolerances;
use crate::error::HarnessError;

#[derive(Debug, Clone, Serialize)]
pub struct CertifyOutput {
    pub graph_file: String,
    pub state_file: String,
    pub n: usize,
    pub mu: f64,
    pub mu_tilde: f64,
    pub initial_residual: f64,
    pub refined_residual: f64,
    pub gauge: PhaseGauge,
    pub spectrum: SpectrumReport,
    pub certificates: CertificateReport,
    /// Certificate entries a stable state would violate (empty unless the
    /// chain contradicts the spectral classification).
    pub violations: Vec<String>,
    pub consistent: bool,
}

/// Parses a state file: whitespace/newline-separated phases in radians,
/// `#` starts a comment.
pub fn parse_state_file(path: &Path) -> Result<PhaseState, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut theta = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| {
                HarnessError::Config(format!(
                    "{}:{}: bad phase value `{tok}`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            theta.push(v);
        }
    }
    if theta.is_empty() {
        return Err(HarnessError::Config(format!("{}: no phases found", path.display())));
    }
    Ok(PhaseState::new(theta))
}

pub fn run_certify(
    graph_path: &Path,
    state_path: &Path,
    tol: &Tolerances,
) -> Result<CertifyOutput, HarnessError> {
    let g = Graph::read_from_path(graph_path)
        .map_err(|e| HarnessError::Config(format!("{}: {e}", graph_path.display())))?;
    let s0 = parse_state_file(state_path)?;
    if s0.len() != g.n() {
        return Err(HarnessError::Config(format!(
            "state has {} phases but graph has {} nodes",
            s0.len(),
            g.n()
        )));
    }
    let initial_residual = residual(&g, &s0).expect("sizes match");
    let refined = refine_equilibrium(&g, &s0, tol.refine_tol.unwrap_or(1e-12))
        .map_err(|e| HarnessError::Numeric(e.to_string()))?;
    let refined_residual = residual(&g, &refined).expect("sizes match");
    let (normalized, gauge) = normalize_phase(&refined);

    let mut spec_opts = kuramoto_sync::spectral::SpectrumOptions::default();
    if let Some(z) = tol.zero_tol_per_node {
        spec_opts.zero_tol = Some(z * g.n() as f64);
    }
    let rep = spectrum_with(&g, &normalized, &spec_opts)
        .map_err(|e| HarnessError::Numeric(e.to_string()))?;
    let certificates =
        full_report(&g, &normalized).map_err(|e| HarnessError::Numeric(e.to_string()))?;
    let consistent = certificates.consistent_with(rep.classification);
    let violations = if consistent {
        Vec::new()
    } else {
        certificates.violations_when_stable().iter().map(|s| s.to_string()).collect()
    };
    let conn = g.connectivity().map_err(|e| HarnessError::Config(e.to_string()))?;

    Ok(CertifyOutput {
        graph_file: graph_path.display().to_string(),
        state_file: state_path.display().to_string(),
        n: g.n(),
        mu: conn.mu_f64(),
        mu_tilde: conn.mu_tilde_f64(),
        initial_residual,
        refined_residual,
        gauge,
        spectrum: rep,
        certificates,
        violations,
        consistent,
    })
}
