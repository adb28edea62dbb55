//! Error types shared across the crate.

use thiserror::Error;

use crate::dynamics::Trajectory;
use crate::state::PhaseState;

/// Errors from graph construction, transformation, and file I/O.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph must have at least {min} nodes, got {got}")]
    TooSmall { min: usize, got: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("adjacency matrix is not symmetric at ({j}, {k})")]
    Asymmetric { j: usize, k: usize },
    #[error("diagonal entry {j} does not match the self-loop flag")]
    InconsistentDiagonal { j: usize },
    #[error("offset set must be nonempty")]
    EmptyOffsets,
    #[error("circulant offset {offset} out of range 1..={max} for n = {n}")]
    OffsetOutOfRange { offset: usize, max: usize, n: usize },
    #[error("twinning factor must be >= 1")]
    ZeroTau,
    #[error("operation requires a graph without self-loops")]
    HasSelfLoops,
    #[error("graph file parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Errors from evaluating or integrating the phase dynamics.
#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("state has {state} phases but graph has {graph} nodes")]
    SizeMismatch { state: usize, graph: usize },
    #[error("adaptive step size underflowed to {dt:.3e} at t = {t:.6}")]
    StepSizeUnderflow {
        dt: f64,
        t: f64,
        /// Trajectory accumulated up to the failure point.
        partial: Box<Trajectory>,
    },
    #[error("equilibrium refinement did not converge: residual {residual:.3e} after {iterations} iterations")]
    RefinementFailed {
        residual: f64,
        iterations: usize,
        /// Best iterate seen (smallest residual).
        best: Box<PhaseState>,
    },
    #[error("Newton system is singular (residual {residual:.3e})")]
    SingularNewtonSystem {
        residual: f64,
        best: Box<PhaseState>,
    },
    #[error("invalid integrator option: {0}")]
    InvalidOptions(String),
}

/// Errors from Jacobian assembly and eigenvalue classification.
#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("state has {state} phases but graph has {graph} nodes")]
    SizeMismatch { state: usize, graph: usize },
    #[error("state is not an equilibrium: rhs inf-norm {residual:.3e} >= {limit:.3e}")]
    NonEquilibrium { residual: f64, limit: f64 },
    #[error("symmetric eigensolver failed to converge")]
    EigensolverFailed,
}

/// Errors from moment computations.
#[derive(Debug, Error)]
pub enum MomentError {
    #[error("moment order must be >= 1, got {0}")]
    InvalidOrder(usize),
}

/// Errors from certificate evaluation.
#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("state has {state} phases but graph has {graph} nodes")]
    SizeMismatch { state: usize, graph: usize },
    #[error("node index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("certificate inapplicable: {0}")]
    Inapplicable(String),
    #[error("parameter out of domain: {0}")]
    Domain(String),
}
