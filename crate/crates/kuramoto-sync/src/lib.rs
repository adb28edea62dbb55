//! Global-synchronization analysis for homogeneous Kuramoto networks.
//!
//! A network of identical phase oscillators coupled with unit strength along
//! the edges of a connected graph evolves by the gradient flow
//! dθ_j/dt = Σ_k A_jk sin(θ_k − θ_j). Dense enough networks synchronize from
//! almost every initial condition; sparse ones can lock into twisted states
//! and other patterns. This crate provides the pieces needed to study where
//! the crossover lives:
//!
//! - [`graph`]: network construction (circulants, twinning, self-loops) and
//!   exact connectivity measures μ and μ̃;
//! - [`dynamics`]: the flow itself, energy, time integration, and Newton
//!   refinement of equilibria;
//! - [`spectral`]: Jacobian assembly and stability classification, including
//!   the marginal case where zero eigenvalues make linear analysis silent;
//! - [`moments`]: Daido order parameters ρ_m and their trig identities;
//! - [`certificates`]: the inequality chain that every stable equilibrium
//!   must satisfy, the (ρ₁, |ρ₂|) feasibility region it carves out, and the
//!   four-cluster structure forced on near-threshold patterns.

pub mod certificates;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod moments;
pub mod spectral;
pub mod state;

pub use certificates::{
    cluster::{cluster_analysis, ClusterReport},
    corollary1_check, eq10_slack, eq14_check, eq5_check, eq8_max, eq9_slack, full_report,
    lemma1_check, lemma2_params, lemma3_x0star, lxb_stability_value,
    region::{feasibility_scan, is_feasible, FeasibilityRegion},
    theorem1_verdict, CertificateReport, Theorem1Verdict,
};
pub use dynamics::{
    energy, integrate, refine_equilibrium, refine_equilibrium_with, residual, rhs,
    IntegratorOptions, Method, RefineOptions, StopCondition, StopReason, SyncCriterion, Trajectory,
};
pub use error::{CertificateError, DynamicsError, GraphError, MomentError, SpectralError};
pub use graph::{sync_sufficient_mu, Connectivity, Graph, Rational};
pub use moments::{fourier_identity_residual, moment, MomentSet};
pub use spectral::{jacobian, jacobian_unchecked, spectrum, spectrum_with, Classification, SpectrumReport};
pub use state::{normalize_phase, wrap_angle, PhaseGauge, PhaseState};
