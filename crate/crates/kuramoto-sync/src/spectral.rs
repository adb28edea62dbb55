//! Linear stability of equilibria.
//!
//! Differentiating the flow at an equilibrium gives the symmetric Jacobian
//!
//! ```text
//! J_jk = A_jk cos(θ_k − θ_j)            (j ≠ k)
//! J_jj = −Σ_{k≠j} A_jk cos(θ_k − θ_j),
//! ```
//!
//! whose rows sum to zero: the rotation mode (1, …, 1) is always a null
//! vector, so every spectrum contains at least one zero eigenvalue. An
//! equilibrium is classified `Stable` when that zero is simple and everything
//! else is negative, `Unstable` when a positive eigenvalue exists, and
//! `Marginal` when the zero eigenvalue is multiple with nothing positive. In
//! the marginal case linear analysis cannot decide attractivity either way,
//! and the report deliberately says so rather than claiming stability.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::dynamics::residual;
use crate::error::SpectralError;
use crate::graph::Graph;
use crate::state::PhaseState;

/// Residual limit under which a state is accepted as an equilibrium.
pub const EQUILIBRIUM_RESIDUAL_LIMIT: f64 = 1e-8;
/// Default zero-eigenvalue tolerance per node; the effective tolerance is
/// this times n, since eigenvalue roundoff grows with the matrix norm.
pub const DEFAULT_ZERO_TOL_PER_NODE: f64 = 1e-8;

/// Stability classification of an equilibrium from its Jacobian spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Stable,
    Unstable,
    Marginal,
}

/// Sorted Jacobian spectrum with its zero count and classification.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    /// Eigenvalues in ascending order (units: inverse model time).
    pub eigenvalues: Vec<f64>,
    /// Count of eigenvalues with |λ| < zero_tol; at least 1 in exact
    /// arithmetic (rotation mode).
    pub zero_multiplicity: usize,
    pub classification: Classification,
    /// The tolerance the report was classified with.
    pub zero_tol: f64,
}

impl SpectrumReport {
    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is nonempty")
    }
}

/// Assembles the Jacobian from raw phases without any equilibrium check.
/// Symmetry is exact by construction, and each diagonal entry is the exact
/// negated fold of its off-diagonal row.
pub(crate) fn jacobian_from_phases(g: &Graph, theta: &[f64]) -> DMatrix<f64> {
    let n = g.n();
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let row = g.row(j);
        let mut diag = 0.0;
        for k in 0..n {
            if k != j && row[k] {
                let c = (theta[k] - theta[j]).cos();
                m[(j, k)] = c;
                diag += c;
            }
        }
        m[(j, j)] = -diag;
    }
    // Mirror the upper triangle so the matrix is bit-for-bit symmetric even
    // though cos(x) = cos(−x) should already make it so.
    for j in 0..n {
        for k in (j + 1)..n {
            let c = m[(j, k)];
            m[(k, j)] = c;
        }
    }
    m
}

fn check(g: &Graph, s: &PhaseState) -> Result<(), SpectralError> {
    if g.n() != s.len() {
        return Err(SpectralError::SizeMismatch { state: s.len(), graph: g.n() });
    }
    let res = residual(g, s).expect("sizes checked");
    if res >= EQUILIBRIUM_RESIDUAL_LIMIT {
        return Err(SpectralError::NonEquilibrium { residual: res, limit: EQUILIBRIUM_RESIDUAL_LIMIT });
    }
    Ok(())
}

/// Jacobian of the flow at an equilibrium (rhs ∞-norm < 1e−8 enforced).
pub fn jacobian(g: &Graph, s: &PhaseState) -> Result<DMatrix<f64>, SpectralError> {
    check(g, s)?;
    Ok(jacobian_from_phases(g, s.phases()))
}

/// Jacobian at an arbitrary state, for exploratory use; the equilibrium
/// precondition is the caller's problem.
pub fn jacobian_unchecked(g: &Graph, s: &PhaseState) -> DMatrix<f64> {
    assert_eq!(g.n(), s.len(), "state/graph size mismatch");
    jacobian_from_phases(g, s.phases())
}

/// Options for [`spectrum_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SpectrumOptions {
    /// Override for the zero tolerance; default is 1e−8·n.
    pub zero_tol: Option<f64>,
    /// Skip the equilibrium precondition.
    pub allow_non_equilibrium: bool,
}

/// Spectrum and classification at an equilibrium with default options.
pub fn spectrum(g: &Graph, s: &PhaseState) -> Result<SpectrumReport, SpectralError> {
    spectrum_with(g, s, &SpectrumOptions::default())
}

/// Spectrum and classification with explicit options.
///
/// The Jacobian is exactly symmetric, so a symmetric (tridiagonalization
/// based) eigensolver is used; it returns real eigenvalues by construction.
pub fn spectrum_with(
    g: &Graph,
    s: &PhaseState,
    opts: &SpectrumOptions,
) -> Result<SpectrumReport, SpectralError> {
    if !opts.allow_non_equilibrium {
        check(g, s)?;
    } else if g.n() != s.len() {
        return Err(SpectralError::SizeMismatch { state: s.len(), graph: g.n() });
    }
    let n = g.n();
    let jac = jacobian_from_phases(g, s.phases());
    let zero_tol = opts.zero_tol.unwrap_or(DEFAULT_ZERO_TOL_PER_NODE * n as f64);

    let eigen =
        SymmetricEigen::try_new(jac, f64::EPSILON, 0).ok_or(SpectralError::EigensolverFailed)?;
    let mut eigenvalues: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("symmetric eigenvalues are finite"));

    let zero_multiplicity = eigenvalues.iter().filter(|&&l| l.abs() < zero_tol).count();
    let max = *eigenvalues.last().expect("n >= 1");
    let classification = if max > zero_tol {
        Classification::Unstable
    } else if zero_multiplicity <= 1 {
        Classification::Stable
    } else {
        Classification::Marginal
    };
    Ok(SpectrumReport { eigenvalues, zero_multiplicity, classification, zero_tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{refine_equilibrium, rhs};
    use crate::state::wrap_angle;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn in_phase_jacobian_is_negative_laplacian() {
        let g = Graph::complete(4).unwrap();
        let s = PhaseState::in_phase(4);
        let j = jacobian(&g, &s).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let expect = if a == b { -3.0 } else { 1.0 };
                assert_eq!(j[(a, b)], expect);
            }
        }
        let rep = spectrum(&g, &s).unwrap();
        // Complete-graph Laplacian spectrum: {0, −n, −n, …}.
        assert_abs_diff_eq!(rep.eigenvalues[0], -4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.eigenvalues[2], -4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.max_eigenvalue(), 0.0, epsilon = 1e-12);
        assert_eq!(rep.zero_multiplicity, 1);
        assert_eq!(rep.classification, Classification::Stable);
    }

    #[test]
    fn twisted_c4_jacobian_vanishes() {
        let g = Graph::cycle(4).unwrap();
        let s = PhaseState::twisted(4, 1);
        let rep = spectrum(&g, &s).unwrap();
        assert_eq!(rep.zero_multiplicity, 4);
        assert_eq!(rep.classification, Classification::Marginal);
        let j = jacobian(&g, &s).unwrap();
        assert!(j.iter().all(|&x| x.abs() < 1e-14));
    }

    #[test]
    fn in_phase_is_stable_on_connected_graphs() {
        for g in [
            Graph::cycle(6).unwrap(),
            Graph::circulant(9, &[1, 3]).unwrap(),
            Graph::complete(5).unwrap().with_self_loops(),
        ] {
            let s = PhaseState::in_phase(g.n());
            assert_eq!(spectrum(&g, &s).unwrap().classification, Classification::Stable);
        }
    }

    #[test]
    fn twisted_c5_is_stable_pattern() {
        let g = Graph::cycle(5).unwrap();
        let s = PhaseState::twisted(5, 1);
        let rep = spectrum(&g, &s).unwrap();
        assert_eq!(rep.classification, Classification::Stable);
        assert_eq!(rep.zero_multiplicity, 1);
        // Largest nonzero eigenvalue is strictly negative.
        assert!(rep.eigenvalues[rep.eigenvalues.len() - 2] < -1e-3);
    }

    #[test]
    fn razor_edge_family_is_marginal() {
        for m in 1..=8 {
            let g = Graph::cycle(4).unwrap().twin(m).unwrap();
            let phases: Vec<f64> =
                (0..4).flat_map(|p| std::iter::repeat_n(p as f64 * PI / 2.0, m)).collect();
            let s = PhaseState::new(phases);
            let rep = spectrum(&g, &s).unwrap();
            assert_eq!(rep.classification, Classification::Marginal, "m={m}");
            assert!(rep.zero_multiplicity >= 2, "m={m}");
            assert!(rep.max_eigenvalue() <= rep.zero_tol, "m={m}");
        }
    }

    #[test]
    fn rejects_non_equilibrium_without_override() {
        let g = Graph::complete(3).unwrap();
        let s = PhaseState::new(vec![0.0, 1.0, 2.5]);
        assert!(matches!(jacobian(&g, &s), Err(SpectralError::NonEquilibrium { .. })));
        assert!(matches!(spectrum(&g, &s), Err(SpectralError::NonEquilibrium { .. })));
        let opts = SpectrumOptions { allow_non_equilibrium: true, ..Default::default() };
        assert!(spectrum_with(&g, &s, &opts).is_ok());
    }

    #[test]
    fn jacobian_is_symmetric_with_zero_row_sums() {
        let g = Graph::circulant(10, &[1, 2, 4]).unwrap();
        let s = refine_equilibrium(&g, &PhaseState::twisted(10, 2), 1e-12).unwrap();
        let j = jacobian(&g, &s).unwrap();
        let n = g.n();
        for a in 0..n {
            let row_sum: f64 = (0..n).map(|b| j[(a, b)]).sum();
            assert!(row_sum.abs() < 1e-10 * n as f64);
            for b in 0..n {
                assert_eq!(j[(a, b)], j[(b, a)]);
            }
        }
    }

    #[test]
    fn jacobian_matches_finite_differences_of_rhs() {
        // Random-ish equilibria on small graphs, h = 1e−6, tolerance 1e−5.
        let h = 1e-6;
        for (g, start) in [
            (Graph::cycle(8).unwrap(), PhaseState::twisted(8, 1)),
            (Graph::circulant(9, &[1, 2]).unwrap(), PhaseState::twisted(9, 1)),
            (Graph::complete(6).unwrap(), PhaseState::in_phase(6)),
        ] {
            let s = refine_equilibrium(&g, &start, 1e-12).unwrap();
            let n = g.n();
            let j = jacobian(&g, &s).unwrap();
            for col in 0..n {
                let mut up = s.phases().to_vec();
                let mut dn = s.phases().to_vec();
                up[col] = wrap_angle(up[col] + h);
                dn[col] = wrap_angle(dn[col] - h);
                let fu = rhs(&g, &PhaseState::new(up)).unwrap();
                let fd = rhs(&g, &PhaseState::new(dn)).unwrap();
                for row in 0..n {
                    let fd_val = (fu[row] - fd[row]) / (2.0 * h);
                    assert_abs_diff_eq!(j[(row, col)], fd_val, epsilon = 1e-5);
                }
            }
        }
    }

    #[test]
    fn spectrum_json_shape() {
        let g = Graph::cycle(4).unwrap();
        let rep = spectrum(&g, &PhaseState::twisted(4, 1)).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert!(json["eigenvalues"].is_array());
        assert_eq!(json["zero_multiplicity"], 4);
        assert_eq!(json["classification"], "Marginal");
    }
}
