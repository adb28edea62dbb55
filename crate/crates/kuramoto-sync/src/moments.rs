//! Circular moments of the phase distribution.
//!
//! The m-th moment of a state θ is ρ_m = (1/n) Σ_j e^{imθ_j}. ρ₁ is the
//! classical order parameter; |ρ₁| = 1 exactly at the all-in-phase state,
//! and |ρ_m| = 1 means the oscillators form at most m groups. The moments
//! obey the trigonometric identity
//!
//! ```text
//! (1/n²) Σ_{j,k} cos²(m(θ_k − θ_j)) = (1 + |ρ_{2m}|²) / 2,
//! ```
//!
//! which the stability certificates lean on; [`fourier_identity_residual`]
//! measures how far a state is from satisfying it (it never should be, beyond
//! roundoff).

use num_complex::Complex64;

use crate::error::MomentError;
use crate::state::PhaseState;

/// The m-th circular moment ρ_m = (1/n) Σ_j e^{imθ_j}. Single pass, O(n).
pub fn moment(s: &PhaseState, m: usize) -> Result<Complex64, MomentError> {
    if m == 0 {
        return Err(MomentError::InvalidOrder(0));
    }
    let n = s.len() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for &t in s.phases() {
        let (im, re) = (m as f64 * t).sin_cos();
        acc += Complex64::new(re, im);
    }
    Ok(acc / n)
}

/// Moments ρ₁..ρ_M of a state.
#[derive(Debug, Clone)]
pub struct MomentSet {
    rho: Vec<Complex64>,
}

impl MomentSet {
    /// Computes ρ₁..ρ_{max_order}.
    pub fn compute(s: &PhaseState, max_order: usize) -> Result<Self, MomentError> {
        if max_order == 0 {
            return Err(MomentError::InvalidOrder(0));
        }
        let rho = (1..=max_order).map(|m| moment(s, m)).collect::<Result<_, _>>()?;
        Ok(MomentSet { rho })
    }

    /// Highest order stored.
    pub fn max_order(&self) -> usize {
        self.rho.len()
    }

    /// ρ_m for 1 ≤ m ≤ max_order.
    pub fn rho(&self, m: usize) -> Complex64 {
        self.rho[m - 1]
    }
}

/// Residual of the cos² moment identity at order m:
/// |(1/n²) Σ_{j,k} cos²(m(θ_k − θ_j)) − (1 + |ρ_{2m}|²)/2|.
///
/// The left side is evaluated as the literal double sum, so this doubles as a
/// cross-check of the O(n) moment path. Expect < 1e−12 for any state.
pub fn fourier_identity_residual(s: &PhaseState, m: usize) -> Result<f64, MomentError> {
    if m == 0 {
        return Err(MomentError::InvalidOrder(0));
    }
    let n = s.len() as f64;
    let theta = s.phases();
    let mut lhs = 0.0;
    for &tj in theta {
        for &tk in theta {
            lhs += (m as f64 * (tk - tj)).cos().powi(2);
        }
    }
    lhs /= n * n;
    let rho2m = moment(s, 2 * m)?;
    let rhs = (1.0 + rho2m.norm_sqr()) / 2.0;
    Ok((lhs - rhs).abs())
}
