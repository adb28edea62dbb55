//! Oscillator phase vectors and their rotation gauge.
//!
//! The dynamics depend only on phase differences, so every state carries a
//! free global rotation. [`normalize_phase`] fixes the gauge by making the
//! order parameter ρ₁ real and non-negative; when ρ₁ vanishes (perfectly
//! incoherent states) the first phase is pinned to zero instead.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

/// Threshold below which |ρ₁| is treated as zero and the gauge falls back to
/// pinning θ₀ = 0.
pub const RHO1_GAUGE_EPS: f64 = 1e-14;

/// Wraps an angle to the half-open interval (−π, π].
#[inline]
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

/// A vector of oscillator phases, each stored wrapped to (−π, π].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseState {
    theta: Vec<f64>,
}

impl PhaseState {
    /// Builds a state from raw angles, wrapping each to (−π, π].
    pub fn new(theta: Vec<f64>) -> Self {
        let theta = theta.into_iter().map(wrap_angle).collect();
        PhaseState { theta }
    }

    /// The all-in-phase state θ_j = 0 on `n` oscillators.
    pub fn in_phase(n: usize) -> Self {
        PhaseState { theta: vec![0.0; n] }
    }

    /// The q-twisted state θ_j = 2πqj/n.
    pub fn twisted(n: usize, q: usize) -> Self {
        Self::new((0..n).map(|j| TAU * (q * j) as f64 / n as f64).collect())
    }

    /// Number of oscillators.
    #[inline]
    pub fn len(&self) -> usize {
        self.theta.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Phases as a slice.
    #[inline]
    pub fn phases(&self) -> &[f64] {
        &self.theta
    }

    /// Returns a copy with every phase shifted by `delta` (and re-wrapped).
    pub fn shifted(&self, delta: f64) -> Self {
        Self::new(self.theta.iter().map(|&t| t + delta).collect())
    }

    /// Maximum absolute circular difference to another state, minimized over
    /// a global rotation. Useful for comparing equilibria modulo gauge.
    pub fn max_diff_mod_rotation(&self, other: &PhaseState) -> f64 {
        assert_eq!(self.len(), other.len());
        // Align on the mean phase difference (circular mean), then compare.
        let (mut s, mut c) = (0.0, 0.0);
        for (a, b) in self.theta.iter().zip(&other.theta) {
            let (ds, dc) = (a - b).sin_cos();
            s += ds;
            c += dc;
        }
        let shift = s.atan2(c);
        self.theta
            .iter()
            .zip(&other.theta)
            .map(|(a, b)| wrap_angle(a - b - shift).abs())
            .fold(0.0, f64::max)
    }
}

/// How the rotation gauge was fixed by [`normalize_phase`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PhaseGauge {
    /// Phases were rotated by −ψ so that ρ₁ = |ρ₁| ≥ 0.
    OrderParameter,
    /// |ρ₁| was below [`RHO1_GAUGE_EPS`]; θ₀ was pinned to 0 instead.
    PinnedFirst,
}

/// Rotates all phases so the order parameter ρ₁ becomes real and
/// non-negative. States with |ρ₁| ≈ 0 carry no usable mean phase; for those
/// the first phase is pinned to zero and the fallback gauge is reported.
pub fn normalize_phase(s: &PhaseState) -> (PhaseState, PhaseGauge) {
    let n = s.len();
    let (mut im, mut re) = (0.0, 0.0);
    for &t in s.phases() {
        let (st, ct) = t.sin_cos();
        im += st;
        re += ct;
    }
    let modulus = im.hypot(re) / n as f64;
    if modulus < RHO1_GAUGE_EPS {
        let pin = s.phases().first().copied().unwrap_or(0.0);
        (s.shifted(-pin), PhaseGauge::PinnedFirst)
    } else {
        let psi = im.atan2(re);
        (s.shifted(-psi), PhaseGauge::OrderParameter)
    }
}
