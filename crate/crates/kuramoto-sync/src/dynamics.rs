//! The homogeneous Kuramoto gradient flow and its equilibria.
//!
//! Every oscillator has the same intrinsic frequency, so in the co-rotating
//! frame the dynamics reduce to
//!
//! ```text
//! dθ_j/dt = Σ_k A_jk sin(θ_k − θ_j),
//! ```
//!
//! which is the negative gradient of the energy
//! E(θ) = −(1/2) Σ_{j,k} A_jk cos(θ_k − θ_j). All attractors are therefore
//! equilibria; trajectories can only descend in energy.
//!
//! The right-hand side is evaluated through the expansion
//! sin(θ_k − θ_j) = sin θ_k cos θ_j − cos θ_k sin θ_j with per-node sin/cos
//! computed once, which turns each evaluation into O(n) trig calls plus an
//! O(n²) accumulation over adjacency rows. Diagonal entries are skipped
//! outright, so self-loops contribute exactly zero.

use std::io::Write;

use nalgebra::DVector;
use serde::Serialize;

use crate::error::DynamicsError;
use crate::graph::Graph;
use crate::spectral::jacobian_from_phases;
use crate::state::{wrap_angle, PhaseState};

/// Default fixed RK4 step.
pub const DEFAULT_DT: f64 = 0.01;
/// Default Newton tolerance on the rhs ∞-norm.
pub const DEFAULT_REFINE_TOL: f64 = 1e-12;
/// Default Newton iteration cap.
pub const DEFAULT_REFINE_MAX_ITER: usize = 100;

fn check_sizes(g: &Graph, s: &PhaseState) -> Result<(), DynamicsError> {
    if g.n() != s.len() {
        return Err(DynamicsError::SizeMismatch { state: s.len(), graph: g.n() });
    }
    Ok(())
}

/// Fills `sincos` with (sin θ, cos θ) per node and `out` with the flow
/// velocity. The diagonal is never read, so the result is identical with and
/// without self-loops.
pub(crate) fn rhs_into(g: &Graph, theta: &[f64], sincos: &mut [(f64, f64)], out: &mut [f64]) {
    let n = theta.len();
    for (sc, &t) in sincos.iter_mut().zip(theta) {
        *sc = t.sin_cos();
    }
    for j in 0..n {
        let row = g.row(j);
        let (sj, cj) = sincos[j];
        let mut sum_s = 0.0;
        let mut sum_c = 0.0;
        for k in 0..j {
            if row[k] {
                let (sk, ck) = sincos[k];
                sum_s += sk;
                sum_c += ck;
            }
        }
        for k in (j + 1)..n {
            if row[k] {
                let (sk, ck) = sincos[k];
                sum_s += sk;
                sum_c += ck;
            }
        }
        out[j] = cj * sum_s - sj * sum_c;
    }
}

/// Phase velocity dθ/dt of every oscillator.
pub fn rhs(g: &Graph, s: &PhaseState) -> Result<Vec<f64>, DynamicsError> {
    check_sizes(g, s)?;
    let n = g.n();
    let mut sincos = vec![(0.0, 0.0); n];
    let mut out = vec![0.0; n];
    rhs_into(g, s.phases(), &mut sincos, &mut out);
    Ok(out)
}

/// ∞-norm of the phase velocity; zero exactly at equilibria.
pub fn residual(g: &Graph, s: &PhaseState) -> Result<f64, DynamicsError> {
    Ok(inf_norm(&rhs(g, s)?))
}

pub(crate) fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, &x| m.max(x.abs()))
}

/// Energy E(θ) = −(1/2) Σ_{j,k} A_jk cos(θ_k − θ_j). The flow is its exact
/// negative gradient. With self-loops present the diagonal contributes the
/// constant −n/2.
pub fn energy(g: &Graph, s: &PhaseState) -> Result<f64, DynamicsError> {
    check_sizes(g, s)?;
    let theta = s.phases();
    let n = g.n();
    let sincos: Vec<(f64, f64)> = theta.iter().map(|&t| t.sin_cos()).collect();
    let mut acc = 0.0;
    for j in 0..n {
        let row = g.row(j);
        let (sj, cj) = sincos[j];
        let mut sum_s = 0.0;
        let mut sum_c = 0.0;
        for (k, &(sk, ck)) in sincos.iter().enumerate() {
            if row[k] && k != j {
                sum_s += sk;
                sum_c += ck;
            }
        }
        acc += cj * sum_c + sj * sum_s;
    }
    let mut e = -0.5 * acc;
    if g.has_self_loops() {
        e -= n as f64 / 2.0;
    }
    Ok(e)
}

/// Time-stepping scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Classical fixed-step fourth-order Runge–Kutta; bit-reproducible.
    Rk4 { dt: f64 },
    /// Dormand–Prince 5(4) embedded pair with error control.
    Adaptive { rel_tol: f64, dt_init: f64 },
}

impl Default for Method {
    fn default() -> Self {
        Method::Rk4 { dt: DEFAULT_DT }
    }
}

/// Convergence-to-sync test: ρ₁ above the threshold and the flow nearly
/// stationary. The defaults separate the synchronous state from twisted
/// states by a wide margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyncCriterion {
    pub rho1_min: f64,
    pub residual_max: f64,
}

impl Default for SyncCriterion {
    fn default() -> Self {
        SyncCriterion { rho1_min: 1.0 - 1e-6, residual_max: 1e-8 }
    }
}

/// Optional early-exit conditions, evaluated at the start of every step.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StopCondition {
    /// Stop once the sync criterion holds.
    pub sync: Option<SyncCriterion>,
    /// Stop once the rhs ∞-norm drops below this (any equilibrium).
    pub equilibrium_residual: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    pub method: Method,
    /// Record every k-th accepted step (initial and final states are always
    /// recorded). Must be ≥ 1.
    pub record_stride: usize,
    pub stop: StopCondition,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            method: Method::default(),
            record_stride: 1,
            stop: StopCondition::default(),
        }
    }
}

/// Why integration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StopReason {
    /// Ran to t_end.
    TimeEnd,
    /// The sync criterion fired.
    Synced,
    /// The equilibrium criterion fired.
    Equilibrium,
}

/// A recorded integration run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhaseState>,
    pub energies: Vec<f64>,
    /// rhs ∞-norm at the final state.
    pub final_residual: f64,
    pub stop_reason: StopReason,
}

impl Trajectory {
    pub fn final_state(&self) -> &PhaseState {
        self.states.last().expect("trajectory records at least the initial state")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory records at least the initial state")
    }

    /// CSV export with columns `t, theta_0..theta_{n-1}, energy, rho1_abs`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let n = self.final_state().len();
        write!(w, "t")?;
        for j in 0..n {
            write!(w, ",theta_{j}")?;
        }
        writeln!(w, ",energy,rho1_abs")?;
        for ((t, s), e) in self.times.iter().zip(&self.states).zip(&self.energies) {
            write!(w, "{t}")?;
            for &th in s.phases() {
                write!(w, ",{th}")?;
            }
            let rho1 = crate::moments::moment(s, 1).expect("m=1 is valid").norm();
            writeln!(w, ",{e},{rho1}")?;
        }
        Ok(())
    }
}

/// |ρ₁| straight from a sin/cos buffer.
fn rho1_from_sincos(sincos: &[(f64, f64)]) -> f64 {
    let n = sincos.len() as f64;
    let (mut s, mut c) = (0.0, 0.0);
    for &(sj, cj) in sincos {
        s += sj;
        c += cj;
    }
    s.hypot(c) / n
}

struct Recorder<'a> {
    g: &'a Graph,
    stride: usize,
    accepted: usize,
    times: Vec<f64>,
    states: Vec<PhaseState>,
    energies: Vec<f64>,
}

impl<'a> Recorder<'a> {
    fn new(g: &'a Graph, stride: usize, t0: f64, theta: &[f64]) -> Self {
        let mut r = Recorder {
            g,
            stride,
            accepted: 0,
            times: Vec::new(),
            states: Vec::new(),
            energies: Vec::new(),
        };
        r.push(t0, theta);
        r
    }

    fn push(&mut self, t: f64, theta: &[f64]) {
        let s = PhaseState::new(theta.to_vec());
        let e = energy(self.g, &s).expect("sizes verified");
        self.times.push(t);
        self.states.push(s);
        self.energies.push(e);
    }

    fn step_accepted(&mut self, t: f64, theta: &[f64]) {
        self.accepted += 1;
        if self.accepted.is_multiple_of(self.stride) {
            self.push(t, theta);
        }
    }

    fn finish(mut self, t: f64, theta: &[f64], residual: f64, reason: StopReason) -> Trajectory {
        if self.times.last().copied() != Some(t) {
            self.push(t, theta);
        }
        Trajectory {
            times: self.times,
            states: self.states,
            energies: self.energies,
            final_residual: residual,
            stop_reason: reason,
        }
    }
}

fn check_stop(stop: &StopCondition, sincos: &[(f64, f64)], residual: f64) -> Option<StopReason> {
    if let Some(sync) = &stop.sync {
        if residual < sync.residual_max && rho1_from_sincos(sincos) > sync.rho1_min {
            return Some(StopReason::Synced);
        }
    }
    if let Some(eq) = stop.equilibrium_residual {
        if residual < eq {
            return Some(StopReason::Equilibrium);
        }
    }
    None
}

/// Integrates the flow from `s0` to `t_end` (or an early-exit condition).
///
/// Phases are wrapped to (−π, π] after every accepted step. The energy along
/// recorded states is non-increasing up to integrator error, and the final
/// rhs ∞-norm is reported on the trajectory.
pub fn integrate(
    g: &Graph,
    s0: &PhaseState,
    t_end: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory, DynamicsError> {
    check_sizes(g, s0)?;
    if t_end.is_nan() || t_end <= 0.0 {
        return Err(DynamicsError::InvalidOptions(format!("t_end must be > 0, got {t_end}")));
    }
    if opts.record_stride == 0 {
        return Err(DynamicsError::InvalidOptions("record_stride must be >= 1".into()));
    }
    match opts.method {
        Method::Rk4 { dt } => {
            if dt.is_nan() || dt <= 0.0 {
                return Err(DynamicsError::InvalidOptions(format!("dt must be > 0, got {dt}")));
            }
            Ok(integrate_rk4(g, s0, t_end, dt, opts))
        }
        Method::Adaptive { rel_tol, dt_init } => {
            if rel_tol.is_nan() || rel_tol <= 0.0 || dt_init.is_nan() || dt_init <= 0.0 {
                return Err(DynamicsError::InvalidOptions(
                    "adaptive integration needs rel_tol > 0 and dt_init > 0".into(),
                ));
            }
            integrate_dopri(g, s0, t_end, rel_tol, dt_init, opts)
        }
    }
}

fn integrate_rk4(g: &Graph, s0: &PhaseState, t_end: f64, dt: f64, opts: &IntegratorOptions) -> Trajectory {
    let n = g.n();
    let mut theta = s0.phases().to_vec();
    let mut sincos = vec![(0.0, 0.0); n];
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut stage = vec![0.0; n];

    let mut rec = Recorder::new(g, opts.record_stride, 0.0, &theta);
    let mut t = 0.0;
    loop {
        rhs_into(g, &theta, &mut sincos, &mut k1);
        let res = inf_norm(&k1);
        if let Some(reason) = check_stop(&opts.stop, &sincos, res) {
            return rec.finish(t, &theta, res, reason);
        }
        if t >= t_end {
            return rec.finish(t, &theta, res, StopReason::TimeEnd);
        }
        let h = dt.min(t_end - t);
        for j in 0..n {
            stage[j] = theta[j] + 0.5 * h * k1[j];
        }
        rhs_into(g, &stage, &mut sincos, &mut k2);
        for j in 0..n {
            stage[j] = theta[j] + 0.5 * h * k2[j];
        }
        rhs_into(g, &stage, &mut sincos, &mut k3);
        for j in 0..n {
            stage[j] = theta[j] + h * k3[j];
        }
        rhs_into(g, &stage, &mut sincos, &mut k4);
        for j in 0..n {
            theta[j] = wrap_angle(theta[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]));
        }
        t += h;
        rec.step_accepted(t, &theta);
    }
}

// Dormand–Prince 5(4) coefficients. The flow is autonomous, so the stage
// times are never needed.
const DP_A: [&[f64]; 6] = [
    &[1.0 / 5.0],
    &[3.0 / 40.0, 9.0 / 40.0],
    &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
    &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
    &[9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0],
    &[35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn integrate_dopri(
    g: &Graph,
    s0: &PhaseState,
    t_end: f64,
    rel_tol: f64,
    dt_init: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory, DynamicsError> {
    let n = g.n();
    let mut theta = s0.phases().to_vec();
    let mut sincos = vec![(0.0, 0.0); n];
    let mut k: Vec<Vec<f64>> = (0..7).map(|_| vec![0.0; n]).collect();
    let mut stage = vec![0.0; n];
    let mut y5 = vec![0.0; n];

    let mut rec = Recorder::new(g, opts.record_stride, 0.0, &theta);
    let mut t = 0.0;
    let mut dt = dt_init.min(t_end);
    let dt_min = 1e-14 * t_end.max(1.0);

    loop {
        rhs_into(g, &theta, &mut sincos, &mut k[0]);
        let res = inf_norm(&k[0]);
        if let Some(reason) = check_stop(&opts.stop, &sincos, res) {
            return Ok(rec.finish(t, &theta, res, reason));
        }
        if t >= t_end {
            return Ok(rec.finish(t, &theta, res, StopReason::TimeEnd));
        }
        let h = dt.min(t_end - t);

        for s in 0..6 {
            for j in 0..n {
                let mut acc = theta[j];
                for (i, &a) in DP_A[s].iter().enumerate() {
                    acc += h * a * k[i][j];
                }
                stage[j] = acc;
            }
            rhs_into(g, &stage, &mut sincos, &mut k[s + 1]);
        }

        // 5th-order solution and embedded error estimate.
        let mut err_norm_sq = 0.0;
        for j in 0..n {
            let mut y = theta[j];
            let mut e = 0.0;
            for i in 0..7 {
                y += h * DP_B5[i] * k[i][j];
                e += h * (DP_B5[i] - DP_B4[i]) * k[i][j];
            }
            y5[j] = y;
            let scale = rel_tol * (1.0 + theta[j].abs());
            let r = e / scale;
            err_norm_sq += r * r;
        }
        let err = (err_norm_sq / n as f64).sqrt();

        if err <= 1.0 {
            for j in 0..n {
                theta[j] = wrap_angle(y5[j]);
            }
            t += h;
            rec.step_accepted(t, &theta);
        }
        let factor = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
        dt = h * factor.clamp(0.2, 5.0);
        if dt < dt_min {
            rhs_into(g, &theta, &mut sincos, &mut k[6]);
            let res = inf_norm(&k[6]);
            let partial = rec.finish(t, &theta, res, StopReason::TimeEnd);
            return Err(DynamicsError::StepSizeUnderflow { dt, t, partial: Box::new(partial) });
        }
    }
}

/// Newton refinement options.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineOptions {
    /// Target rhs ∞-norm.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions { tol: DEFAULT_REFINE_TOL, max_iter: DEFAULT_REFINE_MAX_ITER }
    }
}

/// Polishes an approximate equilibrium with Newton's method until the rhs
/// ∞-norm drops below `tol`.
///
/// The Jacobian of the flow always carries the rotation null vector
/// (1, …, 1); the linear solves stay nonsingular by adding the rank-one term
/// 𝟙𝟙ᵀ/n, which forces mean-zero Newton steps (the rhs is orthogonal to the
/// constant mode, so the solution is unchanged on the physical subspace).
///
/// Local convergence needs a reasonable starting residual (< 0.1 as a rule
/// of thumb). On failure the error carries the best iterate seen.
pub fn refine_equilibrium(g: &Graph, s0: &PhaseState, tol: f64) -> Result<PhaseState, DynamicsError> {
    refine_equilibrium_with(g, s0, &RefineOptions { tol, ..Default::default() })
}

pub fn refine_equilibrium_with(
    g: &Graph,
    s0: &PhaseState,
    opts: &RefineOptions,
) -> Result<PhaseState, DynamicsError> {
    check_sizes(g, s0)?;
    let n = g.n();
    let mut theta = s0.phases().to_vec();
    let mut sincos = vec![(0.0, 0.0); n];
    let mut r = vec![0.0; n];

    rhs_into(g, &theta, &mut sincos, &mut r);
    let mut res = inf_norm(&r);
    let mut best = theta.clone();
    let mut best_res = res;

    for _ in 0..opts.max_iter {
        if res < opts.tol {
            return Ok(PhaseState::new(theta));
        }
        let mut m = jacobian_from_phases(g, &theta);
        m.add_scalar_mut(1.0 / n as f64);
        let neg_r = DVector::from_iterator(n, r.iter().map(|&x| -x));
        let dx = match m.lu().solve(&neg_r) {
            Some(dx) => dx,
            None => {
                return Err(DynamicsError::SingularNewtonSystem {
                    residual: best_res,
                    best: Box::new(PhaseState::new(best)),
                })
            }
        };
        for j in 0..n {
            theta[j] = wrap_angle(theta[j] + dx[j]);
        }
        rhs_into(g, &theta, &mut sincos, &mut r);
        res = inf_norm(&r);
        if res < best_res {
            best_res = res;
            best = theta.clone();
        }
    }
    if res < opts.tol {
        return Ok(PhaseState::new(theta));
    }
    Err(DynamicsError::RefinementFailed {
        residual: best_res,
        iterations: opts.max_iter,
        best: Box::new(PhaseState::new(best)),
    })
}
