//! Numerical evaluation of the stability-certificate chain.
//!
//! For a stable equilibrium of the flow on a network with self-loop-adjusted
//! connectivity μ̃, the first two moments ρ₁, ρ₂ of the phase distribution
//! are forced through a chain of inequalities. Each operation here evaluates
//! one link of that chain against a concrete (graph, state) pair and reports
//! slack rather than a bare boolean, so a violation can be measured and a
//! near-boundary case recognized. Certificates are necessary conditions for
//! stability: a violated certificate on a spectrally stable state is a
//! contradiction, while any outcome on an unstable state is consistent.
//!
//! The headline consequence of the chain: when μ̃ > 3/4, every stable
//! equilibrium must be the all-in-phase state. Below 3/4 the chain still
//! constrains where stable patterns can live (see [`region`]) and what they
//! must look like (see [`cluster`]).

pub mod cluster;
pub mod region;

use serde::Serialize;

use crate::error::CertificateError;
use crate::graph::Graph;
use crate::moments::moment;
use crate::spectral::Classification;
use crate::state::{normalize_phase, PhaseState};

/// Slack tolerance for certificate inequalities. Sums over all node pairs
/// carry an extra n² factor; per-node sums an n factor. The slack absorbs
/// refinement residual (~1e−12) amplified through the sums.
pub const INEQ_TOL: f64 = 1e-9;
/// Radicands this far below zero are treated as roundoff and clamped; more
/// negative values flag a genuine violation of the per-node sine bound.
pub const RADICAND_CLAMP: f64 = -1e-12;

/// Case-(ii) regime box: the only region besides ρ₁ > ~0.7 where the chain
/// leaves room for a stable pattern when μ̃ ≥ 0.7495.
pub const CASE_II_MU_TILDE_MIN: f64 = 0.7495;
pub const CASE_II_RHO1_MAX: f64 = 0.03166;
pub const CASE_II_RHO2_MAX: f64 = 0.04474;

/// Thresholds on the normalized non-edge sum for case-(ii) patterns.
pub const CASE_II_NONEDGE_BOUND: f64 = -0.49900;
pub const CASE_II_NONEDGE_MU_COEFF: f64 = 1.9921;

/// Historical sufficient-connectivity bounds for global synchrony, kept for
/// reference and reporting. Each is the published value of μ above which any
/// network was proven globally synchronizing.
pub mod known_bounds {
    /// Taylor (2012).
    pub const TAYLOR: f64 = 0.9395;
    /// Ling, Xu, Bandeira (2019).
    pub const LING_XU_BANDEIRA: f64 = 0.7929;
    /// Lu, Steinerberger (2020).
    pub const LU_STEINERBERGER: f64 = 0.7889;
    /// Best known lower bound: dense networks supporting patterns exist up
    /// to this connectivity (Yoneda, Tatsukawa, Teramae, 2021).
    pub const PATTERN_LOWER: f64 = 0.6838;
    /// The bound this crate's certificate chain verifies numerically.
    pub const SUFFICIENT_MU_TILDE: f64 = 0.75;
}

fn check_sizes(g: &Graph, s: &PhaseState) -> Result<(), CertificateError> {
    if g.n() != s.len() {
        return Err(CertificateError::SizeMismatch { state: s.len(), graph: g.n() });
    }
    Ok(())
}

/// The quadratic-form stability bound of Ling, Xu, and Bandeira:
/// Σ_{j,k} A_jk (cos²(θ_k−θ_j) − cos(θ_k−θ_j)), which is ≤ 0 whenever θ is a
/// stable equilibrium. Self-loop terms contribute exactly zero.
pub fn lxb_stability_value(g: &Graph, s: &PhaseState) -> Result<f64, CertificateError> {
    check_sizes(g, s)?;
    let theta = s.phases();
    let n = g.n();
    let mut acc = 0.0;
    for j in 0..n {
        let row = g.row(j);
        for k in 0..n {
            if k != j && row[k] {
                let c = (theta[k] - theta[j]).cos();
                acc += c * c - c;
            }
        }
    }
    Ok(acc)
}

/// Both sides of the non-edge inequality: for a stable equilibrium,
///
/// ```text
/// Σ_{j,k} (1−A_jk)(cos(θ_k−θ_j) − cos²(θ_k−θ_j))  ≤  (n²/2)(2ρ₁² − |ρ₂|² − 1).
/// ```
///
/// Returns `(lhs, rhs)`. A violation certifies instability.
pub fn eq5_check(g: &Graph, s: &PhaseState) -> Result<(f64, f64), CertificateError> {
    check_sizes(g, s)?;
    let theta = s.phases();
    let n = g.n();
    let mut lhs = 0.0;
    for j in 0..n {
        let row = g.row(j);
        for k in 0..n {
            if k != j && !row[k] {
                let c = (theta[k] - theta[j]).cos();
                lhs += c - c * c;
            }
        }
    }
    let rho1_sq = moment(s, 1).expect("m=1").norm_sqr();
    let rho2_sq = moment(s, 2).expect("m=2").norm_sqr();
    let nf = n as f64;
    let rhs = nf * nf / 2.0 * (2.0 * rho1_sq - rho2_sq - 1.0);
    Ok((lhs, rhs))
}

/// One row of the per-node cosine bound (stated with the ρ₁-real gauge):
///
/// ```text
/// n·sqrt((1−μ̃)² − ρ₁² sin²θ_j)  ≥  Σ_{k≠j} (1−A_jk)|cos(θ_k−θ_j)|  ≥  0.
/// ```
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Lemma1Check {
    /// Left side; the radicand is clamped at zero when negative.
    pub lhs: f64,
    /// Middle sum over non-neighbors.
    pub mid: f64,
    /// The radicand (1−μ̃)² − ρ₁² sin²θ_j itself; non-negative for stable
    /// equilibria (the per-node sine bound).
    pub radicand: f64,
}

impl Lemma1Check {
    /// Whether lhs ≥ mid within the per-node tolerance.
    pub fn holds(&self, n: usize) -> bool {
        self.lhs >= self.mid - INEQ_TOL * n as f64
    }
}

/// Evaluates the per-node cosine bound at node `j`, with μ̃ taken from the
/// graph. The state is normalized internally so sin θ_j refers to the
/// ρ₁-real gauge; the non-neighbor sum skips k = j, which is the correct
/// reading both with and without self-loops.
pub fn lemma1_check(g: &Graph, s: &PhaseState, j: usize) -> Result<Lemma1Check, CertificateError> {
    check_sizes(g, s)?;
    let n = g.n();
    if j >= n {
        return Err(CertificateError::IndexOutOfRange { index: j, n });
    }
    let mu_tilde = g
        .connectivity()
        .map_err(|e| CertificateError::Domain(format!("connectivity unavailable: {e}")))?
        .mu_tilde_f64();
    let (ns, _) = normalize_phase(s);
    Ok(lemma1_check_normalized(g, &ns, mu_tilde, j))
}

fn lemma1_check_normalized(g: &Graph, ns: &PhaseState, mu_tilde: f64, j: usize) -> Lemma1Check {
    let theta = ns.phases();
    let n = g.n();
    let rho1 = moment(ns, 1).expect("m=1").norm();
    let om = 1.0 - mu_tilde;
    let sj = theta[j].sin();
    let radicand = om * om - rho1 * rho1 * sj * sj;
    let lhs = n as f64 * radicand.max(0.0).sqrt();
    let row = g.row(j);
    let mut mid = 0.0;
    for k in 0..n {
        if k != j && !row[k] {
            mid += (theta[k] - theta[j]).cos().abs();
        }
    }
    Lemma1Check { lhs, mid, radicand }
}

/// Worst violation of the per-node sine bound ρ₁|sin θ_j| ≤ 1 − μ̃:
/// returns max_j ρ₁|sin θ_j| − (1 − μ̃), which is ≤ 0 for stable equilibria.
pub fn eq8_max(s: &PhaseState, mu_tilde: f64) -> f64 {
    let (ns, _) = normalize_phase(s);
    let rho1 = moment(&ns, 1).expect("m=1").norm();
    let worst = ns.phases().iter().map(|t| rho1 * t.sin().abs()).fold(0.0, f64::max);
    worst - (1.0 - mu_tilde)
}

/// Large-order-parameter test: true iff ρ₁ > √2 (1−μ̃). A stable equilibrium
/// satisfying this must be the all-in-phase state (all its sines are then
/// strictly inside ±1/√2).
pub fn corollary1_check(s: &PhaseState, mu_tilde: f64) -> bool {
    let rho1 = moment(s, 1).expect("m=1").norm();
    rho1 > std::f64::consts::SQRT_2 * (1.0 - mu_tilde)
}

/// Topology-free lower-bound slack on ρ₁²:
///
/// ```text
/// ρ₁² − [(1 + |ρ₂|²)/2 − (2/n) Σ_j sqrt((1−μ̃)² − ρ₁² sin²θ_j)],
/// ```
///
/// ≥ 0 (up to tolerance) for stable equilibria. Radicands within roundoff of
/// zero are clamped; genuinely negative radicands mean the per-node sine
/// bound already failed and the certificate does not apply.
pub fn eq9_slack(s: &PhaseState, mu_tilde: f64) -> Result<f64, CertificateError> {
    let (ns, _) = normalize_phase(s);
    let n = ns.len() as f64;
    let rho1_sq = moment(&ns, 1).expect("m=1").norm_sqr();
    let rho2_sq = moment(&ns, 2).expect("m=2").norm_sqr();
    let om = 1.0 - mu_tilde;
    let mut root_sum = 0.0;
    for &t in ns.phases() {
        let s2 = t.sin().powi(2);
        let radicand = om * om - rho1_sq * s2;
        if radicand < RADICAND_CLAMP {
            return Err(CertificateError::Inapplicable(format!(
                "radicand {radicand:.3e} < {RADICAND_CLAMP:.1e}: per-node sine bound already violated"
            )));
        }
        root_sum += radicand.max(0.0).sqrt();
    }
    Ok(rho1_sq - (1.0 + rho2_sq) / 2.0 + 2.0 / n * root_sum)
}

/// Moment-only lower-bound slack on ρ₁²: ρ₁² − 2(μ̃ − 3/4) − |ρ₂|²/2,
/// ≥ 0 (up to tolerance) for stable equilibria.
pub fn eq10_slack(s: &PhaseState, mu_tilde: f64) -> f64 {
    let rho1_sq = moment(s, 1).expect("m=1").norm_sqr();
    let rho2_sq = moment(s, 2).expect("m=2").norm_sqr();
    eq10_slack_point(rho1_sq.sqrt(), rho2_sq.sqrt(), mu_tilde)
}

/// Point version of the moment-only bound, for region scans.
pub fn eq10_slack_point(rho1: f64, rho2_abs: f64, mu_tilde: f64) -> f64 {
    rho1 * rho1 - 2.0 * (mu_tilde - 0.75) - rho2_abs * rho2_abs / 2.0
}

/// Tangent-line parameters for the lower bound on |ρ₂|.
///
/// For any admissible x₀, the line f(x) = 1 − 2x dominates the envelope
/// g(x) = a + 4b·sqrt((1−μ̃)² − ρ₁²x) on the admissible x range, touching it
/// tangentially at x₀, with
///
/// ```text
/// a = 1 + 2x₀ − 4(1−μ̃)²/ρ₁²,    b = sqrt((1−μ̃)² − ρ₁²x₀) / ρ₁².
/// ```
///
/// This yields |ρ₂| ≥ a + b(1 + |ρ₂|² − 2ρ₁²) for stable equilibria.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LemmaTwoParams {
    pub rho1: f64,
    pub mu_tilde: f64,
    pub x0: f64,
    pub a: f64,
    pub b: f64,
}

impl LemmaTwoParams {
    /// Right end of the admissible x range, min(1, (1−μ̃)²/ρ₁²).
    pub fn x_max(&self) -> f64 {
        let om = 1.0 - self.mu_tilde;
        (om * om / (self.rho1 * self.rho1)).min(1.0)
    }

    /// The envelope g(x) = a + 4b·sqrt((1−μ̃)² − ρ₁²x).
    pub fn envelope(&self, x: f64) -> f64 {
        let om = 1.0 - self.mu_tilde;
        self.a + 4.0 * self.b * (om * om - self.rho1 * self.rho1 * x).max(0.0).sqrt()
    }

    /// Gap (1 − 2x) − g(x); non-negative on the admissible range.
    pub fn pointwise_gap(&self, x: f64) -> f64 {
        1.0 - 2.0 * x - self.envelope(x)
    }

    /// Minimum gap over a uniform grid of `samples` points on [0, x_max].
    pub fn min_gap_on_grid(&self, samples: usize) -> f64 {
        let xm = self.x_max();
        (0..=samples)
            .map(|i| self.pointwise_gap(xm * (i as f64 / samples as f64)))
            .fold(f64::INFINITY, f64::min)
    }

    /// The scalar lower bound a + b·(1 + |ρ₂|² − 2ρ₁²) that |ρ₂| must exceed.
    pub fn rho2_lower_bound(&self, rho2_abs: f64) -> f64 {
        self.a + self.b * (1.0 + rho2_abs * rho2_abs - 2.0 * self.rho1 * self.rho1)
    }
}

/// Builds the tangent-line parameters at x₀. Requires ρ₁ > 0 (the bound is
/// vacuous for incoherent states: ρ₁ = 0 admits |ρ₂| = 0), μ̃ ∈ (0, 1], and
/// x₀ in the admissible range.
pub fn lemma2_params(rho1: f64, mu_tilde: f64, x0: f64) -> Result<LemmaTwoParams, CertificateError> {
    if rho1.is_nan() || rho1 <= 0.0 {
        return Err(CertificateError::Domain(format!("rho1 must be > 0, got {rho1}")));
    }
    if mu_tilde.is_nan() || mu_tilde <= 0.0 || mu_tilde > 1.0 {
        return Err(CertificateError::Domain(format!("mu_tilde must be in (0, 1], got {mu_tilde}")));
    }
    let om = 1.0 - mu_tilde;
    let x_max = (om * om / (rho1 * rho1)).min(1.0);
    if !(0.0..=x_max).contains(&x0) {
        return Err(CertificateError::Domain(format!(
            "x0 = {x0} outside admissible range [0, {x_max}]"
        )));
    }
    let a = 1.0 + 2.0 * x0 - 4.0 * om * om / (rho1 * rho1);
    let radicand = (om * om - rho1 * rho1 * x0).max(0.0);
    let b = radicand.sqrt() / (rho1 * rho1);
    let p = LemmaTwoParams { rho1, mu_tilde, x0, a, b };
    debug_assert!(p.pointwise_gap(x0).abs() < 1e-10, "tangency at x0 broken");
    Ok(p)
}

/// Closed-form optimizer of the |ρ₂| lower bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Lemma3Result {
    /// x₀* = (1−μ̃)²/ρ₁² − (1 − 2ρ₁²)²/(16ρ₁²).
    pub x0_star: f64,
    /// The resulting bound |ρ₂| ≥ 1 − 2x₀*.
    pub rho2_lower: f64,
}

/// The x₀ that maximizes the weakened bound a + b(1 − 2ρ₁²), in closed form.
///
/// Applicable when ρ₁ > 0, 1 − 2ρ₁² ≥ 0, and x₀* lands inside [0, 1); the
/// lower end requires ρ₁² ≥ 2(μ̃ − 3/4), which is automatic for μ̃ ≤ 3/4.
/// Outside those conditions the optimum sits on the boundary of the
/// admissible range and the closed form does not describe it.
pub fn lemma3_x0star(rho1: f64, mu_tilde: f64) -> Result<Lemma3Result, CertificateError> {
    if rho1.is_nan() || rho1 <= 0.0 {
        return Err(CertificateError::Domain(format!("rho1 must be > 0, got {rho1}")));
    }
    let rho1_sq = rho1 * rho1;
    // Roundoff slack so rho1 = sqrt(1/2) stays admissible.
    let coeff = (1.0 - 2.0 * rho1_sq).max(0.0);
    if 1.0 - 2.0 * rho1_sq < RADICAND_CLAMP {
        return Err(CertificateError::Inapplicable(format!(
            "1 - 2*rho1^2 = {:.3e} < 0: closed form needs rho1^2 <= 1/2",
            1.0 - 2.0 * rho1_sq
        )));
    }
    let om = 1.0 - mu_tilde;
    let mut x0_star = om * om / rho1_sq - coeff * coeff / (16.0 * rho1_sq);
    if x0_star < 0.0 {
        if x0_star > RADICAND_CLAMP {
            x0_star = 0.0;
        } else {
            return Err(CertificateError::Inapplicable(format!(
                "x0* = {x0_star:.3e} < 0: needs rho1^2 >= 2(mu_tilde - 3/4)"
            )));
        }
    }
    if x0_star >= 1.0 {
        return Err(CertificateError::Inapplicable(format!(
            "x0* = {x0_star:.3e} >= 1: optimum lies outside the admissible range"
        )));
    }
    Ok(Lemma3Result { x0_star, rho2_lower: 1.0 - 2.0 * x0_star })
}

/// Verdict of the connectivity theorem for a given μ̃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem1Verdict {
    /// μ̃ > 3/4: every stable equilibrium is the all-in-phase state.
    AllInPhaseForced,
    /// μ̃ ≤ 3/4: the certificate chain alone does not force synchrony.
    Inconclusive,
}

/// μ̃ > 3/4 forces the all-in-phase state through the chain
/// |ρ₂| ≥ 1/2  ⇒  ρ₁² ≥ 1/8  ⇒  ρ₁ > √2(1−μ̃); the final comparison
/// 1/8 > 2(1−μ̃)² holds exactly when μ̃ > 3/4.
pub fn theorem1_verdict(mu_tilde: f64) -> Theorem1Verdict {
    if mu_tilde > 0.75 {
        debug_assert!(0.125 > 2.0 * (1.0 - mu_tilde) * (1.0 - mu_tilde));
        Theorem1Verdict::AllInPhaseForced
    } else {
        Theorem1Verdict::Inconclusive
    }
}

/// Thresholds attached to the case-(ii) non-edge sum.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Eq14Check {
    /// (1/n²) Σ_{j,k} (1−A_jk)(cos(θ_k−θ_j) − cos²(θ_k−θ_j)).
    pub lhs_normalized: f64,
    /// Absolute threshold −0.49900.
    pub threshold_abs: f64,
    /// Connectivity-scaled threshold −1.9921(1−μ̃).
    pub threshold_mu: f64,
}

impl Eq14Check {
    /// Whether the non-edge sum is at or below both thresholds, as any
    /// stable case-(ii) pattern must be.
    pub fn passes(&self) -> bool {
        self.lhs_normalized <= self.threshold_abs && self.lhs_normalized <= self.threshold_mu
    }
}

/// Evaluates the case-(ii) non-edge sum against its reported thresholds.
/// Applies only in the case-(ii) regime (ρ₁ < 0.03166, |ρ₂| < 0.04474,
/// μ̃ ≥ 0.7495); outside it the thresholds say nothing and an error is
/// returned. The average non-edge contribution being ≤ −1.9921 is what
/// forces non-neighbors into near anti-synchrony.
pub fn eq14_check(g: &Graph, s: &PhaseState) -> Result<Eq14Check, CertificateError> {
    check_sizes(g, s)?;
    let conn = g
        .connectivity()
        .map_err(|e| CertificateError::Domain(format!("connectivity unavailable: {e}")))?;
    let mu_tilde = conn.mu_tilde_f64();
    let rho1 = moment(s, 1).expect("m=1").norm();
    let rho2 = moment(s, 2).expect("m=2").norm();
    if mu_tilde < CASE_II_MU_TILDE_MIN || rho1 >= CASE_II_RHO1_MAX || rho2 >= CASE_II_RHO2_MAX {
        return Err(CertificateError::Inapplicable(format!(
            "outside case-(ii) regime: mu_tilde = {mu_tilde:.4}, rho1 = {rho1:.4}, |rho2| = {rho2:.4}"
        )));
    }
    let (lhs, _) = eq5_check(g, s)?;
    let nf = g.n() as f64;
    Ok(Eq14Check {
        lhs_normalized: lhs / (nf * nf),
        threshold_abs: CASE_II_NONEDGE_BOUND,
        threshold_mu: -CASE_II_NONEDGE_MU_COEFF * (1.0 - mu_tilde),
    })
}

/// Every certificate of the chain evaluated on one (graph, state) pair.
///
/// For a spectrally stable equilibrium all applicable entries must pass:
/// lxb_value ≤ tol·n², eq5 lhs ≤ rhs + tol·n², slacks ≥ −tol,
/// eq8_max ≤ tol, and no per-node violations.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub mu_tilde: f64,
    pub rho1: f64,
    pub rho2_abs: f64,
    pub max_abs_sin: f64,
    pub lxb_value: f64,
    pub eq5_lhs: f64,
    pub eq5_rhs: f64,
    pub eq6_slack: f64,
    pub eq8_max: f64,
    /// None when the per-node sine bound is violated outright (the bound is
    /// then inapplicable and eq8_max is already positive).
    pub eq9_slack: Option<f64>,
    pub eq10_slack: f64,
    pub lemma1_violations: usize,
    pub corollary1_applies: bool,
    pub theorem1_verdict: Theorem1Verdict,
}

impl CertificateReport {
    /// Names of the certificate entries a spectrally *stable* state violates.
    /// Empty for every sound stable equilibrium.
    pub fn violations_when_stable(&self) -> Vec<&'static str> {
        let n2 = (self.n * self.n) as f64;
        let mut out = Vec::new();
        if self.lxb_value > INEQ_TOL * n2 {
            out.push("lxb");
        }
        if self.eq5_lhs > self.eq5_rhs + INEQ_TOL * n2 {
            out.push("eq5");
        }
        if self.eq6_slack < -INEQ_TOL {
            out.push("eq6");
        }
        if self.eq8_max > INEQ_TOL {
            out.push("eq8");
        }
        match self.eq9_slack {
            Some(s) if s < -INEQ_TOL => out.push("eq9"),
            None => out.push("eq9-inapplicable"),
            _ => {}
        }
        if self.eq10_slack < -INEQ_TOL {
            out.push("eq10");
        }
        if self.lemma1_violations > 0 {
            out.push("lemma1");
        }
        if self.corollary1_applies && self.max_abs_sin >= std::f64::consts::FRAC_1_SQRT_2 {
            out.push("corollary1");
        }
        out
    }

    /// Whether the report is consistent with a given spectral classification.
    /// Certificates are necessary conditions for stability, so only the
    /// `Stable` class can be contradicted.
    pub fn consistent_with(&self, class: Classification) -> bool {
        match class {
            Classification::Stable => self.violations_when_stable().is_empty(),
            Classification::Unstable | Classification::Marginal => true,
        }
    }
}

/// Evaluates the full certificate chain for one (graph, state) pair. The
/// state is normalized internally; μ̃ is taken from the graph.
pub fn full_report(g: &Graph, s: &PhaseState) -> Result<CertificateReport, CertificateError> {
    check_sizes(g, s)?;
    let conn = g
        .connectivity()
        .map_err(|e| CertificateError::Domain(format!("connectivity unavailable: {e}")))?;
    let mu_tilde = conn.mu_tilde_f64();
    let n = g.n();
    let (ns, _) = normalize_phase(s);

    let rho1 = moment(&ns, 1).expect("m=1").norm();
    let rho2_abs = moment(&ns, 2).expect("m=2").norm();
    let max_abs_sin = ns.phases().iter().map(|t| t.sin().abs()).fold(0.0, f64::max);

    let lxb_value = lxb_stability_value(g, &ns)?;
    let (eq5_lhs, eq5_rhs) = eq5_check(g, &ns)?;
    let nf = n as f64;
    let eq6_slack = rho1 * rho1 - (1.0 + rho2_abs * rho2_abs) / 2.0 - eq5_lhs / (nf * nf);
    let eq8 = eq8_max(&ns, mu_tilde);
    let eq9 = eq9_slack(&ns, mu_tilde).ok();
    let eq10 = eq10_slack(&ns, mu_tilde);
    let lemma1_violations = (0..n)
        .filter(|&j| !lemma1_check_normalized(g, &ns, mu_tilde, j).holds(n))
        .count();

    Ok(CertificateReport {
        n,
        mu_tilde,
        rho1,
        rho2_abs,
        max_abs_sin,
        lxb_value,
        eq5_lhs,
        eq5_rhs,
        eq6_slack,
        eq8_max: eq8,
        eq9_slack: eq9,
        eq10_slack: eq10,
        lemma1_violations,
        corollary1_applies: corollary1_check(&ns, mu_tilde),
        theorem1_verdict: theorem1_verdict(mu_tilde),
    })
}
