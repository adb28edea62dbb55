//! Monte-Carlo estimate of the basin of the synchronous state.

use kuramoto_sync::{
    integrate, moment, Graph, IntegratorOptions, Method, StopCondition, StopReason, SyncCriterion,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Tolerances;
use crate::rng::{random_state, trial_rng};

#[derive(Debug, Clone, Copy)]
pub struct BasinOptions {
    pub t_end: f64,
    pub dt: f64,
    pub sync: SyncCriterion,
    /// Early exit at any equilibrium below this residual.
    pub equilibrium_residual: f64,
    /// Offset added to the per-trial stream index, so different experiments
    /// sharing one seed draw from disjoint streams.
    pub stream_offset: u64,
}

impl Default for BasinOptions {
    fn default() -> Self {
        BasinOptions {
            t_end: crate::config::DEFAULT_T_END,
            dt: kuramoto_sync::dynamics::DEFAULT_DT,
            sync: SyncCriterion::default(),
            equilibrium_residual: 1e-8,
            stream_offset: 0,
        }
    }
}

impl BasinOptions {
    pub fn with_tolerances(tol: &Tolerances) -> Self {
        let mut o = BasinOptions::default();
        if let Some(gap) = tol.sync_rho1_gap {
            o.sync.rho1_min = 1.0 - gap;
        }
        if let Some(r) = tol.sync_residual {
            o.sync.residual_max = r;
        }
        if let Some(r) = tol.equilibrium_residual {
            o.equilibrium_residual = r;
        }
        if let Some(dt) = tol.dt {
            o.dt = dt;
        }
        if let Some(t) = tol.t_end {
            o.t_end = t;
        }
        o
    }
}

/// Outcome counts over seeded random initial conditions.
#[derive(Debug, Clone, Serialize)]
pub struct BasinEstimate {
    pub graph_id: String,
    pub trials: usize,
    pub synced: usize,
    pub fraction: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    /// Trials that hit t_end without meeting the sync or equilibrium
    /// criteria; counted as non-synced.
    pub undetermined: usize,
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    assert!(trials >= 1);
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (((center - half) / denom).max(0.0), ((center + half) / denom).min(1.0))
}

#[derive(Clone, Copy, PartialEq)]
enum TrialOutcome {
    Synced,
    NonSyncEquilibrium,
    Undetermined,
}

/// Integrates `trials` random initial conditions, counting those that reach
/// the synchronous state. Trials run in parallel; each owns stream
/// `stream_offset + trial` of the seed, so the counts are identical for any
/// thread count.
pub fn run_basin(
    g: &Graph,
    graph_id: &str,
    trials: usize,
    seed: u64,
    opts: &BasinOptions,
) -> BasinEstimate {
    assert!(trials >= 1, "trials must be >= 1");
    let int_opts = IntegratorOptions {
        method: Method::Rk4 { dt: opts.dt },
        record_stride: usize::MAX,
        stop: StopCondition {
            sync: Some(opts.sync),
            equilibrium_residual: Some(opts.equilibrium_residual),
        },
    };
    let outcomes: Vec<TrialOutcome> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, opts.stream_offset + trial);
            let s0 = random_state(g.n(), &mut rng);
            let traj = integrate(g, &s0, opts.t_end, &int_opts).expect("fixed-step options are valid");
            match traj.stop_reason {
                StopReason::Synced => TrialOutcome::Synced,
                StopReason::Equilibrium => {
                    // The sync test is checked first, so reaching here means
                    // a non-synchronous equilibrium.
                    TrialOutcome::NonSyncEquilibrium
                }
                StopReason::TimeEnd => {
                    let rho1 = moment(traj.final_state(), 1).expect("m=1").norm();
                    if rho1 > opts.sync.rho1_min && traj.final_residual < opts.sync.residual_max {
                        TrialOutcome::Synced
                    } else {
                        TrialOutcome::Undetermined
                    }
                }
            }
        })
        .collect();

    let synced = outcomes.iter().filter(|&&o| o == TrialOutcome::Synced).count();
    let undetermined = outcomes.iter().filter(|&&o| o == TrialOutcome::Undetermined).count();
    let (wilson_low, wilson_high) = wilson_interval(synced, trials);
    BasinEstimate {
        graph_id: graph_id.to_string(),
        trials,
        synced,
        fraction: synced as f64 / trials as f64,
        wilson_low,
        wilson_high,
        undetermined,
    }
}
