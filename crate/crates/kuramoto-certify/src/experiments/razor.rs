//! The razor's-edge sequence twin(C₄, m).
//!
//! Twinning the 4-cycle with K_m gives networks whose connectivity
//! (3m−1)/(4m−1) climbs toward 3/4 from below while the inherited q=1
//! twisted state stays an exact equilibrium whose Jacobian has no positive
//! eigenvalue but several zeros. Linear classification must come out
//! `Marginal` for every member; long simulations nevertheless suggest these
//! networks synchronize from almost everywhere, which the attached basin
//! estimates probe.

use std::f64::consts::FRAC_PI_2;

use kuramoto_sync::{residual, spectrum, Graph, PhaseState, SpectrumReport};
use serde::Serialize;

use crate::error::HarnessError;
use crate::experiments::basin::{run_basin, BasinEstimate, BasinOptions};

#[derive(Debug, Clone, Serialize)]
pub struct RazorEdgeRow {
    pub m: usize,
    pub n: usize,
    /// Connectivity (3m−1)/(4m−1), exact.
    pub mu_num: u64,
    pub mu_den: u64,
    pub mu: f64,
    /// rhs ∞-norm of the inherited twisted state (an exact equilibrium).
    pub residual: f64,
    pub spectrum: SpectrumReport,
    pub basin: BasinEstimate,
}

/// The q=1 twisted state of C₄ lifted to twin(C₄, m): every node of clique
/// `p` carries phase pπ/2.
pub fn razor_state(m: usize) -> PhaseState {
    PhaseState::new(
        (0..4).flat_map(|p| std::iter::repeat_n(p as f64 * FRAC_PI_2, m)).collect(),
    )
}

pub fn run_razor_edge(
    m_max: usize,
    trials: usize,
    seed: u64,
    basin_opts: &BasinOptions,
) -> Result<Vec<RazorEdgeRow>, HarnessError> {
    if m_max < 1 {
        return Err(HarnessError::Config("m_max must be >= 1".into()));
    }
    let c4 = Graph::cycle(4).expect("C4 exists");
    let mut rows = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let g = c4.twin(m).expect("twinning C4");
        let s = razor_state(m);
        let res = residual(&g, &s).expect("sizes match");
        let rep = spectrum(&g, &s)
            .map_err(|e| HarnessError::Numeric(format!("spectrum failed at m = {m}: {e}")))?;
        let conn = g.connectivity().expect("n >= 2");
        let mu = conn.mu();
        let mut opts = *basin_opts;
        opts.stream_offset = (m as u64) << 32;
        let basin = run_basin(&g, &format!("twin(C4,{m})"), trials, seed, &opts);
        rows.push(RazorEdgeRow {
            m,
            n: g.n(),
            mu_num: *mu.numer(),
            mu_den: *mu.denom(),
            mu: conn.mu_f64(),
            residual: res,
            spectrum: rep,
            basin,
        });
    }
    Ok(rows)
}
