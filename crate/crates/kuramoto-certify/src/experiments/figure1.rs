//! Bound-curve data: the sufficient-connectivity bound per n, the densest
//! circulant pattern found by the budgeted search, and — for n divisible by
//! four — the razor's-edge connectivity (3m−1)/(4m−1), m = n/4.

use std::io::Write;

use kuramoto_sync::{sync_sufficient_mu, Rational};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::HarnessError;
use crate::experiments::pattern::run_pattern_search;

#[derive(Debug, Clone, Serialize)]
pub struct Figure1Row {
    pub n: u64,
    pub bound_num: u64,
    pub bound_den: u64,
    pub bound: f64,
    pub pattern_mu: Option<f64>,
    pub pattern_offsets: Option<Vec<usize>>,
    pub pattern_q: Option<usize>,
    pub search_complete: bool,
    /// Connectivity of twin(C₄, n/4) when 4 | n.
    pub razor_mu: Option<f64>,
}

pub fn run_figure1(n_min: u64, n_max: u64, budget: usize) -> Result<Vec<Figure1Row>, HarnessError> {
    if !(5..=200).contains(&n_min) || !(5..=200).contains(&n_max) || n_min > n_max {
        return Err(HarnessError::Config(format!(
            "n range must satisfy 5 <= n_min <= n_max <= 200, got {n_min}..={n_max}"
        )));
    }
    (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let bound = sync_sufficient_mu(n);
            let search = run_pattern_search(n as usize, budget)?;
            let razor_mu = if n % 4 == 0 {
                let m = n / 4;
                Some(Rational::new(3 * m - 1, 4 * m - 1))
            } else {
                None
            };
            let (pattern_mu, pattern_offsets, pattern_q) = match &search.best {
                Some(rec) => (Some(rec.mu), Some(rec.offsets.clone()), Some(rec.q)),
                None => (None, None, None),
            };
            Ok(Figure1Row {
                n,
                bound_num: *bound.numer(),
                bound_den: *bound.denom(),
                bound: *bound.numer() as f64 / *bound.denom() as f64,
                pattern_mu,
                pattern_offsets,
                pattern_q,
                search_complete: search.complete,
                razor_mu: razor_mu.map(|r| *r.numer() as f64 / *r.denom() as f64),
            })
        })
        .collect()
}

pub fn write_figure1_csv<W: Write>(rows: &[Figure1Row], mut w: W) -> std::io::Result<()> {
    writeln!(
        w,
        "n,bound_num,bound_den,bound,pattern_mu,pattern_offsets,pattern_q,search_complete,razor_mu"
    )?;
    for r in rows {
        let offsets = r
            .pattern_offsets
            .as_ref()
            .map(|o| o.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(";"))
            .unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.bound_num,
            r.bound_den,
            r.bound,
            r.pattern_mu.map(|v| v.to_string()).unwrap_or_default(),
            offsets,
            r.pattern_q.map(|v| v.to_string()).unwrap_or_default(),
            r.search_complete,
            r.razor_mu.map(|v| v.to_string()).unwrap_or_default(),
        )?;
    }
    Ok(())
}
