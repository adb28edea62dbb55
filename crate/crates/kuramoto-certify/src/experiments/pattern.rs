//! Search for the densest circulant supporting a stable twisted state.
//!
//! Circulants with twisted states are the canonical family of
//! pattern-supporting networks, and their offset sets enumerate cleanly in
//! decreasing density, so a budgeted search yields a "densest found" record
//! (not a claim of "densest possible"). A found pattern denser than the
//! sufficient-connectivity bound would contradict the certificate chain and
//! aborts the run as a consistency violation.

use kuramoto_sync::{
    full_report, refine_equilibrium, spectrum, sync_sufficient_mu, CertificateReport,
    Classification, Graph, GraphError, PhaseState, SpectrumReport,
};
use serde::Serialize;

use crate::error::HarnessError;
use crate::experiments::Combinations;

/// The densest stable non-synchronous twisted state found.
#[derive(Debug, Clone, Serialize)]
pub struct PatternRecord {
    pub n: usize,
    pub offsets: Vec<usize>,
    /// Winding number of the stable twisted state (smallest, if several).
    pub q: usize,
    pub mu_num: u64,
    pub mu_den: u64,
    pub mu: f64,
    pub spectrum: SpectrumReport,
    pub certificates: CertificateReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternSearchResult {
    pub n: usize,
    pub budget: usize,
    pub graphs_examined: usize,
    /// True when the enumeration either finished or stopped early with a
    /// sound densest record (every denser graph already examined). False
    /// means the budget ran out and `best` is only best-so-far.
    pub complete: bool,
    pub best: Option<PatternRecord>,
}

/// Tests all twisted states q = 1..⌊n/2⌋ on one circulant; returns the
/// smallest stable winding number with its spectrum.
fn stable_twist(g: &Graph) -> Option<(usize, SpectrumReport)> {
    let n = g.n();
    for q in 1..=(n / 2) {
        let s = PhaseState::twisted(n, q);
        // Twisted states are exact circulant equilibria; refinement returns
        // immediately but keeps the path uniform with non-exact inputs.
        let Ok(s) = refine_equilibrium(g, &s, 1e-12) else { continue };
        let Ok(rep) = spectrum(g, &s) else { continue };
        if rep.classification == Classification::Stable {
            return Some((q, rep));
        }
    }
    None
}

/// Enumerates circulants on `n` nodes in decreasing density until a stable
/// pattern is found (then finishes that density batch) or `budget` graphs
/// have been examined.
pub fn run_pattern_search(n: usize, budget: usize) -> Result<PatternSearchResult, HarnessError> {
    if n < 5 {
        return Err(HarnessError::Config(format!("pattern search needs n >= 5, got {n}")));
    }
    let h = n / 2;
    let mut examined = 0usize;
    let mut best: Option<PatternRecord> = None;
    let mut complete = true;

    'batches: for k in (1..=h).rev() {
        for offsets in Combinations::new(h, k) {
            if examined >= budget {
                complete = false;
                break 'batches;
            }
            let g = match Graph::circulant(n, &offsets) {
                Ok(g) => g,
                Err(GraphError::Disconnected) => continue,
                Err(e) => return Err(HarnessError::Numeric(format!("circulant({n}): {e}"))),
            };
            examined += 1;
            let Some((q, rep)) = stable_twist(&g) else { continue };
            let conn = g.connectivity().expect("n >= 2");
            let replace = match &best {
                None => true,
                Some(b) => conn.mu() > kuramoto_sync::Rational::new(b.mu_num, b.mu_den),
            };
            if replace {
                let s = PhaseState::twisted(n, q);
                let certificates = full_report(&g, &s)
                    .map_err(|e| HarnessError::Numeric(format!("certificates: {e}")))?;
                let mu = conn.mu();
                best = Some(PatternRecord {
                    n,
                    offsets: offsets.clone(),
                    q,
                    mu_num: *mu.numer(),
                    mu_den: *mu.denom(),
                    mu: conn.mu_f64(),
                    spectrum: rep,
                    certificates,
                });
            }
        }
        // Every graph in later batches is strictly sparser than anything in
        // this one, so a hit here is the densest overall.
        if best.is_some() {
            break;
        }
    }

    if let Some(rec) = &best {
        let bound = sync_sufficient_mu(n as u64);
        let found = kuramoto_sync::Rational::new(rec.mu_num, rec.mu_den);
        if found > bound {
            return Err(HarnessError::Consistency(format!(
                "stable pattern on circulant n = {n}, offsets {:?} with mu = {}/{} above the \
                 sufficient-connectivity bound {}/{}",
                rec.offsets,
                rec.mu_num,
                rec.mu_den,
                bound.numer(),
                bound.denom()
            )));
        }
    }

    Ok(PatternSearchResult { n, budget, graphs_examined: examined, complete, best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_is_the_densest_pattern_on_five_nodes() {
        let res = run_pattern_search(5, 100).unwrap();
        assert!(res.complete);
        let rec = res.best.expect("C5 supports a stable q=1 twist");
        assert_eq!(rec.offsets, vec![1]);
        assert_eq!(rec.q, 1);
        assert_eq!((rec.mu_num, rec.mu_den), (1, 2));
        assert!(rec.certificates.eq10_slack >= -1e-9);
    }

    #[test]
    fn tiny_budget_flags_incomplete() {
        let res = run_pattern_search(9, 1).unwrap();
        assert!(!res.complete);
        assert_eq!(res.graphs_examined, 1);
    }

    #[test]
    fn rejects_small_n() {
        assert!(matches!(run_pattern_search(4, 10), Err(HarnessError::Config(_))));
    }
}
