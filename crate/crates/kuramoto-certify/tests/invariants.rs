//! Chain-consistency invariant: wherever the verdict says the all-in-phase
//! state is forced (μ̃ > 3/4), no generated network may hold a spectrally
//! stable non-synchronous equilibrium.
//!
//! Twisted states are classified exhaustively for every dense circulant up
//! to n = 40. Random-initial-condition probes (200 per graph) run on a
//! deterministic subsample; the exhaustive version would cost hours without
//! adding information beyond the n ≤ 24 sweep in the acceptance suite.

use rayon::prelude::*;

use kuramoto_certify::experiments::dense_circulants;
use kuramoto_certify::rng::{random_state, trial_rng};
use kuramoto_sync::{
    integrate, moment, refine_equilibrium, spectrum, theorem1_verdict, Classification, Graph,
    IntegratorOptions, PhaseState, StopCondition, SyncCriterion, Theorem1Verdict,
};

#[test]
fn chain_consistency_no_stable_patterns_above_three_quarters() {
    let graphs = dense_circulants(40);
    assert!(graphs.len() > 20_000, "enumeration looks truncated: {}", graphs.len());

    let offenders: Vec<String> = graphs
        .par_iter()
        .flat_map_iter(|(n, offsets)| {
            let g = Graph::circulant(*n, offsets).expect("filtered to connected");
            let mu_tilde = g.connectivity().expect("n >= 2").mu_tilde_f64();
            assert_eq!(theorem1_verdict(mu_tilde), Theorem1Verdict::AllInPhaseForced);
            let mut bad = Vec::new();
            for q in 1..=(n / 2) {
                let s = PhaseState::twisted(*n, q);
                let rep = spectrum(&g, &s).expect("twisted states are circulant equilibria");
                if rep.classification == Classification::Stable {
                    bad.push(format!("circulant(n={n}, offsets={offsets:?}) q={q}"));
                }
            }
            bad
        })
        .collect();
    assert!(offenders.is_empty(), "stable non-synchronous twisted states: {offenders:?}");

    // Random-initial-condition probes on a deterministic subsample of the
    // larger graphs.
    let big: Vec<&(usize, Vec<usize>)> = graphs.iter().filter(|(n, _)| *n >= 25).collect();
    let stride = (big.len() / 12).max(1);
    let sync = SyncCriterion::default();
    let opts = IntegratorOptions {
        record_stride: usize::MAX,
        stop: StopCondition { sync: Some(sync), equilibrium_residual: Some(1e-8) },
        ..Default::default()
    };
    for (gi, (n, offsets)) in big.iter().step_by(stride).enumerate() {
        let g = Graph::circulant(*n, offsets).expect("connected");
        let failures: Vec<u64> = (0..200u64)
            .into_par_iter()
            .filter(|&trial| {
                let mut rng = trial_rng(0x17a1u64, ((gi as u64) << 32) | trial);
                let s0 = random_state(g.n(), &mut rng);
                let traj = integrate(&g, &s0, 1e3, &opts).expect("valid options");
                let rho1 = moment(traj.final_state(), 1).expect("m=1").norm();
                rho1 <= sync.rho1_min
            })
            .collect();
        assert!(
            failures.is_empty(),
            "circulant(n={n}, offsets={offsets:?}): trials {failures:?} missed synchrony"
        );
        // The converged endpoints really are the all-in-phase state.
        let mut rng = trial_rng(0x17a1u64, (gi as u64) << 32);
        let s0 = random_state(g.n(), &mut rng);
        let traj = integrate(&g, &s0, 1e3, &opts).expect("valid options");
        let eq = refine_equilibrium(&g, traj.final_state(), 1e-12).expect("near equilibrium");
        let rep = spectrum(&g, &eq).expect("equilibrium");
        assert_eq!(rep.classification, Classification::Stable);
        assert_eq!(rep.zero_multiplicity, 1);
    }
}
