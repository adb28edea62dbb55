//! Certificate soundness across the stable equilibria this crate can build:
//! every spectrally stable state found on cycles and small-offset circulants
//! up to n = 60 must clear the full certificate chain.

use kuramoto_sync::{
    full_report, residual, spectrum, Classification, Graph, PhaseState,
};

#[test]
fn all_stable_twisted_states_pass_every_certificate() {
    let mut stable_found = 0usize;
    let mut checked_graphs = 0usize;
    for n in 5..=60usize {
        let offset_sets: [&[usize]; 3] = [&[1], &[1, 2], &[1, 2, 3]];
        for offsets in offset_sets {
            if offsets.last().copied().unwrap() > n / 2 {
                continue;
            }
            let g = match Graph::circulant(n, offsets) {
                Ok(g) => g,
                Err(_) => continue,
            };
            checked_graphs += 1;

            // The all-in-phase state is stable on every connected graph.
            let in_phase = PhaseState::in_phase(n);
            let rep = spectrum(&g, &in_phase).expect("equilibrium");
            assert_eq!(rep.classification, Classification::Stable, "in-phase on n={n}");
            let cert = full_report(&g, &in_phase).expect("report");
            assert!(
                cert.violations_when_stable().is_empty(),
                "in-phase n={n} offsets={offsets:?}: {:?}",
                cert.violations_when_stable()
            );

            for q in 1..=(n / 2) {
                let s = PhaseState::twisted(n, q);
                assert!(
                    residual(&g, &s).expect("sizes match") < 1e-8,
                    "twisted state must be an equilibrium: n={n} q={q}"
                );
                let rep = spectrum(&g, &s).expect("equilibrium");
                if rep.classification != Classification::Stable {
                    continue;
                }
                stable_found += 1;
                let cert = full_report(&g, &s).expect("report");
                let violations = cert.violations_when_stable();
                assert!(
                    violations.is_empty(),
                    "stable twisted state fails certificates: n={n} offsets={offsets:?} q={q}: \
                     {violations:?}"
                );
                assert!(cert.consistent_with(Classification::Stable));
            }
        }
    }
    // Long cycles hold many stable twists (q/n < 1/4), so the sweep must
    // have exercised the chain broadly.
    assert!(stable_found > 300, "only {stable_found} stable patterns found");
    assert!(checked_graphs > 150);
}
