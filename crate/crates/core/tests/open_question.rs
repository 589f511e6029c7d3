//! Extended pairs `A ∪ -A`, `B ∪ -B` for r > 2. Whether these are isomorphic
//! is open; the verdicts are printed as data and only their definiteness is
//! checked.

use circ_spectra::construction::{full_report, ConstructionParams};
use circ_spectra::isomorphism::Status;

#[test]
fn extended_pairs_get_definite_verdicts() {
    for (r, p) in [(3u32, 3u64), (3, 5), (4, 3)] {
        let params = ConstructionParams::new(r, p, Some(-1)).unwrap();
        let report = full_report(&params).unwrap();
        println!(
            "n={:<3} {} vs {}: {:?} ({:?}) multigraph={} undirected={}",
            report.n,
            report.graph_x,
            report.graph_y,
            report.verdict.status,
            report.verdict.reason,
            report.multigraph,
            report.undirected,
        );
        assert!(report.open_question_data);
        assert!(report.isospectral);
        assert!(!report.multigraph);
        assert!(report.undirected);
        assert_ne!(report.verdict.status, Status::Unknown);
        if let Some(w) = &report.verdict.witness {
            assert!(w.verify(&report.graph_x, &report.graph_y));
        }
    }
}

#[test]
fn extended_pairs_with_other_multipliers_stay_isospectral() {
    for r in 2..=5u32 {
        for p in [3u64, 5, 7, 11, 13] {
            let n = (1i64 << r) * p as i64;
            if n > 500 {
                continue;
            }
            let smallest = (2..n).find(|&q| circ_spectra::arith::gcd(q as u64, n as u64) == 1).unwrap();
            for q in [-1, smallest] {
                let params = ConstructionParams::new(r, p, Some(q)).unwrap();
                let (x, y) = circ_spectra::construction::extend_pair(&params).unwrap();
                assert_eq!(x.degree(), 2 * p as usize);
                assert!(circ_spectra::graph::isospectral(&x, &y).unwrap(), "r={r} p={p} q={q}");
            }
        }
    }
}
