mod common;

use proptest::prelude::*;

use credal_belief::Error;
use credal_belief::SubsetMask;
use credal_belief::binary::{
    EvidenceCounts, IntervalKnowledge, QueryKind, TriangleMeasure, combine_measures, evidence_measure,
    knowledge_measure,
};
use credal_belief::quadrature::Simpson;

const KINDS: [QueryKind; 3] = [QueryKind::Belief, QueryKind::Plausibility, QueryKind::Commonality];

fn interval() -> impl Strategy<Value = (f64, f64)> {
    (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
}

fn counts() -> impl Strategy<Value = EvidenceCounts> {
    (0u64..12, 0u64..12).prop_map(|(r, s)| EvidenceCounts::new(r, s))
}

/// Evidence combined with interval knowledge, normalized.
fn posterior(e: EvidenceCounts, (a, b): (f64, f64)) -> Option<TriangleMeasure> {
    let k = knowledge_measure(IntervalKnowledge::new(a, b).unwrap());
    combine_measures(&evidence_measure(e), &k, true).ok().map(|(m, _)| m)
}

fn same_queries(m1: &TriangleMeasure, m2: &TriangleMeasure, tol: f64) -> Result<(), TestCaseError> {
    for (u, v) in [(0.0, 1.0), (0.1, 0.4), (0.3, 0.3), (0.25, 0.8), (0.6, 0.95)] {
        for kind in KINDS {
            let (x, y) = (m1.query(kind, u, v).unwrap(), m2.query(kind, u, v).unwrap());
            prop_assert!((x - y).abs() < tol, "{kind:?} [{u}, {v}]: {x} vs {y}");
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_forms_match_quadrature(e in counts(), k in interval(), q in interval()) {
        let Some(m) = posterior(e, k) else { return Ok(()) };
        let quad = Simpson::with_tol(1e-10);
        for kind in KINDS {
            let closed = m.query(kind, q.0, q.1).unwrap();
            let numeric = m.query_numeric(kind, q.0, q.1, &quad).unwrap();
            prop_assert!((closed - numeric).abs() < 1e-6, "{kind:?}: {closed} vs {numeric}");
        }
    }

    #[test]
    fn posterior_matches_the_density_oracle(
        r in 1u64..20,
        s in 1u64..20,
        a in 0.05..0.6f64,
        w in 0.05..0.35f64,
    ) {
        let b = a + w;
        let raw = combine_measures(
            &evidence_measure(EvidenceCounts::new(r, s)),
            &knowledge_measure(IntervalKnowledge::new(a, b).unwrap()),
            false,
        )
        .unwrap()
        .0;
        let m = raw.normalized().unwrap();
        let p = m.predictive().unwrap();
        let oracle = common::Posterior { r, s, a, b, panels: 60 };
        prop_assert!((raw.conflict() - oracle.conflict()).abs() < 1e-6);
        prop_assert!((p.mass(SubsetMask(1)) - oracle.mass_s()).abs() < 1e-6);
        prop_assert!((p.mass(SubsetMask(2)) - oracle.mass_f()).abs() < 1e-6);
        let (u, v) = (a + 0.25 * w, a + 0.75 * w);
        prop_assert!((m.query(QueryKind::Belief, u, v).unwrap() - oracle.bel(u, v)).abs() < 1e-6);
        prop_assert!((m.query(QueryKind::Plausibility, u, v).unwrap() - oracle.pl(u, v)).abs() < 1e-6);
    }

    #[test]
    fn combination_commutes_and_associates(e in counts(), k1 in interval(), k2 in interval()) {
        let ev = evidence_measure(e);
        let a = knowledge_measure(IntervalKnowledge::new(k1.0, k1.1).unwrap());
        let b = knowledge_measure(IntervalKnowledge::new(k2.0, k2.1).unwrap());
        let ab = combine_measures(&a, &b, false).unwrap().0;
        let ba = combine_measures(&b, &a, false).unwrap().0;
        same_queries(&ab, &ba, 1e-12)?;
        let ab_e = combine_measures(&ab, &ev, false).unwrap().0;
        let a_be = combine_measures(&a, &combine_measures(&b, &ev, false).unwrap().0, false).unwrap().0;
        same_queries(&ab_e, &a_be, 1e-9)?;
        prop_assert!((ab_e.conflict() - a_be.conflict()).abs() < 1e-9);
    }

    #[test]
    fn evidence_counts_add(e1 in counts(), e2 in counts()) {
        let (m, _) = combine_measures(&evidence_measure(e1), &evidence_measure(e2), true).unwrap();
        same_queries(&m, &evidence_measure(e1 + e2), 1e-9)?;
    }

    #[test]
    fn predictive_is_a_belief_function(e in counts(), k in interval()) {
        let Some(m) = posterior(e, k) else { return Ok(()) };
        let p = m.predictive().unwrap();
        let total: f64 = p.masses().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(p.masses().iter().all(|&x| x >= 0.0));
        // the predictive belief of S lies between the knowledge bounds
        prop_assert!(p.belief().value(SubsetMask(1)) >= k.0 - 1e-12);
        prop_assert!(p.plausibility().value(SubsetMask(1)) <= k.1 + 1e-12);
    }

    #[test]
    fn queries_are_ordered(e in counts(), k in interval(), q in interval()) {
        let Some(m) = posterior(e, k) else { return Ok(()) };
        let bel = m.query(QueryKind::Belief, q.0, q.1).unwrap();
        let pl = m.query(QueryKind::Plausibility, q.0, q.1).unwrap();
        let com = m.query(QueryKind::Commonality, q.0, q.1).unwrap();
        prop_assert!(-1e-12 <= bel && bel <= pl + 1e-12 && pl <= 1.0 + 1e-12);
        prop_assert!(com <= pl + 1e-12);
    }
}

#[test]
fn knowledge_combines_by_intersection() {
    let a = knowledge_measure(IntervalKnowledge::new(0.2, 0.6).unwrap());
    let b = knowledge_measure(IntervalKnowledge::new(0.4, 0.9).unwrap());
    let (m, k) = combine_measures(&a, &b, true).unwrap();
    assert_eq!(k, 0.0);
    let p = m.predictive().unwrap();
    assert!((p.belief().value(SubsetMask(1)) - 0.4).abs() < 1e-12);
    assert!((p.plausibility().value(SubsetMask(1)) - 0.6).abs() < 1e-12);

    let c = knowledge_measure(IntervalKnowledge::new(0.7, 0.9).unwrap());
    let (raw, k) = combine_measures(&a, &c, false).unwrap();
    assert_eq!(k, 1.0);
    assert_eq!(raw.normalized().unwrap_err(), Error::TotalConflict);
}

#[test]
fn interval_knowledge_rejects_bad_bounds() {
    assert!(IntervalKnowledge::new(0.5, 0.4).is_err());
    assert!(IntervalKnowledge::new(-0.1, 0.4).is_err());
    assert!(IntervalKnowledge::new(0.1, f64::NAN).is_err());
}

#[test]
fn belief_of_intervals_under_knowledge() {
    let m = knowledge_measure(IntervalKnowledge::new(0.3, 0.4).unwrap());
    assert_eq!(m.query(QueryKind::Belief, 0.3, 1.0).unwrap(), 1.0);
    assert_eq!(m.query(QueryKind::Belief, 0.31, 1.0).unwrap(), 0.0);
}
