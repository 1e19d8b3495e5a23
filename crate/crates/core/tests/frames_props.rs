use proptest::prelude::*;

use credal_belief::frames::{
    Frame, MassFunction, MassSpec, SetFunctionKind, SubsetMask, condition, conjunctive_combine, make_mass,
    mobius_forward, mobius_inverse,
};

const TOL: f64 = 1e-9;

/// A normalized mass function on `n` atoms with a few focal elements.
fn mass(n: usize, allow_empty: bool) -> impl Strategy<Value = MassFunction> {
    let size = 1usize << n;
    prop::collection::vec((0..size, 0.01..1.0f64), 1..6).prop_map(move |focal| {
        let frame = Frame::numbered(n).unwrap();
        let total: f64 = focal.iter().map(|(_, w)| w).sum();
        let mut dense = vec![0.0; size];
        for (i, w) in focal {
            let i = if !allow_empty && i == 0 { size - 1 } else { i };
            dense[i] += w / total;
        }
        MassFunction::from_dense(frame, dense, allow_empty).unwrap()
    })
}

fn frame_and_mass() -> impl Strategy<Value = MassFunction> {
    (2usize..=6).prop_flat_map(|n| mass(n, false))
}

fn pair() -> impl Strategy<Value = (MassFunction, MassFunction)> {
    (2usize..=5).prop_flat_map(|n| (mass(n, false), mass(n, false)))
}

fn triple() -> impl Strategy<Value = (MassFunction, MassFunction, MassFunction)> {
    (2usize..=4).prop_flat_map(|n| (mass(n, false), mass(n, false), mass(n, false)))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn mobius_round_trip(m in frame_and_mass()) {
        for kind in [SetFunctionKind::Belief, SetFunctionKind::Plausibility, SetFunctionKind::Commonality] {
            let f = mobius_forward(&m, kind);
            let back = mobius_inverse(&f).unwrap();
            prop_assert!(max_diff(back.masses(), m.masses()) < TOL, "{kind:?}");
        }
    }

    #[test]
    fn plausibility_is_dual_to_belief(m in frame_and_mass()) {
        let (bel, pl) = (m.belief(), m.plausibility());
        for x in m.frame().subsets() {
            let c = m.frame().complement(x);
            prop_assert!((pl.value(x) - (1.0 - bel.value(c))).abs() < TOL);
            prop_assert!(bel.value(x) <= pl.value(x) + TOL);
        }
    }

    #[test]
    fn belief_is_monotone(m in frame_and_mass()) {
        let bel = m.belief();
        for a in m.frame().subsets() {
            for b in m.frame().subsets().filter(|b| a.is_subset_of(*b)) {
                prop_assert!(bel.value(a) <= bel.value(b) + TOL);
            }
        }
    }

    #[test]
    fn commonalities_multiply_under_combination((m1, m2) in pair()) {
        let (m12, conflict) = conjunctive_combine(&m1, &m2, false).unwrap();
        let (q1, q2, q12) = (m1.commonality(), m2.commonality(), m12.commonality());
        for x in m1.frame().subsets().filter(|x| !x.is_empty()) {
            prop_assert!((q12.value(x) - q1.value(x) * q2.value(x)).abs() < TOL);
        }
        prop_assert!((m12.mass(SubsetMask::EMPTY) - conflict).abs() < TOL);
    }

    #[test]
    fn combination_commutes_and_associates((a, b, c) in triple()) {
        let ab = conjunctive_combine(&a, &b, false).unwrap().0;
        let ba = conjunctive_combine(&b, &a, false).unwrap().0;
        prop_assert!(max_diff(ab.masses(), ba.masses()) < TOL);
        let ab_c = conjunctive_combine(&ab, &c, false).unwrap().0;
        let bc = conjunctive_combine(&b, &c, false).unwrap().0;
        let a_bc = conjunctive_combine(&a, &bc, false).unwrap().0;
        prop_assert!(max_diff(ab_c.masses(), a_bc.masses()) < TOL);
    }

    #[test]
    fn conditioning_is_combination_with_a_categorical(m in frame_and_mass(), e in 1u32..64) {
        let frame = m.frame().clone();
        let e = SubsetMask(e & frame.full().bits());
        prop_assume!(!e.is_empty());
        let cat = make_mass(&frame, MassSpec::Categorical(e)).unwrap();
        let (by_rule, k1) = conjunctive_combine(&m, &cat, false).unwrap();
        let (by_cond, k2) = condition(&m, e, false).unwrap();
        prop_assert!(max_diff(by_rule.masses(), by_cond.masses()) < TOL);
        prop_assert!((k1 - k2).abs() < TOL);
        if k2 < 1.0 - 1e-9 {
            let (normed, _) = condition(&m, e, true).unwrap();
            let total: f64 = normed.masses().iter().sum();
            prop_assert!((total - 1.0).abs() < TOL);
            prop_assert!(normed.mass(SubsetMask::EMPTY) == 0.0);
        }
    }

    #[test]
    fn open_world_masses_round_trip(m in (2usize..=5).prop_flat_map(|n| mass(n, true))) {
        let bel = m.belief();
        let full = m.frame().full();
        prop_assert!((bel.value(full) - (1.0 - m.conflict())).abs() < TOL);
        let q = mobius_forward(&m, SetFunctionKind::Commonality);
        let back = mobius_inverse(&q).unwrap();
        prop_assert!(max_diff(back.masses(), m.masses()) < TOL);
    }
}

#[test]
fn invalid_set_functions_are_rejected() {
    let frame = Frame::binary();
    // bel(S) + bel(F) > bel(S ∪ F) breaks super-additivity
    let f = credal_belief::SetFunction::new(frame, SetFunctionKind::Belief, vec![0.0, 0.7, 0.7, 1.0]).unwrap();
    assert!(mobius_inverse(&f).is_err());
}

#[test]
fn total_conflict_cannot_be_normalized() {
    let frame = Frame::binary();
    let s = make_mass(&frame, MassSpec::Categorical(SubsetMask(1))).unwrap();
    let f = make_mass(&frame, MassSpec::Categorical(SubsetMask(2))).unwrap();
    assert_eq!(
        conjunctive_combine(&s, &f, true).unwrap_err(),
        credal_belief::Error::TotalConflict
    );
}
