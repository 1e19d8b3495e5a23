use proptest::prelude::*;

use credal_belief::SubsetMask;
use credal_belief::mc::{CredalPolytopeSet, MCConfig, estimate};
use credal_belief::ternary::{
    BaryPoint, CredalComponent, CredalSet3, LowerProbBounds3, bel_from_bounds, bel_table, hexagon_polygon,
    mass_from_credal, partition_membership,
};

fn point() -> impl Strategy<Value = BaryPoint> {
    (0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64)
        .prop_filter("nonzero", |(a, b, c)| a + b + c > 1e-3)
        .prop_map(|(a, b, c)| {
            let t = a + b + c;
            BaryPoint::new(a / t, b / t, 1.0 - a / t - b / t).unwrap()
        })
}

fn polygon() -> impl Strategy<Value = CredalSet3> {
    prop::collection::vec(point(), 3..7).prop_filter_map("degenerate hull", |pts| {
        let c = CredalComponent::hull_of(&pts).ok()?;
        (c.dimension() == 2).then(|| CredalSet3::single(c))
    })
}

fn bounds() -> impl Strategy<Value = LowerProbBounds3> {
    ([0.0..0.5f64, 0.0..0.5f64, 0.0..0.5f64], [0.3..1.0f64, 0.3..1.0f64, 0.3..1.0f64])
        .prop_filter_map("incoherent", |(lo, hi)| LowerProbBounds3::new(lo, hi).ok())
}

fn permuted(p: &BaryPoint, perm: [usize; 3]) -> BaryPoint {
    let c = p.coords();
    BaryPoint::from_array([c[perm[0]], c[perm[1]], c[perm[2]]]).unwrap()
}

fn permute_mask(x: SubsetMask, perm: [usize; 3]) -> SubsetMask {
    // atom i of the permuted frame is atom perm[i] of the original
    (0..3).filter(|&i| x.contains(perm[i])).fold(SubsetMask::EMPTY, |m, i| m.with(i))
}

const PERMS: [[usize; 3]; 5] = [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_covers_the_simplex(p in point(), probes in prop::collection::vec(point(), 50)) {
        for q in &probes {
            prop_assert!(!partition_membership(q, &p).is_empty());
        }
        for i in 0..3 {
            prop_assert!(!partition_membership(&BaryPoint::corner(i), &p).is_empty());
        }
    }

    #[test]
    fn polygon_masses_form_a_mass_function(set in polygon()) {
        let m = mass_from_credal(&set).unwrap();
        let total: f64 = m.masses().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        prop_assert!(m.masses().iter().all(|&v| v >= 0.0));
        prop_assert_eq!(m.mass(SubsetMask::EMPTY), 0.0);
    }

    #[test]
    fn shrinking_the_set_raises_belief(set in polygon()) {
        let big = bel_table(&set);
        let vertex = set.components()[0].vertices()[0];
        let small = bel_table(&CredalSet3::points(&[vertex]).unwrap());
        for x in big.frame().subsets() {
            prop_assert!(small.value(x) >= big.value(x) - 1e-9, "{x:?}");
        }
    }

    #[test]
    fn relabelling_atoms_permutes_belief(set in polygon()) {
        let bel = bel_table(&set);
        for perm in PERMS {
            let pts: Vec<BaryPoint> = set.vertices().map(|p| permuted(p, perm)).collect();
            let moved = bel_table(&CredalSet3::single(CredalComponent::hull_of(&pts).unwrap()));
            for x in bel.frame().subsets() {
                prop_assert!((moved.value(permute_mask(x, perm)) - bel.value(x)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn bounds_closed_form_matches_geometry(b in bounds()) {
        let closed = bel_from_bounds(&b);
        let hull = bel_table(&hexagon_polygon(&b).unwrap());
        for x in closed.frame().subsets() {
            prop_assert!((closed.value(x) - hull.value(x)).abs() < 1e-9, "{x:?}: {} vs {}", closed.value(x), hull.value(x));
        }
    }

    #[test]
    fn hexagon_respects_the_bounds(b in bounds()) {
        let r = b.reachable();
        for p in hexagon_polygon(&b).unwrap().vertices() {
            for i in 0..3 {
                prop_assert!(p.get(i) >= r.lower()[i] - 1e-9 && p.get(i) <= r.upper()[i] + 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn exact_masses_match_sampling(set in polygon(), seed in any::<u64>()) {
        let exact = mass_from_credal(&set).unwrap();
        let n = 40_000;
        let est = estimate(&CredalPolytopeSet::from_credal3(&set), &MCConfig::new(n, seed).unwrap()).unwrap();
        for x in exact.frame().subsets() {
            let p = exact.mass(x);
            let se = (p * (1.0 - p) / n as f64).sqrt();
            prop_assert!((est.mass(x) - p).abs() <= 5.0 * se + 1.0 / n as f64, "{x:?}: {} vs {p}", est.mass(x));
        }
    }
}

#[test]
fn full_simplex_is_vacuous() {
    let m = mass_from_credal(&CredalSet3::full_simplex()).unwrap();
    assert!((m.mass(SubsetMask(7)) - 1.0).abs() < 1e-12);
}

#[test]
fn incoherent_bounds_are_contradictory() {
    assert!(LowerProbBounds3::new([0.6, 0.5, 0.0], [1.0, 1.0, 1.0]).is_err());
    assert!(LowerProbBounds3::new([0.0, 0.0, 0.0], [0.3, 0.3, 0.3]).is_err());
}

#[test]
fn non_convex_polygons_are_rejected() {
    let p = |a, b, c| BaryPoint::new(a, b, c).unwrap();
    let dart = vec![p(0.8, 0.1, 0.1), p(0.1, 0.8, 0.1), p(0.3, 0.3, 0.4), p(0.1, 0.1, 0.8)];
    assert!(CredalComponent::polygon(dart).is_err());
}
