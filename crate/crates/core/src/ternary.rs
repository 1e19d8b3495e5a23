//! Exact beliefs on `{A, B, C}` induced by a credal set in the 2-simplex.
//!
//! Focal elements are labelled by a point `q` of the simplex, drawn with
//! uniform density. The label `q` splits the simplex into three closed
//! corner regions
//!
//! ```text
//! 𝒫_ω(q) = { p : p_ω · q_x ≥ p_x · q_ω  for every x ≠ ω }
//! ```
//!
//! (the distributions whose ratio `p_ω / q_ω` is largest), and once the
//! chance is known to lie in a set `𝒫` the focal element labelled `q`
//! supports `{ω : 𝒫 meets 𝒫_ω(q)}`. The mass of `X ⊆ Ω` is the area
//! fraction of the labels that support exactly `X`.
//!
//! For a single point `p` the labels that put `p` in `𝒫_ω(q)` form the
//! triangle spanned by `p` and the two corners other than `ω`, whose area
//! fraction is `p_ω`; for a convex component the region is the hull of the
//! two corners and the component's vertices. Plausibility of a singleton is
//! therefore the area of a union of hulls (inclusion–exclusion over convex
//! clips), belief of a pair is its complement, and belief of a singleton is
//! the simplex cut by one half-plane per vertex and rival atom.

use crate::error::{Error, Result};
use crate::frames::{
    Frame, MassFunction, SetFunction, SetFunctionKind, SubsetMask, mobius_inverse,
};
use crate::geometry::{
    self, BaryConstraint, GEOM_TOL, HalfPlane, Pt, SIMPLEX_AREA, area, clip_all, convex_hull_indices, to_plane,
    union_area,
};

/// Components per credal set; union areas cost up to `2^MAX_COMPONENTS`
/// clips.
pub const MAX_COMPONENTS: usize = 8;

/// A probability distribution on `{A, B, C}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaryPoint([f64; 3]);

impl BaryPoint {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let mut p = [a, b, c];
        for v in &mut p {
            if !v.is_finite() || *v < -GEOM_TOL {
                return Err(Error::InvalidPoint(format!("({a}, {b}, {c}) has a negative coordinate")));
            }
            *v = v.max(0.0);
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > GEOM_TOL {
            return Err(Error::InvalidPoint(format!("({a}, {b}, {c}) sums to {sum}")));
        }
        Ok(BaryPoint(p))
    }

    pub fn from_array(p: [f64; 3]) -> Result<Self> {
        BaryPoint::new(p[0], p[1], p[2])
    }

    /// Corner of the simplex where atom `i` has probability 1.
    pub fn corner(i: usize) -> Self {
        let mut p = [0.0; 3];
        p[i] = 1.0;
        BaryPoint(p)
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn to_plane(&self) -> Pt {
        to_plane(self.0)
    }

    /// Inverse of [`to_plane`](Self::to_plane), absorbing roundoff.
    pub fn from_plane(x: Pt) -> Result<Self> {
        let p = geometry::from_plane(x);
        BaryPoint::from_array(p)
    }
}

/// A convex piece of a credal set: a point, a segment or a convex polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct CredalComponent {
    vertices: Vec<BaryPoint>,
}

impl CredalComponent {
    pub fn point(p: BaryPoint) -> Self {
        CredalComponent { vertices: vec![p] }
    }

    pub fn segment(p: BaryPoint, q: BaryPoint) -> Result<Self> {
        if geometry::dist(p.to_plane(), q.to_plane()) <= GEOM_TOL {
            return Err(Error::InvalidComponent("segment endpoints coincide".into()));
        }
        Ok(CredalComponent {
            vertices: vec![p, q],
        })
    }

    /// A convex polygon. Vertices may be given in either orientation and are
    /// stored counterclockwise; repeated or collinear consecutive vertices
    /// and non-convex outlines are rejected.
    pub fn polygon(vertices: Vec<BaryPoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidComponent(format!("polygon needs 3 vertices, got {n}")));
        }
        let pts: Vec<Pt> = vertices.iter().map(BaryPoint::to_plane).collect();
        let orientation = geometry::signed_area(&pts);
        if orientation.abs() <= GEOM_TOL {
            return Err(Error::InvalidComponent("polygon has no area".into()));
        }
        let sign = orientation.signum();
        for i in 0..n {
            let (a, b, c) = (pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
            if geometry::dist(a, b) <= GEOM_TOL {
                return Err(Error::InvalidComponent("repeated polygon vertex".into()));
            }
            let turn = sign * geometry::cross(a, b, c);
            if turn.abs() <= GEOM_TOL {
                return Err(Error::InvalidComponent("collinear consecutive vertices".into()));
            }
            if turn < 0.0 {
                return Err(Error::InvalidComponent("polygon is not convex".into()));
            }
        }
        let mut vertices = vertices;
        if sign < 0.0 {
            vertices.reverse();
        }
        Ok(CredalComponent { vertices })
    }

    /// The convex hull of arbitrary points, as a point, segment or polygon.
    pub fn hull_of(points: &[BaryPoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidComponent("no points".into()));
        }
        let pts: Vec<Pt> = points.iter().map(BaryPoint::to_plane).collect();
        let vertices = convex_hull_indices(&pts)
            .into_iter()
            .map(|i| points[i])
            .collect();
        Ok(CredalComponent { vertices })
    }

    pub fn vertices(&self) -> &[BaryPoint] {
        &self.vertices
    }

    /// 0 for a point, 1 for a segment, 2 for a polygon.
    pub fn dimension(&self) -> usize {
        self.vertices.len().min(3) - 1
    }

    pub fn plane_vertices(&self) -> Vec<Pt> {
        self.vertices.iter().map(BaryPoint::to_plane).collect()
    }

    /// Whether `p` lies in this component (within [`GEOM_TOL`]).
    pub fn contains(&self, p: &BaryPoint) -> bool {
        let x = p.to_plane();
        geometry::halfplanes_of(&self.plane_vertices())
            .iter()
            .all(|h| h.contains(x))
    }
}

/// A credal set: a finite union of convex components of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct CredalSet3 {
    components: Vec<CredalComponent>,
}

impl CredalSet3 {
    pub fn new(components: Vec<CredalComponent>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidComponent("credal set is empty".into()));
        };
        if components.len() > MAX_COMPONENTS {
            return Err(Error::TooManyComponents(components.len()));
        }
        let d = first.dimension();
        if components.iter().any(|c| c.dimension() != d) {
            return Err(Error::MixedDimensions);
        }
        Ok(CredalSet3 { components })
    }

    /// A finite set of distributions.
    pub fn points(points: &[BaryPoint]) -> Result<Self> {
        CredalSet3::new(points.iter().copied().map(CredalComponent::point).collect())
    }

    pub fn single(component: CredalComponent) -> Self {
        CredalSet3 {
            components: vec![component],
        }
    }

    /// The whole simplex: no knowledge about the chance.
    pub fn full_simplex() -> Self {
        CredalSet3::single(CredalComponent {
            vertices: (0..3).map(BaryPoint::corner).collect(),
        })
    }

    pub fn components(&self) -> &[CredalComponent] {
        &self.components
    }

    pub fn dimension(&self) -> usize {
        self.components[0].dimension()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &BaryPoint> {
        self.components.iter().flat_map(|c| c.vertices.iter())
    }

    /// Whether `p` lies in one of the components.
    pub fn contains(&self, p: &BaryPoint) -> bool {
        self.components.iter().any(|c| c.contains(p))
    }
}

/// Bounds `lower ≤ P({ω}) ≤ upper` on the three singletons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerProbBounds3 {
    lower: [f64; 3],
    upper: [f64; 3],
}

impl LowerProbBounds3 {
    /// Rejects bounds outside `[0, 1]` or crossed, and bounds that admit no
    /// distribution (`Σ lower > 1` or `Σ upper < 1`).
    pub fn new(lower: [f64; 3], upper: [f64; 3]) -> Result<Self> {
        for i in 0..3 {
            let (lo, hi) = (lower[i], upper[i]);
            if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi && hi <= 1.0) {
                return Err(Error::InvalidInterval { lo, hi });
            }
        }
        let (sl, su) = (lower.iter().sum::<f64>(), upper.iter().sum::<f64>());
        if sl > 1.0 + GEOM_TOL || su < 1.0 - GEOM_TOL {
            return Err(Error::ContradictoryKnowledge(format!(
                "singleton bounds admit no distribution (Σ lower = {sl}, Σ upper = {su})"
            )));
        }
        Ok(LowerProbBounds3 { lower, upper })
    }

    pub fn lower(&self) -> [f64; 3] {
        self.lower
    }

    pub fn upper(&self) -> [f64; 3] {
        self.upper
    }

    /// Bounds tightened to the values actually reached by some distribution
    /// in the set (`lower_i ≥ 1 − Σ_{j≠i} upper_j`, `upper_i ≤ 1 − Σ_{j≠i}
    /// lower_j`).
    pub fn reachable(&self) -> LowerProbBounds3 {
        let (sl, su) = (self.lower.iter().sum::<f64>(), self.upper.iter().sum::<f64>());
        let mut lower = self.lower;
        let mut upper = self.upper;
        for i in 0..3 {
            lower[i] = self.lower[i].max(1.0 - (su - self.upper[i]));
            upper[i] = self.upper[i].min(1.0 - (sl - self.lower[i]));
            // roundoff can cross the bounds when the set is a single point
            lower[i] = lower[i].min(upper[i]);
        }
        LowerProbBounds3 { lower, upper }
    }
}

/// Atoms `ω` maximizing `p_ω / q_ω`, compared multiplicatively.
///
/// A coordinate with `q_ω = 0 < p_ω` has infinite ratio; one with
/// `q_ω = p_ω = 0` is not a candidate. Several atoms are returned on ties.
pub fn partition_membership(q: &BaryPoint, p: &BaryPoint) -> SubsetMask {
    let (q, p) = (q.0, p.0);
    let candidates: Vec<usize> = (0..3).filter(|&w| !(q[w] <= 0.0 && p[w] <= 0.0)).collect();
    let mut mask = SubsetMask::EMPTY;
    for &w in &candidates {
        let dominates = candidates
            .iter()
            .all(|&x| x == w || p[w] * q[x] >= p[x] * q[w] - GEOM_TOL);
        if dominates {
            mask = mask.with(w);
        }
    }
    mask
}

fn others(w: usize) -> (usize, usize) {
    match w {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Area fraction of the labels `q` for which `ω` is plausible.
fn plausibility_fraction(set: &CredalSet3, w: usize) -> f64 {
    let (x, y) = others(w);
    let corners = geometry::corners();
    let hulls: Vec<Vec<Pt>> = set
        .components
        .iter()
        .map(|c| {
            let mut pts = vec![corners[x], corners[y]];
            pts.extend(c.plane_vertices());
            geometry::convex_hull(&pts)
        })
        .collect();
    (union_area(&hulls) / SIMPLEX_AREA).clamp(0.0, 1.0)
}

/// Area fraction of the labels `q` whose focal element is `{ω}` alone:
/// `q_x p_ω ≥ q_ω p_x` for every vertex `p` and rival `x`.
fn singleton_belief_fraction(set: &CredalSet3, w: usize) -> f64 {
    let mut planes = Vec::new();
    for p in set.vertices() {
        for x in [0, 1, 2] {
            if x == w {
                continue;
            }
            let mut form = [0.0; 3];
            form[x] = p.0[w];
            form[w] = -p.0[x];
            match HalfPlane::from_barycentric(form) {
                BaryConstraint::HalfPlane(h) => planes.push(h),
                BaryConstraint::Everywhere => {}
                BaryConstraint::Nowhere => return 0.0,
            }
        }
    }
    let region = clip_all(&geometry::corners(), &planes);
    (area(&region) / SIMPLEX_AREA).clamp(0.0, 1.0)
}

/// Belief over all eight subsets of `{A, B, C}` (frame [`Frame::ternary`]).
pub fn bel_table(set: &CredalSet3) -> SetFunction {
    let frame = Frame::ternary();
    let mut bel = vec![0.0; 8];
    for w in 0..3 {
        bel[1 << w] = singleton_belief_fraction(set, w);
        bel[7 & !(1 << w)] = 1.0 - plausibility_fraction(set, w);
    }
    bel[7] = 1.0;
    SetFunction::new(frame, SetFunctionKind::Belief, bel).expect("eight finite values")
}

/// Möbius inversion of [`bel_table`], with roundoff negatives clamped.
pub fn mass_from_credal(set: &CredalSet3) -> Result<MassFunction> {
    mobius_inverse(&bel_table(set))
}

/// Closed-form belief for the credal set of singleton bounds, using the
/// reachable bounds `(a, b, c)` below and `(A, B, C)` above:
///
/// ```text
/// bel(A) = a / (a + B + C)          bel(A∪B) = (1 − C)² + C(a + b)
/// bel(B) = b / (A + b + C)          bel(A∪C) = (1 − B)² + B(a + c)
/// bel(C) = c / (A + B + c)          bel(B∪C) = (1 − A)² + A(b + c)
/// ```
pub fn bel_from_bounds(bounds: &LowerProbBounds3) -> SetFunction {
    let r = bounds.reachable();
    let [a, b, c] = r.lower;
    let [ua, ub, uc] = r.upper;
    let mut bel = vec![0.0; 8];
    // reachable bounds give a + B + C ≥ 1, so the denominators are positive
    bel[0b001] = a / (a + ub + uc);
    bel[0b010] = b / (ua + b + uc);
    bel[0b100] = c / (ua + ub + c);
    bel[0b011] = (1.0 - uc).powi(2) + uc * (a + b);
    bel[0b101] = (1.0 - ub).powi(2) + ub * (a + c);
    bel[0b110] = (1.0 - ua).powi(2) + ua * (b + c);
    bel[0b111] = 1.0;
    SetFunction::new(Frame::ternary(), SetFunctionKind::Belief, bel).expect("eight finite values")
}

/// The credal set `{p : lower ≤ p ≤ upper}` as a single convex component
/// (a polygon of at most six vertices, or a segment or point).
pub fn hexagon_polygon(bounds: &LowerProbBounds3) -> Result<CredalSet3> {
    let r = bounds.reachable();
    let mut candidates: Vec<BaryPoint> = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = 3 - i - j;
            for pi in [r.lower[i], r.upper[i]] {
                for pj in [r.lower[j], r.upper[j]] {
                    let pk = 1.0 - pi - pj;
                    if pk < r.lower[k] - GEOM_TOL || pk > r.upper[k] + GEOM_TOL {
                        continue;
                    }
                    let mut p = [0.0; 3];
                    p[i] = pi;
                    p[j] = pj;
                    p[k] = pk.max(r.lower[k]).min(r.upper[k]);
                    if let Ok(bp) = BaryPoint::from_array(p) {
                        candidates.push(bp);
                    }
                }
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::ContradictoryKnowledge("singleton bounds admit no distribution".into()));
    }
    Ok(CredalSet3::single(CredalComponent::hull_of(&candidates)?))
}
