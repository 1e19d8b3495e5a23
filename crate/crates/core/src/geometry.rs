//! Planar geometry on the probability 2-simplex.
//!
//! Barycentric points `(p_A, p_B, p_C)` map to the plane by
//! `(p_B + p_C/2, p_C·√3/2)`, which sends the simplex onto the unit-side
//! equilateral triangle with corners `A = (0, 0)`, `B = (1, 0)`,
//! `C = (1/2, √3/2)`. The map is a similarity of the simplex in `R³`, so area
//! fractions, length ratios and centroids carry over unchanged.

pub type Pt = [f64; 2];

/// Vertex deduplication and clip-predicate tolerance.
pub const GEOM_TOL: f64 = 1e-12;

const H: f64 = 0.866_025_403_784_438_6; // √3/2

/// Area of the simplex in the plane.
pub const SIMPLEX_AREA: f64 = 0.5 * H;

pub fn to_plane(p: [f64; 3]) -> Pt {
    [p[1] + 0.5 * p[2], p[2] * H]
}

pub fn from_plane(x: Pt) -> [f64; 3] {
    let c = x[1] / H;
    let b = x[0] - 0.5 * c;
    [1.0 - b - c, b, c]
}

/// Corners of the simplex in the plane, in atom order.
pub fn corners() -> [Pt; 3] {
    [[0.0, 0.0], [1.0, 0.0], [0.5, H]]
}

pub fn cross(o: Pt, a: Pt, b: Pt) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

pub fn dist(a: Pt, b: Pt) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Positive for counterclockwise polygons.
pub fn signed_area(poly: &[Pt]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        s += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * s
}

pub fn area(poly: &[Pt]) -> f64 {
    signed_area(poly).abs()
}

/// Area-weighted centroid of a simple polygon with non-zero area.
pub fn polygon_centroid(poly: &[Pt]) -> Pt {
    let mut cx = 0.0;
    let mut cy = 0.0;
    let mut a2 = 0.0;
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let w = p[0] * q[1] - q[0] * p[1];
        a2 += w;
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    [cx / (3.0 * a2), cy / (3.0 * a2)]
}

/// Indices of the convex hull vertices in counterclockwise order, starting
/// from the lowest-leftmost point. Duplicates (within [`GEOM_TOL`]) and
/// collinear points are dropped, so the result has 1 index for coincident
/// input, 2 for collinear input and ≥ 3 otherwise.
pub fn convex_hull_indices(points: &[Pt]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&i, &j| {
        let (a, b) = (points[i], points[j]);
        a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
    });
    let mut uniq: Vec<usize> = Vec::with_capacity(idx.len());
    for i in idx {
        if uniq.iter().all(|&u| dist(points[u], points[i]) > GEOM_TOL) {
            uniq.push(i);
        }
    }
    if uniq.len() <= 2 {
        return uniq;
    }
    let turn = |o: usize, a: usize, b: usize| cross(points[o], points[a], points[b]);
    let mut hull: Vec<usize> = Vec::with_capacity(2 * uniq.len());
    for &i in &uniq {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= GEOM_TOL {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in uniq.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= GEOM_TOL
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

pub fn convex_hull(points: &[Pt]) -> Vec<Pt> {
    convex_hull_indices(points)
        .into_iter()
        .map(|i| points[i])
        .collect()
}

/// The closed half-plane `a·x + b·y + c ≥ 0` with `(a, b)` of unit length,
/// so that `eval` is a signed distance.
/// A linear constraint on barycentric coordinates, in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaryConstraint {
    HalfPlane(HalfPlane),
    /// The form is a nonnegative constant.
    Everywhere,
    /// The form is a negative constant.
    Nowhere,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    a: f64,
    b: f64,
    c: f64,
}

impl HalfPlane {
    /// `None` when `(a, b) = 0`: the constraint is then `c ≥ 0` everywhere.
    pub fn new(a: f64, b: f64, c: f64) -> Option<HalfPlane> {
        let n = a.hypot(b);
        if n <= 1e-300 {
            return None;
        }
        Some(HalfPlane {
            a: a / n,
            b: b / n,
            c: c / n,
        })
    }

    /// Left side of the directed line `p → q`.
    pub fn left_of(p: Pt, q: Pt) -> Option<HalfPlane> {
        let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
        HalfPlane::new(-dy, dx, dy * p[0] - dx * p[1])
    }

    /// `Σ c_i q_i ≥ 0` for a linear form on barycentric coordinates.
    pub fn from_barycentric(c: [f64; 3]) -> BaryConstraint {
        let gamma = c[0];
        let alpha = c[1] - c[0];
        let beta = (c[2] - c[0] - 0.5 * alpha) / H;
        match HalfPlane::new(alpha, beta, gamma) {
            Some(h) => BaryConstraint::HalfPlane(h),
            None if gamma >= 0.0 => BaryConstraint::Everywhere,
            None => BaryConstraint::Nowhere,
        }
    }

    pub fn eval(&self, p: Pt) -> f64 {
        self.a * p[0] + self.b * p[1] + self.c
    }

    pub fn contains(&self, p: Pt) -> bool {
        self.eval(p) >= -GEOM_TOL
    }

    pub fn flipped(&self) -> HalfPlane {
        HalfPlane {
            a: -self.a,
            b: -self.b,
            c: -self.c,
        }
    }
}

/// Sutherland–Hodgman step: keeps the part of `subject` inside `h`.
///
/// `subject` is treated as a closed polyline, so points and segments clip
/// correctly too (the output may then contain repeated points).
pub fn clip(subject: &[Pt], h: &HalfPlane) -> Vec<Pt> {
    let n = subject.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let s = subject[i];
        let e = subject[(i + 1) % n];
        let (ds, de) = (h.eval(s), h.eval(e));
        let (s_in, e_in) = (ds >= -GEOM_TOL, de >= -GEOM_TOL);
        if s_in != e_in {
            let t = ds / (ds - de);
            out.push([s[0] + t * (e[0] - s[0]), s[1] + t * (e[1] - s[1])]);
        }
        if e_in {
            out.push(e);
        }
    }
    out
}

pub fn clip_all(subject: &[Pt], planes: &[HalfPlane]) -> Vec<Pt> {
    let mut cur = subject.to_vec();
    for h in planes {
        if cur.is_empty() {
            break;
        }
        cur = clip(&cur, h);
    }
    cur
}

/// Half-plane description of the convex hull of `verts` (a point, segment or
/// counterclockwise polygon as returned by [`convex_hull`]).
pub fn halfplanes_of(verts: &[Pt]) -> Vec<HalfPlane> {
    match verts.len() {
        0 => Vec::new(),
        1 => {
            let p = verts[0];
            let hx = HalfPlane::new(1.0, 0.0, -p[0]).expect("unit normal");
            let hy = HalfPlane::new(0.0, 1.0, -p[1]).expect("unit normal");
            vec![hx, hx.flipped(), hy, hy.flipped()]
        }
        2 => {
            let (p, q) = (verts[0], verts[1]);
            let Some(line) = HalfPlane::left_of(p, q) else {
                return halfplanes_of(&verts[..1]);
            };
            let d = [q[0] - p[0], q[1] - p[1]];
            // caps: (x − p)·d ≥ 0 and (q − x)·d ≥ 0
            let cap_p = HalfPlane::new(d[0], d[1], -(d[0] * p[0] + d[1] * p[1])).expect("non-degenerate");
            let cap_q = HalfPlane::new(-d[0], -d[1], d[0] * q[0] + d[1] * q[1]).expect("non-degenerate");
            vec![line, line.flipped(), cap_p, cap_q]
        }
        n => (0..n)
            .filter_map(|i| HalfPlane::left_of(verts[i], verts[(i + 1) % n]))
            .collect(),
    }
}

/// Area of the union of convex polygons (counterclockwise vertex lists) by
/// inclusion–exclusion over their pairwise, triple, … intersections.
pub fn union_area(polys: &[Vec<Pt>]) -> f64 {
    let polys: Vec<&Vec<Pt>> = polys.iter().filter(|p| area(p) > 0.0).collect();
    let planes: Vec<Vec<HalfPlane>> = polys.iter().map(|p| halfplanes_of(p)).collect();
    fn rec(
        polys: &[&Vec<Pt>],
        planes: &[Vec<HalfPlane>],
        start: usize,
        current: Option<&[Pt]>,
        depth: usize,
    ) -> f64 {
        let mut total = 0.0;
        for i in start..polys.len() {
            let inter = match current {
                None => polys[i].clone(),
                Some(c) => clip_all(c, &planes[i]),
            };
            let a = area(&inter);
            if a <= 0.0 {
                continue;
            }
            let sign = if depth.is_multiple_of(2) { 1.0 } else { -1.0 };
            total += sign * a;
            total += rec(polys, planes, i + 1, Some(&inter), depth + 1);
        }
        total
    }
    rec(&polys, &planes, 0, None, 0).max(0.0)
}
