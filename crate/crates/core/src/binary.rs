//! Beliefs on the binary frame `{S, F}` induced by partial knowledge of
//! `P(S)`.
//!
//! A focal element is an interval `[x, y] ⊆ [0, 1]` (the proposition
//! `P(S) ∈ [x, y]`), drawn as the point `(x, y)` of the triangle
//! `0 ≤ x ≤ y ≤ 1`. A [`TriangleMeasure`] is a basic belief density over that
//! triangle.
//!
//! Every measure built from Bernoulli evidence, interval knowledge and
//! conjunctive combination is a weighted sum of *clipped evidence terms*:
//! the normalized evidence measure for counts `(r, s)` pushed through
//! `[x, y] ↦ [x, y] ∩ [a, b]` for a knowledge window `[a, b]`. The family is
//! closed under combination because intersection is associative and
//! evidence counts add, so combination never needs a grid.
//!
//! The normalized evidence measure has density
//! `Γ(r+s+1)/(Γ(r)Γ(s)) · x^(r−1) (1−y)^(s−1)` when `r, s ≥ 1`. With `s = 0`
//! it lives on the top edge `y = 1` with density `r x^(r−1)`; with `r = 0` on
//! the left edge `x = 0` with density `s (1−y)^(s−1)`; with no evidence it is
//! the vacuous point `(0, 1)`.
//!
//! Rectangle measures are evaluated in closed form through the regularized
//! incomplete beta function; [`TriangleMeasure::components`] and the
//! `*_numeric` methods give an independent quadrature route.

use statrs::function::beta::beta_reg;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::frames::{Frame, MassFunction, MassSpec, SubsetMask, make_mass};
use crate::quadrature::Simpson;

/// Conflict below this is treated as zero.
pub const NORMALIZED_TOLERANCE: f64 = 1e-12;

/// Successes and failures observed in independent Bernoulli trials.
///
/// Trials whose outcome is only known to be `S ∪ F` carry no information and
/// are not counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EvidenceCounts {
    pub r: u64,
    pub s: u64,
}

impl EvidenceCounts {
    pub fn new(r: u64, s: u64) -> Self {
        EvidenceCounts { r, s }
    }

    pub fn total(&self) -> u64 {
        self.r + self.s
    }
}

impl std::ops::Add for EvidenceCounts {
    type Output = EvidenceCounts;

    fn add(self, rhs: Self) -> Self {
        EvidenceCounts::new(self.r + rhs.r, self.s + rhs.s)
    }
}

/// Knowledge that `lo ≤ P(S) ≤ hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalKnowledge {
    lo: f64,
    hi: f64,
}

impl IntervalKnowledge {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        check_interval(lo, hi)?;
        Ok(IntervalKnowledge { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi && hi <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInterval { lo, hi })
    }
}

/// `weight ×` (normalized evidence measure for `counts`, clipped to `window`),
/// restricted to the focal intervals that stay non-empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvidenceTerm {
    pub counts: EvidenceCounts,
    pub window: (f64, f64),
    pub weight: f64,
}

impl EvidenceTerm {
    /// Measure of `{X ∈ [x0, x1], Y ∈ [y0, y1]}` where `(X, Y)` is the clipped
    /// focal interval.
    fn rect(&self, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
        let (a, b) = self.window;
        // max(x, a) ∈ [x0, x1]
        let (bx0, bx1) = if a > x1 {
            return 0.0;
        } else if a >= x0 {
            (0.0, x1)
        } else {
            (x0, x1)
        };
        // min(y, b) ∈ [y0, y1]
        let (by0, by1) = if b < y0 {
            return 0.0;
        } else if b <= y1 {
            (y0, 1.0)
        } else {
            (y0, y1)
        };
        // non-empty after clipping: x ≤ b and y ≥ a
        self.weight * base_rect(self.counts, bx0, bx1.min(b), by0.max(a), by1)
    }

    fn nonempty_mass(&self) -> f64 {
        self.rect(0.0, 1.0, 0.0, 1.0)
    }

    /// `∫ X dM` over the term.
    fn first_moment_x(&self) -> f64 {
        let EvidenceCounts { r, s } = self.counts;
        let (a, b) = self.window;
        let collapsed = a * base_rect(self.counts, 0.0, a, a, 1.0);
        let free = if r == 0 {
            0.0
        } else {
            r as f64 / (r + s + 1) as f64
                * base_rect(EvidenceCounts::new(r + 1, s), a, b, a, 1.0)
        };
        self.weight * (collapsed + free)
    }

    /// `∫ (1 − Y) dM` over the term.
    fn first_moment_one_minus_y(&self) -> f64 {
        let EvidenceCounts { r, s } = self.counts;
        let (a, b) = self.window;
        let collapsed = (1.0 - b) * base_rect(self.counts, 0.0, b, b, 1.0);
        let free = if s == 0 {
            0.0
        } else {
            s as f64 / (r + s + 1) as f64
                * base_rect(EvidenceCounts::new(r, s + 1), 0.0, b, a, b)
        };
        self.weight * (collapsed + free)
    }

    fn components(&self, out: &mut Vec<Component>) {
        let EvidenceCounts { r, s } = self.counts;
        let (a, b) = self.window;
        let lnw = self.weight.ln();
        if self.weight <= 0.0 {
            return;
        }
        let point = |weight: f64, out: &mut Vec<Component>| {
            if weight > 0.0 {
                out.push(Component::Point { x: a, y: b, weight });
            }
        };
        match (r, s) {
            (0, 0) => point(self.weight, out),
            (r, 0) => {
                // top edge y = 1 moved to y = b
                if a < b {
                    out.push(Component::Line {
                        axis: LineAxis::FixedY,
                        at: b,
                        density: Monomial::new(lnw + (r as f64).ln(), r - 1, 0),
                        support: (a, b),
                    });
                }
                point(self.weight * a.powf(r as f64), out);
            }
            (0, s) => {
                if a < b {
                    out.push(Component::Line {
                        axis: LineAxis::FixedX,
                        at: a,
                        density: Monomial::new(lnw + (s as f64).ln(), 0, s - 1),
                        support: (a, b),
                    });
                }
                point(self.weight * (1.0 - b).powf(s as f64), out);
            }
            (r, s) => {
                let lnc = ln_density_coef(r, s);
                if a < b {
                    out.push(Component::Area {
                        density: Monomial::new(lnw + lnc, r - 1, s - 1),
                        lo: a,
                        hi: b,
                    });
                    if a > 0.0 {
                        // x ≤ a collapses onto x = a
                        out.push(Component::Line {
                            axis: LineAxis::FixedX,
                            at: a,
                            density: Monomial::new(
                                lnw + lnc + r as f64 * a.ln() - (r as f64).ln(),
                                0,
                                s - 1,
                            ),
                            support: (a, b),
                        });
                    }
                    if b < 1.0 {
                        // y ≥ b collapses onto y = b
                        out.push(Component::Line {
                            axis: LineAxis::FixedY,
                            at: b,
                            density: Monomial::new(
                                lnw + lnc + s as f64 * (-b).ln_1p() - (s as f64).ln(),
                                r - 1,
                                0,
                            ),
                            support: (a, b),
                        });
                    }
                }
                point(self.weight * corner(r, s, a, b), out);
            }
        }
    }
}

/// `ln Γ(r+s+1)/(Γ(r)Γ(s))`, the log normalizing constant of the evidence
/// density.
fn ln_density_coef(r: u64, s: u64) -> f64 {
    ln_gamma((r + s + 1) as f64) - ln_gamma(r as f64) - ln_gamma(s as f64)
}

fn ln_binom(r: u64, s: u64) -> f64 {
    ln_gamma((r + s + 1) as f64) - ln_gamma((r + 1) as f64) - ln_gamma((s + 1) as f64)
}

/// `C(r+s, r) x^r (1−y)^s`: the evidence measure of `[0, x] × [y, 1]` when
/// `x ≤ y`, computed in log space.
fn corner(r: u64, s: u64, x: f64, y: f64) -> f64 {
    if x <= 0.0 || y >= 1.0 {
        return 0.0;
    }
    (ln_binom(r, s) + r as f64 * x.ln() + s as f64 * (-y).ln_1p()).exp()
}

/// Normalized evidence measure of `[x0, x1] × [y0, y1] ∩ {x ≤ y}`.
fn base_rect(counts: EvidenceCounts, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let (x0, x1) = (x0.max(0.0), x1.min(1.0));
    let (y0, y1) = (y0.max(0.0), y1.min(1.0));
    if x0 > x1 || y0 > y1 {
        return 0.0;
    }
    let EvidenceCounts { r, s } = counts;
    let v = match (r, s) {
        (0, 0) => {
            if x0 <= 0.0 && y1 >= 1.0 {
                1.0
            } else {
                0.0
            }
        }
        (r, 0) => {
            if y1 >= 1.0 {
                x1.powf(r as f64) - x0.powf(r as f64)
            } else {
                0.0
            }
        }
        (0, s) => {
            if x0 <= 0.0 {
                (1.0 - y0).powf(s as f64) - (1.0 - y1).powf(s as f64)
            } else {
                0.0
            }
        }
        (r, s) => {
            let mut v = 0.0;
            // x below the y-range: the y-integral is constant in x
            let xa = x1.min(y0);
            if xa > x0 {
                v += corner(r, s, xa, y0) - corner(r, s, x0, y0) - corner(r, s, xa, y1)
                    + corner(r, s, x0, y1);
            }
            // x inside the y-range: y runs from x to y1
            let (xl, xh) = (x0.max(y0), x1.min(y1));
            if xh > xl {
                let (a, b) = (r as f64, (s + 1) as f64);
                v += beta_reg(a, b, xh) - beta_reg(a, b, xl) - corner(r, s, xh, y1)
                    + corner(r, s, xl, y1);
            }
            v
        }
    };
    v.max(0.0)
}

/// Which coordinate a line component holds fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineAxis {
    /// `x = at`, density over `y`.
    FixedX,
    /// `y = at`, density over `x`.
    FixedY,
}

/// `exp(ln_coef) · x^x_pow · (1−y)^y_pow`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub ln_coef: f64,
    pub x_pow: u64,
    pub y_pow: u64,
}

impl Monomial {
    fn new(ln_coef: f64, x_pow: u64, y_pow: u64) -> Self {
        Monomial {
            ln_coef,
            x_pow,
            y_pow,
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut l = self.ln_coef;
        if self.x_pow > 0 {
            if x <= 0.0 {
                return 0.0;
            }
            l += self.x_pow as f64 * x.ln();
        }
        if self.y_pow > 0 {
            if y >= 1.0 {
                return 0.0;
            }
            l += self.y_pow as f64 * (-y).ln_1p();
        }
        l.exp()
    }
}

/// Explicit singular / absolutely continuous pieces of a measure.
#[derive(Debug, Clone, PartialEq)]
pub enum Component {
    Point {
        x: f64,
        y: f64,
        weight: f64,
    },
    /// Density over the free coordinate on `support`; for `FixedX` the
    /// monomial is evaluated at `(at, y)`, for `FixedY` at `(x, at)`.
    Line {
        axis: LineAxis,
        at: f64,
        density: Monomial,
        support: (f64, f64),
    },
    /// Density on `{lo ≤ x ≤ y ≤ hi}`.
    Area { density: Monomial, lo: f64, hi: f64 },
}

/// Region kinds for [`TriangleMeasure::query`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryKind {
    /// Mass of focal intervals inside `[u, v]`.
    Belief,
    /// Mass of focal intervals meeting `[u, v]`.
    Plausibility,
    /// Mass of focal intervals containing `[u, v]`.
    Commonality,
}

impl QueryKind {
    /// The query as `{x ∈ [x0, x1], y ∈ [y0, y1]}`.
    fn region(self, u: f64, v: f64) -> [f64; 4] {
        match self {
            QueryKind::Belief => [u, 1.0, 0.0, v],
            QueryKind::Plausibility => [0.0, v, u, 1.0],
            QueryKind::Commonality => [0.0, u, v, 1.0],
        }
    }
}

/// A basic belief density over intervals of `[0, 1]`, plus the mass that
/// went to the empty interval.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMeasure {
    terms: Vec<EvidenceTerm>,
    conflict: f64,
}

/// The normalized measure induced by Bernoulli evidence.
pub fn evidence_measure(e: EvidenceCounts) -> TriangleMeasure {
    TriangleMeasure {
        terms: vec![EvidenceTerm {
            counts: e,
            window: (0.0, 1.0),
            weight: 1.0,
        }],
        conflict: 0.0,
    }
}

/// The measure obtained by combining `r` single-success and `s`
/// single-failure observations without normalization.
///
/// Its commonality is exactly `q([a, b]) = a^r (1−b)^s`; the conflict is
/// `1 − 1/C(r+s, r)`.
pub fn unnormalized_evidence_measure(e: EvidenceCounts) -> TriangleMeasure {
    let weight = (-ln_binom(e.r, e.s)).exp();
    TriangleMeasure {
        terms: vec![EvidenceTerm {
            counts: e,
            window: (0.0, 1.0),
            weight,
        }],
        conflict: 1.0 - weight,
    }
}

/// A single focal interval `[lo, hi]` with mass 1.
pub fn knowledge_measure(k: IntervalKnowledge) -> TriangleMeasure {
    TriangleMeasure {
        terms: vec![EvidenceTerm {
            counts: EvidenceCounts::default(),
            window: (k.lo, k.hi),
            weight: 1.0,
        }],
        conflict: 0.0,
    }
}

/// Conjunctive combination; focal intervals intersect and empty
/// intersections accumulate as conflict. Returns the measure and the
/// conflict weight of the unnormalized product.
pub fn combine_measures(
    m1: &TriangleMeasure,
    m2: &TriangleMeasure,
    normalize: bool,
) -> Result<(TriangleMeasure, f64)> {
    let mut terms: Vec<EvidenceTerm> = Vec::with_capacity(m1.terms.len() * m2.terms.len());
    for t1 in &m1.terms {
        for t2 in &m2.terms {
            let a = t1.window.0.max(t2.window.0);
            let b = t1.window.1.min(t2.window.1);
            if a > b {
                continue;
            }
            let counts = t1.counts + t2.counts;
            // share of evidence pairs with a non-empty intersection
            let kappa = (ln_binom(t1.counts.r, t1.counts.s) + ln_binom(t2.counts.r, t2.counts.s)
                - ln_binom(counts.r, counts.s))
            .exp();
            let weight = t1.weight * t2.weight * kappa;
            if weight <= 0.0 {
                continue;
            }
            match terms
                .iter_mut()
                .find(|t| t.counts == counts && t.window == (a, b))
            {
                Some(t) => t.weight += weight,
                None => terms.push(EvidenceTerm {
                    counts,
                    window: (a, b),
                    weight,
                }),
            }
        }
    }
    let mut out = TriangleMeasure { terms, conflict: 0.0 };
    let total = m1.total() * m2.total();
    let conflict = (total - out.nonempty_mass()).max(0.0);
    out.conflict = conflict;
    if normalize {
        out = out.normalized()?;
    }
    Ok((out, conflict))
}

impl TriangleMeasure {
    /// A finite assignment of masses to intervals `[lo, hi]`.
    pub fn from_intervals(focal: &[(IntervalKnowledge, f64)]) -> Result<Self> {
        let mut sum = 0.0;
        let mut terms = Vec::new();
        for &(k, w) in focal {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidMass(format!("interval mass {w}")));
            }
            sum += w;
            if w > 0.0 {
                terms.push(EvidenceTerm {
                    counts: EvidenceCounts::default(),
                    window: (k.lo, k.hi),
                    weight: w,
                });
            }
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMass(format!("interval masses sum to {sum}")));
        }
        Ok(TriangleMeasure { terms, conflict: 0.0 })
    }

    pub fn vacuous() -> Self {
        evidence_measure(EvidenceCounts::default())
    }

    pub fn terms(&self) -> &[EvidenceTerm] {
        &self.terms
    }

    /// Mass on the empty interval.
    pub fn conflict(&self) -> f64 {
        self.conflict
    }

    pub fn nonempty_mass(&self) -> f64 {
        self.terms.iter().map(EvidenceTerm::nonempty_mass).sum()
    }

    /// Non-empty mass plus conflict.
    pub fn total(&self) -> f64 {
        self.nonempty_mass() + self.conflict
    }

    pub fn is_normalized(&self) -> bool {
        self.conflict <= NORMALIZED_TOLERANCE
    }

    /// Drops the conflict and rescales the rest to total 1.
    pub fn normalized(&self) -> Result<TriangleMeasure> {
        let n = self.nonempty_mass();
        if n <= f64::MIN_POSITIVE {
            return Err(Error::TotalConflict);
        }
        Ok(TriangleMeasure {
            terms: self
                .terms
                .iter()
                .map(|t| EvidenceTerm {
                    weight: t.weight / n,
                    ..*t
                })
                .collect(),
            conflict: 0.0,
        })
    }

    /// Closed-form bel / pl / q of the interval `[u, v]` for `P(S)`.
    pub fn query(&self, kind: QueryKind, u: f64, v: f64) -> Result<f64> {
        check_interval(u, v)?;
        let [x0, x1, y0, y1] = kind.region(u, v);
        Ok(self.measure_rect((x0, x1), (y0, y1)))
    }

    /// Mass of focal intervals `[x, y]` with `x ∈ xs` and `y ∈ ys` (closed).
    pub fn measure_rect(&self, xs: (f64, f64), ys: (f64, f64)) -> f64 {
        self.terms
            .iter()
            .map(|t| t.rect(xs.0, xs.1, ys.0, ys.1))
            .sum()
    }

    /// The measure as explicit point, line and area pieces.
    pub fn components(&self) -> Vec<Component> {
        let mut out = Vec::new();
        for t in &self.terms {
            t.components(&mut out);
        }
        out
    }

    /// [`query`](Self::query) by quadrature over [`components`](Self::components).
    pub fn query_numeric(&self, kind: QueryKind, u: f64, v: f64, quad: &Simpson) -> Result<f64> {
        check_interval(u, v)?;
        let [x0, x1, y0, y1] = kind.region(u, v);
        Ok(self.measure_rect_numeric((x0, x1), (y0, y1), quad))
    }

    pub fn measure_rect_numeric(&self, xs: (f64, f64), ys: (f64, f64), quad: &Simpson) -> f64 {
        self.components()
            .iter()
            .map(|c| component_rect_numeric(c, xs, ys, quad))
            .sum()
    }

    /// Belief on `{S, F}`: `m(S) = E[x]`, `m(F) = E[1−y]`,
    /// `m(S∪F) = E[y−x]` for the focal interval `[x, y]`.
    pub fn predictive(&self) -> Result<MassFunction> {
        if !self.is_normalized() {
            return Err(Error::UnnormalizedMeasure(self.conflict));
        }
        let n = self.nonempty_mass();
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::UnnormalizedMeasure(1.0 - n));
        }
        let ms: f64 = self.terms.iter().map(EvidenceTerm::first_moment_x).sum::<f64>() / n;
        let mf: f64 = self
            .terms
            .iter()
            .map(EvidenceTerm::first_moment_one_minus_y)
            .sum::<f64>()
            / n;
        let (ms, mf) = (ms.clamp(0.0, 1.0), mf.clamp(0.0, 1.0));
        let frame = Frame::binary();
        make_mass(
            &frame,
            MassSpec::Explicit(vec![
                (SubsetMask(0b01), ms),
                (SubsetMask(0b10), mf),
                (SubsetMask(0b11), (1.0 - ms - mf).max(0.0)),
            ]),
        )
    }
}

fn overlap(a: (f64, f64), b: (f64, f64)) -> Option<(f64, f64)> {
    let lo = a.0.max(b.0);
    let hi = a.1.min(b.1);
    (lo <= hi).then_some((lo, hi))
}

fn inside(v: f64, r: (f64, f64)) -> bool {
    r.0 <= v && v <= r.1
}

fn component_rect_numeric(c: &Component, xs: (f64, f64), ys: (f64, f64), quad: &Simpson) -> f64 {
    match *c {
        Component::Point { x, y, weight } => {
            if inside(x, xs) && inside(y, ys) {
                weight
            } else {
                0.0
            }
        }
        Component::Line {
            axis,
            at,
            density,
            support,
        } => {
            let (fixed_range, free_range) = match axis {
                LineAxis::FixedX => (xs, ys),
                LineAxis::FixedY => (ys, xs),
            };
            if !inside(at, fixed_range) {
                return 0.0;
            }
            match overlap(support, free_range) {
                Some((lo, hi)) => quad.integrate(
                    |t| match axis {
                        LineAxis::FixedX => density.eval(at, t),
                        LineAxis::FixedY => density.eval(t, at),
                    },
                    lo,
                    hi,
                ),
                None => 0.0,
            }
        }
        Component::Area { density, lo, hi } => {
            let Some((x0, x1)) = overlap((lo, hi), xs) else {
                return 0.0;
            };
            let (y0, y1) = (ys.0, ys.1.min(hi));
            quad.integrate_2d(
                |x, y| density.eval(x, y),
                x0,
                x1,
                |x| x.max(y0),
                |_| y1,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(r: u64, s: u64) -> TriangleMeasure {
        evidence_measure(EvidenceCounts::new(r, s))
    }

    fn kn(lo: f64, hi: f64) -> TriangleMeasure {
        knowledge_measure(IntervalKnowledge::new(lo, hi).unwrap())
    }

    #[test]
    fn interval_knowledge_validation() {
        assert!(IntervalKnowledge::new(0.4, 0.3).is_err());
        assert!(IntervalKnowledge::new(-0.1, 0.3).is_err());
        assert!(IntervalKnowledge::new(0.5, 0.5).is_ok());
    }

    #[test]
    fn evidence_shapes() {
        assert_eq!(
            ev(0, 0).components(),
            vec![Component::Point {
                x: 0.0,
                y: 1.0,
                weight: 1.0
            }]
        );
        match ev(2, 1).components().as_slice() {
            [Component::Area { density, lo, hi }] => {
                assert_eq!((*lo, *hi), (0.0, 1.0));
                assert!((density.eval(0.5, 0.7) - 3.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        match ev(1, 0).components().as_slice() {
            [Component::Line { axis: LineAxis::FixedY, at, density, support }] => {
                assert_eq!(*at, 1.0);
                assert_eq!(*support, (0.0, 1.0));
                assert!((density.eval(0.3, 1.0) - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn knowledge_is_a_point() {
        assert_eq!(
            kn(0.3, 0.4).components(),
            vec![Component::Point {
                x: 0.3,
                y: 0.4,
                weight: 1.0
            }]
        );
    }

    #[test]
    fn success_and_failure_combine_to_one_one() {
        let (u, k) = combine_measures(&ev(1, 0), &ev(0, 1), false).unwrap();
        assert!((k - 0.5).abs() < 1e-12);
        for (a, b) in [(0.2, 0.3), (0.5, 0.5), (0.1, 0.9)] {
            let q = u.query(QueryKind::Commonality, a, b).unwrap();
            assert!((q - a * (1.0 - b)).abs() < 1e-12);
        }
        let (n, _) = combine_measures(&ev(1, 0), &ev(0, 1), true).unwrap();
        assert_eq!(n.terms(), ev(1, 1).terms());
    }

    #[test]
    fn success_clipped_to_urn_window() {
        let (m, k) = combine_measures(&ev(1, 0), &kn(0.3, 0.4), true).unwrap();
        assert!((k - 0.6).abs() < 1e-12);
        let comps = m.components();
        assert_eq!(comps.len(), 2);
        match &comps[0] {
            Component::Line { axis: LineAxis::FixedY, at, density, support } => {
                assert_eq!(*at, 0.4);
                assert_eq!(*support, (0.3, 0.4));
                assert!((density.eval(0.35, 0.4) - 2.5).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        match &comps[1] {
            Component::Point { x, y, weight } => {
                assert_eq!((*x, *y), (0.3, 0.4));
                assert!((weight - 0.75).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert!((m.total() - 1.0).abs() < 1e-12);
        let p = m.predictive().unwrap();
        assert!((p.mass(SubsetMask(1)) - 0.3125).abs() < 1e-12);
    }

    #[test]
    fn vacuous_knowledge_is_neutral() {
        let base = ev(3, 2);
        let (m, k) = combine_measures(&base, &kn(0.0, 1.0), false).unwrap();
        assert_eq!(k, 0.0);
        assert_eq!(m.terms().len(), 1);
        let (t, b) = (&m.terms()[0], &base.terms()[0]);
        assert_eq!((t.counts, t.window), (b.counts, b.window));
        assert!((t.weight - b.weight).abs() < 1e-12);
    }

    #[test]
    fn predictive_examples() {
        let p = ev(15, 35).predictive().unwrap();
        assert!((p.mass(SubsetMask(1)) - 15.0 / 51.0).abs() < 1e-12);
        assert!((p.mass(SubsetMask(2)) - 35.0 / 51.0).abs() < 1e-12);
        assert!((p.mass(SubsetMask(3)) - 1.0 / 51.0).abs() < 1e-12);

        let v = ev(0, 0).predictive().unwrap();
        assert_eq!(v.mass(SubsetMask(3)), 1.0);

        let k = kn(0.3, 0.4).predictive().unwrap();
        assert!((k.mass(SubsetMask(1)) - 0.3).abs() < 1e-12);
        assert!((k.mass(SubsetMask(2)) - 0.6).abs() < 1e-12);
        assert!((k.mass(SubsetMask(3)) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn predictive_rejects_unnormalized() {
        let (u, _) = combine_measures(&ev(1, 0), &ev(0, 1), false).unwrap();
        assert!(matches!(u.predictive(), Err(Error::UnnormalizedMeasure(_))));
    }

    #[test]
    fn whole_space_belief_is_one() {
        for m in [ev(0, 0), ev(4, 0), ev(0, 3), ev(7, 9), kn(0.2, 0.6)] {
            assert!((m.query(QueryKind::Belief, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unnormalized_commonality_is_a_power_law() {
        let m = unnormalized_evidence_measure(EvidenceCounts::new(15, 35));
        let q = m.query(QueryKind::Commonality, 0.5, 0.5).unwrap();
        assert!((q / 2f64.powi(-50) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn total_conflict_is_reported() {
        let r = combine_measures(&ev(0, 2), &kn(1.0, 1.0), true);
        assert_eq!(r.unwrap_err(), Error::TotalConflict);
    }

    #[test]
    fn query_rejects_bad_interval() {
        assert!(ev(1, 1).query(QueryKind::Belief, 0.6, 0.5).is_err());
    }
}
