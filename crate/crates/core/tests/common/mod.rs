//! Oracles shared by the integration tests. Nothing here calls the closed
//! forms of the library: densities are written out directly and integrated
//! with composite Gauss–Legendre rules.

#![allow(dead_code)]

use statrs::function::gamma::ln_gamma;

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

/// Composite five-point Gauss–Legendre on `[a, b]`.
pub fn gl<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = a + h * (k as f64 + 0.5);
        for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS) {
            total += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * total
}

/// `∫_{x0}^{x1} ∫_{lo(x)}^{hi(x)} f(x, y) dy dx`.
pub fn gl2<F, L, H>(f: F, x0: f64, x1: f64, lo: L, hi: H, panels: usize) -> f64
where
    F: Fn(f64, f64) -> f64,
    L: Fn(f64) -> f64,
    H: Fn(f64) -> f64,
{
    gl(|x| gl(|y| f(x, y), lo(x), hi(x), panels), x0, x1, panels)
}

/// Posterior density of the focal interval `[x, y]` after `r ≥ 1` successes
/// and `s ≥ 1` failures.
pub fn evidence_density(r: u64, s: u64) -> impl Fn(f64, f64) -> f64 {
    let (rf, sf) = (r as f64, s as f64);
    let ln_coef = ln_gamma(rf + sf + 1.0) - ln_gamma(rf) - ln_gamma(sf);
    move |x, y| {
        if x <= 0.0 || y >= 1.0 || x > y {
            return 0.0;
        }
        (ln_coef + (rf - 1.0) * x.ln() + (sf - 1.0) * (1.0 - y).ln()).exp()
    }
}

/// Total mass of the evidence density over the triangle.
pub fn evidence_total(r: u64, s: u64, panels: usize) -> f64 {
    gl2(evidence_density(r, s), 0.0, 1.0, |x| x, |_| 1.0, panels)
}

/// Evidence `(r, s)` combined with knowledge `P(S) ∈ [a, b]`: each focal
/// interval `[x, y]` becomes `[max(x, a), min(y, b)]`, empty results are
/// conflict.
pub struct Posterior {
    pub r: u64,
    pub s: u64,
    pub a: f64,
    pub b: f64,
    pub panels: usize,
}

impl Posterior {
    fn f(&self) -> impl Fn(f64, f64) -> f64 {
        evidence_density(self.r, self.s)
    }

    fn raw(&self, g: impl Fn(f64, f64) -> f64 + Copy) -> f64 {
        let (a, b, p) = (self.a, self.b, self.panels);
        let f = &self.f();
        // x in [0, a]: y from a; x in [a, b]: y from x. Split y at b.
        let piece = |x0: f64, x1: f64, lo: &dyn Fn(f64) -> f64| {
            gl2(|x, y| f(x, y) * g(x, y), x0, x1, lo, |_| b, p)
                + gl2(|x, y| f(x, y) * g(x, y), x0, x1, |_| b, |_| 1.0, p)
        };
        piece(0.0, a, &|_| a) + piece(a, b, &|x| x)
    }

    /// Mass of the non-empty intersections.
    pub fn nonempty(&self) -> f64 {
        self.raw(|_, _| 1.0)
    }

    pub fn conflict(&self) -> f64 {
        1.0 - self.nonempty()
    }

    /// Predictive `m(S) = E[max(x, a)]`.
    pub fn mass_s(&self) -> f64 {
        let a = self.a;
        self.raw(|x, _| x.max(a)) / self.nonempty()
    }

    /// Predictive `m(F) = E[1 − min(y, b)]`.
    pub fn mass_f(&self) -> f64 {
        let b = self.b;
        self.raw(|_, y| 1.0 - y.min(b)) / self.nonempty()
    }

    /// Belief that `P(S) ∈ [u, v]`, for `a ≤ u ≤ v ≤ b`.
    pub fn bel(&self, u: f64, v: f64) -> f64 {
        assert!(self.a <= u && u <= v && v <= self.b);
        let f = self.f();
        gl2(f, u, v, |x| x, |_| v, self.panels) / self.nonempty()
    }

    /// Plausibility that `P(S) ∈ [u, v]`, for `a ≤ u ≤ v ≤ b`.
    pub fn pl(&self, u: f64, v: f64) -> f64 {
        assert!(self.a <= u && u <= v && v <= self.b);
        let f = self.f();
        let p = self.panels;
        (gl2(&f, 0.0, u, |_| u, |_| 1.0, p) + gl2(&f, u, v, |x| x, |_| 1.0, p)) / self.nonempty()
    }
}
