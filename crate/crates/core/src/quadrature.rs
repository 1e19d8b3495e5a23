//! Adaptive Simpson quadrature in one and two dimensions.
//!
//! Used as the numeric route for triangle measures (the closed forms in
//! [`crate::binary`] are the primary route) and by the tests as an
//! integration oracle.

/// Adaptive Simpson rule with Richardson correction.
///
/// The interval is first cut into `panels` equal pieces so that narrow peaks
/// are not missed by the initial five-point estimate; each panel then
/// refines until its local error estimate is below its share of `tol`.
#[derive(Debug, Clone, Copy)]
pub struct Simpson {
    pub tol: f64,
    pub panels: usize,
    pub max_depth: u32,
}

impl Default for Simpson {
    fn default() -> Self {
        Simpson {
            tol: 1e-8,
            panels: 32,
            max_depth: 48,
        }
    }
}

impl Simpson {
    pub fn with_tol(tol: f64) -> Self {
        Simpson {
            tol,
            ..Default::default()
        }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let panels = self.panels.max(1);
        let h = (b - a) / panels as f64;
        let local_tol = self.tol / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + h * k as f64;
                let hi = if k + 1 == panels { b } else { lo + h };
                let fa = f(lo);
                let fm = f(0.5 * (lo + hi));
                let fb = f(hi);
                let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
                self.recurse(&f, lo, hi, fa, fm, fb, whole, local_tol, self.max_depth)
            })
            .sum()
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        self.recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + self.recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }

    /// `∫_{x0}^{x1} ∫_{lo(x)}^{hi(x)} f(x, y) dy dx`; empty inner ranges count 0.
    pub fn integrate_2d<F, L, H>(&self, f: F, x0: f64, x1: f64, lo: L, hi: H) -> f64
    where
        F: Fn(f64, f64) -> f64,
        L: Fn(f64) -> f64,
        H: Fn(f64) -> f64,
    {
        let inner = Simpson {
            tol: self.tol,
            panels: self.panels,
            max_depth: self.max_depth,
        };
        self.integrate(
            |x| {
                let (a, b) = (lo(x), hi(x));
                if b <= a {
                    0.0
                } else {
                    inner.integrate(|y| f(x, y), a, b)
                }
            },
            x0,
            x1,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let s = Simpson::default();
        let v = s.integrate(|x| 3.0 * x * x, 0.0, 2.0);
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn narrow_gaussian_is_found() {
        let s = Simpson::with_tol(1e-10);
        let sd: f64 = 0.005;
        let f = |x: f64| (-(x - 0.3f64).powi(2) / (2.0 * sd * sd)).exp() / (sd * (2.0 * std::f64::consts::PI).sqrt());
        let v = s.integrate(f, 0.0, 1.0);
        assert!((v - 1.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn triangle_area() {
        let s = Simpson::default();
        let v = s.integrate_2d(|_, _| 2.0, 0.0, 1.0, |x| x, |_| 1.0);
        assert!((v - 1.0).abs() < 1e-12);
    }
}
