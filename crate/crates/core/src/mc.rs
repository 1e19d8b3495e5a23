//! Monte Carlo estimation of credal-induced beliefs on frames of any size.
//!
//! Labels `q` are drawn uniformly from the open simplex. Each label assigns
//! a distribution `p` to the atoms maximizing `p_ω / q_ω`, and the focal
//! element for `q` collects every atom some member of the credal set is
//! assigned to. For a single distribution `p` the labels giving `{ω}` fill a
//! region of volume fraction `p_ω`, so singleton sets reproduce their own
//! probabilities; for `n = 3` this is the construction of
//! [`crate::ternary`].
//!
//! Reproducibility: samples are split into `chunks` contiguous blocks; block
//! `i` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`. A fixed
//! `(seed, samples, chunks)` always gives the same result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::binary::IntervalKnowledge;
use crate::error::{Error, Result};
use crate::frames::{Frame, MassFunction, SubsetMask};
use crate::lp;
use crate::ternary::CredalSet3;

const VERTEX_SUM_TOL: f64 = 1e-12;

/// Frame used for results: `{S, F}`, `{A, B, C}` or `w1..wn`.
pub fn default_frame(n: usize) -> Result<Frame> {
    match n {
        2 => Ok(Frame::binary()),
        3 => Ok(Frame::ternary()),
        _ => Frame::numbered(n),
    }
}

/// A credal set in the `(n − 1)`-simplex as a union of convex polytopes,
/// each given by its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct CredalPolytopeSet {
    n: usize,
    components: Vec<Vec<Vec<f64>>>,
}

impl CredalPolytopeSet {
    pub fn new(n: usize, components: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        if !(2..=Frame::MAX_ATOMS).contains(&n) {
            return Err(Error::InvalidFrame(format!("{n} atoms; need 2..={}", Frame::MAX_ATOMS)));
        }
        if components.is_empty() {
            return Err(Error::InvalidComponent("credal set is empty".into()));
        }
        for (ci, comp) in components.iter().enumerate() {
            if comp.is_empty() {
                return Err(Error::InvalidComponent(format!("component {ci} has no vertices")));
            }
            for v in comp {
                if v.len() != n {
                    return Err(Error::InvalidPoint(format!(
                        "vertex {v:?} has {} coordinates, expected {n}",
                        v.len()
                    )));
                }
                if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return Err(Error::InvalidPoint(format!("vertex {v:?} has a negative coordinate")));
                }
                let sum: f64 = v.iter().sum();
                if (sum - 1.0).abs() > VERTEX_SUM_TOL {
                    return Err(Error::InvalidPoint(format!("vertex {v:?} sums to {sum}")));
                }
            }
        }
        Ok(CredalPolytopeSet { n, components })
    }

    /// Each point its own component.
    pub fn points(n: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        CredalPolytopeSet::new(n, points.into_iter().map(|p| vec![p]).collect())
    }

    pub fn full_simplex(n: usize) -> Result<Self> {
        let corners = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        CredalPolytopeSet::new(n, vec![corners])
    }

    /// `{P(S) ∈ [lo, hi]}` on `{S, F}`.
    pub fn interval(k: IntervalKnowledge) -> Self {
        let mut comp = vec![vec![k.lo(), 1.0 - k.lo()]];
        if k.hi() > k.lo() {
            comp.push(vec![k.hi(), 1.0 - k.hi()]);
        }
        CredalPolytopeSet {
            n: 2,
            components: vec![comp],
        }
    }

    pub fn from_credal3(set: &CredalSet3) -> Self {
        let components = set
            .components()
            .iter()
            .map(|c| c.vertices().iter().map(|v| v.coords().to_vec()).collect())
            .collect();
        CredalPolytopeSet { n: 3, components }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Vec<Vec<f64>>] {
        &self.components
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MCConfig {
    samples: usize,
    seed: u64,
    chunks: usize,
}

impl MCConfig {
    pub const MIN_SAMPLES: usize = 1000;

    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        if samples < Self::MIN_SAMPLES {
            return Err(Error::InvalidConfig(format!(
                "samples must be at least {}, got {samples}",
                Self::MIN_SAMPLES
            )));
        }
        Ok(MCConfig {
            samples,
            seed,
            chunks: 1,
        })
    }

    /// Split the draws into `chunks` independently seeded blocks, run in
    /// parallel.
    pub fn with_chunks(mut self, chunks: usize) -> Result<Self> {
        if chunks == 0 || chunks > self.samples {
            return Err(Error::InvalidConfig(format!("invalid chunk count {chunks}")));
        }
        self.chunks = chunks;
        Ok(self)
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chunks(&self) -> usize {
        self.chunks
    }
}

/// Frequencies of focal elements, indexed by subset bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct MCResult {
    frame: Frame,
    masses: Vec<f64>,
    beliefs: Vec<f64>,
    samples: usize,
    seed: u64,
}

fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).max(0.0).sqrt()
}

impl MCResult {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn beliefs(&self) -> &[f64] {
        &self.beliefs
    }

    pub fn mass(&self, x: SubsetMask) -> f64 {
        self.masses[x.index()]
    }

    pub fn belief(&self, x: SubsetMask) -> f64 {
        self.beliefs[x.index()]
    }

    pub fn plausibility(&self, x: SubsetMask) -> f64 {
        1.0 - self.belief(self.frame.complement(x))
    }

    pub fn mass_se(&self, x: SubsetMask) -> f64 {
        binomial_se(self.mass(x), self.samples)
    }

    pub fn belief_se(&self, x: SubsetMask) -> f64 {
        binomial_se(self.belief(x), self.samples)
    }

    pub fn plausibility_se(&self, x: SubsetMask) -> f64 {
        self.belief_se(self.frame.complement(x))
    }

    pub fn mass_function(&self) -> MassFunction {
        MassFunction::from_dense(self.frame.clone(), self.masses.clone(), false)
            .expect("frequencies form a mass function")
    }

    /// Same estimates over a frame with other atom names.
    pub fn relabel(&self, frame: &Frame) -> Result<MCResult> {
        if frame.len() != self.frame.len() {
            return Err(Error::FrameMismatch);
        }
        Ok(MCResult {
            frame: frame.clone(),
            ..self.clone()
        })
    }
}

/// A uniform point of the open `(n − 1)`-simplex (normalized exponentials).
pub fn sample_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    assert!(n >= 2, "simplex needs at least two atoms");
    loop {
        let mut q: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let sum: f64 = q.iter().sum();
        for v in &mut q {
            *v /= sum;
        }
        if q.iter().all(|&v| v > 0.0) {
            return q;
        }
    }
}

fn point_in_region(p: &[f64], q: &[f64], w: usize) -> bool {
    (0..q.len()).all(|x| x == w || p[w] * q[x] >= p[x] * q[w])
}

/// Whether the polytope with these vertices meets the region where atom `w`
/// has the largest `p_ω / q_ω`.
fn polytope_meets_region(vertices: &[Vec<f64>], q: &[f64], w: usize) -> bool {
    if vertices.iter().any(|v| point_in_region(v, q, w)) {
        return true;
    }
    if vertices.len() == 1 {
        return false;
    }
    // λ ≥ 0, Σλ = 1, Σ λ_v (v_w q_x − v_x q_w) − s_x = 0, s ≥ 0
    let k = vertices.len();
    let n = q.len();
    let cols = k + n - 1;
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    let mut first = vec![0.0; cols];
    first[..k].fill(1.0);
    rows.push(first);
    rhs.push(1.0);
    for (slack, x) in (k..).zip((0..n).filter(|&x| x != w)) {
        let mut row = vec![0.0; cols];
        for (j, v) in vertices.iter().enumerate() {
            row[j] = v[w] * q[x] - v[x] * q[w];
        }
        row[slack] = -1.0;
        rows.push(row);
        rhs.push(0.0);
    }
    lp::feasible(&rows, &rhs)
}

/// Atoms `ω` for which the credal set meets `{p : p_ω q_x ≥ p_x q_ω ∀x}`.
pub fn projection_mask(q: &[f64], set: &CredalPolytopeSet) -> SubsetMask {
    let mut mask = SubsetMask::EMPTY;
    for w in 0..set.n {
        if set
            .components
            .iter()
            .any(|c| polytope_meets_region(c, q, w))
        {
            mask = mask.with(w);
        }
    }
    mask
}

/// Whether `p` is a convex combination of `vertices`.
pub fn in_convex_hull(p: &[f64], vertices: &[Vec<f64>]) -> bool {
    let k = vertices.len();
    let mut rows = vec![vec![1.0; k]];
    let mut rhs = vec![1.0];
    for i in 0..p.len() {
        rows.push(vertices.iter().map(|v| v[i]).collect());
        rhs.push(p[i]);
    }
    lp::feasible(&rows, &rhs)
}

/// Estimate the mass and belief functions induced by `set`.
pub fn estimate(set: &CredalPolytopeSet, cfg: &MCConfig) -> Result<MCResult> {
    let frame = default_frame(set.n)?;
    let size = frame.power_set_size();
    let chunks = cfg.chunks;
    let base = cfg.samples / chunks;
    let extra = cfg.samples % chunks;
    let counts: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let draws = base + usize::from(i < extra);
            let mut counts = vec![0u64; size];
            for _ in 0..draws {
                let q = sample_simplex(&mut rng, set.n);
                counts[projection_mask(&q, set).index()] += 1;
            }
            counts
        })
        .collect();
    let mut total = vec![0u64; size];
    for c in &counts {
        for (t, v) in total.iter_mut().zip(c) {
            *t += v;
        }
    }
    let n = cfg.samples as f64;
    let masses: Vec<f64> = total.iter().map(|&c| c as f64 / n).collect();
    let mut beliefs = masses.clone();
    for bit in 0..set.n {
        for s in 0..size {
            if s & (1 << bit) != 0 {
                beliefs[s] += beliefs[s ^ (1 << bit)];
            }
        }
    }
    Ok(MCResult {
        frame,
        masses,
        beliefs,
        samples: cfg.samples,
        seed: cfg.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_seed_is_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            assert_eq!(sample_simplex(&mut a, 4), sample_simplex(&mut b, 4));
        }
    }

    #[test]
    fn binary_marginal_is_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 100_000;
        let mut xs: Vec<f64> = (0..n).map(|_| sample_simplex(&mut rng, 2)[0]).collect();
        xs.sort_by(f64::total_cmp);
        let d = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - i as f64 / n as f64).max((i + 1) as f64 / n as f64 - x))
            .fold(0.0, f64::max);
        assert!(d < 1.628 / (n as f64).sqrt(), "KS statistic {d}");
    }

    #[test]
    fn flat_dirichlet_means() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 100_000;
        let mut sums = [0.0; 4];
        for _ in 0..n {
            for (s, v) in sums.iter_mut().zip(sample_simplex(&mut rng, 4)) {
                *s += v;
            }
        }
        // Var of a flat Dirichlet(1,1,1,1) coordinate is 3/80
        let se = (3.0 / 80.0 / n as f64).sqrt();
        for s in sums {
            assert!((s / n as f64 - 0.25).abs() < 4.0 * se);
        }
    }

    #[test]
    fn mask_examples() {
        let two = CredalPolytopeSet::points(3, vec![vec![0.5, 0.0, 0.5], vec![0.5, 0.5, 0.0]]).unwrap();
        assert_eq!(projection_mask(&[0.2, 0.4, 0.4], &two), SubsetMask(0b001));
        let full = CredalPolytopeSet::full_simplex(3).unwrap();
        assert_eq!(projection_mask(&[0.2, 0.4, 0.4], &full), SubsetMask(0b111));
        let corner = CredalPolytopeSet::points(3, vec![vec![1.0, 0.0, 0.0]]).unwrap();
        assert_eq!(projection_mask(&[1.0 / 3.0; 3], &corner), SubsetMask(0b001));
    }

    #[test]
    fn segment_crossing_a_region_between_vertices() {
        // endpoints favour A and C; the midpoint (.3, .4, .3) favours B
        let q = [1.0 / 3.0; 3];
        let seg = vec![vec![0.6, 0.4, 0.0], vec![0.0, 0.4, 0.6]];
        assert!(seg.iter().all(|v| !point_in_region(v, &q, 1)));
        let set = CredalPolytopeSet::new(3, vec![seg]).unwrap();
        assert_eq!(projection_mask(&q, &set), SubsetMask(0b111));

        let far = vec![vec![0.6, 0.2, 0.2], vec![0.2, 0.2, 0.6]];
        let set = CredalPolytopeSet::new(3, vec![far]).unwrap();
        assert_eq!(projection_mask(&q, &set), SubsetMask(0b101));
    }

    #[test]
    fn hull_membership() {
        let tri = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.5, 0.0, 0.5]];
        assert!(in_convex_hull(&[0.5, 0.3, 0.2], &tri));
        assert!(!in_convex_hull(&[0.2, 0.3, 0.5], &tri));
    }

    #[test]
    fn config_floor() {
        assert!(MCConfig::new(999, 0).is_err());
        assert!(MCConfig::new(1000, 0).is_ok());
    }

    #[test]
    fn chunked_runs_are_reproducible() {
        let set = CredalPolytopeSet::full_simplex(4).unwrap();
        let cfg = MCConfig::new(5000, 9).unwrap().with_chunks(4).unwrap();
        let a = estimate(&set, &cfg).unwrap();
        let b = estimate(&set, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mass(SubsetMask(0b1111)), 1.0);
    }

    #[test]
    fn singleton_beliefs() {
        let set = CredalPolytopeSet::points(3, vec![vec![0.2, 0.3, 0.5]]).unwrap();
        let r = estimate(&set, &MCConfig::new(50_000, 1).unwrap()).unwrap();
        let a = SubsetMask(0b001);
        assert!((r.belief(a) - 0.2).abs() < 4.0 * r.belief_se(a));
        let total: f64 = r.masses().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
