//! Pignistic (betting) probabilities.
//!
//! Two different transforms live here. [`betp_finite`] spreads each mass
//! evenly over the atoms of its focal element. [`betp_credal`] takes the
//! centroid of the credal set, which is the betting distribution when the
//! bet is on the unknown chance rather than on the atoms directly. For
//! credal-induced beliefs the two generally disagree and the centroid is the
//! one to use for decisions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frames::{Frame, MASS_TOLERANCE, MassFunction};
use crate::geometry::{self, Pt};
use crate::mc::{CredalPolytopeSet, MCConfig, default_frame, in_convex_hull};
use crate::ternary::{BaryPoint, CredalSet3};

/// A probability distribution over the atoms of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    frame: Frame,
    probs: Vec<f64>,
}

impl ProbDist {
    pub fn new(frame: Frame, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != frame.len() {
            return Err(Error::FrameMismatch);
        }
        if probs.iter().any(|p| !p.is_finite() || *p < -MASS_TOLERANCE) {
            return Err(Error::InvalidMass(format!("negative probability in {probs:?}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidMass(format!("probabilities sum to {sum}")));
        }
        let probs = probs.into_iter().map(|p| p.max(0.0)).collect();
        Ok(ProbDist { frame, probs })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, atom: usize) -> f64 {
        self.probs[atom]
    }

    pub fn relabel(&self, frame: &Frame) -> Result<ProbDist> {
        if frame.len() != self.frame.len() {
            return Err(Error::FrameMismatch);
        }
        Ok(ProbDist {
            frame: frame.clone(),
            probs: self.probs.clone(),
        })
    }
}

/// `BetP(ω) = Σ_{A ∋ ω} m(A) / |A|`.
///
/// Not the decision distribution for beliefs induced by a credal set; see
/// [`betp_credal`].
pub fn betp_finite(m: &MassFunction) -> Result<ProbDist> {
    if m.conflict() > MASS_TOLERANCE {
        return Err(Error::InvalidMass(format!(
            "mass {} on the empty set; normalize first",
            m.conflict()
        )));
    }
    let frame = m.frame().clone();
    let mut probs = vec![0.0; frame.len()];
    for (a, mass) in m.focal_elements() {
        if a.is_empty() {
            continue;
        }
        let share = mass / a.len() as f64;
        for w in a.atoms() {
            probs[w] += share;
        }
    }
    let sum: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= sum;
    }
    ProbDist::new(frame, probs)
}

/// Centroid of a ternary credal set under the uniform measure of its own
/// dimension: the mean of a point set, the length-weighted mean of segment
/// midpoints, or the area-weighted mean of polygon centroids.
pub fn betp_credal(set: &CredalSet3) -> Result<ProbDist> {
    let comps = set.components();
    let centroid: Pt = match set.dimension() {
        0 => {
            let k = comps.len() as f64;
            let mut c = [0.0, 0.0];
            for v in set.vertices() {
                let p = v.to_plane();
                c[0] += p[0] / k;
                c[1] += p[1] / k;
            }
            c
        }
        1 => weighted_mean(comps.iter().map(|c| {
            let v = c.plane_vertices();
            let mid = [0.5 * (v[0][0] + v[1][0]), 0.5 * (v[0][1] + v[1][1])];
            (geometry::dist(v[0], v[1]), mid)
        })),
        _ => weighted_mean(comps.iter().map(|c| {
            let v = c.plane_vertices();
            (geometry::area(&v), geometry::polygon_centroid(&v))
        })),
    };
    let p = BaryPoint::from_plane(centroid)?;
    ProbDist::new(Frame::ternary(), p.coords().to_vec())
}

fn weighted_mean(items: impl Iterator<Item = (f64, Pt)>) -> Pt {
    let (mut w, mut c) = (0.0, [0.0, 0.0]);
    for (wi, ci) in items {
        w += wi;
        c[0] += wi * ci[0];
        c[1] += wi * ci[1];
    }
    [c[0] / w, c[1] / w]
}

/// Centroid of a polytope set, with per-atom standard errors when it had to
/// be sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeBetP {
    pub dist: ProbDist,
    pub standard_errors: Option<Vec<f64>>,
}

/// Orthonormal basis of the affine hull of `vertices` (directions from the
/// first vertex), by Gram–Schmidt.
fn affine_basis(vertices: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let origin = &vertices[0];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in &vertices[1..] {
        let mut d: Vec<f64> = v.iter().zip(origin).map(|(a, b)| a - b).collect();
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = d.iter().zip(b).map(|(x, y)| x * y).sum();
                for (x, y) in d.iter_mut().zip(b) {
                    *x -= dot * y;
                }
            }
        }
        let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-10 {
            basis.push(d.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

/// Centroid of a general credal polytope set under the uniform measure of its
/// dimension. Points and segments are exact; components of dimension two or
/// more are sampled by rejection from a bounding box of their affine hull,
/// with `cfg.samples()` proposals per component.
pub fn betp_polytope(set: &CredalPolytopeSet, cfg: &MCConfig) -> Result<PolytopeBetP> {
    let n = set.n();
    let frame = default_frame(n)?;
    let bases: Vec<Vec<Vec<f64>>> = set.components().iter().map(|c| affine_basis(c)).collect();
    let dim = bases[0].len();
    if bases.iter().any(|b| b.len() != dim) {
        return Err(Error::MixedDimensions);
    }
    let mut centroid = vec![0.0; n];
    let mut total_weight = 0.0;
    let mut var = vec![0.0; n];
    let mut sampled = false;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
    for (comp, basis) in set.components().iter().zip(&bases) {
        let (weight, c, v) = match dim {
            0 => (1.0, comp[0].clone(), vec![0.0; n]),
            1 => {
                // hull of collinear points: the extreme pair along the line
                let t: Vec<f64> = comp
                    .iter()
                    .map(|p| p.iter().zip(&comp[0]).zip(&basis[0]).map(|((a, b), u)| (a - b) * u).sum())
                    .collect();
                let lo = t.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let mid = 0.5 * (lo + hi);
                let c = comp[0].iter().zip(&basis[0]).map(|(o, u)| o + mid * u).collect();
                (hi - lo, c, vec![0.0; n])
            }
            _ => {
                sampled = true;
                sample_component(comp, basis, cfg.samples(), &mut rng)?
            }
        };
        total_weight += weight;
        for i in 0..n {
            centroid[i] += weight * c[i];
            var[i] += weight * weight * v[i];
        }
    }
    for i in 0..n {
        centroid[i] /= total_weight;
        var[i] /= total_weight * total_weight;
    }
    let sum: f64 = centroid.iter().sum();
    for p in &mut centroid {
        *p = p.max(0.0) / sum;
    }
    Ok(PolytopeBetP {
        dist: ProbDist::new(frame, centroid)?,
        standard_errors: sampled.then(|| var.iter().map(|v| v.sqrt()).collect()),
    })
}

/// `(volume estimate, sample mean, squared standard error of the mean)`.
fn sample_component(
    comp: &[Vec<f64>],
    basis: &[Vec<f64>],
    proposals: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let n = comp[0].len();
    let origin = &comp[0];
    let coords: Vec<Vec<f64>> = comp
        .iter()
        .map(|p| {
            basis
                .iter()
                .map(|u| p.iter().zip(origin).zip(u).map(|((a, b), w)| (a - b) * w).sum())
                .collect()
        })
        .collect();
    let d = basis.len();
    let lo: Vec<f64> = (0..d).map(|k| coords.iter().map(|c| c[k]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..d).map(|k| coords.iter().map(|c| c[k]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let mut sum = vec![0.0; n];
    let mut sum_sq = vec![0.0; n];
    let mut accepted = 0usize;
    for _ in 0..proposals {
        let y: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| rng.gen_range(*a..=*b)).collect();
        if !in_convex_hull(&y, &coords) {
            continue;
        }
        accepted += 1;
        for i in 0..n {
            let x = origin[i] + basis.iter().zip(&y).map(|(u, t)| u[i] * t).sum::<f64>();
            sum[i] += x;
            sum_sq[i] += x * x;
        }
    }
    if accepted < 2 {
        return Err(Error::InvalidComponent("component too thin to sample".into()));
    }
    let k = accepted as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / k).collect();
    let se2 = (0..n)
        .map(|i| ((sum_sq[i] / k - mean[i] * mean[i]).max(0.0)) / (k - 1.0))
        .collect();
    Ok((box_volume * k / proposals as f64, mean, se2))
}

/// Centroid of `P(S) ∈ [a, 1 − b]` given lower probabilities `a` of `S` and
/// `b` of `F`: `(1 + a − b) / 2`.
pub fn betp_bounds_binary(lower_s: f64, lower_f: f64) -> Result<f64> {
    let ok = (0.0..=1.0).contains(&lower_s)
        && (0.0..=1.0).contains(&lower_f)
        && lower_s + lower_f <= 1.0 + MASS_TOLERANCE;
    if !ok {
        return Err(Error::InvalidInterval {
            lo: lower_s,
            hi: 1.0 - lower_f,
        });
    }
    Ok((1.0 + lower_s - lower_f) / 2.0)
}
