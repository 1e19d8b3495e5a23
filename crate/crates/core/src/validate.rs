//! Exact engines against Monte Carlo on a fixed suite of cases.
//!
//! Each case has an exact mass function and a credal set. The set is
//! sampled, and every subset whose estimate differs from the exact mass by
//! more than `tolerance` standard errors is flagged. The standard error is
//! that of a frequency with the exact mass as success probability; one
//! sample's worth (`1/N`) is added so that masses of exactly 0 or 1 are not
//! flagged for floating-point ties on measure-zero boundaries.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binary::{IntervalKnowledge, knowledge_measure};
use crate::error::Result;
use crate::frames::{Frame, MassFunction, MassSpec, make_mass, mobius_inverse};
use crate::mc::{CredalPolytopeSet, MCConfig, default_frame, estimate};
use crate::ternary::{
    BaryPoint, CredalComponent, CredalSet3, LowerProbBounds3, bel_from_bounds, hexagon_polygon,
    mass_from_credal,
};

pub const DEFAULT_TOLERANCE: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    pub samples: usize,
    pub seed: u64,
    /// Flag threshold in standard errors.
    pub tolerance: f64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            samples: crate::report::DEFAULT_SAMPLES,
            seed: crate::report::DEFAULT_SEED,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub atoms: usize,
    pub max_abs_diff: f64,
    /// Largest `|exact − estimate| / SE` over subsets with positive SE.
    pub max_z: f64,
    pub flagged_subsets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub cases: Vec<CaseResult>,
    pub max_abs_diff: f64,
    pub flagged: usize,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.flagged == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "cross-validation: {} samples per case, seed {}, tolerance {} SE",
            self.samples, self.seed, self.tolerance
        );
        let width = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(4);
        for c in &self.cases {
            let status = if c.flagged_subsets.is_empty() { "ok" } else { "FLAGGED" };
            let _ = write!(
                out,
                "  {:<width$}  n={}  max|diff| {:.2e}  max z {:>5.2}  {status}",
                c.name, c.atoms, c.max_abs_diff, c.max_z
            );
            if !c.flagged_subsets.is_empty() {
                let _ = write!(out, " ({})", c.flagged_subsets.join(", "));
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "max |exact - MC| = {:.2e}; {} case(s) flagged",
            self.max_abs_diff, self.flagged
        );
        out
    }
}

/// A case of the suite: exact masses and the set to sample.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub exact: MassFunction,
    pub set: CredalPolytopeSet,
}

fn bp(a: f64, b: f64, c: f64) -> BaryPoint {
    BaryPoint::new(a, b, c).expect("valid point")
}

fn ternary_case(name: &str, set: CredalSet3) -> Result<Case> {
    Ok(Case {
        name: name.to_string(),
        exact: mass_from_credal(&set)?,
        set: CredalPolytopeSet::from_credal3(&set),
    })
}

fn bounds_case(name: String, lower: [f64; 3], upper: [f64; 3]) -> Result<Case> {
    let b = LowerProbBounds3::new(lower, upper)?;
    Ok(Case {
        name,
        exact: mobius_inverse(&bel_from_bounds(&b))?,
        set: CredalPolytopeSet::from_credal3(&hexagon_polygon(&b)?),
    })
}

fn singleton_case(name: String, p: Vec<f64>) -> Result<Case> {
    let n = p.len();
    let frame: Frame = default_frame(n)?;
    Ok(Case {
        name,
        exact: make_mass(&frame, MassSpec::Bayesian(p.clone()))?,
        set: CredalPolytopeSet::points(n, vec![p])?,
    })
}

fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    // flat Dirichlet, rounded so the case names stay readable
    let mut p = crate::mc::sample_simplex(rng, n);
    for v in &mut p[..n - 1] {
        *v = (*v * 1000.0).round() / 1000.0;
    }
    let head: f64 = p[..n - 1].iter().sum();
    if head > 1.0 {
        return random_point(rng, n);
    }
    p[n - 1] = 1.0 - head;
    p
}

fn fmt_point(p: &[f64]) -> String {
    let parts: Vec<String> = p.iter().map(|v| format!("{v:.3}")).collect();
    format!("({})", parts.join(", "))
}

/// The built-in suite. Random cases are drawn from `seed`.
pub fn builtin_cases(seed: u64) -> Result<Vec<Case>> {
    let mut cases = vec![
        ternary_case(
            "example 1: two points",
            CredalSet3::points(&[bp(0.5, 0.0, 0.5), bp(0.5, 0.5, 0.0)])?,
        )?,
        ternary_case(
            "example 2: segment",
            CredalSet3::single(CredalComponent::segment(bp(0.5, 0.0, 0.5), bp(0.5, 0.5, 0.0))?),
        )?,
        ternary_case(
            "example 3: medial triangle",
            CredalSet3::single(CredalComponent::polygon(vec![
                bp(0.5, 0.5, 0.0),
                bp(0.0, 0.5, 0.5),
                bp(0.5, 0.0, 0.5),
            ])?),
        )?,
        bounds_case("example 4: bounds (.5,0,0 | 1,.5,.5)".into(), [0.5, 0.0, 0.0], [1.0, 0.5, 0.5])?,
        bounds_case("example 4: bounds (.1,.2,.3 | .5,.4,.6)".into(), [0.1, 0.2, 0.3], [0.5, 0.4, 0.6])?,
    ];
    let k = IntervalKnowledge::new(0.3, 0.4)?;
    cases.push(Case {
        name: "interval [.3, .4]".into(),
        exact: knowledge_measure(k).predictive()?,
        set: CredalPolytopeSet::interval(k),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut hexagons = 0;
    while hexagons < 3 {
        let lower: [f64; 3] = std::array::from_fn(|_| (rng.gen_range(0.0..0.4f64) * 100.0).round() / 100.0);
        let upper: [f64; 3] = std::array::from_fn(|i| {
            let hi: f64 = rng.gen_range(lower[i]..=1.0);
            ((hi * 100.0).round() / 100.0).clamp(lower[i], 1.0)
        });
        if LowerProbBounds3::new(lower, upper).is_err() {
            continue;
        }
        hexagons += 1;
        let name = format!("random bounds {} | {}", fmt_point(&lower), fmt_point(&upper));
        cases.push(bounds_case(name, lower, upper)?);
    }
    for n in [2, 3, 3, 4, 5] {
        let p = random_point(&mut rng, n);
        cases.push(singleton_case(format!("singleton {}", fmt_point(&p)), p)?);
    }
    cases.push(Case {
        name: "full simplex".into(),
        exact: MassFunction::vacuous(&default_frame(4)?),
        set: CredalPolytopeSet::full_simplex(4)?,
    });
    Ok(cases)
}

fn check_case(i: usize, case: &Case, opts: &ValidateOptions) -> Result<CaseResult> {
    let cfg = MCConfig::new(opts.samples, opts.seed.wrapping_add(i as u64))?;
    let est = estimate(&case.set, &cfg)?;
    let frame = case.exact.frame().clone();
    let n = opts.samples as f64;
    let mut max_abs_diff: f64 = 0.0;
    let mut max_z: f64 = 0.0;
    let mut flagged = Vec::new();
    for x in frame.subsets() {
        let p = case.exact.mass(x);
        let diff = (p - est.mass(x)).abs();
        let se = (p * (1.0 - p) / n).max(0.0).sqrt();
        max_abs_diff = max_abs_diff.max(diff);
        if se > 0.0 {
            max_z = max_z.max(diff / se);
        }
        if diff > opts.tolerance * se + 1.0 / n {
            flagged.push(frame.subset_name(x));
        }
    }
    Ok(CaseResult {
        name: case.name.clone(),
        atoms: frame.len(),
        max_abs_diff,
        max_z,
        flagged_subsets: flagged,
    })
}

/// Runs the built-in suite. Case `i` is sampled with seed `seed + i`.
pub fn cross_validate(opts: &ValidateOptions) -> Result<CrossValidation> {
    let cases = builtin_cases(opts.seed)?;
    run_cases(&cases, opts)
}

pub fn run_cases(cases: &[Case], opts: &ValidateOptions) -> Result<CrossValidation> {
    let results = cases
        .par_iter()
        .enumerate()
        .map(|(i, c)| check_case(i, c, opts))
        .collect::<Result<Vec<_>>>()?;
    let max_abs_diff = results.iter().map(|c| c.max_abs_diff).fold(0.0, f64::max);
    let flagged = results.iter().filter(|c| !c.flagged_subsets.is_empty()).count();
    Ok(CrossValidation {
        samples: opts.samples,
        seed: opts.seed,
        tolerance: opts.tolerance,
        cases: results,
        max_abs_diff,
        flagged,
    })
}
