//! Running a scenario through the engines and rendering the result.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::binary::{QueryKind, TriangleMeasure, combine_measures, evidence_measure, knowledge_measure};
use crate::error::{Error, Result};
use crate::frames::{Frame, MassFunction, SubsetMask};
use crate::knowledge::mixture_bel;
use crate::mc::{CredalPolytopeSet, MCConfig, MCResult, estimate};
use crate::pignistic::{ProbDist, betp_bounds_binary, betp_credal, betp_finite, betp_polytope};
use crate::scenario::{Model, ResolvedQuery, Scenario};
use crate::ternary::mass_from_credal;

pub const DEFAULT_SAMPLES: usize = 200_000;
pub const DEFAULT_SEED: u64 = 1;

const BETP_NOTE: &str = "the centroid bets on the unknown chance and is the decision \
distribution; the finite transform of the induced masses is shown for comparison only";

/// A reported number and how it was obtained: `exact`, `closed-form` or
/// `monte-carlo(±SE)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub provenance: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Source {
    Exact,
    ClosedForm,
    MonteCarlo(usize),
}

impl Source {
    fn quantity(self, value: f64) -> Quantity {
        let provenance = match self {
            Source::Exact => "exact".to_string(),
            Source::ClosedForm => "closed-form".to_string(),
            Source::MonteCarlo(n) => {
                let se = (value * (1.0 - value) / n as f64).max(0.0).sqrt();
                monte_carlo_label(se)
            }
        };
        Quantity { value, provenance }
    }
}

fn monte_carlo_label(se: f64) -> String {
    format!("monte-carlo(±{se:.3e})")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryAnswer {
    pub query: String,
    pub belief: Quantity,
    pub plausibility: Quantity,
    pub commonality: Quantity,
}

/// Extra answers for interval knowledge on a two-atom frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryDetails {
    /// Belief and plausibility of the first atom from the knowledge alone.
    pub prior_belief: Quantity,
    pub prior_plausibility: Quantity,
    /// Conflict between evidence and knowledge before normalization.
    pub conflict: Quantity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetPSection {
    pub centroid: IndexMap<String, Quantity>,
    pub finite_transform: IndexMap<String, Quantity>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McSection {
    pub estimates: IndexMap<String, f64>,
    pub se: IndexMap<String, f64>,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: Scenario,
    pub masses: IndexMap<String, Quantity>,
    pub beliefs: IndexMap<String, Quantity>,
    pub plausibilities: IndexMap<String, Quantity>,
    pub commonalities: IndexMap<String, Quantity>,
    pub queries: Vec<QueryAnswer>,
    pub binary: Option<BinaryDetails>,
    pub betp: BetPSection,
    pub mc: Option<McSection>,
}

/// Command-line overrides for the scenario's Monte Carlo settings.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

fn table(frame: &Frame, f: impl Fn(SubsetMask) -> Quantity) -> IndexMap<String, Quantity> {
    frame.subsets().map(|x| (frame.subset_name(x), f(x))).collect()
}

fn mc_section(r: &MCResult) -> McSection {
    let frame = r.frame();
    McSection {
        estimates: frame.subsets().map(|x| (frame.subset_name(x), r.mass(x))).collect(),
        se: frame.subsets().map(|x| (frame.subset_name(x), r.mass_se(x))).collect(),
        samples: r.samples(),
        seed: r.seed(),
    }
}

fn dist_table(d: &ProbDist, source: Source, se: Option<&[f64]>) -> IndexMap<String, Quantity> {
    d.frame()
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let q = match (source, se) {
                (Source::MonteCarlo(_), Some(se)) => Quantity {
                    value: d.prob(i),
                    provenance: monte_carlo_label(se[i]),
                },
                _ => source.quantity(d.prob(i)),
            };
            (a.clone(), q)
        })
        .collect()
}

/// Standard errors of the finite pignistic transform of frequency masses:
/// each draw contributes `1/|X|` to every atom of its focal element `X`.
fn finite_transform_se(m: &MassFunction, samples: usize) -> Vec<f64> {
    let n = m.frame().len();
    let mut first = vec![0.0; n];
    let mut second = vec![0.0; n];
    for (x, w) in m.focal_elements() {
        let k = x.len() as f64;
        for a in x.atoms() {
            first[a] += w / k;
            second[a] += w / (k * k);
        }
    }
    (0..n)
        .map(|a| ((second[a] - first[a] * first[a]).max(0.0) / samples as f64).sqrt())
        .collect()
}

fn resolve_mc(scenario: &Scenario, opts: &RunOptions, required: bool) -> Result<Option<MCConfig>> {
    let from_file = scenario.mc_config()?;
    if from_file.is_none() && opts.samples.is_none() && opts.seed.is_none() && !required {
        return Ok(None);
    }
    let samples = opts
        .samples
        .or(from_file.map(|c| c.samples()))
        .unwrap_or(DEFAULT_SAMPLES);
    let seed = opts.seed.or(from_file.map(|c| c.seed())).unwrap_or(DEFAULT_SEED);
    MCConfig::new(samples, seed).map(Some)
}

/// Runs every engine that applies to the scenario.
pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<Report> {
    let frame = scenario.frame()?;
    let model = scenario.model()?;
    let queries = scenario.resolved_queries()?;

    let mut binary = None;
    let mut posterior: Option<TriangleMeasure> = None;
    let mut mc_set: Option<CredalPolytopeSet> = None;
    let mut mc_result: Option<MCResult> = None;
    let (mass, source, centroid, centroid_se): (MassFunction, Source, ProbDist, Option<Vec<f64>>) = match &model {
        Model::Binary { knowledge, evidence } => {
            let prior = knowledge_measure(*knowledge);
            let (post, conflict) = match evidence {
                Some(e) => combine_measures(&evidence_measure(*e), &prior, true)?,
                None => (prior.clone(), 0.0),
            };
            let s = SubsetMask(0b01);
            binary = Some(BinaryDetails {
                prior_belief: Source::ClosedForm.quantity(prior.predictive()?.belief().value(s)),
                prior_plausibility: Source::ClosedForm.quantity(prior.predictive()?.plausibility().value(s)),
                conflict: Source::ClosedForm.quantity(conflict),
            });
            if evidence.is_none() {
                mc_set = Some(CredalPolytopeSet::interval(*knowledge));
            }
            let mass = post.predictive()?.relabel(&frame)?;
            posterior = Some(post);
            let c = betp_bounds_binary(knowledge.lo(), 1.0 - knowledge.hi())?;
            let centroid = ProbDist::new(frame.clone(), vec![c, 1.0 - c])?;
            (mass, Source::ClosedForm, centroid, None)
        }
        Model::Ternary(set) => {
            mc_set = Some(CredalPolytopeSet::from_credal3(set));
            let mass = mass_from_credal(set)?.relabel(&frame)?;
            (mass, Source::Exact, betp_credal(set)?.relabel(&frame)?, None)
        }
        Model::Mixture(items) => {
            let (_, mass) = mixture_bel(items).map_err(|e| match e {
                Error::InvalidMass(m) => Error::schema("mixture", m),
                other => other,
            })?;
            let mut c = [0.0; 3];
            for (set, w) in items {
                let b = betp_credal(set)?;
                for (acc, p) in c.iter_mut().zip(b.probs()) {
                    *acc += w * p;
                }
            }
            let centroid = ProbDist::new(frame.clone(), c.to_vec())?;
            (mass.relabel(&frame)?, Source::Exact, centroid, None)
        }
        Model::Polytope(set) => {
            let cfg = resolve_mc(scenario, opts, true)?.expect("required");
            let r = estimate(set, &cfg)?.relabel(&frame)?;
            let b = betp_polytope(set, &cfg)?;
            let mass = r.mass_function();
            mc_result = Some(r);
            let source = if b.standard_errors.is_some() {
                Source::MonteCarlo(cfg.samples())
            } else {
                Source::Exact
            };
            let centroid = b.dist.relabel(&frame)?;
            let centroid_source_se = b.standard_errors;
            // tables below come from the frequencies
            return finish(
                scenario,
                &frame,
                mass,
                Source::MonteCarlo(cfg.samples()),
                &queries,
                None,
                None,
                (centroid, source, centroid_source_se),
                mc_result,
            );
        }
    };

    if mc_result.is_none() {
        match (mc_set, resolve_mc(scenario, opts, false)?) {
            (Some(set), Some(cfg)) => mc_result = Some(estimate(&set, &cfg)?.relabel(&frame)?),
            (None, Some(_)) if scenario.mc.is_some() => {
                return Err(Error::schema(
                    "mc",
                    "Monte Carlo applies to knowledge alone, not to evidence or mixtures",
                ));
            }
            _ => {}
        }
    }
    let centroid_source = match source {
        Source::MonteCarlo(_) => Source::Exact,
        s => s,
    };
    finish(
        scenario,
        &frame,
        mass,
        source,
        &queries,
        posterior.as_ref(),
        binary,
        (centroid, centroid_source, centroid_se),
        mc_result,
    )
}

#[allow(clippy::too_many_arguments)]
fn finish(
    scenario: &Scenario,
    frame: &Frame,
    mass: MassFunction,
    source: Source,
    queries: &[ResolvedQuery],
    posterior: Option<&TriangleMeasure>,
    binary: Option<BinaryDetails>,
    centroid: (ProbDist, Source, Option<Vec<f64>>),
    mc: Option<MCResult>,
) -> Result<Report> {
    let bel = mass.belief();
    let pl = mass.plausibility();
    let q = mass.commonality();
    let finite = betp_finite(&mass)?;
    let finite_se = match source {
        Source::MonteCarlo(n) => Some(finite_transform_se(&mass, n)),
        _ => None,
    };
    let mut answers = Vec::with_capacity(queries.len());
    for query in queries {
        answers.push(match *query {
            ResolvedQuery::Subset(x) => QueryAnswer {
                query: frame.subset_name(x),
                belief: source.quantity(bel.value(x)),
                plausibility: source.quantity(pl.value(x)),
                commonality: source.quantity(q.value(x)),
            },
            ResolvedQuery::Interval(lo, hi) => {
                let m = posterior.ok_or_else(|| Error::schema("queries", "interval queries need interval knowledge"))?;
                QueryAnswer {
                    query: format!("P({}) in [{lo}, {hi}]", frame.atoms()[0]),
                    belief: Source::ClosedForm.quantity(m.query(QueryKind::Belief, lo, hi)?),
                    plausibility: Source::ClosedForm.quantity(m.query(QueryKind::Plausibility, lo, hi)?),
                    commonality: Source::ClosedForm.quantity(m.query(QueryKind::Commonality, lo, hi)?),
                }
            }
        });
    }
    let (centroid, centroid_source, centroid_se) = centroid;
    Ok(Report {
        scenario: scenario.clone(),
        masses: table(frame, |x| source.quantity(mass.mass(x))),
        beliefs: table(frame, |x| source.quantity(bel.value(x))),
        plausibilities: table(frame, |x| source.quantity(pl.value(x))),
        commonalities: table(frame, |x| source.quantity(q.value(x))),
        queries: answers,
        binary,
        betp: BetPSection {
            centroid: dist_table(&centroid, centroid_source, centroid_se.as_deref()),
            finite_transform: dist_table(&finite.relabel(frame)?, source, finite_se.as_deref()),
            note: BETP_NOTE.to_string(),
        },
        mc: mc.as_ref().map(mc_section),
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::schema("report", e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self.scenario.name.as_deref().unwrap_or("scenario");
        let _ = writeln!(out, "{name}: frame {{{}}}", self.scenario.frame.join(", "));
        let _ = writeln!(out);
        let width = self.masses.keys().map(String::len).max().unwrap_or(0).max(6);
        let _ = writeln!(
            out,
            "{:<width$}  {:>10}  {:>10}  {:>10}  {:>10}  provenance",
            "subset", "mass", "belief", "plaus.", "common."
        );
        for (key, m) in &self.masses {
            let _ = writeln!(
                out,
                "{:<width$}  {:>10.6}  {:>10.6}  {:>10.6}  {:>10.6}  {}",
                key,
                m.value,
                self.beliefs[key].value,
                self.plausibilities[key].value,
                self.commonalities[key].value,
                m.provenance
            );
        }
        if let Some(b) = &self.binary {
            let atom = &self.scenario.frame[0];
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "knowledge alone: bel({atom}) = {:.6}, pl({atom}) = {:.6}",
                b.prior_belief.value, b.prior_plausibility.value
            );
            let _ = writeln!(out, "conflict with evidence: {:.6}", b.conflict.value);
        }
        if !self.queries.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "queries:");
            for a in &self.queries {
                let _ = writeln!(
                    out,
                    "  {}: bel {:.6}, pl {:.6}, q {:.6} ({})",
                    a.query, a.belief.value, a.plausibility.value, a.commonality.value, a.belief.provenance
                );
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "pignistic probabilities:");
        for (label, t) in [("centroid", &self.betp.centroid), ("finite transform", &self.betp.finite_transform)] {
            let cells: Vec<String> = t.iter().map(|(a, q)| format!("{a} {:.6}", q.value)).collect();
            let prov = t.values().next().map(|q| q.provenance.as_str()).unwrap_or("");
            let _ = writeln!(out, "  {label:<16}  {}  ({prov})", cells.join("  "));
        }
        let _ = writeln!(out, "  note: {}", self.betp.note);
        if let Some(mc) = &self.mc {
            let _ = writeln!(out);
            let _ = writeln!(out, "monte carlo: {} samples, seed {}", mc.samples, mc.seed);
            for (key, v) in &mc.estimates {
                let _ = writeln!(out, "  {:<width$}  {:>10.6} ± {:.6}", key, v, mc.se[key]);
            }
        }
        out
    }
}
