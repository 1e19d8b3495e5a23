//! Scenario files: a JSON description of a frame, what is known about the
//! chance, optional Bernoulli evidence, and the questions to answer.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "urn",
//!   "frame": ["black", "notblack"],
//!   "knowledge": { "interval": { "a0": "0.30", "b0": "0.40" } },
//!   "evidence": { "r": 15, "s": 35 },
//!   "queries": ["black", { "interval": { "lo": "0.35", "hi": "0.37" } }]
//! }
//! ```
//!
//! Numbers may be written as JSON numbers or as decimal strings. Knowledge
//! takes one of the forms of [`Knowledge`]; a `mixture` of knowledge forms
//! with masses may replace it.

use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::binary::{EvidenceCounts, IntervalKnowledge};
use crate::error::{Error, Result};
use crate::frames::{Frame, SubsetMask};
use crate::knowledge::intersect_knowledge;
use crate::mc::{CredalPolytopeSet, MCConfig};
use crate::ternary::{BaryPoint, CredalComponent, CredalSet3, LowerProbBounds3, hexagon_polygon};

pub const SCHEMA_VERSION: u32 = 1;

/// A real number that remembers whether it was written as a string.
#[derive(Debug, Clone, PartialEq)]
pub struct Decimal {
    value: f64,
    text: Option<String>,
}

impl Decimal {
    pub fn value(&self) -> f64 {
        self.value
    }
}

impl From<f64> for Decimal {
    fn from(value: f64) -> Self {
        Decimal { value, text: None }
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.text {
            Some(t) => s.serialize_str(t),
            None => s.serialize_f64(self.value),
        }
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct DecimalVisitor;

        impl Visitor<'_> for DecimalVisitor {
            type Value = Decimal;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a decimal string")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Decimal, E> {
                Ok(v.into())
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Decimal, E> {
                Ok((v as f64).into())
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Decimal, E> {
                Ok((v as f64).into())
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Decimal, E> {
                match v.trim().parse::<f64>() {
                    Ok(x) if x.is_finite() => Ok(Decimal {
                        value: x,
                        text: Some(v.to_string()),
                    }),
                    _ => Err(E::custom(format!("`{v}` is not a decimal number"))),
                }
            }
        }

        d.deserialize_any(DecimalVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Knowledge {
    /// `a0 ≤ P(first atom) ≤ b0` on a two-atom frame.
    Interval { a0: Decimal, b0: Decimal },
    /// Bounds on the three singleton probabilities.
    Bounds3 {
        lower: [Decimal; 3],
        upper: [Decimal; 3],
    },
    /// Convex components on a three-atom frame, each a point, a segment or a
    /// convex polygon given by its vertices in order.
    Components(Vec<Vec<Vec<Decimal>>>),
    /// Convex polytopes by vertex lists, any frame size (Monte Carlo).
    Polytopes(Vec<Vec<Vec<Decimal>>>),
    /// Intersection of three-atom convex knowledge pieces.
    Intersection(Vec<Knowledge>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Evidence {
    pub r: u64,
    pub s: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureItem {
    pub knowledge: Knowledge,
    pub mass: Decimal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalQuery {
    pub lo: Decimal,
    pub hi: Decimal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Query {
    /// bel / pl / q of a subset such as `"A+B"`.
    Subset(String),
    /// Belief that `P(first atom)` lies in `[lo, hi]` (two-atom frames).
    Interval { interval: IntervalQuery },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSettings {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub frame: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knowledge: Option<Knowledge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixture: Option<Vec<MixtureItem>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<Query>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<McSettings>,
}

/// A validated scenario, ready for the engines.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Binary {
        knowledge: IntervalKnowledge,
        evidence: Option<EvidenceCounts>,
    },
    Ternary(CredalSet3),
    Mixture(Vec<(CredalSet3, f64)>),
    Polytope(CredalPolytopeSet),
}

/// A question from the `queries` list, resolved against the frame.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolvedQuery {
    Subset(SubsetMask),
    Interval(f64, f64),
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::schema(path, e.into_inner().to_string())
    })?;
    if scenario.schema_version != SCHEMA_VERSION {
        return Err(Error::schema(
            "schema_version",
            format!("unsupported version {}; expected {SCHEMA_VERSION}", scenario.schema_version),
        ));
    }
    Ok(scenario)
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_scenario(&text)
}

/// Wraps engine validation errors with the field they came from; contradictory
/// knowledge passes through untouched.
fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::ContradictoryKnowledge(_) | Error::Schema { .. } => e,
        other => Error::schema(path, other.to_string()),
    }
}

fn vertex(v: &[Decimal], n: usize, path: &str) -> Result<Vec<f64>> {
    if v.len() != n {
        return Err(Error::schema(path, format!("expected {n} coordinates, got {}", v.len())));
    }
    Ok(v.iter().map(Decimal::value).collect())
}

fn bary(v: &[Decimal], path: &str) -> Result<BaryPoint> {
    let p = vertex(v, 3, path)?;
    BaryPoint::new(p[0], p[1], p[2]).map_err(at(path))
}

fn ternary_set(k: &Knowledge, path: &str) -> Result<CredalSet3> {
    match k {
        Knowledge::Bounds3 { lower, upper } => {
            let lower = lower.clone().map(|d| d.value);
            let upper = upper.clone().map(|d| d.value);
            let b = LowerProbBounds3::new(lower, upper).map_err(at(&format!("{path}.bounds3")))?;
            hexagon_polygon(&b).map_err(at(&format!("{path}.bounds3")))
        }
        Knowledge::Components(comps) => {
            let mut out = Vec::with_capacity(comps.len());
            for (i, c) in comps.iter().enumerate() {
                let cpath = format!("{path}.components[{i}]");
                let pts = c
                    .iter()
                    .enumerate()
                    .map(|(j, v)| bary(v, &format!("{cpath}[{j}]")))
                    .collect::<Result<Vec<_>>>()?;
                let comp = match pts.len() {
                    0 => return Err(Error::schema(&cpath, "component has no points")),
                    1 => CredalComponent::point(pts[0]),
                    2 => CredalComponent::segment(pts[0], pts[1]).map_err(at(&cpath))?,
                    _ => CredalComponent::polygon(pts).map_err(at(&cpath))?,
                };
                out.push(comp);
            }
            CredalSet3::new(out).map_err(at(&format!("{path}.components")))
        }
        Knowledge::Intersection(parts) => {
            let ipath = format!("{path}.intersection");
            let mut iter = parts.iter().enumerate();
            let Some((_, first)) = iter.next() else {
                return Err(Error::schema(&ipath, "nothing to intersect"));
            };
            let mut acc = ternary_set(first, &format!("{ipath}[0]"))?;
            for (i, k) in iter {
                let next = ternary_set(k, &format!("{ipath}[{i}]"))?;
                acc = intersect_knowledge(&acc, &next).map_err(at(&ipath))?;
            }
            Ok(acc)
        }
        Knowledge::Interval { .. } => Err(Error::schema(
            format!("{path}.interval"),
            "interval knowledge needs a two-atom frame",
        )),
        Knowledge::Polytopes(_) => Err(Error::schema(
            format!("{path}.polytopes"),
            "polytopes cannot be combined with other knowledge forms",
        )),
    }
}

impl Scenario {
    pub fn frame(&self) -> Result<Frame> {
        Frame::new(self.frame.iter().cloned()).map_err(at("frame"))
    }

    /// Checks the scenario against the frame and builds the engine inputs.
    pub fn model(&self) -> Result<Model> {
        let frame = self.frame()?;
        let n = frame.len();
        let knowledge = match (&self.knowledge, &self.mixture) {
            (Some(k), None) => k,
            (None, Some(items)) => {
                if n != 3 {
                    return Err(Error::schema("mixture", "mixtures need a three-atom frame"));
                }
                if self.evidence.is_some() {
                    return Err(Error::schema("evidence", "evidence needs a two-atom frame"));
                }
                if items.is_empty() {
                    return Err(Error::schema("mixture", "empty mixture"));
                }
                let items = items
                    .iter()
                    .enumerate()
                    .map(|(i, it)| {
                        let set = ternary_set(&it.knowledge, &format!("mixture[{i}].knowledge"))?;
                        Ok((set, it.mass.value))
                    })
                    .collect::<Result<Vec<_>>>()?;
                return Ok(Model::Mixture(items));
            }
            _ => {
                return Err(Error::schema(
                    "knowledge",
                    "exactly one of `knowledge` and `mixture` is required",
                ));
            }
        };
        if self.evidence.is_some() && n != 2 {
            return Err(Error::schema("evidence", "evidence needs a two-atom frame"));
        }
        match knowledge {
            Knowledge::Interval { a0, b0 } => {
                if n != 2 {
                    return Err(Error::schema("knowledge.interval", "interval knowledge needs a two-atom frame"));
                }
                let k = IntervalKnowledge::new(a0.value, b0.value).map_err(at("knowledge.interval"))?;
                Ok(Model::Binary {
                    knowledge: k,
                    evidence: self.evidence.as_ref().map(|e| EvidenceCounts::new(e.r, e.s)),
                })
            }
            Knowledge::Polytopes(comps) => {
                if self.evidence.is_some() {
                    return Err(Error::schema("evidence", "evidence needs interval knowledge"));
                }
                let comps = comps
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        c.iter()
                            .enumerate()
                            .map(|(j, v)| vertex(v, n, &format!("knowledge.polytopes[{i}][{j}]")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let set = CredalPolytopeSet::new(n, comps).map_err(at("knowledge.polytopes"))?;
                Ok(Model::Polytope(set))
            }
            other => {
                if n != 3 {
                    return Err(Error::schema("knowledge", "this knowledge form needs a three-atom frame"));
                }
                if self.evidence.is_some() {
                    return Err(Error::schema("evidence", "evidence needs a two-atom frame"));
                }
                Ok(Model::Ternary(ternary_set(other, "knowledge")?))
            }
        }
    }

    pub fn resolved_queries(&self) -> Result<Vec<ResolvedQuery>> {
        let frame = self.frame()?;
        self.queries
            .iter()
            .enumerate()
            .map(|(i, q)| match q {
                Query::Subset(name) => frame
                    .parse_subset(name)
                    .map(ResolvedQuery::Subset)
                    .map_err(at(&format!("queries[{i}]"))),
                Query::Interval { interval } => {
                    let path = format!("queries[{i}].interval");
                    if frame.len() != 2 {
                        return Err(Error::schema(path, "interval queries need a two-atom frame"));
                    }
                    let (lo, hi) = (interval.lo.value, interval.hi.value);
                    IntervalKnowledge::new(lo, hi).map_err(at(&path))?;
                    Ok(ResolvedQuery::Interval(lo, hi))
                }
            })
            .collect()
    }

    /// The Monte Carlo settings given in the file, validated.
    pub fn mc_config(&self) -> Result<Option<MCConfig>> {
        self.mc
            .as_ref()
            .map(|m| MCConfig::new(m.samples, m.seed).map_err(at("mc.samples")))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const URN: &str = r#"{
        "schema_version": 1,
        "frame": ["black", "notblack"],
        "knowledge": {"interval": {"a0": "0.30", "b0": 0.4}},
        "evidence": {"r": 15, "s": 35},
        "queries": ["black", {"interval": {"lo": "0.35", "hi": "0.37"}}]
    }"#;

    #[test]
    fn parses_numbers_and_strings() {
        let s = parse_scenario(URN).unwrap();
        match s.model().unwrap() {
            Model::Binary { knowledge, evidence } => {
                assert_eq!((knowledge.lo(), knowledge.hi()), (0.3, 0.4));
                assert_eq!(evidence, Some(EvidenceCounts::new(15, 35)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            s.resolved_queries().unwrap(),
            vec![ResolvedQuery::Subset(SubsetMask(1)), ResolvedQuery::Interval(0.35, 0.37)]
        );
        // decimal strings survive re-serialization
        let again = serde_json::to_string(&s).unwrap();
        assert!(again.contains("\"0.30\""));
        assert_eq!(parse_scenario(&again).unwrap(), s);
    }

    #[test]
    fn schema_errors_carry_paths() {
        let bad = URN.replace("\"0.30\"", "\"zero point three\"");
        match parse_scenario(&bad) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "knowledge.interval.a0"),
            other => panic!("{other:?}"),
        }
        let unknown = URN.replace("\"evidence\"", "\"evidense\"");
        assert!(matches!(parse_scenario(&unknown), Err(Error::Schema { .. })));
        let version = URN.replace("\"schema_version\": 1", "\"schema_version\": 2");
        match parse_scenario(&version) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "schema_version"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_errors_carry_paths() {
        let crossed = URN.replace("0.4}", "0.2}");
        match parse_scenario(&crossed).unwrap().model() {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "knowledge.interval"),
            other => panic!("{other:?}"),
        }
        let three = r#"{"schema_version": 1, "frame": ["A","B","C"],
            "knowledge": {"components": [[[0.5, 0.5, 0.0]], [[0.5, 0.6, 0.0]]]}}"#;
        match parse_scenario(three).unwrap().model() {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "knowledge.components[1][0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradictory_intersection() {
        let text = r#"{"schema_version": 1, "frame": ["A","B","C"],
            "knowledge": {"intersection": [
                {"bounds3": {"lower": [0.6, 0, 0], "upper": [1, 1, 1]}},
                {"bounds3": {"lower": [0, 0, 0], "upper": [0.4, 1, 1]}}
            ]}}"#;
        let err = parse_scenario(text).unwrap().model().unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("contradictory knowledge"));
    }

    #[test]
    fn knowledge_forms_are_exclusive() {
        let text = r#"{"schema_version": 1, "frame": ["A","B","C"]}"#;
        assert!(matches!(parse_scenario(text).unwrap().model(), Err(Error::Schema { .. })));
        let evidence3 = r#"{"schema_version": 1, "frame": ["A","B","C"],
            "knowledge": {"bounds3": {"lower": [0,0,0], "upper": [1,1,1]}}, "evidence": {"r": 1, "s": 1}}"#;
        match parse_scenario(evidence3).unwrap().model() {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "evidence"),
            other => panic!("{other:?}"),
        }
    }
}
