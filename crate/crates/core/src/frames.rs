//! Finite Dempster–Shafer calculus on a frame of discernment.
//!
//! Subsets are bitmasks over at most [`Frame::MAX_ATOMS`] atoms. Set functions
//! are stored densely (one slot per subset) and the belief, plausibility and
//! commonality transforms use the `O(n·2^n)` subset-sum butterflies.
//!
//! Combination and conditioning follow the transferable belief model: the
//! default is the unnormalized conjunctive rule, which keeps the conflict on
//! the empty set. Pass `normalize = true` to get Dempster's rule.

use std::fmt;

use crate::error::{Error, Result};

/// Equality tolerance for sums of masses.
pub const MASS_TOLERANCE: f64 = 1e-12;
/// Möbius masses down to `-NEGATIVE_MASS_TOLERANCE` are treated as roundoff.
pub const NEGATIVE_MASS_TOLERANCE: f64 = 1e-9;
/// Inverted masses below this are butterfly residue and read as zero.
const ROUNDOFF: f64 = 1e-14;

/// An ordered, finite set of named atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    atoms: Vec<String>,
}

impl Frame {
    pub const MAX_ATOMS: usize = 16;

    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.len() < 2 {
            return Err(Error::InvalidFrame(format!(
                "need at least 2 atoms, got {}",
                atoms.len()
            )));
        }
        if atoms.len() > Self::MAX_ATOMS {
            return Err(Error::InvalidFrame(format!(
                "at most {} atoms are supported, got {}",
                Self::MAX_ATOMS,
                atoms.len()
            )));
        }
        for (i, a) in atoms.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::InvalidFrame("atom names must be non-empty".into()));
            }
            if a.contains('+') || a == EMPTY_NAME {
                return Err(Error::InvalidFrame(format!("reserved atom name `{a}`")));
            }
            if atoms[..i].contains(a) {
                return Err(Error::InvalidFrame(format!("duplicate atom `{a}`")));
            }
        }
        Ok(Frame { atoms })
    }

    /// The frame `{S, F}` (success, failure).
    pub fn binary() -> Self {
        Frame::new(["S", "F"]).expect("valid frame")
    }

    /// The frame `{A, B, C}`.
    pub fn ternary() -> Self {
        Frame::new(["A", "B", "C"]).expect("valid frame")
    }

    /// Frame with atoms `w1 … wn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Frame::new((1..=n).map(|i| format!("w{i}")))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Number of subsets, `2^n`.
    pub fn power_set_size(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask((self.power_set_size() - 1) as u32)
    }

    pub fn singleton(&self, atom: usize) -> SubsetMask {
        assert!(atom < self.len(), "atom index out of range");
        SubsetMask(1 << atom)
    }

    pub fn complement(&self, subset: SubsetMask) -> SubsetMask {
        SubsetMask(!subset.0 & self.full().0)
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// All subsets in bitmask order, starting with the empty set.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        (0..self.power_set_size() as u32).map(SubsetMask)
    }

    pub fn contains_subset(&self, subset: SubsetMask) -> bool {
        (subset.0 as usize) < self.power_set_size()
    }

    /// Parses `"A+B"` style names. `"empty"` denotes the empty set.
    pub fn parse_subset(&self, name: &str) -> Result<SubsetMask> {
        let name = name.trim();
        if name == EMPTY_NAME {
            return Ok(SubsetMask::EMPTY);
        }
        let mut bits = 0u32;
        for part in name.split('+') {
            let part = part.trim();
            let idx = self
                .atom_index(part)
                .ok_or_else(|| Error::InvalidSubset(format!("unknown atom `{part}` in `{name}`")))?;
            bits |= 1 << idx;
        }
        Ok(SubsetMask(bits))
    }

    /// Canonical name: atoms in frame order joined by `+`.
    pub fn subset_name(&self, subset: SubsetMask) -> String {
        if subset.is_empty() {
            return EMPTY_NAME.to_string();
        }
        subset
            .atoms()
            .map(|i| self.atoms[i].as_str())
            .collect::<Vec<_>>()
            .join("+")
    }
}

const EMPTY_NAME: &str = "empty";

/// A subset of a frame, one bit per atom.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 & (1 << atom) != 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub fn with(self, atom: usize) -> SubsetMask {
        SubsetMask(self.0 | (1 << atom))
    }

    /// Cardinality.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Atom indices in increasing order.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.0 & (1 << i) != 0)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.atoms().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// How to build a mass function with [`make_mass`].
#[derive(Debug, Clone, PartialEq)]
pub enum MassSpec {
    /// All mass on the whole frame (total ignorance).
    Vacuous,
    /// All mass on one subset.
    Categorical(SubsetMask),
    /// A probability vector, one entry per atom, put on the singletons.
    Bayesian(Vec<f64>),
    /// Explicit focal elements; repeated subsets accumulate.
    Explicit(Vec<(SubsetMask, f64)>),
}

/// A basic belief assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    masses: Vec<f64>,
    unnormalized: bool,
}

pub fn make_mass(frame: &Frame, spec: MassSpec) -> Result<MassFunction> {
    let mut masses = vec![0.0; frame.power_set_size()];
    match spec {
        MassSpec::Vacuous => masses[frame.full().index()] = 1.0,
        MassSpec::Categorical(a) => {
            check_subset(frame, a)?;
            if a.is_empty() {
                return Err(Error::InvalidMass(
                    "categorical mass on the empty set".into(),
                ));
            }
            masses[a.index()] = 1.0;
        }
        MassSpec::Bayesian(probs) => {
            if probs.len() != frame.len() {
                return Err(Error::InvalidMass(format!(
                    "expected {} probabilities, got {}",
                    frame.len(),
                    probs.len()
                )));
            }
            for (i, p) in probs.into_iter().enumerate() {
                masses[frame.singleton(i).index()] = p;
            }
        }
        MassSpec::Explicit(entries) => {
            for (a, v) in entries {
                check_subset(frame, a)?;
                masses[a.index()] += v;
            }
        }
    }
    MassFunction::from_dense(frame.clone(), masses, false)
}

fn check_subset(frame: &Frame, a: SubsetMask) -> Result<()> {
    if frame.contains_subset(a) {
        Ok(())
    } else {
        Err(Error::InvalidSubset(format!("{a} is outside a frame of {} atoms", frame.len())))
    }
}

impl MassFunction {
    /// Validates a dense mass vector indexed by subset bitmask.
    ///
    /// With `allow_empty = false` (closed world) any mass on the empty set is
    /// an error.
    pub fn from_dense(frame: Frame, masses: Vec<f64>, allow_empty: bool) -> Result<Self> {
        if masses.len() != frame.power_set_size() {
            return Err(Error::InvalidMass(format!(
                "expected {} entries, got {}",
                frame.power_set_size(),
                masses.len()
            )));
        }
        let mut sum = 0.0;
        for (i, &v) in masses.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidMass(format!(
                    "mass of {} is {v}",
                    frame.subset_name(SubsetMask(i as u32))
                )));
            }
            sum += v;
        }
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidMass(format!("masses sum to {sum}, not 1")));
        }
        if !allow_empty && masses[0] > 0.0 {
            return Err(Error::InvalidMass(format!(
                "mass {} on the empty set in closed-world mode",
                masses[0]
            )));
        }
        let unnormalized = masses[0] > 0.0;
        Ok(MassFunction {
            frame,
            masses,
            unnormalized,
        })
    }

    pub fn vacuous(frame: &Frame) -> Self {
        make_mass(frame, MassSpec::Vacuous).expect("vacuous mass is valid")
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn mass(&self, subset: SubsetMask) -> f64 {
        self.masses[subset.index()]
    }

    /// Dense masses indexed by bitmask.
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Mass on the empty set.
    pub fn conflict(&self) -> f64 {
        self.masses[0]
    }

    /// True when mass on the empty set is permitted (after an unnormalized
    /// combination or conditioning).
    pub fn is_unnormalized(&self) -> bool {
        self.unnormalized
    }

    /// Focal elements with their masses, in bitmask order.
    pub fn focal_elements(&self) -> impl Iterator<Item = (SubsetMask, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| (SubsetMask(i as u32), v))
    }

    /// Dempster normalization: drops the empty-set mass and rescales.
    pub fn normalized(&self) -> Result<MassFunction> {
        let k = self.masses[0];
        if 1.0 - k <= MASS_TOLERANCE {
            return Err(Error::TotalConflict);
        }
        let mut masses: Vec<f64> = self.masses.iter().map(|v| v / (1.0 - k)).collect();
        masses[0] = 0.0;
        Ok(MassFunction {
            frame: self.frame.clone(),
            masses,
            unnormalized: false,
        })
    }

    pub fn belief(&self) -> SetFunction {
        mobius_forward(self, SetFunctionKind::Belief)
    }

    pub fn plausibility(&self) -> SetFunction {
        mobius_forward(self, SetFunctionKind::Plausibility)
    }

    pub fn commonality(&self) -> SetFunction {
        mobius_forward(self, SetFunctionKind::Commonality)
    }

    /// Same masses on a frame with the same number of atoms but other names.
    pub fn relabel(&self, frame: &Frame) -> Result<MassFunction> {
        if frame.len() != self.frame.len() {
            return Err(Error::FrameMismatch);
        }
        Ok(MassFunction {
            frame: frame.clone(),
            masses: self.masses.clone(),
            unnormalized: self.unnormalized,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetFunctionKind {
    Belief,
    Plausibility,
    Commonality,
}

/// A set function over all `2^n` subsets of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunction {
    frame: Frame,
    kind: SetFunctionKind,
    values: Vec<f64>,
}

impl SetFunction {
    pub fn new(frame: Frame, kind: SetFunctionKind, values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.power_set_size() {
            return Err(Error::InvalidMass(format!(
                "expected {} set-function values, got {}",
                frame.power_set_size(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMass("non-finite set-function value".into()));
        }
        Ok(SetFunction {
            frame,
            kind,
            values,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn kind(&self) -> SetFunctionKind {
        self.kind
    }

    pub fn value(&self, subset: SubsetMask) -> f64 {
        self.values[subset.index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn relabel(&self, frame: &Frame) -> Result<SetFunction> {
        if frame.len() != self.frame.len() {
            return Err(Error::FrameMismatch);
        }
        Ok(SetFunction {
            frame: frame.clone(),
            kind: self.kind,
            values: self.values.clone(),
        })
    }
}

/// Σ over subsets, in place.
fn subset_sum(f: &mut [f64], n: usize) {
    for i in 0..n {
        let bit = 1 << i;
        for mask in 0..f.len() {
            if mask & bit != 0 {
                f[mask] += f[mask ^ bit];
            }
        }
    }
}

fn subset_mobius(f: &mut [f64], n: usize) {
    for i in 0..n {
        let bit = 1 << i;
        for mask in 0..f.len() {
            if mask & bit != 0 {
                f[mask] -= f[mask ^ bit];
            }
        }
    }
}

/// Σ over supersets, in place.
fn superset_sum(f: &mut [f64], n: usize) {
    for i in 0..n {
        let bit = 1 << i;
        for mask in 0..f.len() {
            if mask & bit == 0 {
                f[mask] += f[mask | bit];
            }
        }
    }
}

fn superset_mobius(f: &mut [f64], n: usize) {
    for i in 0..n {
        let bit = 1 << i;
        for mask in 0..f.len() {
            if mask & bit == 0 {
                f[mask] -= f[mask | bit];
            }
        }
    }
}

/// bel, pl or q of a mass function.
///
/// With mass on the empty set, `bel(A)` sums the non-empty subsets of `A`
/// only, so `bel(Ω) = 1 − m(∅)` and `pl(A) = bel(Ω) − bel(Ā)`.
pub fn mobius_forward(m: &MassFunction, kind: SetFunctionKind) -> SetFunction {
    let n = m.frame.len();
    let mut f = m.masses.clone();
    let empty = m.masses[0];
    let values = match kind {
        SetFunctionKind::Belief => {
            subset_sum(&mut f, n);
            f.iter_mut().for_each(|v| *v -= empty);
            f[0] = 0.0;
            f
        }
        SetFunctionKind::Plausibility => {
            subset_sum(&mut f, n);
            let full = m.frame.full().index();
            let total: f64 = m.masses.iter().sum();
            (0..f.len()).map(|a| total - f[full & !a]).collect()
        }
        SetFunctionKind::Commonality => {
            superset_sum(&mut f, n);
            f
        }
    };
    SetFunction {
        frame: m.frame.clone(),
        kind,
        values,
    }
}

/// Recovers the mass function of a belief, plausibility or commonality
/// function by Möbius inversion.
pub fn mobius_inverse(f: &SetFunction) -> Result<MassFunction> {
    let n = f.frame.len();
    let full = f.frame.full().index();
    let mut m = match f.kind {
        SetFunctionKind::Belief => {
            let empty = 1.0 - f.values[full];
            let mut g: Vec<f64> = f.values.iter().map(|v| v + empty).collect();
            g[0] = empty;
            subset_mobius(&mut g, n);
            g
        }
        SetFunctionKind::Plausibility => {
            let mut g: Vec<f64> = (0..f.values.len())
                .map(|a| 1.0 - f.values[full & !a])
                .collect();
            subset_mobius(&mut g, n);
            g
        }
        SetFunctionKind::Commonality => {
            let mut g = f.values.clone();
            superset_mobius(&mut g, n);
            g
        }
    };
    for (i, v) in m.iter_mut().enumerate() {
        if *v < -NEGATIVE_MASS_TOLERANCE {
            return Err(Error::NotABeliefFunction {
                subset: f.frame.subset_name(SubsetMask(i as u32)),
                mass: *v,
            });
        }
        if *v < ROUNDOFF {
            *v = 0.0;
        }
    }
    let sum: f64 = m.iter().sum();
    if (sum - 1.0).abs() > NEGATIVE_MASS_TOLERANCE {
        return Err(Error::NotABeliefFunction {
            subset: "total".into(),
            mass: sum,
        });
    }
    // Roundoff in the butterflies can leave a residue of order 1e-16 on ∅.
    if m[0] <= MASS_TOLERANCE {
        m[0] = 0.0;
    }
    let unnormalized = m[0] > 0.0;
    Ok(MassFunction {
        frame: f.frame.clone(),
        masses: m,
        unnormalized,
    })
}

/// Conjunctive combination. Returns the combined masses and the conflict
/// `m₁₂(∅)`; with `normalize` the result is Dempster's rule.
pub fn conjunctive_combine(
    m1: &MassFunction,
    m2: &MassFunction,
    normalize: bool,
) -> Result<(MassFunction, f64)> {
    if m1.frame != m2.frame {
        return Err(Error::FrameMismatch);
    }
    let mut out = vec![0.0; m1.frame.power_set_size()];
    for (b, vb) in m1.focal_elements() {
        for (c, vc) in m2.focal_elements() {
            out[b.intersect(c).index()] += vb * vc;
        }
    }
    finish(&m1.frame, out, normalize)
}

/// Dempster conditioning: each `m(A)` moves to `A ∩ E`.
pub fn condition(
    m: &MassFunction,
    event: SubsetMask,
    normalize: bool,
) -> Result<(MassFunction, f64)> {
    check_subset(&m.frame, event)?;
    if event.is_empty() {
        return Err(Error::EmptyConditioningSet);
    }
    let mut out = vec![0.0; m.frame.power_set_size()];
    for (a, v) in m.focal_elements() {
        out[a.intersect(event).index()] += v;
    }
    finish(&m.frame, out, normalize)
}

fn finish(frame: &Frame, masses: Vec<f64>, normalize: bool) -> Result<(MassFunction, f64)> {
    let conflict = masses[0];
    let raw = MassFunction {
        frame: frame.clone(),
        masses,
        unnormalized: conflict > 0.0,
    };
    if normalize {
        Ok((raw.normalized()?, conflict))
    } else {
        Ok((raw, conflict))
    }
}
