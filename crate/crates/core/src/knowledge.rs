//! Composing knowledge about the chance: mixtures of credal sets and
//! intersection of credal sets.
//!
//! Two pieces of knowledge about the same chance are combined by
//! intersecting the credal sets. Combining the induced beliefs with
//! Dempster's rule instead treats the pieces as distinct sources and gives a
//! different, wrong answer.

use crate::error::{Error, Result};
use crate::frames::{MASS_TOLERANCE, MassFunction, SetFunction, SetFunctionKind, mobius_inverse};
use crate::geometry::{self, Pt};
use crate::ternary::{BaryPoint, CredalComponent, CredalSet3, bel_table};

/// Belief and mass of a mixture: credal set `P_i` holds with mass `m_i`.
/// `bel(X) = Σ_i m_i · bel_i(X)`.
pub fn mixture_bel(items: &[(CredalSet3, f64)]) -> Result<(SetFunction, MassFunction)> {
    if items.is_empty() {
        return Err(Error::InvalidMass("empty mixture".into()));
    }
    if let Some((_, m)) = items.iter().find(|(_, m)| !m.is_finite() || *m < 0.0) {
        return Err(Error::InvalidMass(format!("mixture weight {m}")));
    }
    let total: f64 = items.iter().map(|(_, m)| m).sum();
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::InvalidMass(format!("mixture weights sum to {total}")));
    }
    let mut bel = vec![0.0; 8];
    let mut frame = None;
    for (set, m) in items {
        let b = bel_table(set);
        for (acc, v) in bel.iter_mut().zip(b.values()) {
            *acc += m * v;
        }
        frame.get_or_insert_with(|| b.frame().clone());
    }
    let bel = SetFunction::new(frame.expect("nonempty"), SetFunctionKind::Belief, bel)?;
    let mass = mobius_inverse(&bel)?;
    Ok((bel, mass))
}

/// Intersection of two convex credal sets (single components).
pub fn intersect_knowledge(p1: &CredalSet3, p2: &CredalSet3) -> Result<CredalSet3> {
    let (a, b) = match (p1.components(), p2.components()) {
        ([a], [b]) => (a, b),
        _ => {
            return Err(Error::InvalidComponent(
                "intersection needs single convex components".into(),
            ));
        }
    };
    let planes = geometry::halfplanes_of(&b.plane_vertices());
    let clipped = geometry::clip_all(&a.plane_vertices(), &planes);
    let hull: Vec<Pt> = geometry::convex_hull(&clipped);
    if hull.is_empty() {
        return Err(Error::ContradictoryKnowledge("the credal sets do not intersect".into()));
    }
    let points = hull
        .into_iter()
        .map(BaryPoint::from_plane)
        .collect::<Result<Vec<_>>>()?;
    Ok(CredalSet3::single(CredalComponent::hull_of(&points)?))
}
