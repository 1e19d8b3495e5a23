//! Pignistic probabilities: the bets implied by a credal set and by the
//! mass function it induces.
//!
//! Run with `cargo run --release --example betting`.

use credal_belief::mc::{CredalPolytopeSet, MCConfig};
use credal_belief::pignistic::{betp_credal, betp_finite, betp_polytope};
use credal_belief::ternary::{BaryPoint, CredalComponent, CredalSet3, mass_from_credal};

fn main() -> credal_belief::Result<()> {
    let triangle = CredalSet3::single(CredalComponent::polygon(vec![
        BaryPoint::new(0.6, 0.2, 0.2)?,
        BaryPoint::new(0.2, 0.6, 0.2)?,
        BaryPoint::new(0.2, 0.2, 0.6)?,
    ])?);
    let centroid = betp_credal(&triangle)?;
    let from_mass = betp_finite(&mass_from_credal(&triangle)?)?;
    let fmt = |p: &[f64]| p.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(", ");
    println!("centroid of the set: ({})", fmt(centroid.probs()));
    println!("from its masses:     ({})", fmt(from_mass.probs()));

    let tetra = CredalPolytopeSet::new(
        4,
        vec![vec![
            vec![0.7, 0.1, 0.1, 0.1],
            vec![0.1, 0.7, 0.1, 0.1],
            vec![0.1, 0.1, 0.7, 0.1],
            vec![0.1, 0.1, 0.1, 0.7],
        ]],
    )?;
    let sampled = betp_polytope(&tetra, &MCConfig::new(100_000, 9)?)?;
    let se = sampled.standard_errors.unwrap_or_default();
    for (i, p) in sampled.dist.probs().iter().enumerate() {
        println!("  {}: {p:.4} ± {:.4}", sampled.dist.frame().atoms()[i], se.get(i).copied().unwrap_or(0.0));
    }
    Ok(())
}
