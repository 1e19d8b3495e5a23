//! Belief on a three-atom frame from credal sets drawn in the triangle: two
//! points, the segment between them, and the medial triangle.
//!
//! Run with `cargo run --example ternary`.

use credal_belief::MassFunction;
use credal_belief::ternary::{BaryPoint, CredalComponent, CredalSet3, mass_from_credal};

fn show(title: &str, m: &MassFunction) {
    println!("{title}");
    for (x, v) in m.focal_elements() {
        println!("  m({}) = {v:.4}", m.frame().subset_name(x));
    }
}

fn main() -> credal_belief::Result<()> {
    let p = BaryPoint::new(0.5, 0.0, 0.5)?;
    let q = BaryPoint::new(0.5, 0.5, 0.0)?;

    show("either (1/2, 0, 1/2) or (1/2, 1/2, 0):", &mass_from_credal(&CredalSet3::points(&[p, q])?)?);
    show("anything on the segment between them:", &mass_from_credal(&CredalSet3::single(CredalComponent::segment(p, q)?))?);

    let medial = CredalComponent::polygon(vec![q, BaryPoint::new(0.0, 0.5, 0.5)?, p])?;
    show("the medial triangle:", &mass_from_credal(&CredalSet3::single(medial))?);

    show("total ignorance:", &mass_from_credal(&CredalSet3::full_simplex())?);
    Ok(())
}
