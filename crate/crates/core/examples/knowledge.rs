//! Composing knowledge: mixtures of credal sets, and two constraints on the
//! same chance combined by intersecting them.
//!
//! Run with `cargo run --example knowledge`.

use credal_belief::frames::conjunctive_combine;
use credal_belief::knowledge::{intersect_knowledge, mixture_bel};
use credal_belief::ternary::{LowerProbBounds3, hexagon_polygon, mass_from_credal};
use credal_belief::{Error, MassFunction};

fn show(title: &str, m: &MassFunction) {
    println!("{title}");
    for (x, v) in m.focal_elements() {
        println!("  m({}) = {v:.4}", m.frame().subset_name(x));
    }
}

fn main() -> credal_belief::Result<()> {
    let a_likely = hexagon_polygon(&LowerProbBounds3::new([0.5, 0.0, 0.0], [1.0, 1.0, 1.0])?)?;
    let c_unlikely = hexagon_polygon(&LowerProbBounds3::new([0.0, 0.0, 0.0], [1.0, 1.0, 0.2])?)?;

    let (_, mixed) = mixture_bel(&[(a_likely.clone(), 0.5), (c_unlikely.clone(), 0.5)])?;
    show("one of the two holds, even odds:", &mixed);

    let both = intersect_knowledge(&a_likely, &c_unlikely)?;
    show("both hold (intersection):", &mass_from_credal(&both)?);

    let (dempster, k) = conjunctive_combine(&mass_from_credal(&a_likely)?, &mass_from_credal(&c_unlikely)?, true)?;
    show(&format!("Dempster's rule on the beliefs instead (conflict {k:.4}):"), &dempster);

    let c_likely = hexagon_polygon(&LowerProbBounds3::new([0.0, 0.0, 0.6], [1.0, 1.0, 1.0])?)?;
    match intersect_knowledge(&a_likely, &c_likely) {
        Err(Error::ContradictoryKnowledge(why)) => println!("a >= .5 and c >= .6: {why}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
