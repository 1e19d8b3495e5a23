//! The finite calculus: mass, belief, plausibility and commonality on a
//! small frame, combination and conditioning.
//!
//! Run with `cargo run --example frames`.

use credal_belief::frames::{MassSpec, condition, conjunctive_combine, make_mass, mobius_inverse};
use credal_belief::{Frame, SetFunctionKind};

fn main() -> credal_belief::Result<()> {
    let frame = Frame::new(["rain", "snow", "sun"])?;
    let wet = frame.parse_subset("rain+snow")?;
    let m1 = make_mass(&frame, MassSpec::Explicit(vec![(wet, 0.6), (frame.full(), 0.4)]))?;
    let m2 = make_mass(&frame, MassSpec::Bayesian(vec![0.2, 0.1, 0.7]))?;

    let (bel, pl, q) = (m1.belief(), m1.plausibility(), m1.commonality());
    println!("{:>16}  {:>5}  {:>5}  {:>5}", "subset", "bel", "pl", "q");
    for x in frame.subsets() {
        println!("{:>16}  {:.3}  {:.3}  {:.3}", frame.subset_name(x), bel.value(x), pl.value(x), q.value(x));
    }
    assert_eq!(mobius_inverse(&bel)?.masses(), m1.masses());
    assert_eq!(bel.kind(), SetFunctionKind::Belief);

    let (both, k) = conjunctive_combine(&m1, &m2, true)?;
    println!("combined (conflict {k:.3}):");
    for (x, v) in both.focal_elements() {
        println!("  m({}) = {v:.4}", frame.subset_name(x));
    }

    let (given_wet, _) = condition(&m2, wet, true)?;
    println!("forecast given wet weather:");
    for (x, v) in given_wet.focal_elements() {
        println!("  m({}) = {v:.4}", frame.subset_name(x));
    }
    Ok(())
}
