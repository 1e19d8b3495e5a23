//! Lower and upper bounds on each atom's probability cut a hexagon out of
//! the triangle. The induced belief has a closed form; here it is compared
//! with the geometric computation on the hexagon itself.
//!
//! Run with `cargo run --example bounds`.

use credal_belief::ternary::{LowerProbBounds3, bel_from_bounds, bel_table, hexagon_polygon};

fn main() -> credal_belief::Result<()> {
    let bounds = LowerProbBounds3::new([0.1, 0.2, 0.3], [0.5, 0.4, 0.6])?;
    let hexagon = hexagon_polygon(&bounds)?;
    println!("vertices:");
    for v in hexagon.vertices() {
        let [a, b, c] = v.coords();
        println!("  ({a:.2}, {b:.2}, {c:.2})");
    }

    let closed = bel_from_bounds(&bounds);
    let geometric = bel_table(&hexagon);
    println!("{:>8}  {:>10}  {:>10}", "subset", "closed", "geometric");
    for x in closed.frame().subsets().skip(1) {
        println!(
            "{:>8}  {:>10.6}  {:>10.6}",
            closed.frame().subset_name(x),
            closed.value(x),
            geometric.value(x)
        );
    }

    // bounds that no distribution meets
    match LowerProbBounds3::new([0.5, 0.5, 0.1], [1.0, 1.0, 1.0]) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
