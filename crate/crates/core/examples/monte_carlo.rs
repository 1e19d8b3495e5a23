//! Monte Carlo belief for a credal polytope on four atoms, where no exact
//! routine is available.
//!
//! Run with `cargo run --release --example monte_carlo`.

use credal_belief::mc::{CredalPolytopeSet, MCConfig, estimate};

fn main() -> credal_belief::Result<()> {
    let set = CredalPolytopeSet::new(
        4,
        vec![vec![
            vec![0.4, 0.3, 0.2, 0.1],
            vec![0.1, 0.4, 0.3, 0.2],
            vec![0.25, 0.25, 0.25, 0.25],
        ]],
    )?;
    let cfg = MCConfig::new(200_000, 42)?;
    let r = estimate(&set, &cfg)?;
    println!("{} samples, seed {}", r.samples(), r.seed());
    for x in r.frame().subsets().skip(1) {
        let m = r.mass(x);
        if m > 0.0 {
            println!("  m({}) = {m:.4} ± {:.4}", r.frame().subset_name(x), r.mass_se(x));
        }
    }
    let rerun = estimate(&set, &cfg)?;
    println!("same seed, same answer: {}", rerun == r);
    Ok(())
}
