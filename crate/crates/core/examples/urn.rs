//! An urn holds between 30% and 40% black balls. Fifty draws with
//! replacement give 15 black. What should we believe about the next draw and
//! about the proportion itself?
//!
//! Run with `cargo run --example urn`.

use credal_belief::SubsetMask;
use credal_belief::binary::{
    EvidenceCounts, IntervalKnowledge, QueryKind, combine_measures, evidence_measure, knowledge_measure,
};
use credal_belief::pignistic::betp_bounds_binary;

fn main() -> credal_belief::Result<()> {
    let knowledge = knowledge_measure(IntervalKnowledge::new(0.30, 0.40)?);
    let draws = evidence_measure(EvidenceCounts::new(15, 35));

    let prior = knowledge.predictive()?;
    println!("before drawing:");
    println!("  bel(black) = {:.4}  pl(black) = {:.4}", prior.belief().value(SubsetMask(1)), prior.plausibility().value(SubsetMask(1)));

    let (posterior, conflict) = combine_measures(&knowledge, &draws, true)?;
    let next = posterior.predictive()?;
    println!("after 15 black in 50 draws (conflict {conflict:.4}):");
    println!("  m(black)     = {:.6}", next.mass(SubsetMask(1)));
    println!("  m(not black) = {:.6}", next.mass(SubsetMask(2)));
    println!("  m(either)    = {:.6}", next.mass(SubsetMask(3)));

    for (u, v) in [(0.30, 0.35), (0.35, 0.37), (0.30, 0.32)] {
        let bel = posterior.query(QueryKind::Belief, u, v)?;
        let pl = posterior.query(QueryKind::Plausibility, u, v)?;
        println!("  P in [{u:.2}, {v:.2}]: bel {bel:.4}  pl {pl:.4}");
    }

    // the centroid of the knowledge interval, for betting before any draw
    println!("bet on black before drawing: {:.3}", betp_bounds_binary(0.30, 0.60)?);
    Ok(())
}
