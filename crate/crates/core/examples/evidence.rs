//! Bernoulli evidence as a belief function over the chance of success.
//!
//! Run with `cargo run --example evidence`.

use credal_belief::SubsetMask;
use credal_belief::binary::{
    EvidenceCounts, QueryKind, combine_measures, evidence_measure, unnormalized_evidence_measure,
};

fn main() -> credal_belief::Result<()> {
    // observations pool: 3 successes then 2 more, same as 5 at once
    let (pooled, _) = combine_measures(
        &evidence_measure(EvidenceCounts::new(3, 1)),
        &evidence_measure(EvidenceCounts::new(2, 4)),
        true,
    )?;
    let direct = evidence_measure(EvidenceCounts::new(5, 5));
    for (u, v) in [(0.4, 0.6), (0.2, 0.8)] {
        println!(
            "bel(P in [{u}, {v}]): pooled {:.6}, direct {:.6}",
            pooled.query(QueryKind::Belief, u, v)?,
            direct.query(QueryKind::Belief, u, v)?
        );
    }

    // without normalization, the commonality of [a, b] is a^r (1 - b)^s
    let e = EvidenceCounts::new(4, 2);
    let raw = unnormalized_evidence_measure(e);
    let (a, b) = (0.3, 0.6);
    println!(
        "q([{a}, {b}]) = {:.6}, a^4 (1-b)^2 = {:.6}, conflict {:.4}",
        raw.query(QueryKind::Commonality, a, b)?,
        a.powi(4) * (1.0 - b).powi(2),
        raw.conflict()
    );

    for n in [1, 5, 20, 100] {
        let next = evidence_measure(EvidenceCounts::new(n, n)).predictive()?;
        println!(
            "{n:>3} of {:>3}: m(S) {:.4}  m(F) {:.4}  m(S or F) {:.4}",
            2 * n,
            next.mass(SubsetMask(1)),
            next.mass(SubsetMask(2)),
            next.mass(SubsetMask(3))
        );
    }
    Ok(())
}
