//! Every region verdict for one vector, with inclusion checks and
//! re-verified certificates.
//!
//! `cargo run --example region_report -- 5/12,1/3,1/3,1/3,1/3,1/3`

use lqflab::graph::InterferenceGraph;
use lqflab::rates::RateVector;
use lqflab::regions::region_report;

fn main() -> lqflab::Result<()> {
    let rates = std::env::args().nth(1).unwrap_or_else(|| {
        "3493/10000,3493/10000,3493/10000,3493/10000,3493/10000,3493/10000".into()
    });
    let c6 = InterferenceGraph::cycle(6)?;
    let l = RateVector::parse_inline(&rates, true)?;
    let report = region_report(&c6, &l)?;
    for v in &report.verdicts {
        let witness = v
            .witness_set
            .map(|s| format!(" (witness {s})"))
            .unwrap_or_default();
        println!(
            "{:>12}: {:5} verified {}{witness}",
            v.region.name(),
            v.member,
            v.verify(&c6, &l)?
        );
    }
    if !report.inconsistencies.is_empty() {
        println!("inconsistent: {:?}", report.inconsistencies);
    }
    Ok(())
}
