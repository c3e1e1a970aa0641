//! Δ_C and Δ_R on two nearby six-cycle vectors, plus a nearby Δ_C point.

use lqflab::exactla::rational::{format, rat};
use lqflab::graph::InterferenceGraph;
use lqflab::oracles::tau_f;
use lqflab::rates::RateVector;
use lqflab::regions::{delta_c_approximant, in_delta_c, in_delta_r};

fn main() -> lqflab::Result<()> {
    let c6 = InterferenceGraph::cycle(6)?;
    let eps = rat(1, 1000);
    let half = rat(1, 2);
    let l1 = RateVector::uniform(6, rat(7, 10) * (&half - &eps))?;
    let mut v2 = vec![&half - rat(2, 1) * &eps; 6];
    v2[0] = &half - &eps;
    let l2 = RateVector::new(v2)?;

    for (name, l) in [("lambda1", &l1), ("lambda2", &l2)] {
        let dc = in_delta_c(&c6, l)?;
        println!(
            "{name}: tau_f = {}, delta-c {}, delta-r {}",
            tau_f(&c6, l)?.value,
            dc.member,
            in_delta_r(&c6, l)?.member
        );
        if let Some(s) = dc.witness_set {
            println!("  uniformly dominating on {s}");
        }
    }

    if let Some(p) = delta_c_approximant(&c6, &l1, &rat(1, 100))? {
        let shown: Vec<String> = p.values().iter().map(format).collect();
        println!("delta-c point near lambda1: ({})", shown.join(", "));
    }
    Ok(())
}
