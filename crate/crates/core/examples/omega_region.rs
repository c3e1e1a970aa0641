//! Ω against the pooling-scaled capacity region on the six-cycle.

use lqflab::exactla::rational::rat;
use lqflab::graph::InterferenceGraph;
use lqflab::rates::RateVector;
use lqflab::regions::{
    in_omega, lambda_interior_verdict, sigma_lambda_verdict, six_cycle_interior_example,
};

fn main() -> lqflab::Result<()> {
    let c6 = InterferenceGraph::cycle(6)?;
    let vectors = [
        ("(1,0,1,0,1,0)", RateVector::from_ints(&[1, 0, 1, 0, 1, 0])?),
        (
            "(7/10,1/10,..)",
            RateVector::new(
                (0..6)
                    .map(|i| if i % 2 == 0 { rat(7, 10) } else { rat(1, 10) })
                    .collect(),
            )?,
        ),
        (
            "interior, eps 1/24",
            six_cycle_interior_example(&rat(1, 24)),
        ),
    ];
    for (name, l) in &vectors {
        let omega = in_omega(&c6, l)?;
        println!(
            "{name}: omega {}, sigma-lambda {}, interior {}",
            omega.member,
            sigma_lambda_verdict(&c6, l)?.member,
            lambda_interior_verdict(&c6, l)?.member
        );
        if let (Some(s), Some(cert)) = (omega.witness_set, &omega.certificate) {
            println!(
                "  strictly dominates on {s}: {}",
                serde_json::to_string(cert).unwrap_or_default()
            );
        }
    }
    Ok(())
}
