//! LQF on the six-cycle at two nearby rate vectors.
//!
//! `cargo run --release --example lqf_simulation [horizon]`

use lqflab::exactla::rational::{int, rat, to_f64};
use lqflab::graph::InterferenceGraph;
use lqflab::rates::RateVector;
use lqflab::sim::{run, ArrivalKind, SimConfig, TieBreaker};

fn main() -> lqflab::Result<()> {
    let horizon: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200_000);
    let c6 = InterferenceGraph::cycle(6)?;
    let eps = rat(1, 1000);
    let half = rat(1, 2);
    let l1 = RateVector::uniform(6, rat(7, 10) * (&half - &eps))?;
    let mut v2 = vec![&half - &eps * rat(2, 1); 6];
    v2[0] = &half - &eps;
    let l2 = RateVector::new(v2)?;

    let mut ties = vec![TieBreaker::Lexicographic];
    ties.extend((1..=3).map(|seed| TieBreaker::UniformRandom { seed }));
    let show = |label: String, cfg: &SimConfig, l: &RateVector| -> lqflab::Result<()> {
        let t = run(&c6, l, cfg)?;
        println!(
            "{label}: peak {:.3}, drift {:.2e}, {:?}, {} distinct schedules",
            to_f64(&t.peak()),
            t.drift,
            t.verdict,
            t.catalog.len()
        );
        Ok(())
    };
    for (name, l) in [("lambda1", &l1), ("lambda2", &l2)] {
        for kind in [ArrivalKind::Constant, ArrivalKind::Bernoulli] {
            for tb in &ties {
                show(
                    format!("{name} {kind:?} {tb:?}"),
                    &SimConfig::new(kind, *tb, horizon, 7),
                    l,
                )?;
            }
        }
    }

    // Staggered backlogs start the rotation {3,6} -> {2,5} -> {1,4}, which
    // serves each link once every three slots and never breaks up.
    let mut cfg = SimConfig::new(ArrivalKind::Constant, TieBreaker::Lexicographic, horizon, 0);
    cfg.initial = Some([int(0), rat(1, 3), rat(2, 3), int(0), rat(1, 3), rat(2, 3)].to_vec());
    show(
        "lambda1 Constant from (0,1/3,2/3,0,1/3,2/3)".into(),
        &cfg,
        &l1,
    )?;
    Ok(())
}
