//! Capacity-region membership through the fractional coloring number.
//!
//! On the five-cycle every clique constraint holds at `(1/2)·e`, yet the
//! vector needs `5/4` time units of schedules.

use lqflab::exactla::rational::{format, rat};
use lqflab::graph::InterferenceGraph;
use lqflab::oracles::{chi_f, clique_constraints_hold, in_capacity_interior, in_capacity_region};
use lqflab::rates::RateVector;

fn main() -> lqflab::Result<()> {
    let c5 = InterferenceGraph::cycle(5)?;
    for c in [rat(2, 5), rat(1, 2)] {
        let l = RateVector::uniform(5, c.clone())?;
        let chi = chi_f(&c5, &l)?;
        println!(
            "C5 at {}·e: chi_f = {}, cliques ok: {}, in capacity: {}, interior: {}",
            format(&c),
            chi.value,
            clique_constraints_hold(&c5, &l)?,
            in_capacity_region(&c5, &l)?,
            in_capacity_interior(&c5, &l)?
        );
        for (s, w) in chi.schedules.iter().zip(&chi.weights) {
            println!("  {s} for {}", format(w));
        }
    }
    Ok(())
}
