//! The exact simplex solver on its own.
//!
//! maximize 3x + 2y subject to x + y <= 4, x + 3y <= 6, x <= 3.

use lqflab::exactla::rational::{format, int};
use lqflab::exactla::{solve_lp, LpOutcome, LpProblem, Relation, Sense};

fn main() -> lqflab::Result<()> {
    let p = LpProblem::new(Sense::Maximize, vec![int(3), int(2)])
        .constraint(vec![int(1), int(1)], Relation::Le, int(4))
        .constraint(vec![int(1), int(3)], Relation::Le, int(6))
        .constraint(vec![int(1), int(0)], Relation::Le, int(3));
    match solve_lp(&p)? {
        LpOutcome::Optimal(sol) => {
            println!("value {}", format(&sol.value));
            println!(
                "x = ({})",
                sol.x.iter().map(format).collect::<Vec<_>>().join(", ")
            );
            println!(
                "dual = ({})",
                sol.dual.iter().map(format).collect::<Vec<_>>().join(", ")
            );
            println!(
                "dual certifies optimum: {}",
                p.is_dual_certificate(&sol.dual, &sol.value)
            );
        }
        other => println!("{other:?}"),
    }

    let unbounded = LpProblem::new(Sense::Maximize, vec![int(1)]).constraint(
        vec![int(-1)],
        Relation::Le,
        int(0),
    );
    println!("x >= 0, maximize x: {:?}", solve_lp(&unbounded)?);
    Ok(())
}
