//! The simplex solver against brute-force vertex enumeration on small
//! bounded LPs.

use lqflab::exactla::rational::rat;
use lqflab::exactla::{solve_lp, LpOutcome, LpProblem, Relation, Sense};
use lqflab::Rational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Solves a square system by plain Gauss-Jordan; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// All constraints as `(row, rel, rhs)` including `x_j >= 0`.
fn all_constraints(p: &LpProblem) -> Vec<(Vec<Rational>, Relation, Rational)> {
    let n = p.objective.len();
    let mut out: Vec<_> = p
        .rows
        .iter()
        .zip(&p.relations)
        .zip(&p.rhs)
        .map(|((r, rel), b)| (r.clone(), *rel, b.clone()))
        .collect();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::from_integer(1.into());
        out.push((e, Relation::Ge, Rational::zero()));
    }
    out
}

fn satisfies(c: &[(Vec<Rational>, Relation, Rational)], x: &[Rational]) -> bool {
    c.iter().all(|(row, rel, b)| {
        let lhs: Rational = row.iter().zip(x).map(|(a, v)| a * v).sum();
        match rel {
            Relation::Le => lhs <= *b,
            Relation::Ge => lhs >= *b,
            Relation::Eq => lhs == *b,
        }
    })
}

/// Best objective over feasible vertices, or `None` if there are none.
fn brute_force(p: &LpProblem) -> Option<Rational> {
    let n = p.objective.len();
    let cons = all_constraints(p);
    let mut best: Option<Rational> = None;
    for pick in itertools::Itertools::combinations(0..cons.len(), n) {
        let a = pick.iter().map(|&i| cons[i].0.clone()).collect();
        let b = pick.iter().map(|&i| cons[i].2.clone()).collect();
        let Some(x) = solve_square(a, b) else {
            continue;
        };
        if !satisfies(&cons, &x) {
            continue;
        }
        let v: Rational = p.objective.iter().zip(&x).map(|(c, xi)| c * xi).sum();
        best = Some(match (best, p.sense) {
            (None, _) => v,
            (Some(b), Sense::Maximize) => b.max(v),
            (Some(b), Sense::Minimize) => b.min(v),
        });
    }
    best
}

fn small() -> impl Strategy<Value = Rational> {
    (-4i64..=6, 1i64..=3).prop_map(|(a, b)| rat(a, b))
}

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![4 => Just(Relation::Le), 1 => Just(Relation::Ge), 1 => Just(Relation::Eq)]
}

/// Random LPs in 1..=3 variables, boxed by `x_j <= 10` so every feasible
/// instance has an optimal vertex.
fn bounded_lp() -> impl Strategy<Value = LpProblem> {
    (1usize..=3, any::<bool>()).prop_flat_map(|(n, maximize)| {
        let row = prop::collection::vec(small(), n);
        (
            prop::collection::vec(small(), n),
            prop::collection::vec((row, relation(), small()), 0..=4),
        )
            .prop_map(move |(obj, rows)| {
                let sense = if maximize {
                    Sense::Maximize
                } else {
                    Sense::Minimize
                };
                let mut p = LpProblem::new(sense, obj);
                for (r, rel, b) in rows {
                    p.push(r, rel, b);
                }
                for j in 0..n {
                    let mut e = vec![Rational::zero(); n];
                    e[j] = rat(1, 1);
                    p.push(e, Relation::Le, rat(10, 1));
                }
                p
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn simplex_matches_vertex_enumeration(p in bounded_lp()) {
        let expected = brute_force(&p);
        match solve_lp(&p).unwrap() {
            LpOutcome::Optimal(sol) => {
                prop_assert_eq!(Some(sol.value.clone()), expected);
                prop_assert!(p.is_feasible(&sol.x));
                prop_assert!(p.is_dual_certificate(&sol.dual, &sol.value));
            }
            LpOutcome::Infeasible => prop_assert_eq!(expected, None),
            LpOutcome::Unbounded => prop_assert!(false, "boxed LP reported unbounded"),
        }
    }

    #[test]
    fn negated_objective_flips_sense(p in bounded_lp()) {
        let mut q = p.clone();
        q.sense = match p.sense { Sense::Maximize => Sense::Minimize, Sense::Minimize => Sense::Maximize };
        q.objective = p.objective.iter().map(|c| -c).collect();
        match (solve_lp(&p).unwrap(), solve_lp(&q).unwrap()) {
            (LpOutcome::Optimal(a), LpOutcome::Optimal(b)) => prop_assert_eq!(a.value, -b.value),
            (LpOutcome::Infeasible, LpOutcome::Infeasible) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }
}

#[test]
fn unbounded_and_free_variables() {
    // max x - y with x, y >= 0 and x - y <= 3 is bounded at 3.
    let p = LpProblem::new(Sense::Maximize, vec![rat(1, 1), rat(-1, 1)]).constraint(
        vec![rat(1, 1), rat(-1, 1)],
        Relation::Le,
        rat(3, 1),
    );
    assert_eq!(solve_lp(&p).unwrap().optimal().unwrap().value, rat(3, 1));
    // max x + y with only x - y <= 3 is unbounded.
    let p = LpProblem::new(Sense::Maximize, vec![rat(1, 1), rat(1, 1)]).constraint(
        vec![rat(1, 1), rat(-1, 1)],
        Relation::Le,
        rat(3, 1),
    );
    assert!(matches!(solve_lp(&p).unwrap(), LpOutcome::Unbounded));
    // min t with t free and t >= -5/2.
    let p = LpProblem::new(Sense::Minimize, vec![rat(1, 1)])
        .free(0)
        .constraint(vec![rat(1, 1)], Relation::Ge, rat(-5, 2));
    let sol = solve_lp(&p).unwrap().into_optimal().unwrap();
    assert_eq!(sol.value, rat(-5, 2));
    assert!(sol.x[0].is_negative());
}
