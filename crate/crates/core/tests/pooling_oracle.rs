//! Pooling factors against a grid search over pairs of simplex points.
//!
//! `σ*_S` is the least `max_l ν_l / μ_l` over pairs `μ = Mα`, `ν = Mβ` with
//! `μ > 0`, so any grid of distributions gives an upper bound, exact when
//! the grid contains an optimal pair.

use lqflab::exactla::rational::rat;
use lqflab::graph::{nonempty_subsets, InterferenceGraph, NodeSet};
use lqflab::pooling::sigma_set;
use lqflab::Rational;
use num_traits::Zero;

/// Every distribution on `k` points with denominator `den`.
fn grid(k: usize, den: i64) -> Vec<Vec<Rational>> {
    fn fill(k: usize, left: i64, den: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<Rational>>) {
        if cur.len() == k - 1 {
            cur.push(left);
            out.push(cur.iter().map(|&a| rat(a, den)).collect());
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            fill(k, left - a, den, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    fill(k, den, den, &mut Vec::new(), &mut out);
    out
}

fn grid_sigma(g: &InterferenceGraph, s: NodeSet, den: i64) -> Rational {
    let m = g.schedules(s).unwrap();
    let points: Vec<Vec<Rational>> = grid(m.num_schedules(), den)
        .iter()
        .map(|w| m.apply(w))
        .collect();
    let mut best: Option<Rational> = None;
    for mu in points.iter().filter(|mu| mu.iter().all(|x| !x.is_zero())) {
        for nu in &points {
            let worst = mu.iter().zip(nu).map(|(a, b)| b / a).max().unwrap();
            if best.as_ref().is_none_or(|b| worst < *b) {
                best = Some(worst);
            }
        }
    }
    best.expect("the uniform distribution covers every link")
}

#[test]
fn lp_factor_never_exceeds_grid_bound() {
    let graphs = [
        InterferenceGraph::cycle(6).unwrap(),
        InterferenceGraph::complete(3).unwrap(),
        InterferenceGraph::path(5).unwrap(),
        InterferenceGraph::cycle(5).unwrap(),
    ];
    for g in &graphs {
        for s in nonempty_subsets(g.node_count()).unwrap() {
            let exact = sigma_set(g, s).unwrap().value;
            let bound = grid_sigma(g, s, 6);
            assert!(
                exact <= bound,
                "{s}: sigma {exact} above grid bound {bound}"
            );
        }
    }
}

#[test]
fn grid_attains_the_six_cycle_factor() {
    let c6 = InterferenceGraph::cycle(6).unwrap();
    assert_eq!(grid_sigma(&c6, c6.nodes(), 6), rat(2, 3));
    assert_eq!(sigma_set(&c6, c6.nodes()).unwrap().value, rat(2, 3));
}

#[test]
fn trees_and_cliques_pool_fully() {
    // Grid value 1 is an upper bound; the pair μ = ν shows no grid does
    // better, and the LP must agree.
    for g in [
        InterferenceGraph::path(5).unwrap(),
        InterferenceGraph::complete(3).unwrap(),
    ] {
        for s in nonempty_subsets(g.node_count()).unwrap() {
            if grid_sigma(&g, s, 4) == rat(1, 1) {
                assert_eq!(sigma_set(&g, s).unwrap().value, rat(1, 1), "{s}");
            }
        }
    }
}
