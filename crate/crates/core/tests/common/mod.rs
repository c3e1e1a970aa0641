//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use lqflab::exactla::rational::rat;
use lqflab::graph::InterferenceGraph;
use lqflab::rates::RateVector;
use lqflab::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(r: &mut ChaCha8Rng, max_num: i64, den: i64) -> Rational {
    rat(r.random_range(0..=max_num), den)
}

/// Rates that land on both sides of the region boundaries: a random point
/// of `Co(M_V)` scaled per link by a factor in `[1/2, 6/5]`, or occasionally
/// an unstructured vector in `[0, 1]^n`.
pub fn random_rates(g: &InterferenceGraph, r: &mut ChaCha8Rng) -> RateVector {
    let n = g.node_count();
    if r.random_range(0..5) == 0 {
        let den = r.random_range(1..=12);
        return RateVector::new((0..n).map(|_| small_rational(r, den, den)).collect()).unwrap();
    }
    let m = g.maximal_schedules().unwrap();
    let k = m.num_schedules();
    let raw: Vec<i64> = (0..k).map(|_| r.random_range(0..=6)).collect();
    let total: i64 = raw.iter().sum::<i64>().max(1);
    let alpha: Vec<Rational> = raw.iter().map(|&a| rat(a, total)).collect();
    let mu = m.apply(&alpha);
    let values = mu
        .into_iter()
        .map(|x| x * rat(r.random_range(5..=12), 10))
        .collect();
    RateVector::new(values).unwrap()
}

/// A graph on `n` nodes with each edge present with probability 2/5.
pub fn random_graph(n: usize, r: &mut ChaCha8Rng) -> InterferenceGraph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if r.random_range(0..5) < 2 {
                edges.push((u, v));
            }
        }
    }
    InterferenceGraph::new(n, &edges).unwrap()
}

/// `λ¹ = 0.7·(1/2 - ε)·e` on the six-cycle with `ε = 1/1000`.
pub fn lambda1() -> RateVector {
    RateVector::uniform(6, rat(7, 10) * (rat(1, 2) - rat(1, 1000))).unwrap()
}

/// `λ² = (1/2 - ε, 1/2 - 2ε, ..., 1/2 - 2ε)` with `ε = 1/1000`.
pub fn lambda2() -> RateVector {
    let mut v = vec![rat(1, 2) - rat(2, 1000); 6];
    v[0] = rat(1, 2) - rat(1, 1000);
    RateVector::new(v).unwrap()
}

pub fn test_graphs() -> Vec<(&'static str, InterferenceGraph)> {
    vec![
        ("K2", InterferenceGraph::complete(2).unwrap()),
        ("K3", InterferenceGraph::complete(3).unwrap()),
        ("P5", InterferenceGraph::path(5).unwrap()),
        ("C5", InterferenceGraph::cycle(5).unwrap()),
        ("C6", InterferenceGraph::cycle(6).unwrap()),
        ("3 pairs", InterferenceGraph::bipartite_pairs(3).unwrap()),
    ]
}
