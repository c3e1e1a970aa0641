//! Time-slotted LQF queue simulator.
//!
//! Each slot: arrivals join the queues, LQF picks a schedule from the
//! post-arrival backlogs, and every scheduled link serves one unit. Links
//! with an empty queue are never scheduled.
//!
//! Backlogs stay exact. Constant arrivals add a fixed rational per slot;
//! Bernoulli arrivals add one packet with rational probability `p/q`, sampled
//! exactly as `uniform(0..q) < p`. Randomness comes from ChaCha8 seeded with
//! the run seed: stream 1 drives arrivals, stream 2 drives tie-breaking.

mod output;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::rational::{format, Rational};
use crate::graph::{InterferenceGraph, NodeSet};
use crate::rates::RateVector;

pub use output::{write_catalog, write_csv, SimSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrivalKind {
    /// Exactly `rate` units of work per slot.
    Constant,
    /// One unit with probability `rate` (which must be at most 1).
    Bernoulli,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TieBreaker {
    /// Lowest node index wins.
    Lexicographic,
    /// Uniform among the tied links, redrawn at every selection.
    UniformRandom { seed: u64 },
}

impl TieBreaker {
    pub fn start(&self) -> Ties {
        match *self {
            TieBreaker::Lexicographic => Ties { rng: None },
            TieBreaker::UniformRandom { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(2);
                Ties { rng: Some(rng) }
            }
        }
    }
}

/// Running tie-break state.
#[derive(Debug, Clone)]
pub struct Ties {
    rng: Option<ChaCha8Rng>,
}

impl Ties {
    fn pick(&mut self, tied: u64) -> usize {
        let idx = match &mut self.rng {
            None => 0,
            Some(rng) => rng.random_range(0..tied.count_ones()),
        };
        let mut m = tied;
        for _ in 0..idx {
            m &= m - 1;
        }
        m.trailing_zeros() as usize
    }
}

/// Greedy LQF over 0-based backlogs; only links in `eligible` may be chosen.
fn greedy<T: Ord>(adj: &[u64], backlog: &[T], mut eligible: u64, ties: &mut Ties) -> u64 {
    let mut schedule = 0u64;
    while eligible != 0 {
        let mut best: Option<&T> = None;
        let mut tied = 0u64;
        let mut m = eligible;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            match best {
                Some(b) if backlog[v] < *b => {}
                Some(b) if backlog[v] == *b => tied |= 1 << v,
                _ => {
                    best = Some(&backlog[v]);
                    tied = 1 << v;
                }
            }
        }
        let v = ties.pick(tied);
        schedule |= 1 << v;
        eligible &= !(1u64 << v) & !adj[v];
    }
    schedule
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueueState {
    pub backlog: Vec<Rational>,
    pub slot: u64,
}

impl QueueState {
    pub fn new(backlog: Vec<Rational>) -> Result<Self> {
        if backlog.iter().any(Signed::is_negative) {
            return Err(Error::invalid("backlogs must be nonnegative"));
        }
        Ok(QueueState { backlog, slot: 0 })
    }

    pub fn empty(n: usize) -> Self {
        QueueState {
            backlog: vec![Rational::zero(); n],
            slot: 0,
        }
    }
}

/// The LQF schedule for backlog `q`: repeatedly take a longest queue among
/// the links still eligible and drop it and its neighbours. Empty queues are
/// never eligible.
pub fn lqf_schedule(g: &InterferenceGraph, q: &QueueState, ties: &mut Ties) -> Result<NodeSet> {
    if q.backlog.len() != g.node_count() {
        return Err(Error::invalid("backlog length does not match the graph"));
    }
    let positive = q
        .backlog
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_positive())
        .fold(0u64, |m, (i, _)| m | 1 << i);
    Ok(NodeSet::from_bits(greedy(
        g.adjacency(),
        &q.backlog,
        positive,
        ties,
    )))
}

/// One slot: add `arrivals`, schedule by LQF on the result, serve one unit
/// per scheduled link.
pub fn step(
    g: &InterferenceGraph,
    q: &QueueState,
    arrivals: &[Rational],
    ties: &mut Ties,
) -> Result<(QueueState, NodeSet)> {
    if arrivals.len() != g.node_count() || q.backlog.len() != g.node_count() {
        return Err(Error::invalid(
            "arrival or backlog length does not match the graph",
        ));
    }
    if arrivals.iter().any(Signed::is_negative) {
        return Err(Error::invalid("arrivals must be nonnegative"));
    }
    let mid = QueueState {
        backlog: q.backlog.iter().zip(arrivals).map(|(b, a)| b + a).collect(),
        slot: q.slot,
    };
    let s = lqf_schedule(g, &mid, ties)?;
    let backlog = mid
        .backlog
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            if s.contains(i + 1) {
                (b - Rational::one()).max(Rational::zero())
            } else {
                b
            }
        })
        .collect();
    Ok((
        QueueState {
            backlog,
            slot: q.slot + 1,
        },
        s,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    StableLooking,
    UnstableLooking,
    Inconclusive,
}

/// Slope above which a run looks unstable, in backlog units per slot.
pub const UNSTABLE_SLOPE: f64 = 1e-4;
/// Slope magnitude below which a run may look stable.
pub const FLAT_SLOPE: f64 = 1e-6;
/// A stable-looking run's overall peak may exceed its first-quarter peak by
/// at most this factor.
pub const PEAK_FACTOR: f64 = 10.0;

/// Heuristic stability call from the drift of the max backlog over the
/// second half of the run. Finite traces cannot show positive recurrence;
/// this only labels what the trace looks like.
pub fn classify(slope: f64, overall_peak: f64, first_quarter_peak: f64) -> Verdict {
    if slope > UNSTABLE_SLOPE {
        Verdict::UnstableLooking
    } else if slope.abs() <= FLAT_SLOPE && overall_peak <= PEAK_FACTOR * first_quarter_peak {
        Verdict::StableLooking
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotRecord {
    /// Backlogs in units of `1 / SimTrace::denominator`.
    pub max_units: i128,
    pub total_units: i128,
    pub schedule_id: u32,
}

#[derive(Debug, Clone)]
pub struct SimTrace {
    pub config: SimConfig,
    pub rates: Vec<Rational>,
    /// Common denominator of every backlog in the run.
    pub denominator: i128,
    /// State after each slot, one record per slot.
    pub records: Vec<SlotRecord>,
    /// Distinct schedules in order of first use; `schedule_id` indexes this.
    pub catalog: Vec<NodeSet>,
    pub final_backlog: Vec<Rational>,
    /// Least-squares slope of the max backlog over the second half.
    pub drift: f64,
    pub verdict: Verdict,
}

impl SimTrace {
    pub fn to_rational(&self, units: i128) -> Rational {
        Rational::new(BigInt::from(units), BigInt::from(self.denominator))
    }

    pub fn max_backlog(&self, slot: usize) -> Rational {
        self.to_rational(self.records[slot].max_units)
    }

    pub fn total_backlog(&self, slot: usize) -> Rational {
        self.to_rational(self.records[slot].total_units)
    }

    pub fn peak(&self) -> Rational {
        self.to_rational(self.records.iter().map(|r| r.max_units).max().unwrap_or(0))
    }

    pub fn schedule(&self, slot: usize) -> NodeSet {
        self.catalog[self.records[slot].schedule_id as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub arrivals: ArrivalKind,
    pub tie_breaker: TieBreaker,
    pub horizon: u64,
    pub seed: u64,
    /// Backlog at slot 0; all zero when absent.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "output::opt_rationals"
    )]
    pub initial: Option<Vec<Rational>>,
}

impl SimConfig {
    pub fn new(arrivals: ArrivalKind, tie_breaker: TieBreaker, horizon: u64, seed: u64) -> Self {
        SimConfig {
            arrivals,
            tie_breaker,
            horizon,
            seed,
            initial: None,
        }
    }
}

fn to_i128(v: &BigInt, what: &str) -> Result<i128> {
    v.to_i128()
        .ok_or_else(|| Error::invalid(format!("{what} is too large for the simulator")))
}

fn to_u64(v: &BigInt, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::invalid(format!("{what} is too large for the simulator")))
}

enum Source {
    Constant(Vec<i128>),
    /// Per link `(p, q)`: one packet when `uniform(0..q) < p`.
    Bernoulli(Vec<(u64, u64)>, Box<ChaCha8Rng>),
}

/// Runs LQF for `config.horizon` slots with arrival rates `lambda`.
pub fn run(g: &InterferenceGraph, lambda: &RateVector, config: &SimConfig) -> Result<SimTrace> {
    lambda.check_graph(g)?;
    if config.horizon == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    let n = g.node_count();
    let initial = match &config.initial {
        Some(v) => QueueState::new(v.clone())?.backlog,
        None => vec![Rational::zero(); n],
    };
    if initial.len() != n {
        return Err(Error::invalid(
            "initial backlog length does not match the graph",
        ));
    }
    let rates = lambda.values();

    let mut denom = BigInt::one();
    for r in initial.iter().chain(match config.arrivals {
        ArrivalKind::Constant => rates.iter(),
        ArrivalKind::Bernoulli => [].iter(),
    }) {
        denom = denom.lcm(r.denom());
    }
    let d = to_i128(&denom, "common denominator")?;
    let units = |r: &Rational| to_i128(&(r.numer() * (&denom / r.denom())), "backlog");

    let mut source = match config.arrivals {
        ArrivalKind::Constant => Source::Constant(rates.iter().map(units).collect::<Result<_>>()?),
        ArrivalKind::Bernoulli => {
            if rates.iter().any(|r| *r > Rational::one()) {
                return Err(Error::invalid("bernoulli rates must be at most 1"));
            }
            let pq = rates
                .iter()
                .map(|r| Ok((to_u64(r.numer(), "rate")?, to_u64(r.denom(), "rate")?)))
                .collect::<Result<_>>()?;
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(1);
            Source::Bernoulli(pq, Box::new(rng))
        }
    };

    let mut q: Vec<i128> = initial.iter().map(units).collect::<Result<_>>()?;
    let mut ties = config.tie_breaker.start();
    let adj = g.adjacency();
    let horizon = usize::try_from(config.horizon)
        .map_err(|_| Error::invalid("horizon does not fit in memory"))?;
    let mut records = Vec::with_capacity(horizon);
    let mut catalog = Vec::new();
    let mut ids: HashMap<u64, u32> = HashMap::new();

    for _ in 0..horizon {
        match &mut source {
            Source::Constant(a) => {
                for (b, x) in q.iter_mut().zip(a.iter()) {
                    *b += *x;
                }
            }
            Source::Bernoulli(pq, rng) => {
                for (b, &(p, den)) in q.iter_mut().zip(pq.iter()) {
                    if p > 0 && rng.random_range(0..den) < p {
                        *b += d;
                    }
                }
            }
        }
        let positive = q
            .iter()
            .enumerate()
            .filter(|(_, b)| **b > 0)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        let s = greedy(adj, &q, positive, &mut ties);
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            q[v] = (q[v] - d).max(0);
        }
        let id = *ids.entry(s).or_insert_with(|| {
            catalog.push(NodeSet::from_bits(s));
            (catalog.len() - 1) as u32
        });
        records.push(SlotRecord {
            max_units: q.iter().copied().max().unwrap_or(0),
            total_units: q.iter().sum(),
            schedule_id: id,
        });
    }

    let scale = d as f64;
    let peak_of =
        |rs: &[SlotRecord]| rs.iter().map(|r| r.max_units).max().unwrap_or(0) as f64 / scale;
    let half = &records[horizon / 2..];
    let drift = slope(half.iter().map(|r| r.max_units as f64 / scale));
    let first_quarter = &records[..horizon.div_ceil(4)];
    let verdict = classify(drift, peak_of(&records), peak_of(first_quarter));
    let final_backlog = q
        .iter()
        .map(|&u| Rational::new(BigInt::from(u), denom.clone()))
        .collect();

    Ok(SimTrace {
        config: config.clone(),
        rates: rates.to_vec(),
        denominator: d,
        records,
        catalog,
        final_backlog,
        drift,
        verdict,
    })
}

/// Least-squares slope of `ys` against `0, 1, 2, ...`; zero for fewer than
/// two points.
pub fn slope(ys: impl ExactSizeIterator<Item = f64> + Clone) -> f64 {
    let n = ys.len();
    if n < 2 {
        return 0.0;
    }
    let x_mean = (n - 1) as f64 / 2.0;
    let y_mean = ys.clone().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, y) in ys.enumerate() {
        let dx = i as f64 - x_mean;
        sxy += dx * (y - y_mean);
        sxx += dx * dx;
    }
    sxy / sxx
}

/// Exact text of a backlog for reports.
pub fn format_units(units: i128, denominator: i128) -> String {
    format(&Rational::new(
        BigInt::from(units),
        BigInt::from(denominator),
    ))
}
