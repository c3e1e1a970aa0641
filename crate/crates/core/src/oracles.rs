//! The fractional coloring, matching and domination LPs over a schedule
//! matrix, and capacity-region membership built on them.
//!
//! With `M` the maximal-schedule matrix of `G`:
//!
//! * `chi_f(λ)  = min e'α  s.t. Mα >= λ, α >= 0`
//! * `phi_f(λ)  = max e'β  s.t. Mβ <= λ, β >= 0`
//! * `tau_f(λ)  = max d    s.t. d·e + Mβ = λ, e'β = 1, β >= 0, d free`
//!
//! `tau_f` is `-inf` when its equality system has no solution.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::lp::{solve_lp, LpOutcome, LpProblem, LpSolution, Relation, Sense};
use crate::exactla::rational::{
    format, parse_exact, serde_rational_opt, serde_rational_vec, Rational,
};
use crate::graph::{InterferenceGraph, NodeSet, ScheduleMatrix};
use crate::rates::RateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    ChiF,
    PhiF,
    TauF,
}

/// A rational or negative infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtRational {
    NegInfinity,
    Finite(Rational),
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::NegInfinity => None,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{}", format(r)),
            ExtRational::NegInfinity => write!(f, "-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "-inf" {
            return Ok(ExtRational::NegInfinity);
        }
        parse_exact(&s)
            .map(ExtRational::Finite)
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An oracle optimum with its primal witness: `α` or `β` over the schedule
/// columns, plus the shift `d` for `tau_f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleValue {
    pub kind: OracleKind,
    pub value: ExtRational,
    pub schedules: Vec<NodeSet>,
    #[serde(with = "serde_rational_vec")]
    pub weights: Vec<Rational>,
    #[serde(
        with = "serde_rational_opt",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub shift: Option<Rational>,
}

impl OracleValue {
    pub fn finite(&self) -> Option<&Rational> {
        self.value.finite()
    }

    /// Re-substitutes the witness into the defining LP of `kind`.
    pub fn verify(&self, m: &ScheduleMatrix, lambda: &[Rational]) -> bool {
        if self.schedules != m.columns() || lambda.len() != m.num_rows() {
            return false;
        }
        let value = match &self.value {
            ExtRational::Finite(v) => v,
            // Infeasibility is only possible for tau_f and carries no witness.
            ExtRational::NegInfinity => {
                return self.kind == OracleKind::TauF
                    && tau_f_on(m, lambda).is_ok_and(|t| t.value == ExtRational::NegInfinity)
            }
        };
        if self.weights.len() != m.num_schedules() || self.weights.iter().any(Signed::is_negative) {
            return false;
        }
        let mw = m.apply(&self.weights);
        let total: Rational = self.weights.iter().sum();
        match self.kind {
            OracleKind::ChiF => total == *value && mw.iter().zip(lambda).all(|(a, b)| a >= b),
            OracleKind::PhiF => total == *value && mw.iter().zip(lambda).all(|(a, b)| a <= b),
            OracleKind::TauF => {
                self.shift.as_ref() == Some(value)
                    && total.is_one()
                    && mw.iter().zip(lambda).all(|(nu, l)| &(nu + value) == l)
            }
        }
    }
}

fn check_len(m: &ScheduleMatrix, lambda: &[Rational]) -> Result<()> {
    if lambda.len() != m.num_rows() {
        return Err(Error::invalid(format!(
            "rate vector of length {} for a schedule matrix with {} rows",
            lambda.len(),
            m.num_rows()
        )));
    }
    Ok(())
}

fn expect_optimal(outcome: LpOutcome, what: &str) -> Result<LpSolution> {
    outcome
        .into_optimal()
        .ok_or_else(|| Error::internal(format!("{what} LP has no optimum")))
}

pub(crate) fn chi_f_lp(
    m: &ScheduleMatrix,
    lambda: &[Rational],
) -> Result<(OracleValue, LpSolution)> {
    check_len(m, lambda)?;
    let k = m.num_schedules();
    let mut p = LpProblem::new(Sense::Minimize, vec![Rational::one(); k]);
    for (i, l) in lambda.iter().enumerate() {
        p.push(m.row(i), Relation::Ge, l.clone());
    }
    let sol = expect_optimal(solve_lp(&p)?, "chi_f")?;
    let value = OracleValue {
        kind: OracleKind::ChiF,
        value: ExtRational::Finite(sol.value.clone()),
        schedules: m.columns().to_vec(),
        weights: sol.x.clone(),
        shift: None,
    };
    Ok((value, sol))
}

pub fn chi_f_on(m: &ScheduleMatrix, lambda: &[Rational]) -> Result<OracleValue> {
    Ok(chi_f_lp(m, lambda)?.0)
}

pub fn phi_f_on(m: &ScheduleMatrix, lambda: &[Rational]) -> Result<OracleValue> {
    check_len(m, lambda)?;
    let k = m.num_schedules();
    let mut p = LpProblem::new(Sense::Maximize, vec![Rational::one(); k]);
    for (i, l) in lambda.iter().enumerate() {
        p.push(m.row(i), Relation::Le, l.clone());
    }
    let sol = expect_optimal(solve_lp(&p)?, "phi_f")?;
    Ok(OracleValue {
        kind: OracleKind::PhiF,
        value: ExtRational::Finite(sol.value),
        schedules: m.columns().to_vec(),
        weights: sol.x,
        shift: None,
    })
}

pub fn tau_f_on(m: &ScheduleMatrix, lambda: &[Rational]) -> Result<OracleValue> {
    check_len(m, lambda)?;
    let k = m.num_schedules();
    // Variables: d, then β.
    let mut objective = vec![Rational::zero(); k + 1];
    objective[0] = Rational::one();
    let mut p = LpProblem::new(Sense::Maximize, objective).free(0);
    for (i, l) in lambda.iter().enumerate() {
        let mut row = vec![Rational::one()];
        row.extend(m.row(i));
        p.push(row, Relation::Eq, l.clone());
    }
    let mut sum_row = vec![Rational::one(); k + 1];
    sum_row[0] = Rational::zero();
    p.push(sum_row, Relation::Eq, Rational::one());
    let base = OracleValue {
        kind: OracleKind::TauF,
        value: ExtRational::NegInfinity,
        schedules: m.columns().to_vec(),
        weights: Vec::new(),
        shift: None,
    };
    match solve_lp(&p)? {
        LpOutcome::Infeasible => Ok(base),
        LpOutcome::Unbounded => Err(Error::internal("tau_f LP is unbounded")),
        LpOutcome::Optimal(sol) => {
            let mut x = sol.x;
            let d = x.remove(0);
            Ok(OracleValue {
                value: ExtRational::Finite(d.clone()),
                weights: x,
                shift: Some(d),
                ..base
            })
        }
    }
}

/// Weighted fractional coloring number of `G` at `λ`.
pub fn chi_f(g: &InterferenceGraph, lambda: &RateVector) -> Result<OracleValue> {
    lambda.check_graph(g)?;
    chi_f_on(&*g.maximal_schedules()?, lambda.values())
}

/// Weighted fractional matching number of `G` at `λ`.
pub fn phi_f(g: &InterferenceGraph, lambda: &RateVector) -> Result<OracleValue> {
    lambda.check_graph(g)?;
    phi_f_on(&*g.maximal_schedules()?, lambda.values())
}

/// Weighted fractional domination number of `G` at `λ`.
pub fn tau_f(g: &InterferenceGraph, lambda: &RateVector) -> Result<OracleValue> {
    lambda.check_graph(g)?;
    tau_f_on(&*g.maximal_schedules()?, lambda.values())
}

/// `λ ∈ Λ`, i.e. `chi_f(λ) <= 1`.
pub fn in_capacity_region(g: &InterferenceGraph, lambda: &RateVector) -> Result<bool> {
    let v = chi_f(g, lambda)?;
    Ok(v.finite().is_some_and(|x| *x <= Rational::one()))
}

/// Solves `max t  s.t. Mα - t·e >= λ, e'α <= 1, α >= 0, t free`.
/// Variables are `α` then `t`.
pub(crate) fn interior_lp(m: &ScheduleMatrix, lambda: &[Rational]) -> Result<LpSolution> {
    check_len(m, lambda)?;
    let k = m.num_schedules();
    let mut objective = vec![Rational::zero(); k + 1];
    objective[k] = Rational::one();
    let mut p = LpProblem::new(Sense::Maximize, objective).free(k);
    for (i, l) in lambda.iter().enumerate() {
        let mut row = m.row(i);
        row.push(-Rational::one());
        p.push(row, Relation::Ge, l.clone());
    }
    let mut sum_row = vec![Rational::one(); k + 1];
    sum_row[k] = Rational::zero();
    p.push(sum_row, Relation::Le, Rational::one());
    expect_optimal(solve_lp(&p)?, "interior")
}

/// `λ ∈ Λ°`: some convex combination of schedules strictly exceeds `λ` in
/// every coordinate.
pub fn in_capacity_interior(g: &InterferenceGraph, lambda: &RateVector) -> Result<bool> {
    lambda.check_graph(g)?;
    let sol = interior_lp(&*g.maximal_schedules()?, lambda.values())?;
    Ok(sol.value.is_positive())
}

/// Every maximal clique carries total rate at most 1.
pub fn clique_constraints_hold(g: &InterferenceGraph, lambda: &RateVector) -> Result<bool> {
    lambda.check_graph(g)?;
    let one = Rational::one();
    Ok(g.maximal_cliques()?.iter().all(|q| {
        let sum: Rational = q.iter().map(|v| lambda.values()[v - 1].clone()).sum();
        sum <= one
    }))
}

/// `λ` is a 0/1 vector supported on an independent set.
pub fn is_extreme_point(g: &InterferenceGraph, lambda: &RateVector) -> Result<bool> {
    lambda.check_graph(g)?;
    let mut support = NodeSet::EMPTY;
    for (i, v) in lambda.values().iter().enumerate() {
        if v.is_one() {
            support = support.union(NodeSet::singleton(i + 1));
        } else if !v.is_zero() {
            return Ok(false);
        }
    }
    g.is_independent(support)
}
