//! Membership deciders for the LQF stability regions.
//!
//! Every negative verdict carries the violating node set (first in
//! size-then-lexicographic order) and a certificate that re-verifies exactly
//! against that set's schedule matrix without solving any LP.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::lp::{solve_lp, LpProblem, Relation, Sense};
use crate::exactla::matrix::{dot, max_abs};
use crate::exactla::rational::{rat, serde_rational, serde_rational_vec, Rational};
use crate::graph::{nonempty_subsets, InterferenceGraph, NodeSet, ScheduleMatrix};
use crate::oracles::{chi_f_lp, interior_lp, phi_f_on, tau_f_on};
use crate::pooling::{sigma_profile, sigma_scaled_capacity};
use crate::rates::RateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "lambda-o")]
    LambdaInterior,
    #[serde(rename = "sigma-lambda")]
    SigmaLambda,
    #[serde(rename = "omega")]
    Omega,
    #[serde(rename = "delta-c")]
    DeltaC,
    #[serde(rename = "delta-r")]
    DeltaR,
}

impl Region {
    pub const ALL: [Region; 6] = [
        Region::Lambda,
        Region::LambdaInterior,
        Region::SigmaLambda,
        Region::Omega,
        Region::DeltaC,
        Region::DeltaR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Region::Lambda => "lambda",
            Region::LambdaInterior => "lambda-o",
            Region::SigmaLambda => "sigma-lambda",
            Region::Omega => "omega",
            Region::DeltaC => "delta-c",
            Region::DeltaR => "delta-r",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Region::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown region {s:?}")))
    }
}

/// Exact evidence about `[λ]_S` relative to `Co(M_S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `[λ]_S >= ν + margin·e` with `ν = M_S β`, `β` a distribution and
    /// `margin > 0`.
    StrictDomination {
        schedules: Vec<NodeSet>,
        #[serde(with = "serde_rational_vec")]
        beta: Vec<Rational>,
        #[serde(with = "serde_rational_vec")]
        nu: Vec<Rational>,
        #[serde(with = "serde_rational")]
        margin: Rational,
    },
    /// `[λ]_S = ν + shift·e` with `ν = M_S β`, `β` a distribution and
    /// `shift >= 0`.
    UniformDomination {
        schedules: Vec<NodeSet>,
        #[serde(with = "serde_rational_vec")]
        beta: Vec<Rational>,
        #[serde(with = "serde_rational_vec")]
        nu: Vec<Rational>,
        #[serde(with = "serde_rational")]
        shift: Rational,
    },
    /// Nonzero `y >= 0` with `y'm < y'λ` for every schedule `m` (`strict`),
    /// or `y'm <= y'λ` otherwise.
    Separator {
        #[serde(with = "serde_rational_vec")]
        weights: Vec<Rational>,
        strict: bool,
    },
    /// `y >= 0` with `Σ_l y_l σ_l m_l <= 1` for every schedule `m` and
    /// `y'λ > 1`.
    ScaledSeparator {
        #[serde(with = "serde_rational_vec")]
        factors: Vec<Rational>,
        #[serde(with = "serde_rational_vec")]
        weights: Vec<Rational>,
    },
}

fn is_distribution(w: &[Rational], k: usize) -> bool {
    w.len() == k && w.iter().all(|x| !x.is_negative()) && w.iter().sum::<Rational>().is_one()
}

impl Certificate {
    /// Checks the certificate against `M_S` and `[λ]_S`.
    pub fn verify(&self, m: &ScheduleMatrix, lambda: &[Rational]) -> bool {
        if lambda.len() != m.num_rows() {
            return false;
        }
        let k = m.num_schedules();
        match self {
            Certificate::StrictDomination {
                schedules,
                beta,
                nu,
                margin,
            } => {
                schedules == m.columns()
                    && is_distribution(beta, k)
                    && m.apply(beta) == *nu
                    && margin.is_positive()
                    && lambda.iter().zip(nu).all(|(l, n)| l - n >= *margin)
            }
            Certificate::UniformDomination {
                schedules,
                beta,
                nu,
                shift,
            } => {
                schedules == m.columns()
                    && is_distribution(beta, k)
                    && m.apply(beta) == *nu
                    && !shift.is_negative()
                    && lambda.iter().zip(nu).all(|(l, n)| *l == n + shift)
            }
            Certificate::Separator { weights, strict } => {
                if weights.len() != lambda.len()
                    || weights.iter().any(Signed::is_negative)
                    || weights.iter().all(Zero::is_zero)
                {
                    return false;
                }
                let value = dot(weights, lambda);
                (0..k).all(|j| {
                    let s = dot(weights, &m.column(j));
                    if *strict {
                        s < value
                    } else {
                        s <= value
                    }
                })
            }
            Certificate::ScaledSeparator { factors, weights } => {
                if weights.len() != lambda.len()
                    || factors.len() != lambda.len()
                    || weights.iter().any(Signed::is_negative)
                {
                    return false;
                }
                let scaled: Vec<Rational> =
                    weights.iter().zip(factors).map(|(y, s)| y * s).collect();
                dot(weights, lambda) > Rational::one()
                    && (0..k).all(|j| dot(&scaled, &m.column(j)) <= Rational::one())
            }
        }
    }
}

/// Outcome of a single-set test (`Π_S` or `Γ_S`); members carry the
/// domination certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetTest {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub region: Region,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_set: Option<NodeSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl RegionVerdict {
    fn member(region: Region) -> Self {
        RegionVerdict {
            region,
            member: true,
            witness_set: None,
            certificate: None,
        }
    }

    fn violated(region: Region, set: NodeSet, certificate: Certificate) -> Self {
        RegionVerdict {
            region,
            member: false,
            witness_set: Some(set),
            certificate: Some(certificate),
        }
    }

    /// Re-checks the verdict. Non-members are checked through their
    /// certificate alone; members by re-running the decider.
    pub fn verify(&self, g: &InterferenceGraph, lambda: &RateVector) -> Result<bool> {
        lambda.check_graph(g)?;
        if self.member {
            return Ok(self.witness_set.is_none()
                && self.certificate.is_none()
                && decide(g, lambda, self.region)?.member);
        }
        let (Some(set), Some(cert)) = (self.witness_set, &self.certificate) else {
            return Ok(false);
        };
        if set.is_empty() {
            return Ok(false);
        }
        let kind_ok = match (self.region, cert) {
            (Region::Lambda, Certificate::Separator { strict, .. }) => *strict,
            (Region::LambdaInterior, Certificate::Separator { .. }) => true,
            (Region::SigmaLambda, Certificate::ScaledSeparator { factors, .. }) => {
                *factors == sigma_profile(g)?.link_factors()
            }
            (Region::Omega, Certificate::StrictDomination { .. }) => true,
            (Region::DeltaC, Certificate::UniformDomination { .. }) => true,
            (Region::DeltaR, Certificate::UniformDomination { .. }) => {
                rank_report(g, set)?.high_rank
            }
            _ => false,
        };
        let whole_graph = matches!(
            self.region,
            Region::Lambda | Region::LambdaInterior | Region::SigmaLambda
        );
        if !kind_ok || (whole_graph && set != g.nodes()) {
            return Ok(false);
        }
        let m = g.schedules(set)?;
        Ok(cert.verify(&m, lambda.restrict(set)?.values()))
    }
}

/// `max t  s.t. M_S β + t·e <= λ_S, e'β = 1`: the best uniform margin by
/// which `λ_S` exceeds a point of `Co(M_S)`.
fn pi_margin(m: &ScheduleMatrix, lambda: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
    let k = m.num_schedules();
    let mut objective = vec![Rational::zero(); k + 1];
    objective[k] = Rational::one();
    let mut p = LpProblem::new(Sense::Maximize, objective).free(k);
    for (i, l) in lambda.iter().enumerate() {
        let mut row = m.row(i);
        row.push(Rational::one());
        p.push(row, Relation::Le, l.clone());
    }
    let mut sum = vec![Rational::one(); k + 1];
    sum[k] = Rational::zero();
    p.push(sum, Relation::Eq, Rational::one());
    let mut sol = solve_lp(&p)?
        .into_optimal()
        .ok_or_else(|| Error::internal("strict domination LP has no optimum"))?;
    let t = sol.x.pop().expect("margin variable");
    Ok((t, sol.x))
}

fn pi_on(m: &ScheduleMatrix, lambda: &[Rational]) -> Result<SetTest> {
    let (margin, beta) = pi_margin(m, lambda)?;
    if !margin.is_positive() {
        return Ok(SetTest {
            member: false,
            certificate: None,
        });
    }
    let cert = Certificate::StrictDomination {
        schedules: m.columns().to_vec(),
        nu: m.apply(&beta),
        beta,
        margin,
    };
    Ok(SetTest {
        member: true,
        certificate: Some(cert),
    })
}

fn gamma_on(m: &ScheduleMatrix, lambda: &[Rational]) -> Result<SetTest> {
    let tau = tau_f_on(m, lambda)?;
    match tau.finite() {
        Some(d) if !d.is_negative() => {
            let cert = Certificate::UniformDomination {
                schedules: tau.schedules.clone(),
                nu: m.apply(&tau.weights),
                beta: tau.weights.clone(),
                shift: d.clone(),
            };
            Ok(SetTest {
                member: true,
                certificate: Some(cert),
            })
        }
        _ => Ok(SetTest {
            member: false,
            certificate: None,
        }),
    }
}

fn set_inputs(
    g: &InterferenceGraph,
    s: NodeSet,
    lambda: &RateVector,
) -> Result<Option<(std::sync::Arc<ScheduleMatrix>, RateVector)>> {
    lambda.check_graph(g)?;
    g.check_set(s)?;
    if s.is_empty() {
        return Ok(None);
    }
    Ok(Some((g.schedules(s)?, lambda.restrict(s)?)))
}

/// `[λ]_S ∈ Π_S`: `[λ]_S` strictly dominates some `ν ∈ Co(M_S)`. The empty
/// set is never a member.
pub fn in_pi(g: &InterferenceGraph, s: NodeSet, lambda: &RateVector) -> Result<SetTest> {
    match set_inputs(g, s, lambda)? {
        None => Ok(SetTest {
            member: false,
            certificate: None,
        }),
        Some((m, l)) => pi_on(&m, l.values()),
    }
}

/// `[λ]_S ∈ Γ_S`: `[λ]_S = ν + d·e` for some `ν ∈ Co(M_S)` and `d >= 0`. The
/// empty set is never a member.
pub fn in_gamma(g: &InterferenceGraph, s: NodeSet, lambda: &RateVector) -> Result<SetTest> {
    match set_inputs(g, s, lambda)? {
        None => Ok(SetTest {
            member: false,
            certificate: None,
        }),
        Some((m, l)) => gamma_on(&m, l.values()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub subject: NodeSet,
    pub rank: usize,
    pub high_rank: bool,
}

/// Rank of the extended schedule matrix `(M_S, e)`.
pub fn rank_report(g: &InterferenceGraph, s: NodeSet) -> Result<RankReport> {
    g.check_set(s)?;
    if s.is_empty() {
        return Err(Error::invalid("rank of the empty set"));
    }
    let rank = g.schedules(s)?.extended().rank();
    Ok(RankReport {
        subject: s,
        rank,
        high_rank: rank == s.len(),
    })
}

/// First set (in sweep order) for which `test` reports a violation.
fn first_violation<T: Send>(
    subsets: &[NodeSet],
    test: impl Fn(NodeSet) -> Result<Option<T>> + Sync,
) -> Result<Option<(NodeSet, T)>> {
    subsets
        .par_iter()
        .map(|&s| test(s).map(|o| o.map(|t| (s, t))))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()
        .map(Option::flatten)
}

fn sweep_inputs(g: &InterferenceGraph, lambda: &RateVector) -> Result<Vec<NodeSet>> {
    lambda.check_graph(g)?;
    nonempty_subsets(g.node_count())
}

pub fn lambda_verdict(g: &InterferenceGraph, lambda: &RateVector) -> Result<RegionVerdict> {
    lambda.check_graph(g)?;
    let m = g.maximal_schedules()?;
    let (value, sol) = chi_f_lp(&m, lambda.values())?;
    if value.finite().is_some_and(|v| *v <= Rational::one()) {
        return Ok(RegionVerdict::member(Region::Lambda));
    }
    let cert = Certificate::Separator {
        weights: sol.dual,
        strict: true,
    };
    Ok(RegionVerdict::violated(Region::Lambda, g.nodes(), cert))
}

pub fn lambda_interior_verdict(
    g: &InterferenceGraph,
    lambda: &RateVector,
) -> Result<RegionVerdict> {
    lambda.check_graph(g)?;
    let m = g.maximal_schedules()?;
    let sol = interior_lp(&m, lambda.values())?;
    if sol.value.is_positive() {
        return Ok(RegionVerdict::member(Region::LambdaInterior));
    }
    // Duals of the `>=` rows are nonpositive for a maximisation; their
    // negation sums to one through the free margin column.
    let weights = sol.dual[..m.num_rows()]
        .iter()
        .map(|y| -y.clone())
        .collect();
    let cert = Certificate::Separator {
        weights,
        strict: false,
    };
    Ok(RegionVerdict::violated(
        Region::LambdaInterior,
        g.nodes(),
        cert,
    ))
}

pub fn sigma_lambda_verdict(g: &InterferenceGraph, lambda: &RateVector) -> Result<RegionVerdict> {
    let res = sigma_scaled_capacity(g, lambda)?;
    if res.member {
        return Ok(RegionVerdict::member(Region::SigmaLambda));
    }
    let cert = Certificate::ScaledSeparator {
        factors: res.factors,
        weights: res.weights,
    };
    Ok(RegionVerdict::violated(
        Region::SigmaLambda,
        g.nodes(),
        cert,
    ))
}

/// `λ ∈ Ω`: no `[λ]_S` strictly dominates a point of `Co(M_S)`. Decided
/// both as `phi_f(G_S, [λ]_S) <= 1` for all `S` and through `Π_S`
/// directly; disagreement is reported as an internal error.
pub fn in_omega(g: &InterferenceGraph, lambda: &RateVector) -> Result<RegionVerdict> {
    let subsets = sweep_inputs(g, lambda)?;
    let restricted = |s: NodeSet| -> Result<_> { Ok((g.schedules(s)?, lambda.restrict(s)?)) };
    let by_pi = first_violation(&subsets, |s| {
        let (m, l) = restricted(s)?;
        Ok(pi_on(&m, l.values())?.certificate)
    })?;
    let by_phi = first_violation(&subsets, |s| {
        let (m, l) = restricted(s)?;
        let phi = phi_f_on(&m, l.values())?;
        Ok(phi.finite().filter(|v| **v > Rational::one()).map(|_| ()))
    })?;
    match (by_pi, by_phi) {
        (None, None) => Ok(RegionVerdict::member(Region::Omega)),
        (Some((s, cert)), Some(_)) => Ok(RegionVerdict::violated(Region::Omega, s, cert)),
        _ => Err(Error::internal(
            "matching-number and strict-domination tests disagree",
        )),
    }
}

fn delta_sweep(
    g: &InterferenceGraph,
    lambda: &RateVector,
    region: Region,
    high_rank_only: bool,
) -> Result<RegionVerdict> {
    let subsets = sweep_inputs(g, lambda)?;
    let hit = first_violation(&subsets, |s| {
        let m = g.schedules(s)?;
        if high_rank_only && m.extended().rank() < s.len() {
            return Ok(None);
        }
        Ok(gamma_on(&m, lambda.restrict(s)?.values())?.certificate)
    })?;
    Ok(match hit {
        None => RegionVerdict::member(region),
        Some((s, cert)) => RegionVerdict::violated(region, s, cert),
    })
}

/// `λ ∈ Δ_C`: `tau_f(G_S, [λ]_S) < 0` for every non-empty `S`.
pub fn in_delta_c(g: &InterferenceGraph, lambda: &RateVector) -> Result<RegionVerdict> {
    delta_sweep(g, lambda, Region::DeltaC, false)
}

/// `λ ∈ Δ_R`: as `Δ_C` but only sets whose extended schedule matrix has full
/// row rank are tested.
pub fn in_delta_r(g: &InterferenceGraph, lambda: &RateVector) -> Result<RegionVerdict> {
    delta_sweep(g, lambda, Region::DeltaR, true)
}

pub fn decide(g: &InterferenceGraph, lambda: &RateVector, region: Region) -> Result<RegionVerdict> {
    match region {
        Region::Lambda => lambda_verdict(g, lambda),
        Region::LambdaInterior => lambda_interior_verdict(g, lambda),
        Region::SigmaLambda => sigma_lambda_verdict(g, lambda),
        Region::Omega => in_omega(g, lambda),
        Region::DeltaC => in_delta_c(g, lambda),
        Region::DeltaR => in_delta_r(g, lambda),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub verdicts: Vec<RegionVerdict>,
    /// Inclusions between the regions that the verdicts violate; empty when
    /// the verdicts are mutually consistent.
    pub inconsistencies: Vec<String>,
}

impl RegionReport {
    pub fn get(&self, region: Region) -> &RegionVerdict {
        self.verdicts
            .iter()
            .find(|v| v.region == region)
            .expect("report covers every region")
    }

    pub fn is_member(&self, region: Region) -> bool {
        self.get(region).member
    }
}

/// Inclusions checked by [`region_report`], as `(inner, outer)` pairs.
pub const INCLUSIONS: [(Region, Region); 6] = [
    (Region::SigmaLambda, Region::Omega),
    (Region::Omega, Region::Lambda),
    (Region::DeltaC, Region::DeltaR),
    (Region::DeltaR, Region::Lambda),
    (Region::DeltaC, Region::Lambda),
    (Region::LambdaInterior, Region::Lambda),
];

pub fn region_report(g: &InterferenceGraph, lambda: &RateVector) -> Result<RegionReport> {
    let verdicts = Region::ALL
        .into_iter()
        .map(|r| decide(g, lambda, r))
        .collect::<Result<Vec<_>>>()?;
    let member = |r: Region| verdicts.iter().any(|v| v.region == r && v.member);
    let inconsistencies = INCLUSIONS
        .iter()
        .filter(|(inner, outer)| member(*inner) && !member(*outer))
        .map(|(inner, outer)| format!("{inner} member but {outer} not"))
        .collect();
    Ok(RegionReport {
        verdicts,
        inconsistencies,
    })
}

/// Searches for a point of `Δ_C` within max-norm distance `< radius` of `λ`.
///
/// Starting from `λ + ε·e`, each set `S` still violating `Δ_C` is broken by a
/// step along a left null vector of `(M_S, e)`: after the step `[λ]_S` leaves
/// the column span of `(M_S, e)` and `tau_f` on `S` becomes `-inf`. The
/// steps shrink geometrically so their sum stays below `ε`, which keeps the
/// point nonnegative and within `2ε` of `λ`. Returns `None` if a high-rank set
/// blocks every tried `ε` or the step budget runs out.
pub fn delta_c_approximant(
    g: &InterferenceGraph,
    lambda: &RateVector,
    radius: &Rational,
) -> Result<Option<RateVector>> {
    lambda.check_graph(g)?;
    if !radius.is_positive() {
        return Err(Error::invalid("search radius must be positive"));
    }
    if in_delta_c(g, lambda)?.member {
        return Ok(Some(lambda.clone()));
    }
    let n = g.node_count();
    let shrink = Rational::from_integer((2 * n as i64).into());
    let mut eps = radius / Rational::from_integer(2.into());
    for _ in 0..24 {
        if let Some(found) = perturb_into_delta_c(g, lambda, &eps, &shrink)? {
            let dist = max_abs(
                &found
                    .values()
                    .iter()
                    .zip(lambda.values())
                    .map(|(a, b)| a - b)
                    .collect::<Vec<_>>(),
            );
            if dist < *radius {
                return Ok(Some(found));
            }
        }
        eps /= Rational::from_integer(2.into());
    }
    Ok(None)
}

fn perturb_into_delta_c(
    g: &InterferenceGraph,
    lambda: &RateVector,
    eps: &Rational,
    shrink: &Rational,
) -> Result<Option<RateVector>> {
    let mut cur = lambda.shift(eps)?;
    let mut step = eps / shrink;
    for _ in 0..256 {
        let v = in_delta_c(g, &cur)?;
        let Some(s) = v.witness_set else {
            return Ok(Some(cur));
        };
        let m = g.schedules(s)?;
        let left_null = m.extended().transpose().null_space();
        let Some(dir) = left_null.first() else {
            // High rank: a step along the null space cannot help.
            return Ok(None);
        };
        let scale = max_abs(dir);
        let mut values = cur.values().to_vec();
        for (node, d) in s.iter().zip(dir) {
            values[node - 1] += &step * d / &scale;
        }
        cur = RateVector::new(values)?;
        step /= shrink;
    }
    Ok(None)
}

/// The vector of the six-cycle examples with `ε`:
/// `(5/12 + ε, 1/3 + ε, ..., 1/3 + ε)`.
pub fn six_cycle_interior_example(eps: &Rational) -> RateVector {
    let mut v = vec![rat(5, 12) + eps];
    v.extend(std::iter::repeat_n(rat(1, 3) + eps, 5));
    RateVector::new(v).expect("nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::int;

    fn c6() -> InterferenceGraph {
        InterferenceGraph::cycle(6).unwrap()
    }

    fn set(nodes: &[usize]) -> NodeSet {
        NodeSet::from_nodes(nodes).unwrap()
    }

    fn lambda1() -> RateVector {
        RateVector::uniform(6, rat(7, 10) * (rat(1, 2) - rat(1, 1000))).unwrap()
    }

    fn lambda2() -> RateVector {
        let e = rat(1, 1000);
        let mut v = vec![rat(1, 2) - &e];
        v.extend(std::iter::repeat_n(rat(1, 2) - int(2) * &e, 5));
        RateVector::new(v).unwrap()
    }

    #[test]
    fn pi_examples() {
        let g = c6();
        let l = six_cycle_interior_example(&rat(1, 24));
        let t = in_pi(&g, g.nodes(), &l).unwrap();
        assert!(t.member);
        let cert = t.certificate.unwrap();
        assert!(cert.verify(&g.maximal_schedules().unwrap(), l.values()));

        let indep = RateVector::from_ints(&[1, 0, 1, 0, 1, 0]).unwrap();
        assert!(!in_pi(&g, g.nodes(), &indep).unwrap().member);

        let k2 = InterferenceGraph::complete(2).unwrap();
        let l = RateVector::from_ints(&[2, 0]).unwrap();
        assert!(in_pi(&k2, set(&[1]), &l).unwrap().member);
        assert!(!in_pi(&k2, NodeSet::EMPTY, &l).unwrap().member);
    }

    #[test]
    fn gamma_examples() {
        let k2 = InterferenceGraph::complete(2).unwrap();
        let t = in_gamma(&k2, k2.nodes(), &RateVector::from_ints(&[1, 0]).unwrap()).unwrap();
        assert!(t.member);
        match t.certificate.unwrap() {
            Certificate::UniformDomination { nu, shift, .. } => {
                assert_eq!(shift, int(0));
                assert_eq!(nu, vec![int(1), int(0)]);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
        let quarter = RateVector::uniform(2, rat(1, 4)).unwrap();
        assert!(!in_gamma(&k2, k2.nodes(), &quarter).unwrap().member);
        let p3 = InterferenceGraph::path(3).unwrap();
        let l = RateVector::from_ints(&[1, 0, 0]).unwrap();
        assert!(!in_gamma(&p3, p3.nodes(), &l).unwrap().member);
    }

    #[test]
    fn rank_examples() {
        let g = c6();
        let r = rank_report(&g, g.nodes()).unwrap();
        assert_eq!((r.rank, r.high_rank), (4, false));
        assert!(rank_report(&g, set(&[3])).unwrap().high_rank);
        let k2 = InterferenceGraph::complete(2).unwrap();
        let r = rank_report(&k2, k2.nodes()).unwrap();
        assert_eq!((r.rank, r.high_rank), (2, true));
    }

    #[test]
    fn omega_examples() {
        let g = c6();
        let a = RateVector::from_ints(&[1, 0, 1, 0, 1, 0]).unwrap();
        assert!(in_omega(&g, &a).unwrap().member);
        let b = RateVector::new([7, 1, 7, 1, 7, 1].iter().map(|&x| rat(x, 10)).collect()).unwrap();
        assert!(in_omega(&g, &b).unwrap().member);
        let l = six_cycle_interior_example(&rat(1, 24));
        let v = in_omega(&g, &l).unwrap();
        assert!(!v.member);
        assert_eq!(v.witness_set, Some(g.nodes()));
        assert!(v.verify(&g, &l).unwrap());
    }

    #[test]
    fn delta_examples() {
        let g = c6();
        let v = in_delta_c(&g, &lambda2()).unwrap();
        assert!(v.member);
        let v = in_delta_c(&g, &lambda1()).unwrap();
        assert!(!v.member);
        assert_eq!(v.witness_set, Some(g.nodes()));
        assert!(v.verify(&g, &lambda1()).unwrap());
        assert!(in_delta_r(&g, &lambda1()).unwrap().member);
        assert!(in_delta_r(&g, &lambda2()).unwrap().member);

        let k3 = InterferenceGraph::complete(3).unwrap();
        let l = RateVector::new(vec![rat(1, 4), int(0), int(0)]).unwrap();
        assert!(in_delta_c(&k3, &l).unwrap().member);
    }

    #[test]
    fn delta_r_witness_on_an_edge() {
        let k2 = InterferenceGraph::complete(2).unwrap();
        let l = RateVector::from_ints(&[1, 0]).unwrap();
        let v = in_delta_r(&k2, &l).unwrap();
        assert!(!v.member);
        // {1} comes first in sweep order and is already violated (τ_f = 0).
        assert_eq!(v.witness_set, Some(set(&[1])));
        assert!(in_gamma(&k2, k2.nodes(), &l).unwrap().member);
        assert!(v.verify(&k2, &l).unwrap());
    }

    #[test]
    fn reports() {
        let g = c6();
        let r = region_report(&g, &six_cycle_interior_example(&rat(1, 24))).unwrap();
        assert!(r.is_member(Region::LambdaInterior));
        assert!(!r.is_member(Region::Omega));
        assert!(r.is_member(Region::DeltaC));
        assert!(r.inconsistencies.is_empty());

        let r = region_report(&g, &RateVector::from_ints(&[1, 0, 1, 0, 1, 0]).unwrap()).unwrap();
        assert!(r.is_member(Region::Lambda) && r.is_member(Region::Omega));
        assert!(!r.is_member(Region::SigmaLambda) && !r.is_member(Region::LambdaInterior));

        let zero = RateVector::zeros(6).unwrap();
        let r = region_report(&g, &zero).unwrap();
        assert!(r.verdicts.iter().all(|v| v.member));
        for v in &r.verdicts {
            assert!(v.verify(&g, &zero).unwrap());
        }
    }

    #[test]
    fn negative_verdicts_verify() {
        let g = c6();
        let far = RateVector::uniform(6, int(1)).unwrap();
        for region in Region::ALL {
            let v = decide(&g, &far, region).unwrap();
            assert!(!v.member, "{region}");
            assert!(v.verify(&g, &far).unwrap(), "{region}");
        }
    }

    #[test]
    fn approximant_for_first_six_cycle_vector() {
        let g = c6();
        let radius = rat(1, 1024);
        let found = delta_c_approximant(&g, &lambda1(), &radius)
            .unwrap()
            .unwrap();
        assert!(in_delta_c(&g, &found).unwrap().member);
    }

    #[test]
    fn region_names_round_trip() {
        for r in Region::ALL {
            assert_eq!(r.name().parse::<Region>().unwrap(), r);
        }
        assert!("nope".parse::<Region>().is_err());
    }
}
