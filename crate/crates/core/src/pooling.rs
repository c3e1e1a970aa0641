//! σ-local pooling factors.
//!
//! For a node set `S` with schedule matrix `M_S`, `σ*_S` is the least `σ`
//! for which some `μ, ν ∈ Co(M_S)` satisfy `σμ >= ν`. Writing `t = σα` for
//! the mixing weights `α` of `μ` turns this into the LP
//!
//! ```text
//! min e't  s.t.  M_S t - M_S β >= 0,  e'β = 1,  t, β >= 0
//! ```
//!
//! whose optimum is `σ*_S` with `μ = M_S t / e't` and `ν = M_S β`.
//! Link factors minimise over all sets containing the link; the graph factor
//! minimises over links.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::lp::{solve_lp, LpProblem, Relation, Sense};
use crate::exactla::rational::{format, serde_rational, serde_rational_vec, Rational};
use crate::graph::{nonempty_subsets, InterferenceGraph, NodeSet, ScheduleMatrix};
use crate::oracles::{chi_f_on, phi_f_on};
use crate::rates::RateVector;

/// `σ*_S` with its witness pair. `mu` and `nu` are indexed by `set`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFactor {
    pub set: NodeSet,
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub schedules: Vec<NodeSet>,
    #[serde(with = "serde_rational_vec")]
    pub alpha: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub beta: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub mu: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub nu: Vec<Rational>,
}

impl SetFactor {
    /// `0 < σ <= 1`, `α` and `β` are distributions, `μ = Mα`, `ν = Mβ` and
    /// `σμ >= ν`.
    pub fn verify(&self, m: &ScheduleMatrix) -> bool {
        let stochastic = |w: &[Rational]| {
            w.len() == m.num_schedules()
                && w.iter().all(|x| !x.is_negative())
                && w.iter().sum::<Rational>().is_one()
        };
        self.set == m.subject()
            && self.schedules == m.columns()
            && self.value.is_positive()
            && self.value <= Rational::one()
            && stochastic(&self.alpha)
            && stochastic(&self.beta)
            && m.apply(&self.alpha) == self.mu
            && m.apply(&self.beta) == self.nu
            && self
                .mu
                .iter()
                .zip(&self.nu)
                .all(|(a, b)| &self.value * a >= *b)
    }
}

pub fn sigma_set_on(m: &ScheduleMatrix) -> Result<SetFactor> {
    let k = m.num_schedules();
    // Variables: t (k), then β (k).
    let mut objective = vec![Rational::one(); k];
    objective.extend(vec![Rational::zero(); k]);
    let mut p = LpProblem::new(Sense::Minimize, objective);
    for i in 0..m.num_rows() {
        let row = m.row(i);
        let mut full = row.clone();
        full.extend(row.iter().map(|x| -x.clone()));
        p.push(full, Relation::Ge, Rational::zero());
    }
    let mut sum_beta = vec![Rational::zero(); k];
    sum_beta.extend(vec![Rational::one(); k]);
    p.push(sum_beta, Relation::Eq, Rational::one());

    let sol = solve_lp(&p)?
        .into_optimal()
        .ok_or_else(|| Error::internal("pooling LP has no optimum"))?;
    let value = sol.value;
    if !value.is_positive() {
        return Err(Error::internal("pooling factor is not positive"));
    }
    let alpha: Vec<Rational> = sol.x[..k].iter().map(|t| t / &value).collect();
    let beta = sol.x[k..].to_vec();
    let f = SetFactor {
        set: m.subject(),
        value,
        schedules: m.columns().to_vec(),
        mu: m.apply(&alpha),
        nu: m.apply(&beta),
        alpha,
        beta,
    };
    if !f.verify(m) {
        return Err(Error::internal("pooling witness failed re-verification"));
    }
    Ok(f)
}

/// `σ*_S` for a non-empty `s`.
pub fn sigma_set(g: &InterferenceGraph, s: NodeSet) -> Result<SetFactor> {
    if s.is_empty() {
        return Err(Error::invalid("pooling factor of the empty set"));
    }
    sigma_set_on(&*g.schedules(s)?)
}

/// `σ*` of a link or of the whole graph, with the minimising set's factor.
/// Ties go to the lexicographically smallest set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoolingFactor {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub minimizer: SetFactor,
}

fn better(a: &SetFactor, b: &SetFactor) -> bool {
    a.value < b.value || (a.value == b.value && a.set.lex_cmp(b.set).is_lt())
}

fn minimise<'a>(factors: impl Iterator<Item = &'a SetFactor>) -> Option<PoolingFactor> {
    let best = factors.fold(None::<&SetFactor>, |acc, f| match acc {
        Some(b) if !better(f, b) => Some(b),
        _ => Some(f),
    })?;
    Some(PoolingFactor {
        value: best.value.clone(),
        minimizer: best.clone(),
    })
}

/// Every set factor of a graph, plus the per-link and overall minima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaProfile {
    pub sets: Vec<SetFactor>,
    pub per_link: Vec<PoolingFactor>,
    pub overall: PoolingFactor,
}

impl SigmaProfile {
    pub fn link_factors(&self) -> Vec<Rational> {
        self.per_link.iter().map(|f| f.value.clone()).collect()
    }

    pub fn set_factor(&self, s: NodeSet) -> Option<&SetFactor> {
        self.sets.iter().find(|f| f.set == s)
    }
}

impl Serialize for SigmaProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let per_link: std::collections::BTreeMap<String, String> = self
            .per_link
            .iter()
            .enumerate()
            .map(|(i, f)| ((i + 1).to_string(), format(&f.value)))
            .collect();
        let minimizing: std::collections::BTreeMap<String, NodeSet> = self
            .per_link
            .iter()
            .enumerate()
            .map(|(i, f)| ((i + 1).to_string(), f.minimizer.set))
            .collect();
        let mut st = s.serialize_struct("SigmaProfile", 4)?;
        st.serialize_field("per_link", &per_link)?;
        st.serialize_field("overall", &format(&self.overall.value))?;
        st.serialize_field("overall_set", &self.overall.minimizer.set)?;
        st.serialize_field("minimizing_sets", &minimizing)?;
        st.end()
    }
}

fn set_factors(g: &InterferenceGraph, subsets: Vec<NodeSet>) -> Result<Vec<SetFactor>> {
    subsets.into_par_iter().map(|s| sigma_set(g, s)).collect()
}

/// `σ*_l`: minimum of `σ*_S` over all `S` containing `l`.
pub fn sigma_link(g: &InterferenceGraph, l: usize) -> Result<PoolingFactor> {
    if l == 0 || l > g.node_count() {
        return Err(Error::invalid(format!(
            "link {l} is outside 1..={}",
            g.node_count()
        )));
    }
    let subsets = nonempty_subsets(g.node_count())?
        .into_iter()
        .filter(|s| s.contains(l))
        .collect();
    let factors = set_factors(g, subsets)?;
    Ok(minimise(factors.iter()).expect("the singleton set contains l"))
}

/// `σ*(G)`: minimum over links.
pub fn sigma_graph(g: &InterferenceGraph) -> Result<PoolingFactor> {
    Ok(sigma_profile(g)?.overall.clone())
}

fn profiles() -> &'static RwLock<HashMap<InterferenceGraph, Arc<SigmaProfile>>> {
    static P: OnceLock<RwLock<HashMap<InterferenceGraph, Arc<SigmaProfile>>>> = OnceLock::new();
    P.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All set factors of `g`, computed once per graph and cached.
pub fn sigma_profile(g: &InterferenceGraph) -> Result<Arc<SigmaProfile>> {
    if let Some(p) = profiles().read().unwrap_or_else(|e| e.into_inner()).get(g) {
        return Ok(Arc::clone(p));
    }
    let sets = set_factors(g, nonempty_subsets(g.node_count())?)?;
    let per_link: Vec<PoolingFactor> = (1..=g.node_count())
        .map(|l| minimise(sets.iter().filter(|f| f.set.contains(l))).expect("singleton present"))
        .collect();
    let overall = minimise(sets.iter()).expect("at least one set");
    let profile = Arc::new(SigmaProfile {
        sets,
        per_link,
        overall,
    });
    let mut map = profiles().write().unwrap_or_else(|e| e.into_inner());
    if map.len() >= 1024 {
        map.clear();
    }
    Ok(Arc::clone(map.entry(g.clone()).or_insert(profile)))
}

/// Outcome of the `Σ*(G)Λ` test. On failure `weights` is a vector `y >= 0`
/// with `y'λ > 1` and `Σ_l y_l σ_l m_l <= 1` for every schedule `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledCapacity {
    pub member: bool,
    pub factors: Vec<Rational>,
    pub value: Rational,
    pub weights: Vec<Rational>,
}

/// Whether some `μ ∈ Co(M_V)` has `λ_l <= σ*_l μ_l` for every link, which is
/// `λ ∈ Σ*(G)Λ` without dividing by the factors.
pub fn sigma_scaled_capacity(g: &InterferenceGraph, lambda: &RateVector) -> Result<ScaledCapacity> {
    lambda.check_graph(g)?;
    let profile = sigma_profile(g)?;
    let factors = profile.link_factors();
    let m = g.maximal_schedules()?;
    let mut p = LpProblem::new(Sense::Minimize, vec![Rational::one(); m.num_schedules()]);
    for (i, l) in lambda.values().iter().enumerate() {
        let row = m.row(i).iter().map(|x| x * &factors[i]).collect();
        p.push(row, Relation::Ge, l.clone());
    }
    let sol = solve_lp(&p)?
        .into_optimal()
        .ok_or_else(|| Error::internal("scaled capacity LP has no optimum"))?;
    Ok(ScaledCapacity {
        member: sol.value <= Rational::one(),
        factors,
        value: sol.value,
        weights: sol.dual,
    })
}

pub fn in_sigma_scaled_capacity(g: &InterferenceGraph, lambda: &RateVector) -> Result<bool> {
    Ok(sigma_scaled_capacity(g, lambda)?.member)
}

/// A nonnegative rational or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ratio {
    Finite(Rational),
    Infinity,
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ratio::Finite(r) => write!(f, "{}", format(r)),
            Ratio::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `chi_f(G_S, λ) / phi_f(G_S, λ)` with `a / 0 = inf`; `lambda` is indexed by
/// `s`.
pub fn duality_ratio(g: &InterferenceGraph, s: NodeSet, lambda: &RateVector) -> Result<Ratio> {
    if lambda.index() != s {
        return Err(Error::invalid(
            "rate vector must be indexed by the subject set",
        ));
    }
    let m = g.schedules(s)?;
    duality_ratio_on(&m, lambda.values())
}

pub fn duality_ratio_on(m: &ScheduleMatrix, lambda: &[Rational]) -> Result<Ratio> {
    let chi = chi_f_on(m, lambda)?
        .finite()
        .cloned()
        .expect("chi_f is finite");
    let phi = phi_f_on(m, lambda)?
        .finite()
        .cloned()
        .expect("phi_f is finite");
    Ok(if phi.is_zero() {
        Ratio::Infinity
    } else {
        Ratio::Finite(chi / phi)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::{int, rat};

    #[test]
    fn clique_sets_pool() {
        let k3 = InterferenceGraph::complete(3).unwrap();
        for s in nonempty_subsets(3).unwrap() {
            assert_eq!(sigma_set(&k3, s).unwrap().value, int(1));
        }
        assert_eq!(sigma_link(&k3, 2).unwrap().value, int(1));
    }

    #[test]
    fn six_cycle_factor() {
        let c6 = InterferenceGraph::cycle(6).unwrap();
        let f = sigma_set(&c6, c6.nodes()).unwrap();
        assert_eq!(f.value, rat(2, 3));
        let p = sigma_profile(&c6).unwrap();
        assert!(p.per_link.iter().all(|f| f.value == rat(2, 3)));
        assert_eq!(p.overall.value, rat(2, 3));
        assert_eq!(sigma_link(&c6, 4).unwrap().value, rat(2, 3));
    }

    #[test]
    fn paths_pool() {
        let p3 = InterferenceGraph::path(3).unwrap();
        assert_eq!(sigma_set(&p3, p3.nodes()).unwrap().value, int(1));
        let p5 = InterferenceGraph::path(5).unwrap();
        assert_eq!(sigma_graph(&p5).unwrap().value, int(1));
    }

    #[test]
    fn scaled_capacity_examples() {
        let c6 = InterferenceGraph::cycle(6).unwrap();
        let indep = RateVector::from_ints(&[1, 0, 1, 0, 1, 0]).unwrap();
        assert!(!in_sigma_scaled_capacity(&c6, &indep).unwrap());
        let third = RateVector::uniform(6, rat(1, 3)).unwrap();
        assert!(in_sigma_scaled_capacity(&c6, &third).unwrap());
    }

    #[test]
    fn ratio_examples() {
        let c6 = InterferenceGraph::cycle(6).unwrap();
        let third = RateVector::uniform(6, rat(1, 3)).unwrap();
        assert_eq!(
            duality_ratio(&c6, c6.nodes(), &third).unwrap(),
            Ratio::Finite(rat(2, 3))
        );
        let k3 = InterferenceGraph::complete(3).unwrap();
        let ones = RateVector::from_ints(&[1, 1, 1]).unwrap();
        assert_eq!(
            duality_ratio(&k3, k3.nodes(), &ones).unwrap(),
            Ratio::Finite(int(1))
        );
        // Every schedule of an edgeless graph covers the zero-rate node.
        let free = InterferenceGraph::new(2, &[]).unwrap();
        let z = RateVector::from_ints(&[1, 0]).unwrap();
        assert_eq!(
            duality_ratio(&free, free.nodes(), &z).unwrap(),
            Ratio::Infinity
        );
        assert!(duality_ratio(&k3, NodeSet::from_nodes(&[1]).unwrap(), &ones).is_err());
    }

    #[test]
    fn empty_set_rejected() {
        let k3 = InterferenceGraph::complete(3).unwrap();
        assert!(sigma_set(&k3, NodeSet::EMPTY).is_err());
        assert!(sigma_link(&k3, 4).is_err());
    }
}
