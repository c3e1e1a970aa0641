use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::{enumerate, InterferenceGraph, NodeSet};
use crate::exactla::{Rational, RationalMatrix};

/// The 0/1 matrix of all maximal schedules of an induced subgraph `G_S`.
///
/// Rows are the members of `S` in increasing order; columns are the maximal
/// independent sets of `G_S` (labelled with the original node numbers) in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleMatrix {
    subject: NodeSet,
    columns: Vec<NodeSet>,
}

impl ScheduleMatrix {
    pub(crate) fn build(g: &InterferenceGraph, s: NodeSet) -> Self {
        ScheduleMatrix {
            subject: s,
            columns: enumerate::maximal_independent_sets(g.adjacency(), s.bits()),
        }
    }

    pub fn subject(&self) -> NodeSet {
        self.subject
    }

    pub fn columns(&self) -> &[NodeSet] {
        &self.columns
    }

    pub fn num_schedules(&self) -> usize {
        self.columns.len()
    }

    pub fn num_rows(&self) -> usize {
        self.subject.len()
    }

    /// Column `j` as a 0/1 rational vector over the subject set.
    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.subject
            .iter()
            .map(|v| {
                if self.columns[j].contains(v) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    pub fn matrix(&self) -> RationalMatrix {
        let cols: Vec<_> = (0..self.columns.len()).map(|j| self.column(j)).collect();
        RationalMatrix::from_columns(self.num_rows(), &cols).expect("columns have equal length")
    }

    /// `(M_S, e)`: the schedule matrix with an all-ones column appended.
    pub fn extended(&self) -> RationalMatrix {
        let mut cols: Vec<_> = (0..self.columns.len()).map(|j| self.column(j)).collect();
        cols.push(vec![Rational::one(); self.num_rows()]);
        RationalMatrix::from_columns(self.num_rows(), &cols).expect("columns have equal length")
    }

    /// `M_S w` for column weights `w`.
    pub fn apply(&self, w: &[Rational]) -> Vec<Rational> {
        assert_eq!(w.len(), self.columns.len());
        self.subject
            .iter()
            .map(|v| {
                self.columns
                    .iter()
                    .zip(w)
                    .filter(|(c, _)| c.contains(v))
                    .map(|(_, x)| x.clone())
                    .sum()
            })
            .collect()
    }

    /// Row `i` as a 0/1 rational vector over the columns.
    pub fn row(&self, i: usize) -> Vec<Rational> {
        let v = self.subject.nodes()[i];
        self.columns
            .iter()
            .map(|c| {
                if c.contains(v) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }
}

type CacheKey = (Vec<u64>, u64);

const CACHE_CAPACITY: usize = 1 << 16;

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<ScheduleMatrix>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<ScheduleMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The key depends only on the edges inside `s`, so equal induced subgraphs
/// of different graphs share an entry.
fn key(g: &InterferenceGraph, s: NodeSet) -> CacheKey {
    let adj = s.iter().map(|v| g.adjacency()[v - 1] & s.bits()).collect();
    (adj, s.bits())
}

pub(crate) fn cached(g: &InterferenceGraph, s: NodeSet) -> Arc<ScheduleMatrix> {
    let k = key(g, s);
    if let Some(m) = cache().read().unwrap_or_else(|e| e.into_inner()).get(&k) {
        return Arc::clone(m);
    }
    // Built outside the lock; a concurrent builder may win the insert, in
    // which case its (identical) matrix is returned.
    let built = Arc::new(ScheduleMatrix::build(g, s));
    let mut map = cache().write().unwrap_or_else(|e| e.into_inner());
    if map.len() >= CACHE_CAPACITY {
        map.clear();
    }
    Arc::clone(map.entry(k).or_insert(built))
}
