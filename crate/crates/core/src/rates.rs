//! Nonnegative rate vectors indexed by a node set.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::rational::{self, serde_rational_vec, Rational};
use crate::graph::{InterferenceGraph, NodeSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RateVector {
    index: NodeSet,
    #[serde(with = "serde_rational_vec")]
    values: Vec<Rational>,
}

impl RateVector {
    /// Rates for nodes `1..=values.len()`.
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() || values.len() > crate::limits::MAX_SUPPORTED_NODES {
            return Err(Error::invalid(format!(
                "rate vector length must be in 1..=64, got {}",
                values.len()
            )));
        }
        Self::indexed(NodeSet::full(values.len()), values)
    }

    /// Rates for the members of `index` in increasing order.
    pub fn indexed(index: NodeSet, values: Vec<Rational>) -> Result<Self> {
        if index.len() != values.len() {
            return Err(Error::invalid(format!(
                "{} values for an index set of size {}",
                values.len(),
                index.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| v.is_negative()) {
            return Err(Error::invalid(format!(
                "rate for node {} is negative",
                index.nodes()[pos]
            )));
        }
        Ok(RateVector { index, values })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn uniform(n: usize, c: Rational) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| rational::int(v)).collect())
    }

    /// Comma-separated rationals in node order.
    pub fn parse_inline(s: &str, allow_decimal: bool) -> Result<Self> {
        Self::new(rational::parse_list(s, allow_decimal)?)
    }

    /// Lines `<node> <rational>` for a graph on `n` nodes; unlisted nodes are
    /// zero and `#` starts a comment.
    pub fn parse_file(text: &str, n: usize, allow_decimal: bool) -> Result<Self> {
        let mut values = vec![Rational::zero(); n];
        let mut seen = NodeSet::EMPTY;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::parse(line_no, "expected `<node> <rate>`"));
            }
            let node: usize = fields[0]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad node index {:?}", fields[0])))?;
            if node == 0 || node > n {
                return Err(Error::parse(
                    line_no,
                    format!("node {node} is outside 1..={n}"),
                ));
            }
            if seen.contains(node) {
                return Err(Error::parse(line_no, format!("node {node} listed twice")));
            }
            seen = seen.union(NodeSet::singleton(node));
            let parsed = if allow_decimal {
                rational::parse_decimal(fields[1])
            } else {
                rational::parse_exact(fields[1])
            };
            values[node - 1] = parsed.map_err(|e| Error::parse(line_no, e.to_string()))?;
        }
        Self::new(values).map_err(|e| Error::parse(0, e.to_string()))
    }

    pub fn index(&self) -> NodeSet {
        self.index
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, node: usize) -> Option<&Rational> {
        self.index
            .iter()
            .position(|v| v == node)
            .map(|i| &self.values[i])
    }

    /// `[λ]_S`.
    pub fn restrict(&self, s: NodeSet) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::invalid("restriction to the empty set"));
        }
        if !s.is_subset(self.index) {
            return Err(Error::invalid(format!(
                "{s} is not within the index set {}",
                self.index
            )));
        }
        let values = self
            .index
            .iter()
            .zip(&self.values)
            .filter(|(v, _)| s.contains(*v))
            .map(|(_, x)| x.clone())
            .collect();
        Ok(RateVector { index: s, values })
    }

    pub fn scale(&self, k: &Rational) -> Result<Self> {
        Self::indexed(self.index, self.values.iter().map(|v| v * k).collect())
    }

    /// `λ + c·e`.
    pub fn shift(&self, c: &Rational) -> Result<Self> {
        Self::indexed(self.index, self.values.iter().map(|v| v + c).collect())
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &RateVector) -> bool {
        self.index == other.index && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Componentwise `<`.
    pub fn lt(&self, other: &RateVector) -> bool {
        self.index == other.index && self.values.iter().zip(&other.values).all(|(a, b)| a < b)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Errors unless the vector is indexed by exactly the nodes of `g`.
    pub fn check_graph(&self, g: &InterferenceGraph) -> Result<()> {
        if self.index != g.nodes() {
            return Err(Error::invalid(format!(
                "rate vector over {} nodes does not match a graph on {} nodes",
                self.len(),
                g.node_count()
            )));
        }
        Ok(())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(rational::format).collect()
    }
}
