//! Interference graphs over at most 64 nodes.
//!
//! Nodes are numbered `1..=n` in every public signature. Internally node `v`
//! is bit `v - 1` of a `u64`, which keeps adjacency, node sets and
//! Bron–Kerbosch candidate sets as single machine words.

mod enumerate;
mod schedule;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::limits::{Limits, MAX_SUPPORTED_NODES};

pub use enumerate::nonempty_subsets;
pub use schedule::ScheduleMatrix;

/// A set of nodes drawn from `1..=64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_SUPPORTED_NODES);
        if n == 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn from_nodes(nodes: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &v in nodes {
            if v == 0 || v > MAX_SUPPORTED_NODES {
                return Err(Error::invalid(format!("node {v} is outside 1..=64")));
            }
            bits |= 1 << (v - 1);
        }
        Ok(NodeSet(bits))
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_SUPPORTED_NODES).contains(&v));
        NodeSet(1 << (v - 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_SUPPORTED_NODES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> Self {
        NodeSet(self.0 & !other.0)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v + 1)
        })
    }

    pub fn nodes(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Largest member, or 0 for the empty set.
    pub fn max_node(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Lexicographic order of the sorted member lists.
    pub fn lex_cmp(self, other: NodeSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    /// Order used for subset sweeps: by size, then lexicographically.
    pub fn size_lex_cmp(self, other: NodeSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.lex_cmp(other))
    }

    /// 0/1 indicator over `within`, in increasing node order.
    pub fn indicator(self, within: NodeSet) -> Vec<u8> {
        within.iter().map(|v| u8::from(self.contains(v))).collect()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", nodes.join(","))
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for NodeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nodes = Vec::<usize>::deserialize(d)?;
        NodeSet::from_nodes(&nodes).map_err(serde::de::Error::custom)
    }
}

/// Undirected simple graph on nodes `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InterferenceGraph {
    n: usize,
    adj: Vec<u64>,
}

impl InterferenceGraph {
    /// Builds a graph, rejecting self-loops, duplicate edges and nodes
    /// outside `1..=n`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_SUPPORTED_NODES {
            return Err(Error::invalid(format!(
                "node count must be in 1..={MAX_SUPPORTED_NODES}, got {n}"
            )));
        }
        Ok(InterferenceGraph { n, adj: vec![0; n] })
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::invalid(format!("self-loop on node {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
        }
        self.adj[u - 1] |= 1 << (v - 1);
        self.adj[v - 1] |= 1 << (u - 1);
        Ok(())
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("a cycle needs at least 3 nodes"));
        }
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Self::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
        Self::new(n, &edges)
    }

    /// Complete bipartite graph on `pairs` pairs minus a perfect matching.
    /// Pair `i` is nodes `2i - 1` and `2i`; odd nodes form one side, even
    /// nodes the other, and `2i - 1` is adjacent to every even node except
    /// `2i`.
    pub fn bipartite_pairs(pairs: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 1..=pairs {
            for j in 1..=pairs {
                if i != j {
                    edges.push((2 * i - 1, 2 * j));
                }
            }
        }
        Self::new(2 * pairs, &edges)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> NodeSet {
        NodeSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in NodeSet(self.adj[u - 1]).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (1..=self.n).contains(&u) && NodeSet(self.adj[u - 1]).contains(v)
    }

    pub fn neighbors(&self, v: usize) -> NodeSet {
        NodeSet(self.adj[v - 1])
    }

    pub(crate) fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn complement(&self) -> Self {
        let full = self.nodes().bits();
        let adj = (0..self.n)
            .map(|i| full & !self.adj[i] & !(1 << i))
            .collect();
        InterferenceGraph { n: self.n, adj }
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::invalid(format!(
                "node {v} is outside 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn check_set(&self, s: NodeSet) -> Result<()> {
        if !s.is_subset(self.nodes()) {
            return Err(Error::invalid(format!(
                "node set {s} is not within 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// `G_S` relabelled to `1..=|S|`, plus the original label of each new node.
    pub fn induced_subgraph(&self, s: NodeSet) -> Result<(InterferenceGraph, Vec<usize>)> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::invalid("induced subgraph of the empty set"));
        }
        let map = s.nodes();
        let mut h = InterferenceGraph::edgeless(map.len())?;
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    h.add_edge(i + 1, j + 1)?;
                }
            }
        }
        Ok((h, map))
    }

    pub fn is_independent(&self, s: NodeSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(s.iter().all(|v| self.adj[v - 1] & s.bits() == 0))
    }

    pub fn is_clique(&self, s: NodeSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(s.iter()
            .all(|v| s.bits() & !(1 << (v - 1)) & !self.adj[v - 1] == 0))
    }

    /// Whether `s` is a maximal independent set of `G_within`.
    pub fn is_maximal_independent_in(&self, s: NodeSet, within: NodeSet) -> Result<bool> {
        if !s.is_subset(within) || !self.is_independent(s)? {
            return Ok(false);
        }
        Ok(within
            .difference(s)
            .iter()
            .all(|v| self.adj[v - 1] & s.bits() != 0))
    }

    /// All maximal independent sets of `G` in lexicographic order.
    pub fn maximal_schedules(&self) -> Result<std::sync::Arc<ScheduleMatrix>> {
        self.schedules(self.nodes())
    }

    /// Maximal schedules of `G_S`, built once per graph and subset and then
    /// shared through a process-wide cache.
    pub fn schedules(&self, s: NodeSet) -> Result<std::sync::Arc<ScheduleMatrix>> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(Error::invalid("schedule matrix of the empty set"));
        }
        Limits::current().check_nodes(s.len())?;
        Ok(schedule::cached(self, s))
    }

    /// All maximal cliques in lexicographic order.
    pub fn maximal_cliques(&self) -> Result<Vec<NodeSet>> {
        Limits::current().check_nodes(self.n)?;
        Ok(enumerate::maximal_cliques(&self.adj, self.nodes().bits()))
    }

    /// Canonical text form: `n <count>` then one `e u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("e {u} {v}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<InterferenceGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("expected a node index, got {s:?}")))
            };
            match (fields[0], graph.as_mut()) {
                ("n", None) if fields.len() == 2 => {
                    let n = num(fields[1])?;
                    graph = Some(
                        InterferenceGraph::edgeless(n)
                            .map_err(|e| Error::parse(line_no, e.to_string()))?,
                    );
                }
                ("n", Some(_)) => return Err(Error::parse(line_no, "repeated node count")),
                ("e", Some(g)) if fields.len() == 3 => {
                    let (u, v) = (num(fields[1])?, num(fields[2])?);
                    g.add_edge(u, v)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                }
                ("e", None) => {
                    return Err(Error::parse(line_no, "edge before the `n` line"));
                }
                _ => return Err(Error::parse(line_no, format!("unrecognised line {line:?}"))),
            }
        }
        graph.ok_or_else(|| Error::parse(0, "missing `n <node_count>` line"))
    }

    /// Hex SHA-256 of the canonical text form.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_text().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for InterferenceGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InterferenceGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(nodes: &[usize]) -> NodeSet {
        NodeSet::from_nodes(nodes).unwrap()
    }

    #[test]
    fn node_set_basics() {
        let s = set(&[5, 1, 3]);
        assert_eq!(s.nodes(), vec![1, 3, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(2) && !s.contains(0));
        assert_eq!(s.to_string(), "{1,3,5}");
        assert_eq!(s.max_node(), 5);
        assert!(NodeSet::from_nodes(&[0]).is_err());
        assert!(NodeSet::from_nodes(&[65]).is_err());
        assert_eq!(NodeSet::full(64).len(), 64);
        assert_eq!(s.indicator(NodeSet::full(6)), vec![1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn set_orders() {
        use std::cmp::Ordering::*;
        assert_eq!(set(&[1, 3, 5]).lex_cmp(set(&[1, 4])), Less);
        assert_eq!(set(&[1, 2, 3]).lex_cmp(set(&[1, 3])), Less);
        assert_eq!(set(&[1]).lex_cmp(set(&[1, 2])), Less);
        assert_eq!(set(&[1, 3]).size_lex_cmp(set(&[1, 2, 3])), Less);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(InterferenceGraph::new(0, &[]).is_err());
        assert!(InterferenceGraph::new(65, &[]).is_err());
        assert!(InterferenceGraph::new(3, &[(1, 1)]).is_err());
        assert!(InterferenceGraph::new(3, &[(1, 2), (2, 1)]).is_err());
        assert!(InterferenceGraph::new(3, &[(1, 4)]).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let c6 = InterferenceGraph::cycle(6).unwrap();
        let (h, map) = c6.induced_subgraph(set(&[1, 3, 5])).unwrap();
        assert_eq!(h.node_count(), 3);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(map, vec![1, 3, 5]);
        assert_eq!(c6.induced_subgraph(c6.nodes()).unwrap().0, c6);
        let p3 = InterferenceGraph::path(3).unwrap();
        let (h, _) = p3.induced_subgraph(set(&[1, 2])).unwrap();
        assert_eq!(h.edges(), vec![(1, 2)]);
        assert!(c6.induced_subgraph(NodeSet::EMPTY).is_err());
        assert!(c6.induced_subgraph(set(&[7])).is_err());
    }

    #[test]
    fn independence() {
        let c6 = InterferenceGraph::cycle(6).unwrap();
        assert!(c6.is_independent(set(&[1, 3, 5])).unwrap());
        assert!(!c6.is_independent(set(&[1, 2])).unwrap());
        assert!(c6.is_independent(NodeSet::EMPTY).unwrap());
        assert!(c6.is_independent(set(&[9])).is_err());
        assert!(c6
            .is_maximal_independent_in(set(&[1, 4]), c6.nodes())
            .unwrap());
        assert!(!c6.is_maximal_independent_in(set(&[1]), c6.nodes()).unwrap());
        let k3 = InterferenceGraph::complete(3).unwrap();
        assert!(k3.is_clique(k3.nodes()).unwrap());
        assert!(!c6.is_clique(set(&[1, 2, 3])).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let text = "# six-cycle\nn 6\ne 1 2\ne 2 3  # inline\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n";
        let g = InterferenceGraph::parse(text).unwrap();
        assert_eq!(g, InterferenceGraph::cycle(6).unwrap());
        assert_eq!(InterferenceGraph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(g.digest().len(), 64);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = InterferenceGraph::parse("n 3\ne 1 2\ne 2 9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = InterferenceGraph::parse("e 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = InterferenceGraph::parse("n 3\nx\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(InterferenceGraph::parse("# nothing\n").is_err());
    }

    #[test]
    fn bipartite_pairs_shape() {
        let g = InterferenceGraph::bipartite_pairs(3).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edge_count(), 6);
        assert!(!g.has_edge(1, 2) && g.has_edge(1, 4) && !g.has_edge(1, 3));
    }
}
