use itertools::Itertools;

use super::NodeSet;
use crate::error::Result;
use crate::limits::Limits;

/// Maximal cliques of the graph `adj` restricted to `within`, sorted
/// lexicographically.
pub(crate) fn maximal_cliques(adj: &[u64], within: u64) -> Vec<NodeSet> {
    let mut out = Vec::new();
    if within != 0 {
        bron_kerbosch(adj, 0, within, 0, &mut out);
    }
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

/// Maximal independent sets of the graph `adj` restricted to `within`:
/// maximal cliques of the complement.
pub(crate) fn maximal_independent_sets(adj: &[u64], within: u64) -> Vec<NodeSet> {
    let comp: Vec<u64> = (0..adj.len())
        .map(|i| within & !adj[i] & !(1u64 << i))
        .collect();
    maximal_cliques(&comp, within)
}

fn bron_kerbosch(adj: &[u64], r: u64, p: u64, x: u64, out: &mut Vec<NodeSet>) {
    if p == 0 {
        if x == 0 {
            out.push(NodeSet::from_bits(r));
        }
        return;
    }
    // Tomita pivot: the vertex of P ∪ X with most neighbours in P.
    let pivot = bits(p | x)
        .max_by_key(|&u| (adj[u] & p).count_ones())
        .expect("P is non-empty");
    let (mut p, mut x) = (p, x);
    for v in bits(p & !adj[pivot]) {
        let bit = 1u64 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

/// Every non-empty subset of `1..=n`, ordered by size and then
/// lexicographically. Refuses above the configured subset limit.
pub fn nonempty_subsets(n: usize) -> Result<Vec<NodeSet>> {
    Limits::current().check_subset_nodes(n)?;
    let mut out = Vec::with_capacity((1usize << n) - 1);
    for k in 1..=n {
        for combo in (1..=n).combinations(k) {
            out.push(NodeSet::from_nodes(&combo)?);
        }
    }
    Ok(out)
}
