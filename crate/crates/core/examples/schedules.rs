//! Maximal schedules, cliques and the extended-matrix rank of small graphs.

use lqflab::graph::InterferenceGraph;
use lqflab::regions::rank_report;

fn main() -> lqflab::Result<()> {
    let graphs = [
        ("C6", InterferenceGraph::cycle(6)?),
        ("C5", InterferenceGraph::cycle(5)?),
        ("K3", InterferenceGraph::complete(3)?),
        ("P5", InterferenceGraph::path(5)?),
        ("3 pairs", InterferenceGraph::bipartite_pairs(3)?),
    ];
    for (name, g) in &graphs {
        let m = g.maximal_schedules()?;
        println!("{name}: {} maximal schedules", m.num_schedules());
        for s in m.columns() {
            println!("  {s}");
        }
        let cliques: Vec<String> = g.maximal_cliques()?.iter().map(|c| c.to_string()).collect();
        println!("  cliques: {}", cliques.join(" "));
        let r = rank_report(g, g.nodes())?;
        println!(
            "  rank of (M, e) = {} of {} (high rank: {})",
            r.rank,
            g.node_count(),
            r.high_rank
        );
    }
    Ok(())
}
