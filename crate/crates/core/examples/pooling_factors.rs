//! Local pooling factors of the six-cycle and of bipartite pair graphs.

use lqflab::exactla::rational::format;
use lqflab::graph::InterferenceGraph;
use lqflab::pooling::{sigma_graph, sigma_profile};

fn main() -> lqflab::Result<()> {
    let c6 = InterferenceGraph::cycle(6)?;
    let profile = sigma_profile(&c6)?;
    let links: Vec<String> = profile.link_factors().iter().map(format).collect();
    println!("C6 per-link factors: {}", links.join(" "));
    let worst = &profile.overall.minimizer;
    println!(
        "C6 overall {} on {}",
        format(&profile.overall.value),
        worst.set
    );
    println!(
        "  mu = ({}), nu = ({})",
        worst.mu.iter().map(format).collect::<Vec<_>>().join(", "),
        worst.nu.iter().map(format).collect::<Vec<_>>().join(", ")
    );

    for pairs in 3..=5 {
        let g = InterferenceGraph::bipartite_pairs(pairs)?;
        println!("{pairs} pairs: sigma = {}", format(&sigma_graph(&g)?.value));
    }
    Ok(())
}
