//! CSV traces, schedule catalogs and JSON run summaries.

use std::io::{self, Write};

use serde::{Serialize, Serializer};

use super::{format_units, SimConfig, SimTrace, Verdict};
use crate::exactla::rational::{format, serde_rational_vec, Rational};
use crate::graph::{InterferenceGraph, NodeSet};

pub(super) fn opt_rationals<S: Serializer>(
    v: &Option<Vec<Rational>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serde_rational_vec::serialize(v, s),
        None => s.serialize_none(),
    }
}

/// One row per slot: `slot,max_backlog,total_backlog,schedule_id`, slots
/// numbered from 1 and backlogs as exact rationals.
pub fn write_csv<W: Write>(trace: &SimTrace, mut w: W) -> io::Result<()> {
    writeln!(w, "slot,max_backlog,total_backlog,schedule_id")?;
    for (i, r) in trace.records.iter().enumerate() {
        writeln!(
            w,
            "{},{},{},{}",
            i + 1,
            format_units(r.max_units, trace.denominator),
            format_units(r.total_units, trace.denominator),
            r.schedule_id
        )?;
    }
    w.flush()
}

#[derive(Serialize)]
struct CatalogEntry {
    id: usize,
    schedule: NodeSet,
}

/// The schedule catalog as a JSON array of `{id, schedule}`.
pub fn write_catalog<W: Write>(trace: &SimTrace, w: W) -> io::Result<()> {
    let entries: Vec<CatalogEntry> = trace
        .catalog
        .iter()
        .enumerate()
        .map(|(id, &schedule)| CatalogEntry { id, schedule })
        .collect();
    serde_json::to_writer(w, &entries).map_err(io::Error::other)
}

#[derive(Debug, Clone, Serialize)]
pub struct SimSummary {
    pub graph_digest: String,
    pub nodes: usize,
    pub config: SimConfig,
    #[serde(with = "serde_rational_vec")]
    pub rates: Vec<Rational>,
    pub slots: usize,
    pub peak_backlog: String,
    pub final_max_backlog: String,
    #[serde(with = "serde_rational_vec")]
    pub final_backlog: Vec<Rational>,
    pub drift: f64,
    pub verdict: Verdict,
    pub schedules_used: usize,
}

impl SimSummary {
    pub fn new(g: &InterferenceGraph, trace: &SimTrace) -> Self {
        let last = trace.records.last().map(|r| r.max_units).unwrap_or(0);
        SimSummary {
            graph_digest: g.digest(),
            nodes: g.node_count(),
            config: trace.config.clone(),
            rates: trace.rates.clone(),
            slots: trace.records.len(),
            peak_backlog: format(&trace.peak()),
            final_max_backlog: format_units(last, trace.denominator),
            final_backlog: trace.final_backlog.clone(),
            drift: trace.drift,
            verdict: trace.verdict,
            schedules_used: trace.catalog.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rational::rat;
    use crate::rates::RateVector;
    use crate::sim::{run, ArrivalKind, TieBreaker};

    #[test]
    fn csv_rows() {
        let k2 = InterferenceGraph::complete(2).unwrap();
        let l = RateVector::new(vec![rat(1, 2), rat(1, 4)]).unwrap();
        let cfg = SimConfig::new(ArrivalKind::Constant, TieBreaker::Lexicographic, 3, 0);
        let t = run(&k2, &l, &cfg).unwrap();
        let mut out = Vec::new();
        write_csv(&t, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        // slot 1: (1/2,1/4) -> serve 1 -> (0,1/4)
        assert_eq!(lines[1], "1,1/4,1/4,0");
        // slot 2: (1/2,1/2) -> serve 1 -> (0,1/2)
        assert_eq!(lines[2], "2,1/2,1/2,0");
        // slot 3: (1/2,3/4) -> serve 2 -> (1/2,0)
        assert_eq!(lines[3], "3,1/2,1/2,1");

        let mut cat = Vec::new();
        write_catalog(&t, &mut cat).unwrap();
        assert_eq!(
            String::from_utf8(cat).unwrap(),
            r#"[{"id":0,"schedule":[1]},{"id":1,"schedule":[2]}]"#
        );
        let summary = serde_json::to_value(SimSummary::new(&k2, &t)).unwrap();
        assert_eq!(summary["verdict"], "stable_looking");
        assert_eq!(summary["final_backlog"][0], "1/2");
    }
}
