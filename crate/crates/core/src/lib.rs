//! Exact stability-region analysis for longest-queue-first (LQF) link
//! scheduling on interference graphs.
//!
//! The crate decides whether an arrival-rate vector lies in the capacity
//! region `Λ`, its interior, the pooling-scaled region `Σ*(G)Λ`, and the LQF
//! stability regions `Ω`, `Δ_C` and `Δ_R`, using exact rational linear
//! programming throughout. A slotted queue simulator checks the predictions
//! empirically.
//!
//! ```
//! use lqflab::graph::InterferenceGraph;
//! use lqflab::pooling::sigma_graph;
//! use lqflab::exactla::rational::rat;
//!
//! let c6 = InterferenceGraph::cycle(6).unwrap();
//! assert_eq!(c6.maximal_schedules().unwrap().num_schedules(), 5);
//! assert_eq!(sigma_graph(&c6).unwrap().value, rat(2, 3));
//! ```

pub mod cli;
pub mod error;
pub mod exactla;
pub mod graph;
pub mod limits;
pub mod oracles;
pub mod pooling;
pub mod rates;
pub mod regions;
pub mod sim;

pub use error::{Error, Result};
pub use exactla::Rational;
pub use graph::{InterferenceGraph, NodeSet, ScheduleMatrix};
pub use limits::Limits;
pub use rates::RateVector;
