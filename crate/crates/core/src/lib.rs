//! Majority dynamics on graphs.
//!
//! Two synchronous update rules are supported: the deterministic majority
//! model, where a tied node keeps its color, and the random majority model,
//! where a tied node flips a fair (or biased) coin. The crate provides
//!
//! * graph generators for cycles, squared cycles, cycles with random chords
//!   and two adversarial constructions ([`graph`]);
//! * colorings, samplers and the path partition of cycle colorings ([`coloring`]);
//! * simulation engines with stabilization detection ([`dynamics`]);
//! * exhaustive analysis of small instances: Markov chains over all colorings,
//!   stable colorings, winning and resilient sets ([`exact`]);
//! * closed-form predictions for cycles ([`cycle_theory`]);
//! * a seeded Monte Carlo harness that writes CSV tables ([`experiments`]).

mod bits;
pub mod cli;
pub mod coloring;
pub mod cycle_theory;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod experiments;
mod format;
pub mod graph;
pub mod par;
pub mod seeds;

pub use coloring::{Color, Coloring};
pub use dynamics::{run, Model, Outcome, RunOptions, RunResult, TieRng};
pub use error::{Error, Result};
pub use graph::{Graph, NodeSet};

/// Library version, echoed into experiment metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
