//! Synchronous majority dynamics and run-time stabilization detection.

mod cycle;
mod engine;
mod lazy;
mod step;
mod tie;

pub use cycle::run_cycle_rmm;
pub use engine::{run_general, Observer, TieRule};
pub use lazy::{lazy_rmm_pass, lazy_rmm_pass_with_deltas};
pub use step::{mm_step, rmm_step, tied_nodes};
pub use tie::{RoundKey, TieRng};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{invalid_param, Error, Result};
use crate::graph::Graph;

/// The two update rules.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Strict majority; a tied node keeps its color.
    Mm,
    /// Strict majority; a tied node flips a coin.
    Rmm,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Mm => "mm",
            Model::Rmm => "rmm",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mm" => Ok(Model::Mm),
            "rmm" => Ok(Model::Rmm),
            other => Err(Error::Parse(format!("unknown model {other:?}"))),
        }
    }
}

/// How a run ended.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    FixedColoring,
    PeriodTwoCycle,
    Blue,
    White,
    /// The two alternating colorings of an even cycle.
    Blinking,
    /// Random model on a general graph: the cap was reached without a certificate.
    Undetermined,
    CapExceeded,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::FixedColoring => "fixed-coloring",
            Outcome::PeriodTwoCycle => "period-two-cycle",
            Outcome::Blue => "blue",
            Outcome::White => "white",
            Outcome::Blinking => "blinking",
            Outcome::Undetermined => "undetermined",
            Outcome::CapExceeded => "cap-exceeded",
        }
    }

    /// Whether the run reached its eventual cycle within the cap.
    pub fn is_settled(self) -> bool {
        !matches!(self, Outcome::Undetermined | Outcome::CapExceeded)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of [`run`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunResult {
    /// First round whose coloring lies on the eventual cycle; `None` when the
    /// cap was reached first.
    pub rounds: Option<u64>,
    pub outcome: Outcome,
    /// Coloring at `rounds` (or the last simulated coloring at the cap).
    pub final_coloring: Coloring,
    /// The other coloring of a two-state cycle.
    pub partner: Option<Coloring>,
    /// Number of rounds actually simulated.
    pub trace_len: u64,
    /// Blue count after each simulated round, starting with round 0.
    pub blue_counts: Option<Vec<usize>>,
}

/// Knobs for [`run_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub max_rounds: u64,
    /// Record the blue count of every round.
    pub record_blue_counts: bool,
    /// Allow the random model on cycles to skip over stretches of rounds in
    /// which no two boundaries can interact. Skipping is exact in distribution
    /// but draws from a separate stream, so trajectories differ from
    /// round-by-round simulation with the same seed.
    pub accelerate: bool,
}

impl RunOptions {
    pub fn new(max_rounds: u64) -> Self {
        RunOptions { max_rounds, record_blue_counts: false, accelerate: true }
    }
}

/// Default round cap for the deterministic model: `4m`, never below `n + 4`.
pub fn default_mm_cap(g: &Graph) -> u64 {
    (4 * g.m()).max(g.n() + 4) as u64
}

/// Runs the model from `c0` until the eventual cycle is detected or the cap is hit.
///
/// The deterministic model stops at a fixed point or a two-state cycle. The
/// random model on a cycle stops at a monochromatic or blinking coloring; on
/// other graphs it stops at a monochromatic coloring (when every node has a
/// neighbour), a tie-free fixed point or a tie-free two-state cycle, and
/// otherwise reports [`Outcome::Undetermined`] at the cap.
pub fn run(model: Model, g: &Graph, c0: &Coloring, max_rounds: u64, rng: Option<&TieRng>) -> Result<RunResult> {
    run_with(model, g, c0, rng, &RunOptions::new(max_rounds))
}

pub fn run_with(model: Model, g: &Graph, c0: &Coloring, rng: Option<&TieRng>, opts: &RunOptions) -> Result<RunResult> {
    c0.check_len(g)?;
    match (model, rng) {
        (Model::Mm, _) => Ok(run_general(g, c0, TieRule::Keep, opts, None)),
        (Model::Rmm, None) => Err(invalid_param("the random model needs a tie source")),
        (Model::Rmm, Some(rng)) if g.is_canonical_cycle() => Ok(run_cycle_rmm(c0, rng, opts)),
        (Model::Rmm, Some(rng)) => Ok(run_general(g, c0, TieRule::Coin(rng), opts, None)),
    }
}

/// Round-by-round run that reports every coloring to `observer` as
/// `(round, coloring, blue count)`, starting with round 0.
pub fn run_observed(
    model: Model,
    g: &Graph,
    c0: &Coloring,
    rng: Option<&TieRng>,
    opts: &RunOptions,
    observer: &mut dyn FnMut(u64, &Coloring),
) -> Result<RunResult> {
    c0.check_len(g)?;
    let rule = match (model, rng) {
        (Model::Mm, _) => TieRule::Keep,
        (Model::Rmm, Some(rng)) => TieRule::Coin(rng),
        (Model::Rmm, None) => return Err(invalid_param("the random model needs a tie source")),
    };
    Ok(run_general(g, c0, rule, opts, Some(observer)))
}
