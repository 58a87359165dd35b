//! Exhaustive analysis of small instances.
//!
//! Colorings are indexed as unsigned integers with node 0 in the least
//! significant bit.

mod birth_death;
mod markov;
mod scc;
mod solve;
mod stable;
mod winning;

pub use birth_death::{birth_death_hitting_time, birth_death_hitting_times_solved};
pub use markov::{
    expected_stabilization_exact, rmm_markov, rmm_markov_with_cap, Chain, MarkovAnalysis, Successors,
    DEFAULT_MARKOV_CAP, MAX_MARKOV_CAP,
};
pub use scc::{tarjan, Sccs};
pub use solve::{solve_by_blocks, Solution, DENSE_BLOCK_LIMIT, RESIDUAL_TOLERANCE};
pub use stable::{enumerate_stable_colorings, list_stable_colorings, STABLE_COUNT_CAP, STABLE_LIST_CAP};
pub use winning::{
    is_resilient, is_winning_set, is_winning_set_exhaustive, largest_resilient_subset, min_winning_set,
    winning_report, MinWinningSet, WinningReport, WINNING_EXHAUSTIVE_CAP,
};
