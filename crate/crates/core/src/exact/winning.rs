//! Winning and resilient sets.
//!
//! A set `S` is winning for a color if seeding `S` with that color drives
//! the whole graph to it, whatever the other nodes start with and however
//! the ties fall. The majority update is monotone, so the worst case is a
//! single run: every node outside `S` starts with the opposite color and,
//! in the random model, every tie resolves against the seeded color. The
//! exhaustive checks below do not rely on this and serve as oracles.

use serde::Serialize;

use super::markov::Chain;
use crate::coloring::{Color, Coloring};
use crate::dynamics::{run_general, Model, RunOptions, TieRule};
use crate::error::{invalid_param, Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::par;

/// Node limit of the exhaustive winning-set checks and of [`min_winning_set`].
pub const WINNING_EXHAUSTIVE_CAP: usize = 16;

/// Whether a set wins for each color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WinningReport {
    pub blue: bool,
    pub white: bool,
}

/// Smallest winning set found by [`min_winning_set`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinWinningSet {
    pub size: usize,
    pub witness: NodeSet,
}

fn check_set(g: &Graph, s: &NodeSet) -> Result<()> {
    if s.universe() != g.n() {
        return Err(invalid_param(format!("node set over {} nodes used with a graph of {}", s.universe(), g.n())));
    }
    Ok(())
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::SizeCap { n: g.n(), cap });
    }
    Ok(())
}

#[inline]
fn holds(inside: usize, degree: usize, model: Model) -> bool {
    match model {
        Model::Mm => 2 * inside >= degree,
        Model::Rmm => 2 * inside > degree,
    }
}

/// Every node of `s` has at least half (random model: more than half) of
/// its neighbours in `s`.
pub fn is_resilient(g: &Graph, s: &NodeSet, model: Model) -> bool {
    s.iter().all(|v| {
        let inside = g.neighbors(v).iter().filter(|&&u| s.contains(u)).count();
        holds(inside, g.degree(v), model)
    })
}

/// Largest resilient subset of `within` (resilient sets are closed under union).
pub fn largest_resilient_subset(g: &Graph, within: &NodeSet, model: Model) -> NodeSet {
    let mut set = within.clone();
    let mut inside: Vec<usize> =
        (0..g.n()).map(|v| g.neighbors(v).iter().filter(|&&u| set.contains(u)).count()).collect();
    let mut queue: Vec<usize> = set.iter().filter(|&v| !holds(inside[v], g.degree(v), model)).collect();
    while let Some(v) = queue.pop() {
        if !set.remove(v) {
            continue;
        }
        for &u in g.neighbors(v) {
            inside[u] -= 1;
            if set.contains(u) && !holds(inside[u], g.degree(u), model) {
                queue.push(u);
            }
        }
    }
    set
}

fn settle_cap(g: &Graph) -> u64 {
    64 * (g.n() + g.m()) as u64 + 16
}

/// Worst-case run: `s` starts with `color`, everything else with the
/// opposite color, and ties (random model) resolve against `color`.
fn wins_worst_case(g: &Graph, s: &NodeSet, model: Model, color: Color) -> Result<bool> {
    let target = color.is_blue();
    let c0 = Coloring::from_fn(g.n(), |v| s.contains(v) == target);
    let rule = match model {
        Model::Mm => TieRule::Keep,
        Model::Rmm => TieRule::Constant(!target),
    };
    let mut reached = false;
    let mut watch = |_: u64, c: &Coloring| {
        reached |= c.is_monochromatic() && (c.is_empty() || c.is_blue(0) == target);
    };
    let r = run_general(g, &c0, rule, &RunOptions::new(settle_cap(g)), Some(&mut watch));
    if !r.outcome.is_settled() && !reached {
        return Err(invalid_param("worst-case run did not settle"));
    }
    Ok(reached)
}

/// Whether `s` is a winning set for blue.
pub fn is_winning_set(g: &Graph, s: &NodeSet, model: Model) -> Result<bool> {
    check_set(g, s)?;
    wins_worst_case(g, s, model, Color::Blue)
}

/// Whether `s` is winning for blue and for white, separately.
pub fn winning_report(g: &Graph, s: &NodeSet, model: Model) -> Result<WinningReport> {
    check_set(g, s)?;
    Ok(WinningReport {
        blue: wins_worst_case(g, s, model, Color::Blue)?,
        white: wins_worst_case(g, s, model, Color::White)?,
    })
}

/// Exhaustive check of the blue direction, without the monotonicity
/// argument: the deterministic model is run from every coloring of the
/// complement; for the random model, every path of the transition support
/// graph from every such coloring must reach all-blue.
pub fn is_winning_set_exhaustive(g: &Graph, s: &NodeSet, model: Model) -> Result<bool> {
    check_set(g, s)?;
    check_cap(g, WINNING_EXHAUSTIVE_CAP)?;
    let n = g.n();
    let seed = s.to_mask().expect("small graph") as u32;
    let free: Vec<usize> = (0..n).filter(|&v| !s.contains(v)).collect();
    let starts = 1u64 << free.len();
    let start_state = |k: u64| {
        free.iter().enumerate().fold(seed, |acc, (i, &v)| if k >> i & 1 == 1 { acc | 1 << v } else { acc })
    };
    match model {
        Model::Mm => {
            let cap = settle_cap(g);
            let loses = par::find_first(starts, |k| {
                let c0 = Coloring::from_index(n, start_state(k) as u64);
                let mut reached = false;
                let mut watch = |_: u64, c: &Coloring| reached |= c.blue_count() == n;
                run_general(g, &c0, TieRule::Keep, &RunOptions::new(cap), Some(&mut watch));
                !reached
            });
            Ok(loses.is_none())
        }
        Model::Rmm => {
            let chain = Chain::build(g, WINNING_EXHAUSTIVE_CAP)?;
            let all_blue = ((1u64 << n) - 1) as u32;
            Ok(no_cycle_avoiding(&chain, (0..starts).map(start_state), all_blue))
        }
    }
}

/// Depth-first search from `starts` over states other than `goal`; true iff
/// no cycle is reachable (so every path ends in `goal`).
fn no_cycle_avoiding(chain: &Chain, starts: impl Iterator<Item = u32>, goal: u32) -> bool {
    const NEW: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let mut mark = vec![NEW; chain.num_states()];
    let mut stack = Vec::new();
    for root in starts {
        if root == goal || mark[root as usize] != NEW {
            continue;
        }
        mark[root as usize] = OPEN;
        stack.push((root, chain.successors(root)));
        while let Some((v, iter)) = stack.last_mut() {
            let v = *v;
            match iter.next() {
                Some(w) if w == goal => {}
                Some(w) => match mark[w as usize] {
                    NEW => {
                        mark[w as usize] = OPEN;
                        stack.push((w, chain.successors(w)));
                    }
                    OPEN => return false,
                    _ => {}
                },
                None => {
                    mark[v as usize] = DONE;
                    stack.pop();
                }
            }
        }
    }
    true
}

/// All `k`-subsets of `0..n` as masks, in increasing order.
fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    if k == 0 {
        return vec![0];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut x = (1u64 << k) - 1;
    while x < limit {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// A smallest winning set for blue, by search over subsets of increasing
/// size. Sets whose complement contains a non-empty resilient set are
/// skipped without simulation.
pub fn min_winning_set(g: &Graph, model: Model) -> Result<MinWinningSet> {
    check_cap(g, WINNING_EXHAUSTIVE_CAP)?;
    let n = g.n();
    for size in 0..=n {
        let candidates = subsets_of_size(n, size);
        let hit = par::find_first(candidates.len() as u64, |i| {
            let set = NodeSet::from_mask(n, candidates[i as usize]);
            if !largest_resilient_subset(g, &set.complement(), model).is_empty() {
                return false;
            }
            wins_worst_case(g, &set, model, Color::Blue).unwrap_or(false)
        });
        if let Some(i) = hit {
            return Ok(MinWinningSet { size, witness: NodeSet::from_mask(n, candidates[i as usize]) });
        }
    }
    unreachable!("the full node set always wins")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_exp_stabilization_graph};

    #[test]
    fn gosper_counts() {
        assert_eq!(subsets_of_size(5, 2).len(), 10);
        assert_eq!(subsets_of_size(4, 4), vec![15]);
        assert_eq!(subsets_of_size(6, 0), vec![0]);
        assert!(subsets_of_size(6, 3).windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cycle_examples() {
        let g = make_cycle(7).unwrap();
        let s = NodeSet::from_indices(7, [0, 1, 3, 5]).unwrap();
        assert!(is_winning_set(&g, &s, Model::Mm).unwrap());
        assert!(is_winning_set_exhaustive(&g, &s, Model::Mm).unwrap());
        let six = NodeSet::from_indices(7, 0..6).unwrap();
        assert!(!is_winning_set(&g, &six, Model::Rmm).unwrap());
        assert!(!is_winning_set_exhaustive(&g, &six, Model::Rmm).unwrap());
        assert!(is_winning_set(&g, &NodeSet::full(7), Model::Rmm).unwrap());
        assert_eq!(min_winning_set(&make_cycle(8).unwrap(), Model::Mm).unwrap().size, 5);
        assert_eq!(min_winning_set(&make_cycle(6).unwrap(), Model::Rmm).unwrap().size, 6);
    }

    #[test]
    fn resilience() {
        let g = make_cycle(6).unwrap();
        assert!(!is_resilient(&g, &NodeSet::from_indices(6, [2]).unwrap(), Model::Mm));
        assert!(is_resilient(&g, &NodeSet::from_indices(6, [2, 3]).unwrap(), Model::Mm));
        assert!(!is_resilient(&g, &NodeSet::from_indices(6, [2, 3]).unwrap(), Model::Rmm));
        assert!(is_resilient(&g, &NodeSet::full(6), Model::Rmm));
        let (g, parts) = make_exp_stabilization_graph(9).unwrap();
        let sw = NodeSet::from_indices(9, parts.star_white.clone()).unwrap();
        assert!(is_resilient(&g, &sw, Model::Rmm));
        assert_eq!(largest_resilient_subset(&g, &sw, Model::Rmm), sw);
    }

    #[test]
    fn report_both_colors() {
        let g = make_cycle(7).unwrap();
        let s = NodeSet::from_indices(7, [0, 1, 3, 5]).unwrap();
        assert_eq!(winning_report(&g, &s, Model::Mm).unwrap(), WinningReport { blue: true, white: true });
        let s = NodeSet::from_indices(7, [0, 1]).unwrap();
        assert_eq!(winning_report(&g, &s, Model::Mm).unwrap(), WinningReport { blue: false, white: false });
    }
}
