//! The random model as a Markov chain over all `2^n` colorings.
//!
//! State `s` encodes a coloring with node `v` blue iff bit `v` of `s` is set.
//! From `s`, every node with a strict majority is forced and every tied node
//! is free, so the successors are `base | sub` for all submasks `sub` of the
//! tied mask, each with probability `2^-ties`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::scc::{tarjan, Sccs};
use super::solve::{solve_by_blocks, Solution};
use crate::coloring::Coloring;
use crate::error::{invalid_param, Error, Result};
use crate::format::sig;
use crate::graph::Graph;
use crate::par;

/// Default node limit for [`rmm_markov`].
pub const DEFAULT_MARKOV_CAP: usize = 14;
/// Hard node limit for [`rmm_markov_with_cap`].
pub const MAX_MARKOV_CAP: usize = 24;

/// Transition structure of the random model on one graph.
#[derive(Clone, Debug)]
pub struct Chain {
    n: usize,
    base: Vec<u32>,
    tied: Vec<u32>,
}

/// Successors of one state in increasing order.
#[derive(Clone, Debug)]
pub struct Successors {
    base: u32,
    tied: u32,
    sub: u32,
    done: bool,
}

impl Successors {
    fn empty() -> Self {
        Successors { base: 0, tied: 0, sub: 0, done: true }
    }
}

impl Iterator for Successors {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.done {
            return None;
        }
        let out = self.base | self.sub;
        self.sub = (self.sub | !self.tied).wrapping_add(1) & self.tied;
        self.done = self.sub == 0;
        Some(out)
    }
}

impl Chain {
    /// Builds the chain; `g` must have at most `cap` nodes.
    pub fn build(g: &Graph, cap: usize) -> Result<Chain> {
        let n = g.n();
        let cap = cap.min(MAX_MARKOV_CAP);
        if n > cap {
            return Err(Error::SizeCap { n, cap });
        }
        let masks: Vec<u32> = g.neighbor_masks().expect("n <= 64").into_iter().map(|m| m as u32).collect();
        let degrees: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
        let rows = par::map_range(1usize << n, |s| {
            let s = s as u32;
            let mut base = 0u32;
            let mut tied = 0u32;
            for v in 0..n {
                let k = 2 * (s & masks[v]).count_ones();
                if k > degrees[v] {
                    base |= 1 << v;
                } else if k == degrees[v] {
                    tied |= 1 << v;
                }
            }
            (base, tied)
        });
        let (base, tied) = rows.into_iter().unzip();
        Ok(Chain { n, base, tied })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_states(&self) -> usize {
        self.base.len()
    }

    /// Nodes that are tied in state `s`, as a mask.
    pub fn tied_mask(&self, s: u32) -> u32 {
        self.tied[s as usize]
    }

    /// Coloring reached from `s` when every tie resolves white.
    pub fn forced(&self, s: u32) -> u32 {
        self.base[s as usize]
    }

    /// Probability of each single successor of `s`.
    pub fn step_probability(&self, s: u32) -> f64 {
        0.5f64.powi(self.tied[s as usize].count_ones() as i32)
    }

    pub fn successors(&self, s: u32) -> Successors {
        Successors { base: self.base[s as usize], tied: self.tied[s as usize], sub: 0, done: false }
    }

    /// `(successor, probability)` pairs of `s`.
    pub fn transitions(&self, s: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        let p = self.step_probability(s);
        self.successors(s).map(move |t| (t, p))
    }

    pub fn sccs(&self) -> Sccs {
        tarjan(self.num_states(), |s| self.successors(s))
    }

    /// Components of the chain in which every `stop` state is made absorbing.
    pub fn sccs_stopped_at(&self, stop: &dyn Fn(u32) -> bool) -> Sccs {
        tarjan(self.num_states(), |s| if stop(s) { Successors::empty() } else { self.successors(s) })
    }
}

/// Exact analysis of the random model on a small graph.
#[derive(Clone, Debug)]
pub struct MarkovAnalysis {
    chain: Chain,
    sccs: Sccs,
    /// Component ids (into `sccs`) of the absorbing components, ordered by
    /// size and then by smallest state.
    absorbing: Vec<u32>,
    /// Position in `absorbing` of the component containing each state.
    absorbing_index: Vec<Option<u32>>,
    hitting: Vec<f64>,
    residual: f64,
}

/// Builds and solves the chain of `g` (at most [`DEFAULT_MARKOV_CAP`] nodes).
pub fn rmm_markov(g: &Graph) -> Result<MarkovAnalysis> {
    rmm_markov_with_cap(g, DEFAULT_MARKOV_CAP)
}

/// Like [`rmm_markov`] with a different node limit (at most [`MAX_MARKOV_CAP`]).
pub fn rmm_markov_with_cap(g: &Graph, cap: usize) -> Result<MarkovAnalysis> {
    let chain = Chain::build(g, cap)?;
    let sccs = chain.sccs();
    let mut absorbing: Vec<u32> = (0..sccs.len() as u32)
        .filter(|&id| {
            sccs.members[id as usize]
                .iter()
                .all(|&s| chain.successors(s).all(|t| sccs.component[t as usize] == id))
        })
        .collect();
    absorbing.sort_by_key(|&id| (sccs.members[id as usize].len(), sccs.members[id as usize][0]));
    let mut absorbing_index = vec![None; chain.num_states()];
    for (i, &id) in absorbing.iter().enumerate() {
        for &s in &sccs.members[id as usize] {
            absorbing_index[s as usize] = Some(i as u32);
        }
    }
    let Solution { values, residual } =
        solve_by_blocks(&chain, &sccs, &|s| absorbing_index[s as usize].map(|_| 0.0), 1.0)?;
    Ok(MarkovAnalysis { chain, sccs, absorbing, absorbing_index, hitting: values, residual })
}

/// Expected number of rounds until the random model started at `c0`
/// reaches an absorbing component.
pub fn expected_stabilization_exact(g: &Graph, c0: &Coloring) -> Result<f64> {
    c0.check_len(g)?;
    let analysis = rmm_markov(g)?;
    Ok(analysis.hitting_time(state_of(c0)))
}

pub(crate) fn state_of(c: &Coloring) -> u32 {
    c.to_index().expect("coloring fits in a state index") as u32
}

impl MarkovAnalysis {
    pub fn n(&self) -> usize {
        self.chain.n()
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn sccs(&self) -> &Sccs {
        &self.sccs
    }

    pub fn num_states(&self) -> usize {
        self.chain.num_states()
    }

    /// States of every absorbing component, each sorted ascending.
    pub fn absorbing_components(&self) -> Vec<&[u32]> {
        self.absorbing.iter().map(|&id| self.sccs.members[id as usize].as_slice()).collect()
    }

    /// Sizes of the absorbing components (their periodicities).
    pub fn absorbing_sizes(&self) -> Vec<usize> {
        self.absorbing_components().iter().map(|c| c.len()).collect()
    }

    /// Index (into [`Self::absorbing_components`]) of the absorbing component containing `s`.
    pub fn absorbing_component_of(&self, s: u32) -> Option<usize> {
        self.absorbing_index[s as usize].map(|i| i as usize)
    }

    /// Whether some transition leaves the component of `s`.
    pub fn has_exit(&self, s: u32) -> bool {
        let id = self.sccs.component[s as usize];
        self.sccs.members[id as usize]
            .iter()
            .any(|&u| self.chain.successors(u).any(|t| self.sccs.component[t as usize] != id))
    }

    /// Expected rounds from `s` to an absorbing component.
    pub fn hitting_time(&self, s: u32) -> f64 {
        self.hitting[s as usize]
    }

    pub fn hitting_times(&self) -> &[f64] {
        &self.hitting
    }

    /// Largest scaled residual of the hitting-time solve.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Probability of ending in absorbing component `k`, for every state.
    pub fn absorption_probabilities(&self, k: usize) -> Result<Vec<f64>> {
        let comps = self.absorbing.len();
        if k >= comps {
            return Err(invalid_param(format!("no absorbing component {k} (there are {comps})")));
        }
        let fixed = |s: u32| self.absorbing_index[s as usize].map(|i| if i as usize == k { 1.0 } else { 0.0 });
        Ok(solve_by_blocks(&self.chain, &self.sccs, &fixed, 0.0)?.values)
    }

    /// Probability of ending in each absorbing component, starting from `s`.
    pub fn absorption_distribution(&self, s: u32) -> Result<Vec<f64>> {
        (0..self.absorbing.len()).map(|k| self.absorption_probabilities(k).map(|p| p[s as usize])).collect()
    }

    /// Expected rounds until the chain first enters a state satisfying
    /// `target` (0 on target states, infinite where the target may be missed).
    pub fn expected_hitting_time(&self, target: &dyn Fn(u32) -> bool) -> Result<Vec<f64>> {
        let sccs = self.chain.sccs_stopped_at(target);
        Ok(solve_by_blocks(&self.chain, &sccs, &|s| target(s).then_some(0.0), 1.0)?.values)
    }

    /// JSON export: absorbing components and hitting times (as decimal
    /// strings with 12 significant digits, keyed by state index).
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Export<'a> {
            n: usize,
            absorbing: Vec<&'a [u32]>,
            hitting: BTreeMap<u32, String>,
        }
        let hitting = (0..self.num_states() as u32).map(|s| (s, sig(self.hitting_time(s), 12))).collect();
        serde_json::to_string(&Export { n: self.n(), absorbing: self.absorbing_components(), hitting })
            .expect("serializable")
    }
}
