//! Path partition of cycle colorings into monochromatic and alternating paths.

use super::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::NodeSet;

/// A maximal monochromatic path of at least two nodes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MonoRun {
    pub start: usize,
    pub len: usize,
    pub color: Color,
}

/// A maximal alternating path between two monochromatic runs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AltRun {
    pub start: usize,
    pub len: usize,
}

/// Decomposition of a cycle coloring that has at least one monochromatic run.
///
/// Runs are listed by increasing start index; `gaps[i]` is the alternating
/// path that follows `runs[i]` in cyclic order and may be empty. A
/// monochromatic coloring has one run and no gaps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathPartition {
    n: usize,
    runs: Vec<MonoRun>,
    gaps: Vec<AltRun>,
}

/// Result of [`path_partition`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Partition {
    Paths(PathPartition),
    /// Even cycle colored alternately; no monochromatic run exists.
    Alternating,
}

impl Partition {
    pub fn paths(&self) -> Option<&PathPartition> {
        match self {
            Partition::Paths(p) => Some(p),
            Partition::Alternating => None,
        }
    }
}

impl PathPartition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mono_runs(&self) -> &[MonoRun] {
        &self.runs
    }

    /// Non-empty alternating paths, in the order of the runs they follow.
    pub fn alt_runs(&self) -> Vec<AltRun> {
        self.gaps.iter().copied().filter(|g| g.len > 0).collect()
    }

    /// Every gap between consecutive runs, including empty ones.
    pub fn gaps(&self) -> &[AltRun] {
        &self.gaps
    }

    /// Alternating paths extended by one node on each side, as `(start, len)`
    /// in cyclic order; empty gaps between opposite runs give paths of length 2.
    pub fn extended_paths(&self) -> Vec<AltRun> {
        self.gaps
            .iter()
            .map(|g| AltRun { start: (g.start + self.n - 1) % self.n, len: g.len + 2 })
            .collect()
    }

    pub fn longest_alternating(&self) -> usize {
        self.gaps.iter().map(|g| g.len).max().unwrap_or(0)
    }

    /// Rebuilds the coloring the partition was computed from.
    pub fn to_coloring(&self) -> Coloring {
        let n = self.n;
        let mut values = vec![false; n];
        for (i, run) in self.runs.iter().enumerate() {
            for k in 0..run.len {
                values[(run.start + k) % n] = run.color.is_blue();
            }
            if let Some(gap) = self.gaps.get(i) {
                for k in 0..gap.len {
                    values[(gap.start + k) % n] = (k % 2 == 0) != run.color.is_blue();
                }
            }
        }
        Coloring::from_bools(&values)
    }
}

/// Computes the path partition of a coloring of `C_n`.
pub fn path_partition(c: &Coloring) -> Partition {
    let n = c.len();
    if c.is_monochromatic() {
        let color = Color::from_blue(c.blue_count() > 0 && n > 0);
        return Partition::Paths(PathPartition { n, runs: vec![MonoRun { start: 0, len: n, color }], gaps: vec![] });
    }
    let prev = |v: usize| (v + n - 1) % n;
    let next = |v: usize| (v + 1) % n;
    // a run starts where a node agrees with its successor but not its predecessor
    let starts: Vec<usize> = (0..n)
        .filter(|&v| c.is_blue(v) == c.is_blue(next(v)) && c.is_blue(v) != c.is_blue(prev(v)))
        .collect();
    if starts.is_empty() {
        return Partition::Alternating;
    }
    let mut runs = Vec::with_capacity(starts.len());
    for &s in &starts {
        let mut len = 1;
        while c.is_blue((s + len) % n) == c.is_blue(s) {
            len += 1;
        }
        runs.push(MonoRun { start: s, len, color: c.color(s) });
    }
    let gaps = (0..runs.len())
        .map(|i| {
            let end = runs[i].start + runs[i].len;
            let next_start = runs[(i + 1) % runs.len()].start;
            AltRun { start: end % n, len: (next_start + n - end % n) % n }
        })
        .collect();
    Partition::Paths(PathPartition { n, runs, gaps })
}

/// Length of the longest alternating path; 0 when every node is in a run.
pub fn longest_alternating_run(c: &Coloring) -> Result<usize> {
    match path_partition(c) {
        Partition::Paths(p) => Ok(p.longest_alternating()),
        Partition::Alternating => Err(Error::UndefinedPartition),
    }
}

/// Nodes of `C_n` whose two neighbours both carry the opposite color.
pub fn solitary_nodes(c: &Coloring) -> NodeSet {
    let n = c.len();
    NodeSet::from_fn(n, |v| {
        let own = c.is_blue(v);
        c.is_blue((v + n - 1) % n) != own && c.is_blue((v + 1) % n) != own
    })
}
