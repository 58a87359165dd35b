//! Simple undirected graphs, node sets and generators.

mod generators;
mod io;

pub use generators::{
    double_graph, make_cycle, make_cycle_plus_random, make_exp_periodicity_graph,
    make_exp_stabilization_graph, make_two_cycle, ExpPeriodicityParts, ExpStabilizationParts,
};

use std::collections::VecDeque;
use std::fmt;

use crate::bits::Bits;
use crate::error::{invalid_param, Result};

/// A simple undirected graph on nodes `0..n` with sorted adjacency lists.
///
/// Two graphs compare equal exactly when they have the same edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list. Self-loops, out-of-range endpoints
    /// and repeated edges are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid_param(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(invalid_param(format!("self-loop at node {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid_param(format!("duplicate edge at node {v}")));
            }
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    /// Builds a graph from adjacency sets that are already symmetric and loop-free.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!(adj.iter().enumerate().all(|(v, l)| {
            l.windows(2).all(|w| w[0] < w[1]) && l.iter().all(|&u| u != v && adj[u].binary_search(&v).is_ok())
        }));
        Graph { adj, m }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == n
    }

    /// True for a connected 2-regular graph on at least three nodes.
    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.adj.iter().all(|l| l.len() == 2) && self.is_connected()
    }

    /// True when the graph is exactly `make_cycle(n)`, i.e. node `i` is
    /// adjacent to `i ± 1 mod n`.
    pub fn is_canonical_cycle(&self) -> bool {
        let n = self.n();
        n >= 3
            && self.adj.iter().enumerate().all(|(i, l)| {
                let (a, b) = ((i + n - 1) % n, (i + 1) % n);
                l.len() == 2 && l.contains(&a) && l.contains(&b)
            })
    }

    /// Neighbourhoods as bit masks, available for graphs with at most 64 nodes.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(self.adj.iter().map(|l| l.iter().fold(0u64, |acc, &u| acc | (1 << u))).collect())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n()).field("m", &self.m).finish()
    }
}

/// A subset of the nodes `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NodeSet {
    bits: Bits,
}

impl NodeSet {
    pub fn empty(n: usize) -> Self {
        NodeSet { bits: Bits::zeros(n) }
    }

    pub fn full(n: usize) -> Self {
        NodeSet { bits: Bits::ones(n) }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, nodes: I) -> Result<Self> {
        let mut s = NodeSet::empty(n);
        for v in nodes {
            if v >= n {
                return Err(invalid_param(format!("node {v} out of range for n = {n}")));
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        NodeSet { bits: Bits::from_u64(n, mask) }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> bool) -> Self {
        NodeSet { bits: Bits::from_fn(n, f) }
    }

    /// Size of the ground set.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Number of members.
    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.bits.len() && self.bits.get(v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        !self.bits.set(v, true)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.bits.set(v, false)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        NodeSet { bits: self.bits.complement() }
    }

    pub fn is_subset_of(&self, other: &NodeSet) -> bool {
        self.bits.is_subset_of(&other.bits)
    }

    /// Membership as an integer with node 0 as the least significant bit.
    pub fn to_mask(&self) -> Option<u64> {
        self.bits.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        let g = Graph::from_edges(3, [(2, 0), (0, 1)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        assert!(!g.is_connected() || g.m() == 2);
    }

    #[test]
    fn cycle_predicates() {
        let g = make_cycle(6).unwrap();
        assert!(g.is_cycle() && g.is_canonical_cycle());
        let relabeled = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert!(relabeled.is_cycle());
        assert!(!relabeled.is_canonical_cycle());
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!two.is_cycle());
    }

    #[test]
    fn node_set_basics() {
        let s = NodeSet::from_indices(10, [1, 3, 5]).unwrap();
        assert_eq!(s.count(), 3);
        assert_eq!(s.complement().count(), 7);
        assert_eq!(s.to_mask(), Some(0b101010));
        assert!(NodeSet::from_indices(4, [4]).is_err());
        assert!(s.is_subset_of(&NodeSet::full(10)));
    }
}
