use std::collections::BTreeSet;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Graph;
use crate::error::{invalid_size, Result};

fn from_sets(sets: Vec<BTreeSet<usize>>) -> Graph {
    Graph::from_sorted_adjacency(sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

fn link(sets: &mut [BTreeSet<usize>], u: usize, v: usize) {
    sets[u].insert(v);
    sets[v].insert(u);
}

/// The cycle `C_n`: node `i` is adjacent to `i ± 1 mod n`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid_size(format!("a cycle needs at least 3 nodes, got {n}")));
    }
    let adj = (0..n)
        .map(|i| {
            let mut l = vec![(i + n - 1) % n, (i + 1) % n];
            l.sort_unstable();
            l
        })
        .collect();
    Ok(Graph::from_sorted_adjacency(adj))
}

/// The square of the cycle: node `i` is adjacent to `i ± 1` and `i ± 2 mod n`.
pub fn make_two_cycle(n: usize) -> Result<Graph> {
    if n < 5 {
        return Err(invalid_size(format!("the two-cycle needs at least 5 nodes, got {n}")));
    }
    let mut sets = vec![BTreeSet::new(); n];
    for i in 0..n {
        link(&mut sets, i, (i + 1) % n);
        link(&mut sets, i, (i + 2) % n);
    }
    Ok(from_sets(sets))
}

/// A cycle with two random extra edges per node.
///
/// Nodes are processed in increasing order; each draws two partners
/// uniformly from its current non-neighbours, so the graph stays simple.
pub fn make_cycle_plus_random(n: usize, seed: u64) -> Result<Graph> {
    if n < 8 {
        return Err(invalid_size(format!("cycle plus random edges needs at least 8 nodes, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = vec![BTreeSet::new(); n];
    for i in 0..n {
        link(&mut sets, i, (i + 1) % n);
    }
    for v in 0..n {
        for _ in 0..2 {
            let free = n - 1 - sets[v].len();
            if free == 0 {
                break;
            }
            let u = if free * 4 >= n {
                loop {
                    let u = rng.random_range(0..n);
                    if u != v && !sets[v].contains(&u) {
                        break u;
                    }
                }
            } else {
                let candidates: Vec<usize> =
                    (0..n).filter(|&u| u != v && !sets[v].contains(&u)).collect();
                candidates[rng.random_range(0..candidates.len())]
            };
            link(&mut sets, v, u);
        }
    }
    Ok(from_sets(sets))
}

/// Node ranges of the exponential-stabilization construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpStabilizationParts {
    pub kappa: usize,
    /// Blue star; its first node is the centre.
    pub star_blue: Range<usize>,
    /// White star; its first node is the centre.
    pub star_white: Range<usize>,
    /// Independent nodes attached to both centres.
    pub independent: Range<usize>,
}

impl ExpStabilizationParts {
    pub fn center_blue(&self) -> usize {
        self.star_blue.start
    }

    pub fn center_white(&self) -> usize {
        self.star_white.start
    }
}

/// Two stars joined through an independent set of `kappa = floor(n/3) - 1` nodes.
///
/// Layout: blue star `0..kappa`, white star `kappa..n-kappa`, independent
/// set `n-kappa..n`.
pub fn make_exp_stabilization_graph(n: usize) -> Result<(Graph, ExpStabilizationParts)> {
    if n < 9 {
        return Err(invalid_size(format!("the stabilization construction needs n >= 9, got {n}")));
    }
    let kappa = n / 3 - 1;
    let parts = ExpStabilizationParts {
        kappa,
        star_blue: 0..kappa,
        star_white: kappa..n - kappa,
        independent: n - kappa..n,
    };
    let mut sets = vec![BTreeSet::new(); n];
    let (cb, cw) = (parts.center_blue(), parts.center_white());
    for leaf in parts.star_blue.clone().skip(1) {
        link(&mut sets, cb, leaf);
    }
    for leaf in parts.star_white.clone().skip(1) {
        link(&mut sets, cw, leaf);
    }
    for v in parts.independent.clone() {
        link(&mut sets, v, cb);
        link(&mut sets, v, cw);
    }
    Ok((from_sets(sets), parts))
}

/// Node ranges of the exponential-periodicity construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpPeriodicityParts {
    pub kappa: usize,
    pub path: Range<usize>,
    /// Three-node clique; its first node is attached to the path start.
    pub clique_white: Range<usize>,
    /// Clique on the remaining nodes; its first node is attached to the path end.
    pub clique_blue: Range<usize>,
}

/// A path of `kappa` nodes (largest multiple of 4 below `n - 6`) between a
/// 3-clique and an `(n - 3 - kappa)`-clique.
///
/// Layout: path `0..kappa`, small clique `kappa..kappa+3`, large clique `kappa+3..n`.
pub fn make_exp_periodicity_graph(n: usize) -> Result<(Graph, ExpPeriodicityParts)> {
    if n < 11 {
        return Err(invalid_size(format!("the periodicity construction needs n >= 11, got {n}")));
    }
    let kappa = 4 * ((n - 7) / 4);
    let parts = ExpPeriodicityParts {
        kappa,
        path: 0..kappa,
        clique_white: kappa..kappa + 3,
        clique_blue: kappa + 3..n,
    };
    let mut sets = vec![BTreeSet::new(); n];
    for v in 1..kappa {
        link(&mut sets, v - 1, v);
    }
    for clique in [parts.clique_white.clone(), parts.clique_blue.clone()] {
        for u in clique.clone() {
            for v in u + 1..clique.end {
                link(&mut sets, u, v);
            }
        }
    }
    link(&mut sets, 0, parts.clique_white.start);
    link(&mut sets, kappa - 1, parts.clique_blue.start);
    Ok((from_sets(sets), parts))
}

/// Two copies of `g` (copy two is offset by `n`), with a cross edge between
/// the copies of every node of even degree. All degrees of the result are odd.
pub fn double_graph(g: &Graph) -> Graph {
    let n = g.n();
    let mut adj = vec![Vec::new(); 2 * n];
    for v in 0..n {
        let even = g.degree(v) % 2 == 0;
        let mut first: Vec<usize> = g.neighbors(v).to_vec();
        let mut second: Vec<usize> = g.neighbors(v).iter().map(|&u| u + n).collect();
        if even {
            first.push(v + n);
            second.push(v);
            second.sort_unstable();
        }
        adj[v] = first;
        adj[v + n] = second;
    }
    Graph::from_sorted_adjacency(adj)
}
