#![allow(dead_code)]

use std::collections::BTreeSet;

use majdyn::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random connected graph: a random spanning tree plus each remaining pair
/// independently with probability `extra`.
pub fn random_connected_graph(n: usize, extra: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(extra) {
                edges.insert((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

/// Deterministic majority step written directly from the rule.
pub fn majority_step(g: &Graph, blue: &[bool]) -> Vec<bool> {
    (0..g.n())
        .map(|v| {
            let b = g.neighbors(v).iter().filter(|&&u| blue[u]).count();
            let w = g.degree(v) - b;
            if b > w {
                true
            } else if w > b {
                false
            } else {
                blue[v]
            }
        })
        .collect()
}
