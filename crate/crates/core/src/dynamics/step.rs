use super::TieRng;
use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::par;

/// Below this size a step runs on the calling thread.
const PARALLEL_MIN_NODES: usize = 1 << 14;

#[inline]
pub(crate) fn blue_neighbors(g: &Graph, c: &Coloring, v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&u| c.is_blue(u)).count()
}

fn step_with<F>(g: &Graph, c: &Coloring, on_tie: F) -> Coloring
where
    F: Fn(usize) -> bool + Sync + Send,
{
    let n = g.n();
    assert_eq!(c.len(), n, "coloring size does not match the graph");
    let rule = |v: usize| {
        let k = 2 * blue_neighbors(g, c, v);
        let d = g.degree(v);
        if k > d {
            true
        } else if k < d {
            false
        } else {
            on_tie(v)
        }
    };
    let values =
        if n >= PARALLEL_MIN_NODES { par::map_range(n, rule) } else { par::seq::map_range(n, rule) };
    Coloring::from_bools(&values)
}

/// One synchronous round of the deterministic model: each node takes the
/// strict majority color of its neighbours and keeps its own color on a tie.
pub fn mm_step(g: &Graph, c: &Coloring) -> Coloring {
    step_with(g, c, |v| c.is_blue(v))
}

/// One synchronous round of the random model; tied nodes use the coin of
/// `(round, node)`.
pub fn rmm_step(g: &Graph, c: &Coloring, rng: &TieRng, round: u64) -> Coloring {
    let key = rng.round(round);
    step_with(g, c, |v| key.coin(v))
}

/// Nodes that are tied (exactly half of their neighbours blue) in `c`.
pub fn tied_nodes(g: &Graph, c: &Coloring) -> Vec<usize> {
    (0..g.n()).filter(|&v| 2 * blue_neighbors(g, c, v) == g.degree(v)).collect()
}
