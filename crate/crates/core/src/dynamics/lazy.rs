use super::TieRng;
use crate::coloring::{path_partition, Coloring, Partition};
use crate::error::{invalid_param, Error, Result};
use crate::graph::Graph;

/// One round of the random model on a cycle, scheduled path by path.
///
/// The alternating paths are extended by one node on each side (empty gaps
/// between opposite runs give two-node paths). Each extended path is updated
/// by the random rule into a buffer, reading only the old coloring, and the
/// buffer is committed at the end. Nodes outside these paths are interior to
/// monochromatic runs and keep their color. With the same `rng` and `round`
/// the result equals [`super::rmm_step`].
pub fn lazy_rmm_pass(cycle: &Graph, c: &Coloring, rng: &TieRng, round: u64) -> Result<Coloring> {
    lazy_rmm_pass_with_deltas(cycle, c, rng, round).map(|(next, _)| next)
}

/// Like [`lazy_rmm_pass`], also returning the blue-count change contributed
/// by each extended path, in path order.
pub fn lazy_rmm_pass_with_deltas(
    cycle: &Graph,
    c: &Coloring,
    rng: &TieRng,
    round: u64,
) -> Result<(Coloring, Vec<i64>)> {
    if !cycle.is_canonical_cycle() {
        return Err(invalid_param("lazy scheduling needs the canonically labelled cycle"));
    }
    c.check_len(cycle)?;
    let parts = match path_partition(c) {
        Partition::Alternating => return Err(Error::UndefinedPartition),
        Partition::Paths(p) => p,
    };
    let n = c.len();
    let key = rng.round(round);
    let mut buffer = c.clone();
    let mut deltas = Vec::new();
    for path in parts.extended_paths() {
        let mut delta = 0i64;
        for k in 0..path.len {
            let v = (path.start + k) % n;
            let blue_nbrs = c.is_blue((v + n - 1) % n) as usize + c.is_blue((v + 1) % n) as usize;
            let new = match blue_nbrs {
                2 => true,
                0 => false,
                _ => key.coin(v),
            };
            delta += new as i64 - c.is_blue(v) as i64;
            buffer.set(v, crate::coloring::Color::from_blue(new));
        }
        deltas.push(delta);
    }
    Ok((buffer, deltas))
}
