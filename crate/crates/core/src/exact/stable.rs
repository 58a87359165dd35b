use crate::dynamics::Model;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;

/// Largest graph whose stable colorings are counted.
pub const STABLE_COUNT_CAP: usize = 28;
/// Largest graph whose stable colorings are listed.
pub const STABLE_LIST_CAP: usize = 24;

const CHUNK_BITS: u32 = 12;

struct StableTest {
    masks: Vec<u32>,
    degrees: Vec<u32>,
    strict: bool,
}

impl StableTest {
    fn new(g: &Graph, model: Model) -> Self {
        StableTest {
            masks: g.neighbor_masks().expect("small graph").into_iter().map(|m| m as u32).collect(),
            degrees: (0..g.n()).map(|v| g.degree(v) as u32).collect(),
            strict: model == Model::Rmm,
        }
    }

    #[inline]
    fn check(&self, s: u32) -> bool {
        self.masks.iter().zip(&self.degrees).enumerate().all(|(v, (&mask, &d))| {
            let k = 2 * (s & mask).count_ones();
            let blue = s >> v & 1 == 1;
            if k == d {
                !self.strict
            } else {
                (k > d) == blue
            }
        })
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::SizeCap { n: g.n(), cap });
    }
    Ok(())
}

/// Number of colorings of `g` that one round of `model` leaves unchanged
/// (for the random model: with no tied node).
pub fn enumerate_stable_colorings(g: &Graph, model: Model) -> Result<u64> {
    check_cap(g, STABLE_COUNT_CAP)?;
    let test = StableTest::new(g, model);
    let n = g.n() as u32;
    let chunk = CHUNK_BITS.min(n);
    Ok(par::sum_range(1u64 << (n - chunk), |c| {
        let lo = (c << chunk) as u32;
        (lo..lo + (1u32 << chunk)).filter(|&s| test.check(s)).count() as u64
    }))
}

/// The stable colorings themselves, as state indices in increasing order.
pub fn list_stable_colorings(g: &Graph, model: Model) -> Result<Vec<u32>> {
    check_cap(g, STABLE_LIST_CAP)?;
    let test = StableTest::new(g, model);
    let n = g.n() as u32;
    let chunk = CHUNK_BITS.min(n);
    let parts = par::map_range(1usize << (n - chunk), |c| {
        let lo = (c << chunk) as u32;
        (lo..lo + (1u32 << chunk)).filter(|&s| test.check(s)).collect::<Vec<_>>()
    });
    Ok(parts.concat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_stable, Coloring};
    use crate::graph::{make_cycle, make_two_cycle};

    #[test]
    fn small_cycle_counts() {
        assert_eq!(enumerate_stable_colorings(&make_cycle(3).unwrap(), Model::Mm).unwrap(), 2);
        assert_eq!(enumerate_stable_colorings(&make_cycle(4).unwrap(), Model::Mm).unwrap(), 6);
        for n in 3..=12 {
            assert_eq!(enumerate_stable_colorings(&make_cycle(n).unwrap(), Model::Rmm).unwrap(), 2);
        }
    }

    #[test]
    fn listing_agrees_with_predicate() {
        let g = make_two_cycle(9).unwrap();
        for model in [Model::Mm, Model::Rmm] {
            let listed = list_stable_colorings(&g, model).unwrap();
            let direct: Vec<u32> =
                (0..512u32).filter(|&s| is_stable(&g, &Coloring::from_index(9, s as u64), model)).collect();
            assert_eq!(listed, direct);
            assert_eq!(enumerate_stable_colorings(&g, model).unwrap(), listed.len() as u64);
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(
            enumerate_stable_colorings(&make_cycle(29).unwrap(), Model::Mm),
            Err(Error::SizeCap { n: 29, cap: 28 })
        ));
        assert!(list_stable_colorings(&make_cycle(25).unwrap(), Model::Mm).is_err());
    }
}
