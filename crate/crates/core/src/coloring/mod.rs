//! Two-color assignments, samplers and structured colorings.

mod partition;

pub use partition::{longest_alternating_run, path_partition, solitary_nodes, AltRun, MonoRun, Partition, PathPartition};

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::Bits;
use crate::dynamics::{self, Model};
use crate::error::{invalid_param, invalid_size, Error, Result};
use crate::graph::{Graph, NodeSet};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    White,
}

impl Color {
    pub fn is_blue(self) -> bool {
        self == Color::Blue
    }

    pub fn from_blue(blue: bool) -> Self {
        if blue {
            Color::Blue
        } else {
            Color::White
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Color::Blue => Color::White,
            Color::White => Color::Blue,
        }
    }
}

/// A blue/white coloring of nodes `0..n`, stored as a bit vector (1 = blue)
/// with a cached blue count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    bits: Bits,
    blue: usize,
}

impl Coloring {
    pub fn all_white(n: usize) -> Self {
        Coloring { bits: Bits::zeros(n), blue: 0 }
    }

    pub fn all_blue(n: usize) -> Self {
        Coloring { bits: Bits::ones(n), blue: n }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> bool) -> Self {
        let bits = Bits::from_fn(n, f);
        let blue = bits.count_ones();
        Coloring { bits, blue }
    }

    pub fn from_bools(values: &[bool]) -> Self {
        Coloring::from_fn(values.len(), |i| values[i])
    }

    /// Blue exactly on `set`.
    pub fn from_blue_set(set: &NodeSet) -> Self {
        Coloring::from_fn(set.universe(), |v| set.contains(v))
    }

    /// Decodes a state index (node 0 = least significant bit).
    pub fn from_index(n: usize, index: u64) -> Self {
        let bits = Bits::from_u64(n, index);
        let blue = bits.count_ones();
        Coloring { bits, blue }
    }

    /// State index with node 0 as the least significant bit, for `n <= 64`.
    pub fn to_index(&self) -> Option<u64> {
        self.bits.to_u64()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.len() == 0
    }

    #[inline]
    pub fn is_blue(&self, v: usize) -> bool {
        self.bits.get(v)
    }

    pub fn color(&self, v: usize) -> Color {
        Color::from_blue(self.is_blue(v))
    }

    pub fn set(&mut self, v: usize, color: Color) {
        let was = self.bits.set(v, color.is_blue());
        match (was, color.is_blue()) {
            (false, true) => self.blue += 1,
            (true, false) => self.blue -= 1,
            _ => {}
        }
    }

    pub fn flip(&mut self, v: usize) {
        let c = self.color(v).opposite();
        self.set(v, c);
    }

    pub fn blue_count(&self) -> usize {
        self.blue
    }

    pub fn white_count(&self) -> usize {
        self.len() - self.blue
    }

    pub fn is_monochromatic(&self) -> bool {
        self.blue == 0 || self.blue == self.len()
    }

    pub fn blue_set(&self) -> NodeSet {
        NodeSet::from_fn(self.len(), |v| self.is_blue(v))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(|v| self.is_blue(v))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// `'b'`/`'w'` string of length `n`.
    pub fn to_bw(&self) -> String {
        self.iter().map(|b| if b { 'b' } else { 'w' }).collect()
    }

    /// Parses a `b`/`w` string (case-insensitive).
    pub fn parse_bw(text: &str) -> Result<Self> {
        let values = text
            .trim()
            .chars()
            .map(|ch| match ch {
                'b' | 'B' => Ok(true),
                'w' | 'W' => Ok(false),
                other => Err(Error::Parse(format!("unexpected character {other:?} in coloring"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(Coloring::from_bools(&values))
    }

    /// Parses either a `b`/`w` string or the JSON form `{"n", "blue"}`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            serde_json::from_str(t).map_err(|e| Error::Parse(format!("coloring JSON: {e}")))
        } else {
            Coloring::parse_bw(t)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serialization cannot fail")
    }

    pub(crate) fn check_len(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(invalid_param(format!(
                "coloring has {} nodes but the graph has {}",
                self.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bw())
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring({})", self.to_bw())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoringJson {
    n: usize,
    blue: Vec<usize>,
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ColoringJson { n: self.len(), blue: self.bits.iter_ones().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ColoringJson::deserialize(d)?;
        let set = NodeSet::from_indices(raw.n, raw.blue).map_err(serde::de::Error::custom)?;
        Ok(Coloring::from_blue_set(&set))
    }
}

/// Each node is blue independently with probability `p`: node `i` is blue
/// iff the `i`-th uniform draw of the seeded generator is below `p`.
pub fn p_random_coloring(n: usize, p: f64, seed: u64) -> Result<Coloring> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid_param(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Coloring::from_fn(n, |_| rng.random::<f64>() < p))
}

/// Exactly `k` blue nodes at uniformly random positions.
pub fn exact_density_coloring(n: usize, k: usize, seed: u64) -> Result<Coloring> {
    if k > n {
        return Err(invalid_param(format!("blue count {k} exceeds n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Coloring::all_white(n);
    for v in rand::seq::index::sample(&mut rng, n, k) {
        c.set(v, Color::Blue);
    }
    Ok(c)
}

/// A white run of length 2 (odd `n`) or 3 (even `n`) at the start, followed by
/// an alternating path that begins with blue.
pub fn extreme_tight_coloring(n: usize) -> Result<Coloring> {
    if n < 5 {
        return Err(invalid_size(format!("extreme coloring needs n >= 5, got {n}")));
    }
    let white = if n % 2 == 1 { 2 } else { 3 };
    Ok(Coloring::from_fn(n, |i| i >= white && (i - white) % 2 == 0))
}

/// A blue path of `n - k` nodes followed by an alternating path of `k` nodes
/// that starts and ends white.
pub fn k_alternating_coloring(n: usize, k: usize) -> Result<Coloring> {
    if k % 2 == 0 || k < 5 || k + 4 > n {
        return Err(invalid_param(format!("need odd k with 5 <= k <= n - 4, got n = {n}, k = {k}")));
    }
    let blue = n - k;
    Ok(Coloring::from_fn(n, |i| i < blue || (i - blue) % 2 == 1))
}

/// Whether one application of the model deterministically reproduces `c`.
/// For the random model this additionally requires that no node is tied.
pub fn is_stable(g: &Graph, c: &Coloring, model: Model) -> bool {
    match model {
        Model::Mm => dynamics::mm_step(g, c) == *c,
        Model::Rmm => (0..g.n()).all(|v| {
            let d = g.degree(v);
            let k = g.neighbors(v).iter().filter(|&&u| c.is_blue(u)).count();
            2 * k != d && (2 * k > d) == c.is_blue(v)
        }),
    }
}
