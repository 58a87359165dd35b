use crate::error::{invalid_param, Result};
use crate::seeds::{derive_seed, mix64};

/// Counter-based source of tie-breaking coins.
///
/// The coin for `(round, node)` is a pure function of the seed, the round and
/// the node, so every scheduler that asks for the same pair sees the same bit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TieRng {
    seed: u64,
    bias: f64,
}

/// Coins of a single round.
#[derive(Clone, Copy, Debug)]
pub struct RoundKey {
    key: u64,
    bias: f64,
}

impl TieRng {
    /// Fair coins.
    pub fn new(seed: u64) -> Self {
        TieRng { seed, bias: 0.5 }
    }

    /// Coins that come up blue with probability `q`.
    pub fn with_bias(seed: u64, q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(invalid_param(format!("tie bias {q} outside [0, 1]")));
        }
        Ok(TieRng { seed, bias: q })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn is_fair(&self) -> bool {
        self.bias == 0.5
    }

    #[inline]
    pub fn round(&self, round: u64) -> RoundKey {
        RoundKey { key: derive_seed(self.seed, &[round]), bias: self.bias }
    }

    /// Whether a node tied in `round` turns blue.
    #[inline]
    pub fn coin(&self, round: u64, node: usize) -> bool {
        self.round(round).coin(node)
    }
}

impl RoundKey {
    #[inline]
    pub fn coin(&self, node: usize) -> bool {
        let h = mix64(self.key ^ (node as u64).wrapping_mul(0xd6e8_feb8_6659_fd93));
        ((h >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < self.bias
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_and_balanced() {
        let rng = TieRng::new(42);
        assert_eq!(rng.coin(3, 7), rng.coin(3, 7));
        assert_eq!(rng.coin(3, 7), rng.round(3).coin(7));
        let heads = (0..10_000u64).filter(|&s| TieRng::new(s).coin(1, 0)).count() as f64;
        assert!((heads - 5000.0).abs() < 3.0 * 50.0);
        let per_node = (0..10_000).filter(|&v| rng.coin(9, v)).count() as f64;
        assert!((per_node - 5000.0).abs() < 3.0 * 50.0);
    }

    #[test]
    fn bias_extremes() {
        let never = TieRng::with_bias(1, 0.0).unwrap();
        let always = TieRng::with_bias(1, 1.0).unwrap();
        assert!((0..1000).all(|v| !never.coin(0, v) && always.coin(0, v)));
        assert!(TieRng::with_bias(1, 1.5).is_err());
        let q = TieRng::with_bias(5, 0.2).unwrap();
        let blue = (0..20_000).filter(|&v| q.coin(2, v)).count() as f64 / 20_000.0;
        assert!((blue - 0.2).abs() < 0.01);
    }
}
