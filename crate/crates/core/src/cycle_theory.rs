//! Closed-form predictions for the cycle.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::coloring::{k_alternating_coloring, longest_alternating_run, Coloring};
use crate::dynamics::Model;
use crate::error::{invalid_param, invalid_size, Result};
use crate::graph::NodeSet;

/// The golden ratio.
pub const PHI: f64 = 1.618_033_988_749_895;

/// Rounds the deterministic model needs from `c`: half the longest
/// alternating path, rounded up.
pub fn predicted_mm_stabilization(c: &Coloring) -> Result<u64> {
    Ok(longest_alternating_run(c)?.div_ceil(2) as u64)
}

/// Number of colorings of `C_n` without a solitary node (every maximal
/// monochromatic run, read cyclically, has at least two nodes).
pub fn stable_count_exact(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(invalid_size(format!("a cycle needs at least 3 nodes, got {n}")));
    }
    // compositions of m into parts >= 2, split by parity of the number of parts
    let mut even = vec![BigUint::zero(); n + 1];
    let mut odd = vec![BigUint::zero(); n + 1];
    even[0] = BigUint::one();
    for m in 2..=n {
        let (mut e, mut o) = (BigUint::zero(), BigUint::zero());
        for part in 2..=m {
            e += &odd[m - part];
            o += &even[m - part];
        }
        even[m] = e;
        odd[m] = o;
    }
    // a non-monochromatic coloring has an even number >= 2 of runs; fix the
    // run through node 0 (length L, L placements, 2 colors) and split the
    // rest into an odd number of runs
    let mut total = BigUint::from(2u32);
    for len in 2..=n.saturating_sub(2) {
        total += BigUint::from(2 * len) * &odd[n - len];
    }
    Ok(total)
}

/// Number of green/red paths on `n` nodes with no two adjacent red nodes
/// and an even number of red nodes, from the recursion
/// `p(n) = p(n-1) + p(n-4) + p(n-5) + ... + p(1) + 2` for `n >= 5`.
pub fn stable_count_path_recursion(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(invalid_size("paths need at least one node"));
    }
    let mut p: Vec<BigUint> = vec![BigUint::zero()];
    for m in 1..=n.min(4) {
        p.push(BigUint::from(red_green_paths_brute_force(m)));
    }
    for m in 5..=n {
        let mut next = &p[m - 1] + BigUint::from(2u32);
        for earlier in &p[1..=m - 4] {
            next += earlier;
        }
        p.push(next);
    }
    Ok(p.swap_remove(n))
}

fn red_green_paths_brute_force(m: usize) -> u64 {
    (0u32..1 << m).filter(|&red| red & (red >> 1) == 0 && red.count_ones() % 2 == 0).count() as u64
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("finite").ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// `stable_count_exact(n) / PHI^n`.
pub fn stable_count_phi_ratio(n: usize) -> Result<f64> {
    let s = stable_count_exact(n)?;
    Ok((ln_big(&s) - n as f64 * PHI.ln()).exp())
}

/// Predicted final blue fraction of the deterministic model on a long cycle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityPrediction {
    pub p: f64,
    pub p_final: f64,
}

fn final_density_upper(p: f64) -> f64 {
    (2.0 * p * p - p * p * p) / (1.0 - p + p * p)
}

/// Final blue fraction from a `p`-random coloring: `(2p^2 - p^3) / (1 - p + p^2)`
/// for `p >= 1/2`, extended to `p < 1/2` by color symmetry.
pub fn predicted_final_density(p: f64) -> Result<DensityPrediction> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid_param(format!("probability {p} outside [0, 1]")));
    }
    let p_final = if p >= 0.5 { final_density_upper(p) } else { 1.0 - final_density_upper(1.0 - p) };
    Ok(DensityPrediction { p, p_final })
}

/// Finite-`n` series for the final blue fraction: the monochromatic term
/// plus the contributions of odd and of even alternating paths of length
/// up to `n - 4`.
pub fn eq1_series(p: f64, n: usize) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid_param(format!("probability {p} outside (0, 1)")));
    }
    if n < 9 {
        return Err(invalid_size(format!("the series needs n >= 9, got {n}")));
    }
    let q = 1.0 - p;
    let mut odd = 0.0;
    let mut even = 0.0;
    for k in 1..=n - 4 {
        let kf = k as f64;
        if k % 2 == 1 {
            odd += kf * p.powi((k / 2) as i32) * q.powi(k.div_ceil(2) as i32);
        } else {
            even += kf * (p * q).powi((k / 2) as i32);
        }
    }
    Ok((2.0 * p * p - p * p * p) + p.powi(4) * odd + p * p * q * q * even)
}

/// Minimum winning set of `C_n` with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWinningSet {
    pub size: usize,
    pub witness: NodeSet,
}

/// Deterministic model: `floor(n/2) + 1`, witnessed by node 0 and every odd
/// node. Random model: only the full node set wins.
pub fn min_winning_size_cycle(n: usize, model: Model) -> Result<CycleWinningSet> {
    if n < 3 {
        return Err(invalid_size(format!("a cycle needs at least 3 nodes, got {n}")));
    }
    let witness = match model {
        Model::Mm => NodeSet::from_fn(n, |v| v == 0 || v % 2 == 1),
        Model::Rmm => NodeSet::full(n),
    };
    Ok(CycleWinningSet { size: witness.count(), witness })
}

/// Final-state probabilities of the random model on `C_n` from `b0` blue nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AbsorptionPrediction {
    pub blue: f64,
    pub white: f64,
    pub blinking: f64,
}

/// With `p = b0 / n`: `(p, 1 - p, 0)` on odd cycles and
/// `(p^2, (1 - p)^2, 2p(1 - p))` on even ones.
pub fn absorption_probabilities(n: usize, b0: usize) -> Result<AbsorptionPrediction> {
    if n < 3 {
        return Err(invalid_size(format!("a cycle needs at least 3 nodes, got {n}")));
    }
    if b0 > n {
        return Err(invalid_param(format!("{b0} blue nodes on a cycle of {n}")));
    }
    let p = b0 as f64 / n as f64;
    Ok(if n % 2 == 1 {
        AbsorptionPrediction { blue: p, white: 1.0 - p, blinking: 0.0 }
    } else {
        AbsorptionPrediction { blue: p * p, white: (1.0 - p) * (1.0 - p), blinking: 2.0 * p * (1.0 - p) }
    })
}

/// Alternating-path lengths `(l, l')` behind the slow random-model start on
/// `C_n`: `l = n - 4` and `l'` the odd integer closest to `l / 2`.
pub fn quadratic_witness_lengths(n: usize) -> Result<(usize, usize)> {
    if n < 13 || n % 2 == 0 {
        return Err(invalid_param(format!("the slow start needs an odd n >= 13, got {n}")));
    }
    let l = n - 4;
    let half = (l - 1) / 2;
    let l_prime = if half % 2 == 1 { half } else { half + 1 };
    Ok((l, l_prime))
}

/// The `l'`-alternating coloring of `C_n`, from which the random model needs
/// quadratically many rounds in expectation.
pub fn rmm_quadratic_witness(n: usize) -> Result<Coloring> {
    let (_, l_prime) = quadratic_witness_lengths(n)?;
    k_alternating_coloring(n, l_prime)
}

/// Lower bound `2 a (b - a)` on the expected rounds from
/// [`rmm_quadratic_witness`], with `a = (l' - 5) / 2` and `b = (l - 5) / 2`.
pub fn rmm_quadratic_lower_bound(n: usize) -> Result<f64> {
    let (l, l_prime) = quadratic_witness_lengths(n)?;
    let a = ((l_prime - 5) / 2) as f64;
    let b = ((l - 5) / 2) as f64;
    Ok(2.0 * a * (b - a))
}
