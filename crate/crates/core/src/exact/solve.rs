//! Block-triangular solve of `x = cost + P x` over the components of a chain.

use nalgebra::{DMatrix, DVector};

use super::markov::Chain;
use super::scc::Sccs;
use crate::error::{Error, Result};

/// Blocks up to this many unknowns are solved by dense LU.
pub const DENSE_BLOCK_LIMIT: usize = 1024;
/// Largest accepted scaled residual `|r_i| / (1 + |x_i|)`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
const MAX_SWEEPS: usize = 200_000;
const NO_LOCAL: u32 = u32::MAX;

/// Solution of a block solve.
#[derive(Clone, Debug)]
pub struct Solution {
    pub values: Vec<f64>,
    /// Largest scaled residual over all solved blocks.
    pub residual: f64,
}

/// Solves `x(s) = cost + sum_t P(s, t) x(t)` for every state without a
/// prescribed value. `sccs` must be the components of the graph in which
/// the fixed states have no outgoing edges (or are closed already).
///
/// Unknowns in a closed block get 0 when `cost` is 0 and infinity
/// otherwise; with positive cost, any block that can reach an infinite
/// value is infinite as well.
pub fn solve_by_blocks(
    chain: &Chain,
    sccs: &Sccs,
    fixed: &dyn Fn(u32) -> Option<f64>,
    cost: f64,
) -> Result<Solution> {
    let num = chain.num_states();
    let mut values = vec![f64::NAN; num];
    let mut local = vec![NO_LOCAL; num];
    let mut residual = 0f64;

    for members in &sccs.members {
        let mut unknowns = Vec::with_capacity(members.len());
        for &s in members {
            match fixed(s) {
                Some(v) => values[s as usize] = v,
                None => unknowns.push(s),
            }
        }
        if unknowns.is_empty() {
            continue;
        }
        for (i, &s) in unknowns.iter().enumerate() {
            local[s as usize] = i as u32;
        }

        let mut closed = true;
        let mut reaches_infinity = false;
        for &s in &unknowns {
            for t in chain.successors(s) {
                if sccs.component[t as usize] != sccs.component[s as usize] {
                    closed = false;
                    reaches_infinity |= values[t as usize].is_infinite();
                }
            }
        }

        if closed || (cost > 0.0 && reaches_infinity) {
            let v = if cost == 0.0 && !reaches_infinity { 0.0 } else { f64::INFINITY };
            for &s in &unknowns {
                values[s as usize] = v;
            }
        } else {
            let block = if unknowns.len() <= DENSE_BLOCK_LIMIT {
                dense_block(chain, &unknowns, &local, &values, cost)
            } else {
                gauss_seidel_block(chain, &unknowns, &local, &values, cost)
            };
            for (&s, &v) in unknowns.iter().zip(&block) {
                values[s as usize] = v;
            }
            let r = block_residual(chain, &unknowns, &values, cost);
            residual = residual.max(r);
            if r >= RESIDUAL_TOLERANCE {
                return Err(Error::NotConverged { residual: r });
            }
        }
        for &s in &unknowns {
            local[s as usize] = NO_LOCAL;
        }
    }
    Ok(Solution { values, residual })
}

/// Constant part and coefficients of unknown `s`: returns `(b, self_prob)`
/// and calls `inner(j, p)` for every transition to another unknown.
fn split_row(
    chain: &Chain,
    s: u32,
    local: &[u32],
    values: &[f64],
    cost: f64,
    mut inner: impl FnMut(usize, f64),
) -> (f64, f64) {
    let p = chain.step_probability(s);
    let mut b = cost;
    let mut self_prob = 0.0;
    for t in chain.successors(s) {
        if t == s {
            self_prob += p;
        } else if local[t as usize] != NO_LOCAL {
            inner(local[t as usize] as usize, p);
        } else {
            b += p * values[t as usize];
        }
    }
    (b, self_prob)
}

fn dense_block(chain: &Chain, unknowns: &[u32], local: &[u32], values: &[f64], cost: f64) -> Vec<f64> {
    let m = unknowns.len();
    let mut a = DMatrix::<f64>::identity(m, m);
    let mut rhs = DVector::<f64>::zeros(m);
    for (i, &s) in unknowns.iter().enumerate() {
        let (b, self_prob) = split_row(chain, s, local, values, cost, |j, p| a[(i, j)] -= p);
        a[(i, i)] -= self_prob;
        rhs[i] = b;
    }
    match a.lu().solve(&rhs) {
        Some(x) => x.iter().copied().collect(),
        None => vec![f64::INFINITY; m],
    }
}

fn gauss_seidel_block(chain: &Chain, unknowns: &[u32], local: &[u32], values: &[f64], cost: f64) -> Vec<f64> {
    let m = unknowns.len();
    let mut rows: Vec<(f64, f64)> = Vec::with_capacity(m);
    for &s in unknowns {
        rows.push(split_row(chain, s, local, values, cost, |_, _| {}));
    }
    let mut x = vec![0f64; m];
    for _ in 0..MAX_SWEEPS {
        let mut change = 0f64;
        for (i, &s) in unknowns.iter().enumerate() {
            let p = chain.step_probability(s);
            let mut acc = rows[i].0;
            for t in chain.successors(s) {
                let j = local[t as usize];
                if j != NO_LOCAL && t != s {
                    acc += p * x[j as usize];
                }
            }
            let new = acc / (1.0 - rows[i].1);
            change = change.max((new - x[i]).abs() / (1.0 + new.abs()));
            x[i] = new;
        }
        if change < RESIDUAL_TOLERANCE * 1e-3 {
            break;
        }
    }
    x
}

fn block_residual(chain: &Chain, unknowns: &[u32], values: &[f64], cost: f64) -> f64 {
    let mut worst = 0f64;
    for &s in unknowns {
        let p = chain.step_probability(s);
        let rhs: f64 = cost + chain.successors(s).map(|t| p * values[t as usize]).sum::<f64>();
        let x = values[s as usize];
        worst = worst.max((x - rhs).abs() / (1.0 + x.abs()));
    }
    worst
}
