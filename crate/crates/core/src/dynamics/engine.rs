//! Round-by-round engine for arbitrary graphs.
//!
//! Only nodes whose neighbourhood changed in the previous round (plus nodes
//! that were tied, for the random rule) are re-evaluated; all other nodes
//! provably keep their color.

use super::{Outcome, RunOptions, RunResult, TieRng};
use crate::coloring::Coloring;
use crate::graph::Graph;

/// Callback receiving `(round, coloring)`.
pub type Observer<'a> = &'a mut dyn FnMut(u64, &Coloring);

/// How a tied node resolves.
#[derive(Clone, Copy, Debug)]
pub enum TieRule<'a> {
    /// Keep the current color.
    Keep,
    /// Use the counter-based coin.
    Coin(&'a TieRng),
    /// Always take the given color (`true` = blue).
    Constant(bool),
}

struct State {
    colors: Vec<bool>,
    blue: usize,
    /// Number of edges whose endpoints share a color.
    agreeing: usize,
}

impl State {
    fn new(g: &Graph, c0: &Coloring) -> Self {
        let colors = c0.to_bools();
        let agreeing = g.edges().filter(|&(u, v)| colors[u] == colors[v]).count();
        State { blue: c0.blue_count(), colors, agreeing }
    }

    fn flip(&mut self, g: &Graph, v: usize) {
        for &u in g.neighbors(v) {
            if self.colors[u] == self.colors[v] {
                self.agreeing -= 1;
            } else {
                self.agreeing += 1;
            }
        }
        self.colors[v] = !self.colors[v];
        if self.colors[v] {
            self.blue += 1;
        } else {
            self.blue -= 1;
        }
    }

    fn coloring(&self) -> Coloring {
        Coloring::from_bools(&self.colors)
    }
}

/// Runs the dynamics with the given tie rule; see [`super::run`] for the
/// stopping rules. `observer` sees every coloring from round 0 onwards.
pub fn run_general(
    g: &Graph,
    c0: &Coloring,
    rule: TieRule<'_>,
    opts: &RunOptions,
    mut observer: Option<Observer<'_>>,
) -> RunResult {
    let n = g.n();
    let random = matches!(rule, TieRule::Coin(_));
    let is_cycle = random && g.is_cycle();
    let mono_absorbs = random && g.min_degree() > 0;
    // detections that look back one or two rounds may confirm a time up to two
    // rounds after it happened
    let last_round = if is_cycle { opts.max_rounds } else { opts.max_rounds + 2 };

    let mut state = State::new(g, c0);
    let mut blue_counts = opts.record_blue_counts.then(|| vec![state.blue]);
    if let Some(obs) = observer.as_mut() {
        obs(0, c0);
    }

    let finish = |state: &State, t_star: u64, trace_len: u64, outcome: Outcome, partner: Option<Coloring>, counts| {
        RunResult {
            rounds: Some(t_star),
            outcome,
            final_coloring: state.coloring(),
            partner,
            trace_len,
            blue_counts: counts,
        }
    };

    let direct = |state: &State| -> Option<Outcome> {
        if mono_absorbs && (state.blue == 0 || state.blue == n) {
            Some(if state.blue == n { Outcome::Blue } else { Outcome::White })
        } else if is_cycle && state.agreeing == 0 {
            Some(Outcome::Blinking)
        } else {
            None
        }
    };
    if let Some(outcome) = direct(&state) {
        let partner = (outcome == Outcome::Blinking).then(|| complement(&state.colors));
        return finish(&state, 0, 0, outcome, partner, blue_counts);
    }

    let mut candidates: Vec<usize> = (0..n).collect();
    let mut stamp = vec![u64::MAX; n];
    let mut changed: Vec<usize> = Vec::new();
    let mut prev_changed: Vec<usize> = Vec::new();
    let mut tied: Vec<usize> = Vec::new();
    let mut prev_tied_free = false;

    let mut t = 0u64;
    while t < last_round {
        t += 1;
        let key = match rule {
            TieRule::Coin(rng) => Some(rng.round(t)),
            _ => None,
        };
        changed.clear();
        tied.clear();
        for &v in &candidates {
            let d = g.degree(v);
            let k = 2 * g.neighbors(v).iter().filter(|&&u| state.colors[u]).count();
            let new = if k > d {
                true
            } else if k < d {
                false
            } else {
                tied.push(v);
                match rule {
                    TieRule::Keep => state.colors[v],
                    TieRule::Constant(c) => c,
                    TieRule::Coin(_) => key.as_ref().is_some_and(|k| k.coin(v)),
                }
            };
            if new != state.colors[v] {
                changed.push(v);
            }
        }
        changed.sort_unstable();
        for &v in &changed {
            state.flip(g, v);
        }
        if let Some(c) = blue_counts.as_mut() {
            c.push(state.blue);
        }
        if let Some(obs) = observer.as_mut() {
            obs(t, &state.coloring());
        }

        let tie_free = !random || tied.is_empty();
        if let Some(outcome) = direct(&state) {
            if t > opts.max_rounds {
                break;
            }
            let partner = (outcome == Outcome::Blinking).then(|| complement(&state.colors));
            return finish(&state, t, t, outcome, partner, blue_counts);
        }
        if changed.is_empty() && tie_free {
            let t_star = t - 1;
            if t_star > opts.max_rounds {
                break;
            }
            let outcome = match (random, state.blue) {
                (true, 0) => Outcome::White,
                (true, b) if b == n => Outcome::Blue,
                _ => Outcome::FixedColoring,
            };
            return finish(&state, t_star, t, outcome, None, blue_counts);
        }
        if t >= 2 && tie_free && prev_tied_free && changed == prev_changed {
            let t_star = t - 2;
            if t_star > opts.max_rounds {
                break;
            }
            let mut partner = state.colors.clone();
            for &v in &changed {
                partner[v] = !partner[v];
            }
            return finish(&state, t_star, t, Outcome::PeriodTwoCycle, Some(Coloring::from_bools(&partner)), blue_counts);
        }
        prev_tied_free = tie_free;

        // next round's candidates: changed nodes, their neighbours, and tied
        // nodes whose coin is drawn afresh
        let mut next = Vec::with_capacity(changed.len() * 3 + tied.len());
        let mut push = |v: usize, next: &mut Vec<usize>| {
            if stamp[v] != t {
                stamp[v] = t;
                next.push(v);
            }
        };
        for &v in &changed {
            push(v, &mut next);
            for &u in g.neighbors(v) {
                push(u, &mut next);
            }
        }
        if random {
            for &v in &tied {
                push(v, &mut next);
            }
        }
        candidates = next;
        std::mem::swap(&mut changed, &mut prev_changed);
    }

    let outcome = if random && !is_cycle { Outcome::Undetermined } else { Outcome::CapExceeded };
    RunResult {
        rounds: None,
        outcome,
        final_coloring: state.coloring(),
        partner: None,
        trace_len: t,
        blue_counts,
    }
}

fn complement(colors: &[bool]) -> Coloring {
    Coloring::from_fn(colors.len(), |v| !colors[v])
}
