//! Random model on `make_cycle(n)`, tracked as a list of monochromatic runs.
//!
//! In one round every node inside an alternating gap flips, every run end is
//! tied and draws a coin, and run interiors stay put. A round therefore costs
//! time proportional to the number of runs, and the gaps' endpoints move like
//! independent ±1 walks as long as runs stay long. When every run has at
//! least `2K + 2` nodes (and every gap between same-colored runs has at least
//! `2K + 1`), `K` rounds can be sampled at once from binomial displacements.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Outcome, RoundKey, RunOptions, RunResult, TieRng};
use crate::coloring::{path_partition, Coloring, Partition};
use crate::seeds::derive_seed;

/// Shortest jump worth taking instead of a single explicit round.
const MIN_JUMP: u64 = 2;
const JUMP_STREAM: u64 = 0x6a75_6d70;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Run {
    start: usize,
    len: usize,
    blue: bool,
}

#[derive(Clone, Copy, Debug)]
enum Seg {
    /// `len` consecutive nodes of one color.
    Const { blue: bool, len: usize },
    /// Nodes that alternate with both neighbours.
    Singles,
}

enum Status {
    Active,
    Mono(bool),
    /// Alternating coloring, described by one node and its color.
    Alternating { node: usize, blue: bool },
}

struct CycleState {
    n: usize,
    runs: Vec<Run>,
    blue: usize,
    status: Status,
    segs: Vec<(usize, Seg)>,
    merged: Vec<(usize, Seg)>,
}

impl CycleState {
    fn gap(&self, i: usize) -> usize {
        let n = self.n;
        let r = self.runs[i];
        let next = self.runs[(i + 1) % self.runs.len()];
        (next.start + n - (r.start + r.len) % n) % n
    }

    fn gap_blue(run_blue: bool, a: usize) -> usize {
        // gap nodes start with the color opposite to the run they follow
        if run_blue {
            a / 2
        } else {
            a.div_ceil(2)
        }
    }

    fn recount_blue(&mut self) {
        let mut blue = 0;
        for i in 0..self.runs.len() {
            let r = self.runs[i];
            if r.blue {
                blue += r.len;
            }
            blue += Self::gap_blue(r.blue, self.gap(i));
        }
        self.blue = blue;
    }

    /// Exact round using the per-node coins of `key`.
    fn explicit_step(&mut self, key: &RoundKey) {
        let n = self.n;
        let m = self.runs.len();
        let p0 = (self.runs[0].start + 1) % n;
        self.segs.clear();
        let mut off = 0usize;
        let mut blue = 0usize;
        let mut push = |segs: &mut Vec<(usize, Seg)>, seg: Seg, blue_in: usize, len: usize| {
            segs.push((off, seg));
            off += len;
            blue += blue_in;
        };
        for i in 0..m {
            let r = self.runs[i];
            let next = self.runs[(i + 1) % m];
            if r.len > 2 {
                let len = r.len - 2;
                push(&mut self.segs, Seg::Const { blue: r.blue, len }, if r.blue { len } else { 0 }, len);
            }
            let end = (r.start + r.len - 1) % n;
            let x = key.coin(end);
            push(&mut self.segs, Seg::Const { blue: x, len: 1 }, x as usize, 1);
            let a = self.gap(i);
            if a >= 1 {
                // flipped gap: first node takes the run's color, then alternates
                push(&mut self.segs, Seg::Const { blue: r.blue, len: 1 }, r.blue as usize, 1);
            }
            if a >= 3 {
                let s = a - 2;
                let first_blue = !r.blue;
                let b = if first_blue { s.div_ceil(2) } else { s / 2 };
                push(&mut self.segs, Seg::Singles, b, s);
            }
            if a >= 2 {
                let last = if (a - 1) % 2 == 0 { r.blue } else { !r.blue };
                push(&mut self.segs, Seg::Const { blue: last, len: 1 }, last as usize, 1);
            }
            let y = key.coin(next.start);
            push(&mut self.segs, Seg::Const { blue: y, len: 1 }, y as usize, 1);
        }
        debug_assert_eq!(off, n);
        self.blue = blue;

        self.merged.clear();
        for &(o, seg) in &self.segs {
            match (self.merged.last_mut(), seg) {
                (Some((_, Seg::Const { blue: b0, len: l0 })), Seg::Const { blue, len }) if *b0 == blue => {
                    *l0 += len;
                }
                _ => self.merged.push((o, seg)),
            }
        }
        if self.merged.len() > 1 {
            if let (Seg::Const { blue: bf, len: lf }, (_, Seg::Const { blue: bl, len: ll })) =
                (self.merged[0].1, self.merged.last_mut().expect("non-empty"))
            {
                if bf == *bl {
                    *ll += lf;
                    self.merged.remove(0);
                }
            }
        }

        self.runs.clear();
        let mut reference = None;
        for &(o, seg) in &self.merged {
            if let Seg::Const { blue, len } = seg {
                if len >= 2 {
                    self.runs.push(Run { start: (p0 + o) % n, len, blue });
                } else if reference.is_none() {
                    reference = Some(((p0 + o) % n, blue));
                }
            }
        }
        self.status = match (self.runs.as_slice(), reference) {
            ([only], _) if only.len == n => Status::Mono(only.blue),
            ([], Some((node, blue))) => Status::Alternating { node, blue },
            ([], None) => unreachable!("every region contains a coin node"),
            _ => Status::Active,
        };
    }

    /// Largest jump that cannot produce an interaction between boundaries.
    fn safe_jump(&self) -> u64 {
        let mut k = u64::MAX;
        for i in 0..self.runs.len() {
            let r = self.runs[i];
            k = k.min(((r.len - 2) / 2) as u64);
            let next = self.runs[(i + 1) % self.runs.len()];
            if next.blue == r.blue {
                k = k.min(((self.gap(i) - 1) / 2) as u64);
            }
        }
        k
    }

    /// Advances `k` rounds at once; requires `k <= safe_jump()` and fair coins.
    fn jump(&mut self, k: u64, rng: &mut ChaCha8Rng) {
        let n = self.n as i64;
        let m = self.runs.len();
        let mut shift_left = vec![0i64; m];
        let mut shift_right = vec![0i64; m];
        for i in 0..m {
            let r = self.runs[i];
            let next = self.runs[(i + 1) % m];
            let a = self.gap(i) as i64;
            // each round both endpoints move by ±1; "parallel" moves shift the
            // gap, "opposite" moves resize it
            let parallel = binomial_half(rng, k);
            let right = binomial_half(rng, parallel) as i64;
            let shift = 2 * right - parallel as i64;
            let opposite = k - parallel;
            let grow = binomial_half(rng, opposite) as i64;
            let walk = 2 * grow - opposite as i64;
            let resize = if r.blue != next.blue {
                // an empty gap between opposite runs cannot shrink further;
                // folding the free walk at -1/2 reproduces that stickiness
                let j = a / 2;
                let free = j + walk;
                let folded = if free >= 0 { free } else { -free - 1 };
                folded - j
            } else {
                walk
            };
            shift_left[i] = shift - resize;
            shift_right[i] = shift + resize;
        }
        for (i, r) in self.runs.iter_mut().enumerate() {
            let prev = (i + m - 1) % m;
            let len = r.len as i64 + shift_left[i] - shift_right[prev];
            debug_assert!(len >= 2);
            r.len = len as usize;
            r.start = (r.start as i64 + shift_right[prev]).rem_euclid(n) as usize;
        }
        self.recount_blue();
    }

    fn coloring(&self) -> Coloring {
        let n = self.n;
        match self.status {
            Status::Mono(b) => {
                if b {
                    Coloring::all_blue(n)
                } else {
                    Coloring::all_white(n)
                }
            }
            Status::Alternating { node, blue } => {
                Coloring::from_fn(n, |v| ((v + n - node) % 2 == 0) == blue)
            }
            Status::Active => {
                let mut values = vec![false; n];
                for i in 0..self.runs.len() {
                    let r = self.runs[i];
                    for k in 0..r.len {
                        values[(r.start + k) % n] = r.blue;
                    }
                    let gap_start = r.start + r.len;
                    for k in 0..self.gap(i) {
                        values[(gap_start + k) % n] = (k % 2 == 0) != r.blue;
                    }
                }
                Coloring::from_bools(&values)
            }
        }
    }
}

fn binomial_half(rng: &mut ChaCha8Rng, trials: u64) -> u64 {
    let mut left = trials;
    let mut count = 0u64;
    while left >= 64 {
        count += rng.next_u64().count_ones() as u64;
        left -= 64;
    }
    if left > 0 {
        count += (rng.next_u64() & ((1u64 << left) - 1)).count_ones() as u64;
    }
    count
}

/// Random model on the canonical cycle of `c0.len()` nodes.
///
/// Stops at a monochromatic or alternating coloring. With
/// `opts.accelerate` (and fair coins, and no blue-count recording) safe
/// stretches of rounds are sampled in one go from a stream derived from the
/// tie seed; otherwise every round uses the per-node coins of `rng` and the
/// trajectory matches [`super::run_general`] exactly.
pub fn run_cycle_rmm(c0: &Coloring, rng: &TieRng, opts: &RunOptions) -> RunResult {
    let n = c0.len();
    let done = |rounds: Option<u64>, outcome, final_coloring: Coloring, trace_len, counts| {
        let partner = (outcome == Outcome::Blinking)
            .then(|| Coloring::from_fn(final_coloring.len(), |v| !final_coloring.is_blue(v)));
        RunResult { rounds, outcome, final_coloring, partner, trace_len, blue_counts: counts }
    };
    let mut counts = opts.record_blue_counts.then(|| vec![c0.blue_count()]);
    let runs = match path_partition(c0) {
        Partition::Alternating => return done(Some(0), Outcome::Blinking, c0.clone(), 0, counts),
        Partition::Paths(p) if c0.is_monochromatic() => {
            let outcome = if p.mono_runs()[0].color.is_blue() { Outcome::Blue } else { Outcome::White };
            return done(Some(0), outcome, c0.clone(), 0, counts);
        }
        Partition::Paths(p) => p
            .mono_runs()
            .iter()
            .map(|r| Run { start: r.start, len: r.len, blue: r.color.is_blue() })
            .collect::<Vec<_>>(),
    };
    let mut state = CycleState {
        n,
        runs,
        blue: c0.blue_count(),
        status: Status::Active,
        segs: Vec::new(),
        merged: Vec::new(),
    };
    let accelerate = opts.accelerate && rng.is_fair() && counts.is_none();
    let mut jump_rng = ChaCha8Rng::seed_from_u64(derive_seed(rng.seed(), &[JUMP_STREAM]));

    let mut t = 0u64;
    while t < opts.max_rounds {
        let k = if accelerate { state.safe_jump().min(opts.max_rounds - t) } else { 0 };
        if k >= MIN_JUMP {
            state.jump(k, &mut jump_rng);
            t += k;
            continue;
        }
        t += 1;
        state.explicit_step(&rng.round(t));
        if let Some(c) = counts.as_mut() {
            c.push(state.blue);
        }
        match state.status {
            Status::Active => {}
            Status::Mono(b) => {
                let outcome = if b { Outcome::Blue } else { Outcome::White };
                return done(Some(t), outcome, state.coloring(), t, counts);
            }
            Status::Alternating { .. } => return done(Some(t), Outcome::Blinking, state.coloring(), t, counts),
        }
    }
    done(None, Outcome::CapExceeded, state.coloring(), t, counts)
}
