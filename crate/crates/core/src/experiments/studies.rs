use super::config::{ExperimentConfig, Family, InitialColoring};
use super::{fitted_exponent, num, summarize, Table};
use crate::coloring::{exact_density_coloring, extreme_tight_coloring, p_random_coloring};
use crate::cycle_theory::{predicted_final_density, rmm_quadratic_lower_bound, rmm_quadratic_witness, stable_count_exact, PHI};
use crate::dynamics::{default_mm_cap, run, run_cycle_rmm, Model, Outcome, RunOptions, TieRng};
use crate::error::Result;
use crate::exact::{enumerate_stable_colorings, expected_stabilization_exact, DEFAULT_MARKOV_CAP};
use crate::graph::{make_cycle, Graph};
use crate::par;
use crate::seeds::derive_seed;

const GRAPH_STREAM: u64 = 1;
const COLORING_STREAM: u64 = 2;
const TIE_STREAM: u64 = 3;
/// Round cap of the random model on cycles (absorption is certain).
const RMM_CYCLE_CAP: u64 = 1 << 40;
/// Round cap of the random model elsewhere, per node.
const RMM_GENERAL_CAP_PER_NODE: u64 = 20;

fn stream(master: u64, point: u64, trial: u64, stream: u64) -> u64 {
    derive_seed(derive_seed(master, &[point, trial]), &[stream])
}

/// Either one graph for all trials or a fresh graph per trial.
enum Graphs {
    Fixed(Graph),
    PerTrial(Family, usize),
}

impl Graphs {
    fn new(family: Family, n: usize) -> Result<Self> {
        Ok(if family.is_fixed() { Graphs::Fixed(family.build(n, 0)?) } else { Graphs::PerTrial(family, n) })
    }

    fn get(&self, seed: u64) -> Result<std::borrow::Cow<'_, Graph>> {
        Ok(match self {
            Graphs::Fixed(g) => std::borrow::Cow::Borrowed(g),
            Graphs::PerTrial(family, n) => std::borrow::Cow::Owned(family.build(*n, seed)?),
        })
    }
}

fn collect<T: Send>(trials: u64, f: impl Fn(u64) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    par::map_range(trials as usize, |i| f(i as u64)).into_iter().collect()
}

fn trial_count(cfg: &ExperimentConfig, family: Family) -> u64 {
    if family.is_fixed() {
        1
    } else {
        cfg.trials
    }
}

/// Deterministic-model stabilization time from the extreme coloring.
pub fn fig2_left(cfg: &ExperimentConfig) -> Result<Table> {
    let mut table = Table::new(&[
        "family", "n", "trials", "seed", "point", "mean_rounds", "stderr", "min_rounds", "max_rounds", "cap_exceeded",
        "cycle_bound",
    ]);
    let mut point = 0u64;
    for family in cfg.families() {
        for n in cfg.sizes() {
            let graphs = Graphs::new(family, n)?;
            let trials = trial_count(cfg, family);
            let c0 = extreme_tight_coloring(n)?;
            let results = collect(trials, |t| {
                let g = graphs.get(stream(cfg.seed, point, t, GRAPH_STREAM))?;
                let cap = cfg.max_rounds.unwrap_or_else(|| default_mm_cap(&g));
                Ok(run(Model::Mm, &g, &c0, cap, None)?.rounds)
            })?;
            let rounds: Vec<f64> = results.iter().flatten().map(|&r| r as f64).collect();
            let capped = results.iter().filter(|r| r.is_none()).count();
            let s = summarize(&rounds);
            table.push(vec![
                family.as_str().into(),
                n.to_string(),
                trials.to_string(),
                cfg.seed.to_string(),
                point.to_string(),
                num(s.mean),
                num(s.stderr),
                num(s.min),
                num(s.max),
                capped.to_string(),
                (n.div_ceil(2) - 1).to_string(),
            ]);
            point += 1;
        }
    }
    Ok(table)
}

/// Number of stable colorings of the deterministic model.
pub fn fig2_middle(cfg: &ExperimentConfig) -> Result<Table> {
    let mut table = Table::new(&[
        "family", "n", "trials", "seed", "point", "mean_count", "stderr", "min_count", "max_count", "phi_power",
        "cycle_exact",
    ]);
    let mut point = 0u64;
    for family in cfg.families() {
        for n in cfg.sizes() {
            let graphs = Graphs::new(family, n)?;
            let trials = trial_count(cfg, family);
            // the enumeration itself is parallel; trials run one after another
            let counts = (0..trials)
                .map(|t| {
                    let g = graphs.get(stream(cfg.seed, point, t, GRAPH_STREAM))?;
                    Ok(enumerate_stable_colorings(&g, Model::Mm)? as f64)
                })
                .collect::<Result<Vec<f64>>>()?;
            let s = summarize(&counts);
            let exact = if family == Family::Cycle { stable_count_exact(n)?.to_string() } else { String::new() };
            table.push(vec![
                family.as_str().into(),
                n.to_string(),
                trials.to_string(),
                cfg.seed.to_string(),
                point.to_string(),
                num(s.mean),
                num(s.stderr),
                num(s.min),
                num(s.max),
                num(PHI.powi(n as i32)),
                exact,
            ]);
            point += 1;
        }
    }
    Ok(table)
}

struct FinalState {
    ratio: f64,
    outcome: Outcome,
    rounds: Option<u64>,
}

/// Final blue fraction from a `p`-random (or exact-density) coloring.
pub fn fig2_right(cfg: &ExperimentConfig) -> Result<Table> {
    let mut table = Table::new(&[
        "family", "model", "n", "p", "trials", "seed", "point", "mean_final_ratio", "stderr", "min_ratio",
        "max_ratio", "predicted", "frac_blue", "frac_white", "frac_blinking", "frac_unsettled", "mean_rounds",
        "frac_within_8log2n",
    ]);
    let initial = cfg.initial.unwrap_or(InitialColoring::PRandom);
    let mut point = 0u64;
    for n in cfg.sizes() {
        for family in cfg.families() {
            let graphs = Graphs::new(family, n)?;
            for model in cfg.models() {
                for p in cfg.p_values() {
                    let results = collect(cfg.trials, |t| {
                        let g = graphs.get(stream(cfg.seed, point, t, GRAPH_STREAM))?;
                        let cseed = stream(cfg.seed, point, t, COLORING_STREAM);
                        let c0 = match initial {
                            InitialColoring::PRandom => p_random_coloring(n, p, cseed)?,
                            InitialColoring::ExactDensity => {
                                exact_density_coloring(n, (p * n as f64).round() as usize, cseed)?
                            }
                        };
                        let rng = TieRng::new(stream(cfg.seed, point, t, TIE_STREAM));
                        let cap = cfg.max_rounds.unwrap_or(match model {
                            Model::Mm => default_mm_cap(&g),
                            Model::Rmm if g.is_cycle() => RMM_CYCLE_CAP,
                            Model::Rmm => RMM_GENERAL_CAP_PER_NODE * n as u64,
                        });
                        let r = run(model, &g, &c0, cap, Some(&rng))?;
                        Ok(FinalState {
                            ratio: r.final_coloring.blue_count() as f64 / n as f64,
                            outcome: r.outcome,
                            rounds: r.rounds,
                        })
                    })?;
                    let ratios: Vec<f64> = results.iter().map(|r| r.ratio).collect();
                    let s = summarize(&ratios);
                    let k = results.len() as f64;
                    let mono = |blue: bool| {
                        results.iter().filter(|r| r.outcome.is_settled() && r.ratio == if blue { 1.0 } else { 0.0 }).count()
                            as f64
                            / k
                    };
                    let frac = |o: Outcome| results.iter().filter(|r| r.outcome == o).count() as f64 / k;
                    let unsettled = results.iter().filter(|r| !r.outcome.is_settled()).count() as f64 / k;
                    let rounds: Vec<f64> = results.iter().filter_map(|r| r.rounds.map(|x| x as f64)).collect();
                    let bound = 8.0 * (n as f64).log2();
                    let within = results.iter().filter(|r| r.rounds.is_some_and(|x| x as f64 <= bound)).count() as f64 / k;
                    let predicted = match (family, model) {
                        (Family::Cycle, Model::Mm) => num(predicted_final_density(p)?.p_final),
                        (Family::Cycle, Model::Rmm) => num(p),
                        _ => String::new(),
                    };
                    table.push(vec![
                        family.as_str().into(),
                        model.to_string(),
                        n.to_string(),
                        num(p),
                        cfg.trials.to_string(),
                        cfg.seed.to_string(),
                        point.to_string(),
                        num(s.mean),
                        num(s.stderr),
                        num(s.min),
                        num(s.max),
                        predicted,
                        num(mono(true)),
                        num(mono(false)),
                        num(frac(Outcome::Blinking)),
                        num(unsettled),
                        if rounds.is_empty() { String::new() } else { num(summarize(&rounds).mean) },
                        num(within),
                    ]);
                    point += 1;
                }
            }
        }
    }
    Ok(table)
}

/// Random-model stabilization time from the slow start, with a log-log fit.
pub fn quadratic_growth(cfg: &ExperimentConfig) -> Result<Table> {
    let mut table = Table::new(&[
        "n", "trials", "seed", "point", "mean_rounds", "stderr", "min_rounds", "max_rounds", "cap_exceeded",
        "lower_bound", "exact_mean", "fitted_exponent",
    ]);
    let mut means = Vec::new();
    let sizes = cfg.sizes();
    for (point, &n) in sizes.iter().enumerate() {
        let point = point as u64;
        let c0 = rmm_quadratic_witness(n)?;
        let opts = RunOptions::new(cfg.max_rounds.unwrap_or(RMM_CYCLE_CAP));
        let results = collect(cfg.trials, |t| {
            let rng = TieRng::new(stream(cfg.seed, point, t, TIE_STREAM));
            Ok(run_cycle_rmm(&c0, &rng, &opts).rounds)
        })?;
        let rounds: Vec<f64> = results.iter().flatten().map(|&r| r as f64).collect();
        let s = summarize(&rounds);
        means.push(s.mean);
        let exact = if n <= DEFAULT_MARKOV_CAP { num(expected_stabilization_exact(&make_cycle(n)?, &c0)?) } else { String::new() };
        table.push(vec![
            n.to_string(),
            cfg.trials.to_string(),
            cfg.seed.to_string(),
            point.to_string(),
            num(s.mean),
            num(s.stderr),
            num(s.min),
            num(s.max),
            results.iter().filter(|r| r.is_none()).count().to_string(),
            num(rmm_quadratic_lower_bound(n)?),
            exact,
            String::new(),
        ]);
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    if let Some(e) = fitted_exponent(&xs, &means) {
        let col = table.header.len() - 1;
        for row in &mut table.rows {
            row[col] = num(e);
        }
    }
    Ok(table)
}

/// Mean blue count per round of the random model on a cycle from a fixed
/// number of blue nodes at random positions.
pub fn martingale(cfg: &ExperimentConfig) -> Result<Table> {
    let mut table = Table::new(&["n", "b0", "t", "trials", "seed", "point", "mean_blue", "stderr", "z_score"]);
    let b0 = cfg.initial_blue.expect("validated");
    let horizon = cfg.horizon.unwrap_or(50);
    for (point, &n) in cfg.sizes().iter().enumerate() {
        let point = point as u64;
        let opts = RunOptions { max_rounds: horizon, record_blue_counts: true, accelerate: false };
        let series = collect(cfg.trials, |t| {
            let c0 = exact_density_coloring(n, b0, stream(cfg.seed, point, t, COLORING_STREAM))?;
            let rng = TieRng::new(stream(cfg.seed, point, t, TIE_STREAM));
            let mut counts = run_cycle_rmm(&c0, &rng, &opts).blue_counts.expect("recorded");
            // absorbed runs keep their blue count (blinking included)
            let last = *counts.last().expect("round 0");
            counts.resize(horizon as usize + 1, last);
            Ok(counts)
        })?;
        for t in 0..=horizon as usize {
            let values: Vec<f64> = series.iter().map(|c| c[t] as f64).collect();
            let s = summarize(&values);
            let diff = s.mean - b0 as f64;
            let z = if s.stderr > 0.0 {
                diff / s.stderr
            } else if diff == 0.0 {
                0.0
            } else {
                diff.signum() * f64::INFINITY
            };
            table.push(vec![
                n.to_string(),
                b0.to_string(),
                t.to_string(),
                cfg.trials.to_string(),
                cfg.seed.to_string(),
                point.to_string(),
                num(s.mean),
                num(s.stderr),
                num(z),
            ]);
        }
    }
    Ok(table)
}
