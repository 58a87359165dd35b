use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::Model;
use crate::error::{invalid_param, Result};
use crate::graph::{make_cycle, make_cycle_plus_random, make_two_cycle, Graph};

/// Which study to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Deterministic-model stabilization time from the extreme coloring.
    Fig2Left,
    /// Number of stable colorings of the deterministic model.
    Fig2Middle,
    /// Final blue fraction from a `p`-random coloring.
    Fig2Right,
    /// Random-model stabilization time from the slow start on odd cycles.
    QuadraticGrowth,
    /// Mean blue count per round of the random model on a cycle.
    Martingale,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Fig2Left => "fig2-left",
            ExperimentKind::Fig2Middle => "fig2-middle",
            ExperimentKind::Fig2Right => "fig2-right",
            ExperimentKind::QuadraticGrowth => "quadratic-growth",
            ExperimentKind::Martingale => "martingale",
        }
    }
}

/// Graph family of a study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cycle,
    /// Cycle plus all distance-two chords.
    TwoCycle,
    /// Cycle plus two random chords per node, resampled every trial.
    CycleRandom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::TwoCycle => "two-cycle",
            Family::CycleRandom => "cycle-random",
        }
    }

    /// Whether every trial uses the same graph.
    pub fn is_fixed(self) -> bool {
        !matches!(self, Family::CycleRandom)
    }

    pub fn build(self, n: usize, seed: u64) -> Result<Graph> {
        match self {
            Family::Cycle => make_cycle(n),
            Family::TwoCycle => make_two_cycle(n),
            Family::CycleRandom => make_cycle_plus_random(n, seed),
        }
    }
}

/// Initial colorings accepted by the final-density study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialColoring {
    /// Every node blue independently with probability `p`.
    PRandom,
    /// Exactly `round(p n)` blue nodes at random positions.
    ExactDensity,
}

/// An experiment description, read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<Family>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sizes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub models: Vec<Model>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p_values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialColoring>,
    /// Starting blue count (martingale study).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_blue: Option<usize>,
    /// Number of rounds to follow (martingale study).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    pub trials: u64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<u64>,
    pub output: PathBuf,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Self::from_json(&std::fs::read_to_string(path)?)?;
        if cfg.output.is_relative() {
            if let Some(dir) = path.parent() {
                cfg.output = dir.join(&cfg.output);
            }
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn sizes(&self) -> Vec<usize> {
        if !self.sizes.is_empty() {
            return self.sizes.clone();
        }
        match self.experiment {
            ExperimentKind::Fig2Left => log_spaced(100, 10_000, 9),
            ExperimentKind::Fig2Middle => (6..=22).collect(),
            ExperimentKind::Fig2Right => vec![2000],
            ExperimentKind::QuadraticGrowth => vec![51, 101, 201, 401],
            ExperimentKind::Martingale => vec![501],
        }
    }

    pub fn families(&self) -> Vec<Family> {
        if !self.families.is_empty() {
            return self.families.clone();
        }
        match self.experiment {
            ExperimentKind::Fig2Left | ExperimentKind::Fig2Middle | ExperimentKind::Fig2Right => {
                vec![Family::Cycle, Family::TwoCycle, Family::CycleRandom]
            }
            ExperimentKind::QuadraticGrowth | ExperimentKind::Martingale => vec![Family::Cycle],
        }
    }

    pub fn models(&self) -> Vec<Model> {
        if !self.models.is_empty() {
            return self.models.clone();
        }
        match self.experiment {
            ExperimentKind::Fig2Left | ExperimentKind::Fig2Middle => vec![Model::Mm],
            ExperimentKind::Fig2Right => vec![Model::Mm, Model::Rmm],
            ExperimentKind::QuadraticGrowth | ExperimentKind::Martingale => vec![Model::Rmm],
        }
    }

    pub fn p_values(&self) -> Vec<f64> {
        if !self.p_values.is_empty() {
            return self.p_values.clone();
        }
        (0..=20).map(|i| i as f64 / 20.0).collect()
    }

    /// Checks the fields that the chosen study uses.
    pub fn validate(&self) -> Result<()> {
        let kind = self.experiment.as_str();
        if self.trials == 0 {
            return Err(invalid_param("trials must be at least 1"));
        }
        let only = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(invalid_param(format!("{what} is not supported by {kind}")))
            }
        };
        let models = self.models();
        let families = self.families();
        let sizes = self.sizes();
        match self.experiment {
            ExperimentKind::Fig2Left | ExperimentKind::Fig2Middle => {
                only(models == [Model::Mm], "the random model")?;
            }
            ExperimentKind::QuadraticGrowth => {
                only(models == [Model::Rmm] && families == [Family::Cycle], "a model or family other than rmm on cycles")?;
                if let Some(&n) = sizes.iter().find(|&&n| n < 13 || n % 2 == 0) {
                    return Err(invalid_param(format!("{kind} needs odd sizes >= 13, got {n}")));
                }
            }
            ExperimentKind::Martingale => {
                only(models == [Model::Rmm] && families == [Family::Cycle], "a model or family other than rmm on cycles")?;
                let b0 = self.initial_blue.ok_or_else(|| invalid_param("martingale needs initial_blue"))?;
                if let Some(&n) = sizes.iter().find(|&&n| b0 > n) {
                    return Err(invalid_param(format!("initial_blue {b0} exceeds n = {n}")));
                }
            }
            ExperimentKind::Fig2Right => {
                if let Some(p) = self.p_values().into_iter().find(|p| !(0.0..=1.0).contains(p)) {
                    return Err(invalid_param(format!("probability {p} outside [0, 1]")));
                }
            }
        }
        only(self.initial.is_none() || self.experiment == ExperimentKind::Fig2Right, "initial")?;
        only(self.initial_blue.is_none() || self.experiment == ExperimentKind::Martingale, "initial_blue")?;
        only(self.horizon.is_none() || self.experiment == ExperimentKind::Martingale, "horizon")?;
        only(self.p_values.is_empty() || self.experiment == ExperimentKind::Fig2Right, "p_values")?;
        if sizes.is_empty() {
            return Err(invalid_param("no sizes"));
        }
        for &family in &families {
            let min = match family {
                Family::Cycle => 3,
                Family::TwoCycle => 5,
                Family::CycleRandom => 8,
            };
            if let Some(&n) = sizes.iter().find(|&&n| n < min) {
                return Err(invalid_param(format!("{} needs n >= {min}, got {n}", family.as_str())));
            }
        }
        if self.experiment == ExperimentKind::Fig2Left {
            if let Some(&n) = sizes.iter().find(|&&n| n < 8) {
                return Err(invalid_param(format!("{kind} needs n >= 8, got {n}")));
            }
        }
        Ok(())
    }
}

/// `count` integers spread evenly on a log scale between `lo` and `hi`.
pub fn log_spaced(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<usize> = (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1).max(1) as f64).exp().round() as usize)
        .collect();
    out.dedup();
    out
}
