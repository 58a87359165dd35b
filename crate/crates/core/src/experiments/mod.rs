//! Seeded Monte Carlo studies that write CSV tables.
//!
//! Every trial draws its randomness from `derive_seed(seed, [point, trial])`
//! and results are aggregated in trial order, so a table depends only on its
//! configuration and not on the thread schedule.

mod config;
mod studies;

use std::path::PathBuf;

use serde::Serialize;

pub use config::{log_spaced, ExperimentConfig, ExperimentKind, Family, InitialColoring};
pub use studies::{fig2_left, fig2_middle, fig2_right, martingale, quadratic_growth};

use crate::error::Result;
use crate::format::sig;

/// Significant digits of floating-point CSV cells.
pub const CSV_DIGITS: usize = 9;

/// Mean, standard error and range of a sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation over the square root of the sample size.
    pub stderr: f64,
    pub trials: u64,
    pub min: f64,
    pub max: f64,
}

/// Summary of `values` (all zeros for an empty sample).
pub fn summarize(values: &[f64]) -> Summary {
    let k = values.len();
    if k == 0 {
        return Summary { mean: 0.0, stderr: 0.0, trials: 0, min: 0.0, max: 0.0 };
    }
    let mean = values.iter().sum::<f64>() / k as f64;
    let var = if k > 1 { values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64 } else { 0.0 };
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Summary { mean, stderr: (var / k as f64).sqrt(), trials: k as u64, min, max }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fitted_exponent(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// A table of string cells with a fixed column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub(crate) fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub(crate) fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Cells of the named column.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    /// Cells of the named column parsed as numbers (empty cells become NaN).
    pub fn numbers(&self, name: &str) -> Option<Vec<f64>> {
        Some(self.column(name)?.into_iter().map(|c| c.parse().unwrap_or(f64::NAN)).collect())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("utf-8 cells"))
    }

    /// One `column=value` line per row.
    pub fn summary_lines(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| self.header.iter().zip(r).map(|(h, v)| format!("{h}={v}")).collect::<Vec<_>>().join(" "))
            .collect()
    }
}

pub(crate) fn num(x: f64) -> String {
    sig(x, CSV_DIGITS)
}

/// Runs the study described by `cfg`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Table> {
    cfg.validate()?;
    match cfg.experiment {
        ExperimentKind::Fig2Left => fig2_left(cfg),
        ExperimentKind::Fig2Middle => fig2_middle(cfg),
        ExperimentKind::Fig2Right => fig2_right(cfg),
        ExperimentKind::QuadraticGrowth => quadratic_growth(cfg),
        ExperimentKind::Martingale => martingale(cfg),
    }
}

/// Paths written by [`write_outputs`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Written {
    pub csv: PathBuf,
    pub sidecar: PathBuf,
    pub rows: usize,
}

/// Writes the CSV to `cfg.output` and a `.meta.json` sidecar (configuration, column
/// names and library version) next to it.
pub fn write_outputs(cfg: &ExperimentConfig, table: &Table) -> Result<Written> {
    #[derive(Serialize)]
    struct Sidecar<'a> {
        experiment: &'static str,
        version: &'static str,
        columns: &'a [&'static str],
        rows: usize,
        config: &'a ExperimentConfig,
    }
    if let Some(dir) = cfg.output.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(&cfg.output, table.to_csv()?)?;
    let sidecar = cfg.output.with_extension("meta.json");
    let meta = Sidecar {
        experiment: cfg.experiment.as_str(),
        version: crate::VERSION,
        columns: &table.header,
        rows: table.rows.len(),
        config: cfg,
    };
    std::fs::write(&sidecar, serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(Written { csv: cfg.output.clone(), sidecar, rows: table.rows.len() })
}
