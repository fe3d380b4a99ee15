//! Batch experiment runner.
//!
//! [`run_experiment`] expands an [`ExperimentConfig`] into cells
//! (problem × dimension × operator pair), executes the replicated GA runs of
//! every cell on a worker pool and writes:
//!
//! * `runs.csv`: `problem,dim,recomb,mutation,run_index,seed,first_hit,final_value`
//! * `summary.csv`: `problem,dim,recomb,mutation,runs,success_rate,mean_runtime_eq4,mean_runtime_successful,mean_final,std_final`
//! * for `kmeans4` cells, `lloyd.csv` and one `dataset_d{dim}.txt` per dimension.
//!
//! Run `r` of every cell uses the child seed `derive_seed(master_seed, r)`,
//! and rows are ordered by cell then run index, so the files do not depend
//! on the number of worker threads.

mod compare;
mod config;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::run_ga;
use crate::error::{Error, Result};
use crate::objectives::{lloyd, Benchmark, Dataset, KMeansProblem};
use crate::rng::{derive_seed, RngStream};
use crate::stats::{summarize, RunOutcome};

pub use compare::{
    compare_files, compare_runs, CellComparison, CompareOptions, CompareReport, Metric,
};
pub use config::{
    DatasetConfig, ExperimentConfig, LloydConfig, OneOrMany, OperatorPair, Problem, KMEANS_K,
};

pub const RUNS_FILE: &str = "runs.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const LLOYD_FILE: &str = "lloyd.csv";

/// One row of `runs.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub problem: String,
    pub dim: usize,
    pub recomb: String,
    pub mutation: String,
    pub run_index: usize,
    pub seed: u64,
    pub first_hit: Option<usize>,
    pub final_value: f64,
}

/// One row of `summary.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub dim: usize,
    pub recomb: String,
    pub mutation: String,
    pub runs: usize,
    pub success_rate: f64,
    /// First-hit generations summed over successes, divided by all runs.
    pub mean_runtime_eq4: f64,
    /// Mean first-hit generation of successful runs; empty without successes.
    pub mean_runtime_successful: Option<f64>,
    pub mean_final: f64,
    pub std_final: f64,
}

/// One row of `lloyd.csv`: the Lloyd baseline on a `kmeans4` dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LloydRow {
    pub problem: String,
    pub dim: usize,
    pub k: usize,
    pub restarts: usize,
    pub best: f64,
    pub mean: f64,
}

/// Command-line overrides applied on top of a config file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Everything an experiment produced, in memory and on disk.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    pub output_dir: PathBuf,
    pub runs: Vec<RunRow>,
    pub summary: Vec<SummaryRow>,
    pub lloyd: Vec<LloydRow>,
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    problem: Problem,
    dim: usize,
    op: OperatorPair,
}

/// Seed of the `kmeans4` dataset of dimension `dim`.
pub fn dataset_seed(config: &ExperimentConfig, master_seed: u64, dim: usize) -> u64 {
    let base = config
        .dataset
        .seed
        .unwrap_or_else(|| derive_seed(master_seed, u64::MAX));
    derive_seed(base, dim as u64)
}

/// Groups run rows by cell (in order of first appearance) and summarises each.
pub fn summaries_from_runs(rows: &[RunRow]) -> Result<Vec<SummaryRow>> {
    type Key = (String, usize, String, String);
    let mut order: Vec<Key> = Vec::new();
    let mut groups: BTreeMap<Key, Vec<RunOutcome>> = BTreeMap::new();
    for r in rows {
        let key = (
            r.problem.clone(),
            r.dim,
            r.recomb.clone(),
            r.mutation.clone(),
        );
        let entry = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            Vec::new()
        });
        entry.push(RunOutcome {
            first_hit: r.first_hit,
            final_value: r.final_value,
        });
    }
    order
        .into_iter()
        .map(|key| {
            let s = summarize(&groups[&key])?;
            let (problem, dim, recomb, mutation) = key;
            Ok(SummaryRow {
                problem,
                dim,
                recomb,
                mutation,
                runs: s.run_count,
                success_rate: s.success_rate,
                mean_runtime_eq4: s.mean_runtime_all,
                mean_runtime_successful: s.mean_runtime_successful,
                mean_final: s.mean_final_value,
                std_final: s.std_final_value,
            })
        })
        .collect()
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.serialize(row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(|e| csv_error(path, e))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        }
    } else {
        Error::config(format!("{}: {e}", path.display()))
    }
}

/// Runs every cell of `config` and writes the CSV files.
pub fn run_experiment(
    config: &ExperimentConfig,
    overrides: &Overrides,
) -> Result<ExperimentOutput> {
    config.validate()?;
    let master_seed = overrides.seed.unwrap_or(config.master_seed);
    let output_dir = overrides
        .out
        .clone()
        .unwrap_or_else(|| config.output_dir.clone());
    let threads = overrides
        .threads
        .or(config.threads)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(Error::config("threads must be at least 1"));
    }

    let problems = config.problems();
    let cells: Vec<Cell> = problems
        .iter()
        .flat_map(|&problem| {
            config.dims.iter().flat_map(move |&dim| {
                config
                    .operators
                    .iter()
                    .map(move |&op| Cell { problem, dim, op })
            })
        })
        .collect();

    let mut datasets: BTreeMap<usize, Dataset> = BTreeMap::new();
    if problems.contains(&Problem::KMeans4) {
        let interval = config.dataset_bounds()?;
        for &d in &config.dims {
            let seed = dataset_seed(config, master_seed, d);
            datasets.insert(
                d,
                Dataset::generate(config.dataset.points, d, KMEANS_K, interval, seed)?,
            );
        }
    }

    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..config.runs).map(move |r| (c, r)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;

    let run_one = |&(c, r): &(usize, usize)| -> Result<RunRow> {
        let cell = cells[c];
        let ga = config.ga_config(cell.op);
        let seed = derive_seed(master_seed, r as u64);
        let record = match cell.problem {
            Problem::Function(f) => run_ga(&ga, &Benchmark::new(f, cell.dim)?, seed)?,
            Problem::KMeans4 => {
                let problem =
                    KMeansProblem::new(&datasets[&cell.dim], KMEANS_K, config.dataset_bounds()?)?;
                run_ga(&ga, &problem, seed)?
            }
        };
        Ok(RunRow {
            problem: cell.problem.to_string(),
            dim: cell.dim,
            recomb: cell.op.recombination.to_string(),
            mutation: cell.op.mutation.to_string(),
            run_index: r,
            seed,
            first_hit: record.first_hit_generation,
            final_value: record.final_best_value,
        })
    };
    let runs: Vec<RunRow> =
        pool.install(|| jobs.par_iter().map(run_one).collect::<Result<Vec<_>>>())?;
    let summary = summaries_from_runs(&runs)?;

    let mut lloyd_rows = Vec::new();
    for (&d, data) in &datasets {
        let mut objectives = Vec::with_capacity(config.lloyd.restarts);
        for restart in 0..config.lloyd.restarts {
            let mut rng = RngStream::child(data.seed(), restart as u64);
            objectives.push(lloyd(data, KMEANS_K, &mut rng, config.lloyd.max_iter)?.objective);
        }
        lloyd_rows.push(LloydRow {
            problem: Problem::KMeans4.to_string(),
            dim: d,
            k: KMEANS_K,
            restarts: objectives.len(),
            best: objectives.iter().copied().fold(f64::INFINITY, f64::min),
            mean: objectives.iter().sum::<f64>() / objectives.len() as f64,
        });
    }

    fs::create_dir_all(&output_dir).map_err(|e| Error::io(&output_dir, e))?;
    write_csv(&output_dir.join(RUNS_FILE), &runs)?;
    write_csv(&output_dir.join(SUMMARY_FILE), &summary)?;
    if !datasets.is_empty() {
        write_csv(&output_dir.join(LLOYD_FILE), &lloyd_rows)?;
        for (d, data) in &datasets {
            data.save(&output_dir.join(format!("dataset_d{d}.txt")))?;
        }
    }

    Ok(ExperimentOutput {
        output_dir,
        runs,
        summary,
        lloyd: lloyd_rows,
    })
}

/// Loads a config file and runs it.
pub fn run_experiment_file(config_path: &Path, overrides: &Overrides) -> Result<ExperimentOutput> {
    let config = ExperimentConfig::load(config_path)?;
    run_experiment(&config, overrides)
}
