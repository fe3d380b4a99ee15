//! Run summaries and the Mann-Whitney U rank-sum test.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::engine::{first_hit, RunRecord};
use crate::error::{Error, Result};

/// The part of a run that the summary statistics depend on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOutcome {
    pub first_hit: Option<usize>,
    pub final_value: f64,
}

impl From<&RunRecord> for RunOutcome {
    fn from(r: &RunRecord) -> Self {
        Self {
            first_hit: r.first_hit_generation,
            final_value: r.final_best_value,
        }
    }
}

/// Aggregate performance over `run_count` replicated runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentSummary {
    /// Fraction of runs that reached the tolerance.
    pub success_rate: f64,
    /// `Σ tⱼ·Iⱼ / R`: first-hit generations summed over successes, divided by
    /// all runs.
    pub mean_runtime_all: f64,
    /// Mean first-hit generation over successful runs only.
    pub mean_runtime_successful: Option<f64>,
    pub mean_final_value: f64,
    /// Sample standard deviation of the final values (0 for a single run).
    pub std_final_value: f64,
    pub run_count: usize,
}

/// Summary statistics of a set of run outcomes.
pub fn summarize(outcomes: &[RunOutcome]) -> Result<ExperimentSummary> {
    if outcomes.is_empty() {
        return Err(Error::usage("cannot summarize zero runs"));
    }
    let r = outcomes.len() as f64;
    let hits: Vec<f64> = outcomes
        .iter()
        .filter_map(|o| o.first_hit.map(|t| t as f64))
        .collect();
    let hit_sum: f64 = hits.iter().sum();
    let mean_final = outcomes.iter().map(|o| o.final_value).sum::<f64>() / r;
    let std_final = if outcomes.len() > 1 {
        let ss: f64 = outcomes
            .iter()
            .map(|o| (o.final_value - mean_final).powi(2))
            .sum();
        (ss / (r - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(ExperimentSummary {
        success_rate: hits.len() as f64 / r,
        mean_runtime_all: hit_sum / r,
        mean_runtime_successful: (!hits.is_empty()).then(|| hit_sum / hits.len() as f64),
        mean_final_value: mean_final,
        std_final_value: std_final,
        run_count: outcomes.len(),
    })
}

/// Summarizes full run records, recomputing first hits against `epsilon`.
pub fn summarize_records(records: &[RunRecord], epsilon: f64) -> Result<ExperimentSummary> {
    let outcomes: Vec<RunOutcome> = records
        .iter()
        .map(|r| RunOutcome {
            first_hit: first_hit(&r.best_per_generation, epsilon),
            final_value: r.final_best_value,
        })
        .collect();
    summarize(&outcomes)
}

/// Outcome of a two-sample Mann-Whitney U test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankTestResult {
    /// `min(u1, u2)`.
    pub u: f64,
    /// `s1·s2 + s1(s1+1)/2 − R1`: pairs where the first sample is smaller,
    /// ties counting one half.
    pub u1: f64,
    pub u2: f64,
    pub rank_sum_1: f64,
    pub rank_sum_2: f64,
    /// Normal approximation; negative when the first sample tends to be smaller.
    pub z: f64,
    /// One-sided tail probability `P(Z > |z|)`.
    pub p: f64,
    /// Every value of both samples is equal; `z = 0` and `p = 0.5`.
    pub degenerate: bool,
}

impl RankTestResult {
    pub fn significant(&self, level: f64) -> bool {
        !self.degenerate && self.p < level
    }
}

/// Joint midranks (1-based) of `values` and the tie term `Σ (t³ − t)`.
fn midranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i..j share the average of ranks i+1..=j
        let rank = (i + 1 + j) as f64 / 2.0;
        for &o in &order[i..j] {
            ranks[o] = rank;
        }
        let t = (j - i) as f64;
        ties += t * t * t - t;
        i = j;
    }
    (ranks, ties)
}

/// Mann-Whitney U test with midranks for ties, tie-corrected variance and no
/// continuity correction.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<RankTestResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::usage("Mann-Whitney U needs two non-empty samples"));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::usage("Mann-Whitney U samples must not contain NaN"));
    }
    let joined: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&joined);
    let s1 = a.len() as f64;
    let s2 = b.len() as f64;
    let n = s1 + s2;
    let r1: f64 = ranks[..a.len()].iter().sum();
    let r2: f64 = ranks[a.len()..].iter().sum();
    let u1 = s1 * s2 + s1 * (s1 + 1.0) / 2.0 - r1;
    let u2 = s1 * s2 + s2 * (s2 + 1.0) / 2.0 - r2;
    debug_assert!((u1 + u2 - s1 * s2).abs() < 1e-9 * (1.0 + s1 * s2));

    let mean = s1 * s2 / 2.0;
    let var = s1 * s2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    let degenerate = !(var > 0.0);
    let (z, p) = if degenerate {
        (0.0, 0.5)
    } else {
        // u2 counts pairs where the first sample is larger, so it sits below
        // its mean when the first sample is the smaller one.
        let z = (u2 - mean) / var.sqrt();
        let p = Normal::standard().sf(z.abs());
        (z, p)
    };
    Ok(RankTestResult {
        u: u1.min(u2),
        u1,
        u2,
        rank_sum_1: r1,
        rank_sum_2: r2,
        z,
        p,
        degenerate,
    })
}
