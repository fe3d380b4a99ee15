use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::{read_csv, write_csv, OperatorPair, RunRow, RUNS_FILE, SUMMARY_FILE};
use crate::error::{Error, Result};
use crate::stats::{mann_whitney_u, RankTestResult};

/// Per-run quantity compared between two result sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    FinalValue,
    /// First-hit generation; runs without a hit rank after every hit.
    FirstHit,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::FinalValue => "final_value",
            Metric::FirstHit => "first_hit",
        }
    }

    fn value(&self, row: &RunRow) -> f64 {
        match self {
            Metric::FinalValue => row.final_value,
            Metric::FirstHit => row.first_hit.map_or(f64::INFINITY, |t| t as f64),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "final_value" => Ok(Metric::FinalValue),
            "first_hit" => Ok(Metric::FirstHit),
            _ => Err(Error::config(format!(
                "unknown metric `{s}` (expected final_value or first_hit)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareOptions {
    pub metric: Metric,
    /// Restrict the first file to one operator pair and match cells on
    /// `(problem, dim)` only.
    pub a_op: Option<OperatorPair>,
    pub b_op: Option<OperatorPair>,
    pub level: f64,
}

impl CompareOptions {
    pub fn new(metric: Metric) -> Self {
        Self {
            metric,
            a_op: None,
            b_op: None,
            level: 0.05,
        }
    }
}

/// Cell identity used to pair the two inputs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CellKey {
    pub problem: String,
    pub dim: usize,
    /// `recomb+mutation`, present when cells are matched per operator pair.
    pub op: Option<String>,
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.problem, self.dim)?;
        if let Some(op) = &self.op {
            write!(f, "/{op}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellComparison {
    pub problem: String,
    pub dim: usize,
    pub op_a: String,
    pub op_b: String,
    pub n_a: usize,
    pub n_b: usize,
    pub test: RankTestResult,
    pub significant: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareReport {
    pub metric: Metric,
    pub level: f64,
    pub compared: Vec<CellComparison>,
    /// Cells present only in the first input.
    pub only_in_a: Vec<CellKey>,
    /// Cells present only in the second input.
    pub only_in_b: Vec<CellKey>,
}

#[derive(Serialize)]
struct CompareRow<'a> {
    problem: &'a str,
    dim: usize,
    recomb_a: &'a str,
    mutation_a: &'a str,
    recomb_b: &'a str,
    mutation_b: &'a str,
    metric: &'a str,
    n_a: usize,
    n_b: usize,
    u: f64,
    u1: f64,
    u2: f64,
    z: f64,
    p: f64,
    significant: bool,
}

impl CompareReport {
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let rows: Vec<CompareRow> = self
            .compared
            .iter()
            .map(|c| {
                let (ra, ma) = c.op_a.split_once('+').unwrap_or((&c.op_a, ""));
                let (rb, mb) = c.op_b.split_once('+').unwrap_or((&c.op_b, ""));
                CompareRow {
                    problem: &c.problem,
                    dim: c.dim,
                    recomb_a: ra,
                    mutation_a: ma,
                    recomb_b: rb,
                    mutation_b: mb,
                    metric: self.metric.as_str(),
                    n_a: c.n_a,
                    n_b: c.n_b,
                    u: c.test.u,
                    u1: c.test.u1,
                    u2: c.test.u2,
                    z: c.test.z,
                    p: c.test.p,
                    significant: c.significant,
                }
            })
            .collect();
        write_csv(path, &rows)
    }

    /// Fixed-width table followed by the list of skipped cells.
    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "metric: {}   significance level: {}",
            self.metric, self.level
        );
        let _ = writeln!(
            s,
            "{:<12} {:>4}  {:<16} {:<16} {:>8} {:>9} {:>10}  sig",
            "problem", "dim", "a", "b", "U", "z", "p"
        );
        for c in &self.compared {
            let _ = writeln!(
                s,
                "{:<12} {:>4}  {:<16} {:<16} {:>8.1} {:>9.4} {:>10.3e}  {}",
                c.problem,
                c.dim,
                c.op_a,
                c.op_b,
                c.test.u,
                c.test.z,
                c.test.p,
                if c.significant { "yes" } else { "no" }
            );
        }
        for (label, cells) in [("first", &self.only_in_a), ("second", &self.only_in_b)] {
            for k in cells {
                let _ = writeln!(s, "skipped {k}: only in the {label} input");
            }
        }
        s
    }
}

fn group(
    rows: &[RunRow],
    filter: Option<OperatorPair>,
) -> BTreeMap<CellKey, (String, Vec<&RunRow>)> {
    let mut out: BTreeMap<CellKey, (String, Vec<&RunRow>)> = BTreeMap::new();
    let wanted = filter.map(|op| (op.recombination.to_string(), op.mutation.to_string()));
    for r in rows {
        if let Some((rec, mu)) = &wanted {
            if &r.recomb != rec || &r.mutation != mu {
                continue;
            }
        }
        let op = format!("{}+{}", r.recomb, r.mutation);
        let key = CellKey {
            problem: r.problem.clone(),
            dim: r.dim,
            op: wanted.is_none().then(|| op.clone()),
        };
        out.entry(key).or_insert_with(|| (op, Vec::new())).1.push(r);
    }
    out
}

/// Mann-Whitney comparison of every cell shared by `a` and `b`.
///
/// Without operator filters, cells match on problem, dimension and operator
/// pair. Fails when no cell is shared.
pub fn compare_runs(a: &[RunRow], b: &[RunRow], opts: &CompareOptions) -> Result<CompareReport> {
    if opts.a_op.is_some() != opts.b_op.is_some() {
        return Err(Error::config(
            "operator filters must be given for both inputs or neither",
        ));
    }
    let ga = group(a, opts.a_op);
    let gb = group(b, opts.b_op);
    let mut compared = Vec::new();
    for (key, (op_a, rows_a)) in &ga {
        let Some((op_b, rows_b)) = gb.get(key) else {
            continue;
        };
        let xa: Vec<f64> = rows_a.iter().map(|r| opts.metric.value(r)).collect();
        let xb: Vec<f64> = rows_b.iter().map(|r| opts.metric.value(r)).collect();
        let test = mann_whitney_u(&xa, &xb)?;
        compared.push(CellComparison {
            problem: key.problem.clone(),
            dim: key.dim,
            op_a: op_a.clone(),
            op_b: op_b.clone(),
            n_a: xa.len(),
            n_b: xb.len(),
            significant: test.significant(opts.level),
            test,
        });
    }
    if compared.is_empty() {
        return Err(Error::config("the two inputs share no cells"));
    }
    let only_in_a = ga.keys().filter(|k| !gb.contains_key(k)).cloned().collect();
    let only_in_b = gb.keys().filter(|k| !ga.contains_key(k)).cloned().collect();
    Ok(CompareReport {
        metric: opts.metric,
        level: opts.level,
        compared,
        only_in_a,
        only_in_b,
    })
}

/// Locates the per-run file behind a path: a results directory, a
/// `summary.csv` (its sibling `runs.csv`), or a runs file itself.
pub fn resolve_runs_path(path: &Path) -> PathBuf {
    if path.is_dir() {
        path.join(RUNS_FILE)
    } else if path.file_name().is_some_and(|n| n == SUMMARY_FILE) {
        path.with_file_name(RUNS_FILE)
    } else {
        path.to_path_buf()
    }
}

pub fn compare_files(a: &Path, b: &Path, opts: &CompareOptions) -> Result<CompareReport> {
    let rows_a: Vec<RunRow> = read_csv(&resolve_runs_path(a))?;
    let rows_b: Vec<RunRow> = read_csv(&resolve_runs_path(b))?;
    compare_runs(&rows_a, &rows_b, opts)
}
