use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::GaConfig;
use crate::error::{Error, Result};
use crate::genome::Bounds;
use crate::objectives::{BenchmarkFunction, DEFAULT_INTERVAL, DEFAULT_POINTS};
use crate::operators::{MutationKind, RecombinationKind, RecombinationParams};

/// Number of clusters of the `kmeans4` problem.
pub const KMEANS_K: usize = 4;

/// A problem family addressed by name in configs and CSV files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Problem {
    Function(BenchmarkFunction),
    /// Four-means clustering of a generated point cloud; `dim` is the point
    /// dimension and the genome holds `4·dim` genes.
    KMeans4,
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::Function(f) => f.name(),
            Problem::KMeans4 => "kmeans4",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "kmeans4" {
            Ok(Problem::KMeans4)
        } else {
            s.parse().map(Problem::Function).map_err(|_| {
                Error::config(format!(
                    "unknown problem `{s}` (expected a benchmark function name or `kmeans4`)"
                ))
            })
        }
    }
}

impl TryFrom<String> for Problem {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Problem> for String {
    fn from(p: Problem) -> String {
        p.name().to_string()
    }
}

/// A recombination operator followed by a mutation operator, written
/// `recombination+mutation` (for example `alpha_kbs+gm`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct OperatorPair {
    pub recombination: RecombinationKind,
    pub mutation: MutationKind,
}

impl OperatorPair {
    pub fn new(recombination: RecombinationKind, mutation: MutationKind) -> Self {
        Self {
            recombination,
            mutation,
        }
    }

    /// The eight combinations of {αKBS, βKBS, BLX-α, SBX} × {SM, GM}.
    pub fn standard_grid() -> Vec<OperatorPair> {
        use MutationKind::*;
        use RecombinationKind::*;
        [AlphaKbs, BetaKbs, BlxAlpha, Sbx]
            .into_iter()
            .flat_map(|r| [Simple, Gaussian].map(|m| OperatorPair::new(r, m)))
            .collect()
    }
}

impl fmt::Display for OperatorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.recombination, self.mutation)
    }
}

impl FromStr for OperatorPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (r, m) = s.split_once('+').ok_or_else(|| {
            Error::config(format!(
                "operator pair `{s}` is not `recombination+mutation`"
            ))
        })?;
        Ok(Self::new(r.trim().parse()?, m.trim().parse()?))
    }
}

impl TryFrom<String> for OperatorPair {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<OperatorPair> for String {
    fn from(p: OperatorPair) -> String {
        p.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(t) => vec![t.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// Point cloud used by `kmeans4` cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DatasetConfig {
    pub points: usize,
    pub low: f64,
    pub high: f64,
    /// Base seed; by default derived from the master seed.
    pub seed: Option<u64>,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        Self {
            points: DEFAULT_POINTS,
            low: DEFAULT_INTERVAL.0,
            high: DEFAULT_INTERVAL.1,
            seed: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LloydConfig {
    pub restarts: usize,
    pub max_iter: usize,
}

impl Default for LloydConfig {
    fn default() -> Self {
        Self {
            restarts: 10,
            max_iter: 300,
        }
    }
}

fn default_runs() -> usize {
    20
}
fn default_generations() -> usize {
    5000
}
fn default_population() -> usize {
    400
}
fn default_tournament() -> usize {
    2
}
fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

/// A sweep over problems × dimensions × operator pairs.
///
/// ```json
/// {
///   "problem": ["paraboloid", "ackley"],
///   "dims": [2, 5],
///   "operators": ["alpha_kbs+gm", "blx_alpha+sm"],
///   "runs": 20,
///   "master_seed": 1
/// }
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(alias = "problems")]
    pub problem: OneOrMany<Problem>,
    pub dims: Vec<usize>,
    pub operators: Vec<OperatorPair>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default = "default_generations")]
    pub generations: usize,
    #[serde(default = "default_population")]
    pub population_size: usize,
    /// Mating pool size; follows `population_size` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pool_size: Option<usize>,
    #[serde(default = "default_tournament")]
    pub tournament_size: usize,
    /// Fixed success tolerance; when absent 0.01 is used for two genes and 0.1
    /// otherwise.
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub params: RecombinationParams,
    #[serde(default)]
    pub mutation_rate: Option<f64>,
    #[serde(default)]
    pub dataset: DatasetConfig,
    #[serde(default)]
    pub lloyd: LloydConfig,
    #[serde(default)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    /// A config with the default budget for the given cells.
    pub fn new(problems: Vec<Problem>, dims: Vec<usize>, operators: Vec<OperatorPair>) -> Self {
        Self {
            problem: OneOrMany::Many(problems),
            dims,
            operators,
            runs: default_runs(),
            generations: default_generations(),
            population_size: default_population(),
            pool_size: None,
            tournament_size: default_tournament(),
            epsilon: None,
            master_seed: 0,
            output_dir: default_output_dir(),
            params: RecombinationParams::default(),
            mutation_rate: None,
            dataset: DatasetConfig::default(),
            lloyd: LloydConfig::default(),
            threads: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)
            .map_err(|e| Error::config(format!("invalid experiment config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn problems(&self) -> Vec<Problem> {
        self.problem.to_vec()
    }

    /// GA settings for one operator pair.
    pub fn ga_config(&self, op: OperatorPair) -> GaConfig {
        GaConfig {
            population_size: self.population_size,
            pool_size: self.pool_size.unwrap_or(self.population_size),
            generations: self.generations,
            tournament_size: self.tournament_size,
            recombination: op.recombination,
            recombination_params: self.params,
            mutation: op.mutation,
            mutation_rate: self.mutation_rate,
            epsilon: self.epsilon,
        }
    }

    pub fn dataset_bounds(&self) -> Result<Bounds> {
        Bounds::new(self.dataset.low, self.dataset.high)
    }

    pub fn validate(&self) -> Result<()> {
        let problems = self.problems();
        if problems.is_empty() {
            return Err(Error::config("no problems configured"));
        }
        if self.dims.is_empty() {
            return Err(Error::config("no dimensions configured"));
        }
        if self.operators.is_empty() {
            return Err(Error::config("no operator pairs configured"));
        }
        if self.runs == 0 {
            return Err(Error::config("runs must be at least 1"));
        }
        for p in &problems {
            let min = match p {
                Problem::Function(f) => f.min_dim(),
                Problem::KMeans4 => 1,
            };
            if let Some(d) = self.dims.iter().find(|&&d| d < min) {
                return Err(Error::config(format!(
                    "{p} needs dimension >= {min}, got {d}"
                )));
            }
        }
        for op in &self.operators {
            self.ga_config(*op).validate()?;
        }
        if problems.contains(&Problem::KMeans4) {
            self.dataset_bounds()?;
            if self.dataset.points <= KMEANS_K {
                return Err(Error::config(format!(
                    "dataset needs more than {KMEANS_K} points, got {}",
                    self.dataset.points
                )));
            }
            if self.lloyd.restarts == 0 || self.lloyd.max_iter == 0 {
                return Err(Error::config(
                    "lloyd restarts and max_iter must be positive",
                ));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::config("threads must be at least 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = ExperimentConfig::from_json(
            r#"{"problem": "paraboloid", "dims": [2], "operators": ["alpha_kbs+sm"]}"#,
        )
        .unwrap();
        assert_eq!(cfg.runs, 20);
        assert_eq!(cfg.generations, 5000);
        assert_eq!(cfg.population_size, 400);
        assert_eq!(
            cfg.ga_config(OperatorPair::standard_grid()[0]).pool_size,
            400
        );
        assert_eq!(
            cfg.problems(),
            vec![Problem::Function(BenchmarkFunction::Paraboloid)]
        );
        assert_eq!(cfg.params, RecombinationParams::default());
    }

    #[test]
    fn list_of_problems_and_round_trip() {
        let cfg = ExperimentConfig::from_json(
            r#"{"problems": ["ackley", "kmeans4"], "dims": [2, 5],
                "operators": ["sbx+gm", "beta_kbs+sm"], "params": {"eta": 5}}"#,
        )
        .unwrap();
        assert_eq!(cfg.problems().len(), 2);
        assert_eq!(cfg.params.eta, 5.0);
        let again = ExperimentConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn invalid_configs() {
        for text in [
            r#"{"problem": "sphere", "dims": [2], "operators": ["sbx+gm"]}"#,
            r#"{"problem": "ackley", "dims": [2], "operators": ["sbx"]}"#,
            r#"{"problem": "ackley", "dims": [2], "operators": ["sbx+xx"]}"#,
            r#"{"problem": "ackley", "dims": [], "operators": ["sbx+gm"]}"#,
            r#"{"problem": "rosenbrock", "dims": [1], "operators": ["sbx+gm"]}"#,
            r#"{"problem": "ackley", "dims": [2], "operators": ["sbx+gm"], "runs": 0}"#,
            r#"{"problem": "ackley", "dims": [2], "operators": ["sbx+gm"], "pool_size": 3}"#,
            r#"{"problem": "ackley", "dims": [2], "operators": ["sbx+gm"], "bogus": 1}"#,
            r#"{"problem": "kmeans4", "dims": [2], "operators": ["sbx+gm"], "dataset": {"points": 4}}"#,
            "not json",
        ] {
            assert!(
                matches!(ExperimentConfig::from_json(text), Err(Error::Config(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn standard_grid_has_eight_pairs() {
        let grid = OperatorPair::standard_grid();
        assert_eq!(grid.len(), 8);
        assert_eq!(grid[0].to_string(), "alpha_kbs+sm");
        assert_eq!(grid[7].to_string(), "sbx+gm");
    }
}
