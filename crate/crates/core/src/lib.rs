//! Real-coded evolutionary algorithms built around the K-Bit-Swap family of
//! recombination operators.
//!
//! The crate provides:
//!
//! * [`operators`]: αKBS and βKBS recombination next to arithmetical (AX),
//!   BLX-α and simulated binary (SBX) crossover; simple (uniform) and
//!   Gaussian mutation; binary tournament selection and single-elite
//!   replacement.
//! * [`objectives`]: Paraboloid, Rastrigin, Rosenbrock, Schwefel, Ackley and
//!   Griewangk, plus a k-means clustering objective with a Lloyd baseline.
//! * [`engine`]: the generational GA loop with first-hit tracking.
//! * [`stats`]: success rate, mean runtime and the Mann-Whitney U test.
//! * [`harness`]: config-driven experiment sweeps writing CSV tables.
//!
//! ```
//! use kbs::prelude::*;
//!
//! let f = Benchmark::new(BenchmarkFunction::Paraboloid, 2)?;
//! let cfg = GaConfig::new(RecombinationKind::AlphaKbs, MutationKind::Gaussian)
//!     .with_population(40)
//!     .with_generations(100);
//! let run = run_ga(&cfg, &f, 7)?;
//! assert!(run.final_best_value < 0.01);
//! # Ok::<(), kbs::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod engine;
mod error;
pub mod genome;
pub mod harness;
pub mod objectives;
pub mod operators;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::engine::{first_hit, run_ga, Ga, GaConfig, RunRecord};
    pub use crate::genome::{
        best_of, clamp_to_bounds, init_population, Bounds, Genome, Population,
    };
    pub use crate::objectives::{Benchmark, BenchmarkFunction, Dataset, KMeansProblem, Objective};
    pub use crate::operators::{
        MutationKind, MutationParams, Recombination, RecombinationKind, RecombinationParams,
    };
    pub use crate::rng::{derive_seed, RngStream};
    pub use crate::stats::{
        mann_whitney_u, summarize, ExperimentSummary, RankTestResult, RunOutcome,
    };
    pub use crate::{Error, Result};
}
