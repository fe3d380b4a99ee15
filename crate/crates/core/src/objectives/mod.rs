//! Objective functions: six continuous benchmarks and k-means clustering.

mod functions;
mod kmeans;

use crate::genome::Bounds;

pub use functions::{
    ackley, griewangk, paraboloid, rastrigin, rosenbrock, schwefel, Benchmark, BenchmarkFunction,
    SCHWEFEL_CONSTANT, SCHWEFEL_OPTIMUM,
};
pub use kmeans::{
    generate_dataset, kmeans_objective, lloyd, ClusteringSolution, Dataset, KMeansProblem,
    LloydOutcome, DEFAULT_INTERVAL, DEFAULT_POINTS,
};

/// A minimisation problem over fixed-length real genomes.
///
/// `evaluate` must be deterministic and safe to call from several threads.
pub trait Objective: Sync {
    /// Genome length.
    fn dim(&self) -> usize;
    fn bounds(&self) -> Bounds;
    fn evaluate(&self, x: &[f64]) -> f64;
}

impl<T: Objective + ?Sized> Objective for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn bounds(&self) -> Bounds {
        (**self).bounds()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
}
