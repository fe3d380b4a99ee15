//! Continuous benchmark functions. All are minimised.
//!
//! Rastrigin and Rosenbrock use their standard textbook forms:
//! `‖x‖² + 10n − 10 Σ cos(2π xₖ)` and
//! `Σ 100(xₖ₊₁ − xₖ²)² + (xₖ − 1)²`. Schwefel keeps the truncated constant
//! `418.982`, so its value at the optimum is a small nonzero residual.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::genome::{Bounds, Genome};
use crate::objectives::Objective;

pub fn paraboloid(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (sq, cos) = x.iter().fold((0.0, 0.0), |(sq, cos), &v| {
        (sq + v * v, cos + (2.0 * PI * v).cos())
    });
    sq + 10.0 * n - 10.0 * cos
}

pub(crate) fn rosenbrock_unchecked(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let a = w[1] - w[0] * w[0];
            let b = w[0] - 1.0;
            100.0 * a * a + b * b
        })
        .sum()
}

/// Fails for genomes shorter than two genes.
pub fn rosenbrock(x: &[f64]) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::usage(format!(
            "rosenbrock needs at least 2 genes, got {}",
            x.len()
        )));
    }
    Ok(rosenbrock_unchecked(x))
}

pub const SCHWEFEL_CONSTANT: f64 = 418.982;
pub const SCHWEFEL_OPTIMUM: f64 = 420.9687;

pub fn schwefel(x: &[f64]) -> f64 {
    let s: f64 = x.iter().map(|&v| v * v.abs().sqrt().sin()).sum();
    SCHWEFEL_CONSTANT * x.len() as f64 - s
}

pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (sq, cos) = x.iter().fold((0.0, 0.0), |(sq, cos), &v| {
        (sq + v * v, cos + (2.0 * PI * v).cos())
    });
    20.0 + E - 20.0 * (-0.2 * (sq / n).sqrt()).exp() - (cos / n).exp()
}

pub fn griewangk(x: &[f64]) -> f64 {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(k, &v)| (v / ((k + 1) as f64).sqrt()).cos())
        .product();
    1.0 + sq / 4000.0 - prod
}

/// The six benchmark functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BenchmarkFunction {
    Paraboloid,
    Rastrigin,
    Rosenbrock,
    Schwefel,
    Ackley,
    Griewangk,
}

impl BenchmarkFunction {
    pub const ALL: [BenchmarkFunction; 6] = [
        BenchmarkFunction::Paraboloid,
        BenchmarkFunction::Rastrigin,
        BenchmarkFunction::Rosenbrock,
        BenchmarkFunction::Schwefel,
        BenchmarkFunction::Ackley,
        BenchmarkFunction::Griewangk,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BenchmarkFunction::Paraboloid => "paraboloid",
            BenchmarkFunction::Rastrigin => "rastrigin",
            BenchmarkFunction::Rosenbrock => "rosenbrock",
            BenchmarkFunction::Schwefel => "schwefel",
            BenchmarkFunction::Ackley => "ackley",
            BenchmarkFunction::Griewangk => "griewangk",
        }
    }

    pub fn bounds(&self) -> Bounds {
        let (lo, hi) = match self {
            BenchmarkFunction::Paraboloid => (-10.0, 10.0),
            BenchmarkFunction::Rastrigin | BenchmarkFunction::Rosenbrock => (-5.12, 5.12),
            BenchmarkFunction::Schwefel => (-500.0, 500.0),
            BenchmarkFunction::Ackley => (-32.0, 32.0),
            BenchmarkFunction::Griewangk => (-600.0, 600.0),
        };
        Bounds::new(lo, hi).expect("static bounds")
    }

    pub fn min_dim(&self) -> usize {
        match self {
            BenchmarkFunction::Rosenbrock => 2,
            _ => 1,
        }
    }

    /// Location of the global minimum in `n` dimensions.
    pub fn optimum_location(&self, n: usize) -> Genome {
        let v = match self {
            BenchmarkFunction::Rosenbrock => 1.0,
            BenchmarkFunction::Schwefel => SCHWEFEL_OPTIMUM,
            _ => 0.0,
        };
        Genome::new(vec![v; n])
    }

    /// Nominal minimum value (0 for every function).
    pub fn optimum_value(&self) -> f64 {
        0.0
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        match self {
            BenchmarkFunction::Paraboloid => paraboloid(x),
            BenchmarkFunction::Rastrigin => rastrigin(x),
            BenchmarkFunction::Rosenbrock => rosenbrock_unchecked(x),
            BenchmarkFunction::Schwefel => schwefel(x),
            BenchmarkFunction::Ackley => ackley(x),
            BenchmarkFunction::Griewangk => griewangk(x),
        }
    }
}

impl fmt::Display for BenchmarkFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::config(format!("unknown benchmark function `{s}`")))
    }
}

/// A benchmark function fixed to a dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Benchmark {
    function: BenchmarkFunction,
    dim: usize,
}

impl Benchmark {
    pub fn new(function: BenchmarkFunction, dim: usize) -> Result<Self> {
        if dim < function.min_dim() {
            return Err(Error::config(format!(
                "{function} needs dimension >= {}, got {dim}",
                function.min_dim()
            )));
        }
        Ok(Self { function, dim })
    }

    pub fn function(&self) -> BenchmarkFunction {
        self.function
    }
}

impl Objective for Benchmark {
    fn dim(&self) -> usize {
        self.dim
    }

    fn bounds(&self) -> Bounds {
        self.function.bounds()
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        self.function.evaluate(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn paraboloid_examples() {
        assert_eq!(paraboloid(&[0.0; 5]), 0.0);
        assert_eq!(paraboloid(&[1.0, 2.0]), 5.0);
        assert_eq!(paraboloid(&[-3.0]), 9.0);
    }

    #[test]
    fn rastrigin_examples() {
        assert_eq!(rastrigin(&[0.0, 0.0, 0.0]), 0.0);
        assert!(close(rastrigin(&[1.0, 1.0]), 2.0, 1e-12));
        assert!(close(rastrigin(&[0.5]), 20.25, 1e-12));
    }

    #[test]
    fn rosenbrock_examples() {
        assert_eq!(rosenbrock(&[1.0; 10]).unwrap(), 0.0);
        assert_eq!(rosenbrock(&[0.0, 0.0]).unwrap(), 1.0);
        assert_eq!(rosenbrock(&[-1.0, 1.0]).unwrap(), 4.0);
        assert!(matches!(rosenbrock(&[1.0]), Err(Error::Usage(_))));
        assert!(Benchmark::new(BenchmarkFunction::Rosenbrock, 1).is_err());
    }

    #[test]
    fn schwefel_examples() {
        let at_opt = schwefel(&[SCHWEFEL_OPTIMUM; 2]);
        assert!(at_opt.abs() < 0.01, "{at_opt}");
        assert!(close(schwefel(&[0.0; 3]), 1256.946, 1e-9));
        // x·sin√|x| is odd: the two summands cancel, leaving the constant term.
        let mixed = schwefel(&[-SCHWEFEL_OPTIMUM, SCHWEFEL_OPTIMUM]);
        assert!(close(mixed, 2.0 * SCHWEFEL_CONSTANT, 1e-9));
        assert!(close(mixed, 837.964, 1e-3), "{mixed}");
    }

    #[test]
    fn ackley_examples() {
        assert!(ackley(&[0.0; 7]).abs() < 1e-12);
        // sqrt(2/2) = 1, cos(2π) = 1: 20 + e - 20e^-0.2 - e
        let expected = 20.0 - 20.0 * (-0.2f64).exp();
        assert!(close(ackley(&[1.0, 1.0]), expected, 1e-12));
        assert!(close(ackley(&[1.0, 1.0]), 3.62538, 1e-5));
        assert!(ackley(&[32.0; 4]) > 19.0);
    }

    #[test]
    fn griewangk_examples() {
        assert_eq!(griewangk(&[0.0; 4]), 0.0);
        assert!(close(griewangk(&[600.0]), 91.0 - 600f64.cos(), 1e-12));
        assert!(close(griewangk(&[600.0]), 91.99902, 1e-5));
        let v = griewangk(&[PI, 0.0, 0.0]);
        assert!(close(v, 2.0 + PI * PI / 4000.0, 1e-12));
    }

    #[test]
    fn names_round_trip() {
        for f in BenchmarkFunction::ALL {
            assert_eq!(f.name().parse::<BenchmarkFunction>().unwrap(), f);
            let b = f.bounds();
            assert!(b.lower() < b.upper());
        }
    }
}
