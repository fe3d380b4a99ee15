//! Genomes, gene bounds and populations.

use std::ops::{Deref, DerefMut};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Fixed-length vector of real-valued genes.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Genome(Vec<f64>);

impl Genome {
    pub fn new(genes: Vec<f64>) -> Self {
        Genome(genes)
    }

    pub fn zeros(n: usize) -> Self {
        Genome(vec![0.0; n])
    }

    pub fn genes(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for Genome {
    fn from(genes: Vec<f64>) -> Self {
        Genome(genes)
    }
}

impl From<&[f64]> for Genome {
    fn from(genes: &[f64]) -> Self {
        Genome(genes.to_vec())
    }
}

impl Deref for Genome {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Genome {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl AsRef<[f64]> for Genome {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Lower and upper gene limits shared by every gene of a problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    lower: f64,
    upper: f64,
}

impl Bounds {
    /// Fails unless both limits are finite and `lower < upper`.
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::config(format!(
                "bounds must be finite, got [{lower}, {upper}]"
            )));
        }
        if lower >= upper {
            return Err(Error::config(format!(
                "lower bound {lower} must be below upper bound {upper}"
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.max(self.lower).min(self.upper)
    }

    pub fn clamp_slice(&self, genes: &mut [f64]) {
        for g in genes {
            *g = self.clamp(*g);
        }
    }
}

/// Copy of `g` with every gene clamped into `bounds`.
pub fn clamp_to_bounds(g: &Genome, bounds: Bounds) -> Genome {
    let mut out = g.clone();
    bounds.clamp_slice(&mut out);
    out
}

/// Fixed-size set of genomes with an optional, aligned fitness vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Population {
    members: Vec<Genome>,
    fitness: Option<Vec<f64>>,
}

impl Population {
    /// Population with fitness marked invalid.
    pub fn new(members: Vec<Genome>) -> Self {
        Self {
            members,
            fitness: None,
        }
    }

    pub fn with_fitness(members: Vec<Genome>, fitness: Vec<f64>) -> Result<Self> {
        if members.len() != fitness.len() {
            return Err(Error::usage(format!(
                "{} members but {} fitness values",
                members.len(),
                fitness.len()
            )));
        }
        Ok(Self {
            members,
            fitness: Some(fitness),
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Genome] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Genome> {
        self.members
    }

    /// Fitness values, or `None` while they are stale.
    pub fn fitness(&self) -> Option<&[f64]> {
        self.fitness.as_deref()
    }

    /// Evaluates every member and marks fitness valid.
    pub fn evaluate<F>(&mut self, mut objective: F)
    where
        F: FnMut(&[f64]) -> f64,
    {
        let fitness = self.members.iter().map(|m| objective(m)).collect();
        self.fitness = Some(fitness);
    }
}

/// Samples `size` genomes of length `dim`, each gene i.i.d. uniform in `bounds`.
pub fn init_population(
    dim: usize,
    size: usize,
    bounds: Bounds,
    rng: &mut RngStream,
) -> Result<Population> {
    if dim == 0 {
        return Err(Error::config("dimension must be positive"));
    }
    if size < 2 {
        return Err(Error::config(format!(
            "population size must be at least 2, got {size}"
        )));
    }
    let members = (0..size)
        .map(|_| {
            (0..dim)
                .map(|_| bounds.clamp(rng.uniform_in(bounds.lower(), bounds.upper())))
                .collect::<Vec<_>>()
                .into()
        })
        .collect();
    Ok(Population::new(members))
}

/// Index of the minimum of `fitness`; ties go to the lowest index.
pub(crate) fn argmin(fitness: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &f) in fitness.iter().enumerate() {
        match best {
            Some(b) if !(f < fitness[b]) => {}
            _ => best = Some(i),
        }
    }
    best
}

/// The fittest (lowest objective) member: `(index, genome, fitness)`.
pub fn best_of(pop: &Population) -> Result<(usize, &Genome, f64)> {
    if pop.is_empty() {
        return Err(Error::usage("best_of on an empty population"));
    }
    let fitness = pop
        .fitness()
        .ok_or_else(|| Error::usage("best_of requires evaluated fitness"))?;
    let i = argmin(fitness).expect("non-empty");
    Ok((i, &pop.members[i], fitness[i]))
}
