//! The generational GA loop.
//!
//! One generation evaluates the whole population, records its best value,
//! fills a mating pool by binary tournaments, recombines consecutive pool
//! pairs, mutates and clamps every offspring, then overwrites one random
//! offspring with a copy of the generation's best member. The offspring
//! become the next population, so its size never changes and the best value
//! per generation is non-increasing.

use crate::error::{Error, Result};
use crate::genome::{argmin, init_population, Bounds, Genome};
use crate::objectives::Objective;
use crate::operators::{
    check_pool, tournament_indices_into, Mutation, MutationKind, MutationParams, Recombination,
    RecombinationKind, RecombinationParams,
};
use crate::rng::RngStream;

/// Success tolerance: 0.01 for two-dimensional problems, 0.1 otherwise.
pub fn default_epsilon(n: usize) -> f64 {
    if n == 2 {
        0.01
    } else {
        0.1
    }
}

/// GA settings. Every pair in the pool is recombined and a single elite is
/// kept.
#[derive(Clone, Debug, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    /// Must equal `population_size`: the pool's offspring form the next population.
    pub pool_size: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub recombination: RecombinationKind,
    pub recombination_params: RecombinationParams,
    pub mutation: MutationKind,
    /// Per-gene mutation rate; `None` means `1/n`.
    pub mutation_rate: Option<f64>,
    /// Success tolerance; `None` means [`default_epsilon`].
    pub epsilon: Option<f64>,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 400,
            pool_size: 400,
            generations: 5000,
            tournament_size: 2,
            recombination: RecombinationKind::AlphaKbs,
            recombination_params: RecombinationParams::default(),
            mutation: MutationKind::Simple,
            mutation_rate: None,
            epsilon: None,
        }
    }
}

impl GaConfig {
    pub fn new(recombination: RecombinationKind, mutation: MutationKind) -> Self {
        Self {
            recombination,
            mutation,
            ..Self::default()
        }
    }

    pub fn with_generations(mut self, generations: usize) -> Self {
        self.generations = generations;
        self
    }

    pub fn with_population(mut self, size: usize) -> Self {
        self.population_size = size;
        self.pool_size = size;
        self
    }

    pub fn epsilon_for(&self, n: usize) -> f64 {
        self.epsilon.unwrap_or_else(|| default_epsilon(n))
    }

    pub fn validate(&self) -> Result<()> {
        if self.generations == 0 {
            return Err(Error::config("generations must be positive"));
        }
        if self.population_size < 2 {
            return Err(Error::config("population size must be at least 2"));
        }
        check_pool(self.pool_size, self.tournament_size)?;
        if self.pool_size != self.population_size {
            return Err(Error::config(format!(
                "pool size {} must equal population size {}",
                self.pool_size, self.population_size
            )));
        }
        if let Some(eps) = self.epsilon {
            if !eps.is_finite() {
                return Err(Error::config("epsilon must be finite"));
            }
        }
        Ok(())
    }
}

/// Trajectory and outcome of one GA run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    /// Best objective value of each evaluated generation.
    pub best_per_generation: Vec<f64>,
    /// 1-based generation whose best value first dropped below epsilon.
    pub first_hit_generation: Option<usize>,
    pub final_best_value: f64,
    pub final_best_genome: Genome,
    pub seed: u64,
    pub evaluations: u64,
}

/// Smallest 1-based `g` with `trace[g] < epsilon`.
pub fn first_hit(trace: &[f64], epsilon: f64) -> Option<usize> {
    trace.iter().position(|&v| v < epsilon).map(|i| i + 1)
}

/// A GA run that can be advanced one generation at a time.
pub struct Ga<'a, O: Objective + ?Sized> {
    objective: &'a O,
    bounds: Bounds,
    epsilon: f64,
    tournament_size: usize,
    recombination: Recombination,
    mutation: Mutation,
    rng: RngStream,
    members: Vec<Genome>,
    offspring: Vec<Genome>,
    fitness: Vec<f64>,
    pool: Vec<usize>,
    trace: Vec<f64>,
    first_hit: Option<usize>,
    best: usize,
    evaluations: u64,
}

impl<'a, O: Objective + ?Sized> Ga<'a, O> {
    pub fn new(config: &GaConfig, objective: &'a O, seed: u64) -> Result<Self> {
        config.validate()?;
        let n = objective.dim();
        if n == 0 {
            return Err(Error::config("objective dimension must be positive"));
        }
        let bounds = objective.bounds();
        let recombination =
            Recombination::resolve(config.recombination, &config.recombination_params, n)?;
        let rate = match config.mutation_rate {
            Some(r) => MutationParams::new(r)?,
            None => MutationParams::for_dim(n),
        };
        let mutation = Mutation::new(config.mutation, rate, bounds);
        let mut rng = RngStream::new(seed);
        let members = init_population(n, config.population_size, bounds, &mut rng)?.into_members();
        let offspring = members.clone();
        Ok(Self {
            objective,
            bounds,
            epsilon: config.epsilon_for(n),
            tournament_size: config.tournament_size,
            recombination,
            mutation,
            rng,
            offspring,
            fitness: vec![f64::NAN; members.len()],
            pool: vec![0; members.len()],
            members,
            trace: Vec::with_capacity(config.generations),
            first_hit: None,
            best: 0,
            evaluations: 0,
        })
    }

    /// Evaluates the current population and records its best value.
    fn evaluate(&mut self) -> f64 {
        for (f, m) in self.fitness.iter_mut().zip(&self.members) {
            *f = self.objective.evaluate(m);
        }
        self.evaluations += self.members.len() as u64;
        self.best = argmin(&self.fitness).expect("non-empty population");
        let best = self.fitness[self.best];
        self.trace.push(best);
        if self.first_hit.is_none() && best < self.epsilon {
            self.first_hit = Some(self.trace.len());
        }
        best
    }

    /// Produces the next population from the evaluated current one.
    fn breed(&mut self) {
        let rng = &mut self.rng;
        tournament_indices_into(&self.fitness, self.tournament_size, &mut self.pool, rng);
        for (pair, idx) in self
            .offspring
            .chunks_exact_mut(2)
            .zip(self.pool.chunks_exact(2))
        {
            let (a, b) = pair.split_at_mut(1);
            let (a, b) = (&mut a[0], &mut b[0]);
            a.clone_from(&self.members[idx[0]]);
            b.clone_from(&self.members[idx[1]]);
            self.recombination.apply_in_place(a, b, rng);
        }
        for child in &mut self.offspring {
            self.mutation.apply_in_place(child, rng);
            self.bounds.clamp_slice(child);
        }
        let slot = rng.index(self.offspring.len());
        self.offspring[slot].clone_from(&self.members[self.best]);
        std::mem::swap(&mut self.members, &mut self.offspring);
    }

    /// Runs one full generation and returns the best value it evaluated.
    pub fn step(&mut self) -> f64 {
        let best = self.evaluate();
        self.breed();
        best
    }

    /// Current population (after the most recent breeding step).
    pub fn population(&self) -> &[Genome] {
        &self.members
    }

    pub fn trace(&self) -> &[f64] {
        &self.trace
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Runs the GA for exactly `config.generations` generations.
///
/// The run continues after the first hit so the final value reflects the
/// whole budget. The population is evaluated `generations` times, one
/// evaluation per member each time.
pub fn run_ga<O: Objective + ?Sized>(
    config: &GaConfig,
    objective: &O,
    seed: u64,
) -> Result<RunRecord> {
    let mut ga = Ga::new(config, objective, seed)?;
    for g in 0..config.generations {
        ga.evaluate();
        if g + 1 < config.generations {
            ga.breed();
        }
    }
    let final_best_value = *ga.trace.last().expect("at least one generation");
    Ok(RunRecord {
        final_best_genome: ga.members[ga.best].clone(),
        final_best_value,
        first_hit_generation: ga.first_hit,
        best_per_generation: ga.trace,
        seed,
        evaluations: ga.evaluations,
    })
}
