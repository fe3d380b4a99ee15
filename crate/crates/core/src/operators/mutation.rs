//! Per-gene mutation operators.
//!
//! Both operators ignore the current gene value: a selected gene is redrawn
//! from a distribution defined by the problem bounds alone.

use crate::genome::{Bounds, Genome};
use crate::operators::MutationParams;
use crate::rng::RngStream;

/// Unclamped Gaussian mutation value: `(u1+u2)/2 + sqrt(u2−u1)·Z`.
#[inline]
pub fn gaussian_gene(bounds: Bounds, rng: &mut RngStream) -> f64 {
    bounds.midpoint() + bounds.width().sqrt() * rng.normal()
}

/// Simple mutation value: `(u2−u1)·U + u1`.
#[inline]
pub fn uniform_gene(bounds: Bounds, rng: &mut RngStream) -> f64 {
    bounds.lower() + bounds.width() * rng.uniform()
}

pub(crate) fn gaussian_in_place(genes: &mut [f64], bounds: Bounds, rate: f64, rng: &mut RngStream) {
    for x in genes {
        if rng.chance(rate) {
            *x = bounds.clamp(gaussian_gene(bounds, rng));
        }
    }
}

pub(crate) fn simple_in_place(genes: &mut [f64], bounds: Bounds, rate: f64, rng: &mut RngStream) {
    for x in genes {
        if rng.chance(rate) {
            *x = bounds.clamp(uniform_gene(bounds, rng));
        }
    }
}

/// Gaussian mutation (GM). Each gene is replaced with probability
/// `params.per_gene_rate` and the result is clamped to `bounds`.
pub fn gaussian_mutation(
    g: &Genome,
    bounds: Bounds,
    params: MutationParams,
    rng: &mut RngStream,
) -> Genome {
    let mut out = g.clone();
    gaussian_in_place(&mut out, bounds, params.per_gene_rate(), rng);
    out
}

/// Simple mutation (SM). Each gene is resampled uniformly in `bounds` with
/// probability `params.per_gene_rate`.
pub fn simple_mutation(
    g: &Genome,
    bounds: Bounds,
    params: MutationParams,
    rng: &mut RngStream,
) -> Genome {
    let mut out = g.clone();
    simple_in_place(&mut out, bounds, params.per_gene_rate(), rng);
    out
}
