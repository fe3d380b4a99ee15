//! Recombination, mutation and selection operators.
//!
//! The free functions (`ax_crossover`, `alpha_kbs`, `gaussian_mutation`, ...)
//! are the checked, allocating entry points. [`Recombination`] and
//! [`Mutation`] bundle an operator with its resolved parameters and drive the
//! in-place kernels used by the GA loop.

mod mutation;
mod recombination;
mod selection;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::{Bounds, Genome};
use crate::rng::RngStream;

pub use mutation::{gaussian_gene, gaussian_mutation, simple_mutation, uniform_gene};
pub use recombination::{
    alpha_kbs, ax_crossover, beta_kbs, beta_kbs_partner_index, blend_pair, blx_alpha, blx_interval,
    sbx, sbx_blend, sbx_spread_factor, sbx_with_mode, SbxMode,
};
pub use selection::{elitist_replacement, tournament_select};

pub(crate) use selection::{check_pool, tournament_indices_into};

/// Parameters shared by the recombination operators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RecombinationParams {
    /// Blend weight of αKBS/βKBS and λ of arithmetical crossover.
    pub alpha: f64,
    /// BLX-α interval extension.
    pub blx_alpha: f64,
    /// SBX distribution index.
    pub eta: f64,
    /// Swaps per pair for the KBS operators; `None` means `max(1, ⌊n/2⌋)`.
    pub k_swaps: Option<usize>,
    /// Variance of the βKBS position distribution.
    pub sigma_sq: f64,
    pub sbx_mode: SbxMode,
}

impl Default for RecombinationParams {
    fn default() -> Self {
        Self {
            alpha: 0.4,
            blx_alpha: 0.5,
            eta: 2.0,
            k_swaps: None,
            sigma_sq: 4.0,
            sbx_mode: SbxMode::PerLocus,
        }
    }
}

/// Default swap count for genomes of length `n`.
pub fn default_k_swaps(n: usize) -> usize {
    (n / 2).max(1)
}

impl RecombinationParams {
    pub fn k_swaps_for(&self, n: usize) -> usize {
        self.k_swaps.unwrap_or_else(|| default_k_swaps(n))
    }
}

/// Per-gene mutation probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MutationParams {
    per_gene_rate: f64,
}

impl MutationParams {
    pub fn new(per_gene_rate: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&per_gene_rate) {
            return Err(Error::config(format!(
                "mutation rate must lie in [0, 1], got {per_gene_rate}"
            )));
        }
        Ok(Self { per_gene_rate })
    }

    /// Rate `1/n`: one mutated gene per genome on average.
    pub fn for_dim(n: usize) -> Self {
        Self {
            per_gene_rate: 1.0 / n.max(1) as f64,
        }
    }

    pub fn per_gene_rate(&self) -> f64 {
        self.per_gene_rate
    }
}

/// Recombination operator identifier, as used in configs and CSV files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RecombinationKind {
    Ax,
    BlxAlpha,
    Sbx,
    AlphaKbs,
    BetaKbs,
    /// Offspring are exact copies of the parents.
    Identity,
}

impl RecombinationKind {
    pub const ALL: [RecombinationKind; 6] = [
        RecombinationKind::Ax,
        RecombinationKind::BlxAlpha,
        RecombinationKind::Sbx,
        RecombinationKind::AlphaKbs,
        RecombinationKind::BetaKbs,
        RecombinationKind::Identity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RecombinationKind::Ax => "ax",
            RecombinationKind::BlxAlpha => "blx_alpha",
            RecombinationKind::Sbx => "sbx",
            RecombinationKind::AlphaKbs => "alpha_kbs",
            RecombinationKind::BetaKbs => "beta_kbs",
            RecombinationKind::Identity => "identity",
        }
    }
}

impl fmt::Display for RecombinationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RecombinationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::config(format!("unknown recombination operator `{s}`")))
    }
}

/// Mutation operator identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MutationKind {
    /// Uniform resampling (SM).
    Simple,
    /// Gaussian around the domain midpoint (GM).
    Gaussian,
    Identity,
}

impl MutationKind {
    pub const ALL: [MutationKind; 3] = [
        MutationKind::Simple,
        MutationKind::Gaussian,
        MutationKind::Identity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MutationKind::Simple => "sm",
            MutationKind::Gaussian => "gm",
            MutationKind::Identity => "none",
        }
    }
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MutationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::config(format!("unknown mutation operator `{s}`")))
    }
}

/// A recombination operator with its parameters resolved for one genome length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Recombination {
    Arithmetic {
        lambda: f64,
    },
    Blend {
        alpha: f64,
    },
    SimulatedBinary {
        eta: f64,
        mode: SbxMode,
    },
    AlphaKbs {
        alpha: f64,
        k_swaps: usize,
    },
    BetaKbs {
        alpha: f64,
        sigma_sq: f64,
        k_swaps: usize,
    },
    Identity,
}

impl Recombination {
    /// Resolves `kind` against `params` for genomes of length `n`.
    pub fn resolve(
        kind: RecombinationKind,
        params: &RecombinationParams,
        n: usize,
    ) -> Result<Self> {
        let weight = |name: &str, w: f64| {
            if (0.0..=1.0).contains(&w) {
                Ok(w)
            } else {
                Err(Error::config(format!("{name} must lie in [0, 1], got {w}")))
            }
        };
        let swaps = || {
            let k = params.k_swaps_for(n);
            if k == 0 || k > n {
                Err(Error::config(format!(
                    "k_swaps = {k} is outside 1..={n} for genome length {n}"
                )))
            } else {
                Ok(k)
            }
        };
        Ok(match kind {
            RecombinationKind::Ax => Recombination::Arithmetic {
                lambda: weight("alpha", params.alpha)?,
            },
            RecombinationKind::BlxAlpha => {
                if !(params.blx_alpha >= 0.0) || !params.blx_alpha.is_finite() {
                    return Err(Error::config(format!(
                        "blx_alpha must be >= 0, got {}",
                        params.blx_alpha
                    )));
                }
                Recombination::Blend {
                    alpha: params.blx_alpha,
                }
            }
            RecombinationKind::Sbx => {
                if !(params.eta > 0.0) || !params.eta.is_finite() {
                    return Err(Error::config(format!(
                        "eta must be positive, got {}",
                        params.eta
                    )));
                }
                Recombination::SimulatedBinary {
                    eta: params.eta,
                    mode: params.sbx_mode,
                }
            }
            RecombinationKind::AlphaKbs => Recombination::AlphaKbs {
                alpha: weight("alpha", params.alpha)?,
                k_swaps: swaps()?,
            },
            RecombinationKind::BetaKbs => {
                if !(params.sigma_sq > 0.0) || !params.sigma_sq.is_finite() {
                    return Err(Error::config(format!(
                        "sigma_sq must be positive, got {}",
                        params.sigma_sq
                    )));
                }
                Recombination::BetaKbs {
                    alpha: weight("alpha", params.alpha)?,
                    sigma_sq: params.sigma_sq,
                    k_swaps: swaps()?,
                }
            }
            RecombinationKind::Identity => Recombination::Identity,
        })
    }

    pub fn kind(&self) -> RecombinationKind {
        match self {
            Recombination::Arithmetic { .. } => RecombinationKind::Ax,
            Recombination::Blend { .. } => RecombinationKind::BlxAlpha,
            Recombination::SimulatedBinary { .. } => RecombinationKind::Sbx,
            Recombination::AlphaKbs { .. } => RecombinationKind::AlphaKbs,
            Recombination::BetaKbs { .. } => RecombinationKind::BetaKbs,
            Recombination::Identity => RecombinationKind::Identity,
        }
    }

    /// Recombines two equal-length gene slices that hold copies of the parents.
    pub fn apply_in_place(&self, a: &mut [f64], b: &mut [f64], rng: &mut RngStream) {
        debug_assert_eq!(a.len(), b.len());
        match *self {
            Recombination::Arithmetic { lambda } => recombination::ax_in_place(a, b, lambda),
            Recombination::Blend { alpha } => recombination::blx_in_place(a, b, alpha, rng),
            Recombination::SimulatedBinary { eta, mode } => {
                recombination::sbx_in_place(a, b, eta, mode, rng)
            }
            Recombination::AlphaKbs { alpha, k_swaps } => {
                recombination::alpha_kbs_in_place(a, b, alpha, k_swaps, rng)
            }
            Recombination::BetaKbs {
                alpha,
                sigma_sq,
                k_swaps,
            } => recombination::beta_kbs_in_place(a, b, alpha, sigma_sq, k_swaps, rng),
            Recombination::Identity => {}
        }
    }

    pub fn apply(&self, p1: &Genome, p2: &Genome, rng: &mut RngStream) -> Result<(Genome, Genome)> {
        if p1.len() != p2.len() {
            return Err(Error::usage(format!(
                "parents differ in length: {} vs {}",
                p1.len(),
                p2.len()
            )));
        }
        let (mut a, mut b) = (p1.clone(), p2.clone());
        self.apply_in_place(&mut a, &mut b, rng);
        Ok((a, b))
    }
}

/// A mutation operator bound to a rate and problem bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mutation {
    kind: MutationKind,
    params: MutationParams,
    bounds: Bounds,
}

impl Mutation {
    pub fn new(kind: MutationKind, params: MutationParams, bounds: Bounds) -> Self {
        Self {
            kind,
            params,
            bounds,
        }
    }

    pub fn kind(&self) -> MutationKind {
        self.kind
    }

    pub fn apply_in_place(&self, genes: &mut [f64], rng: &mut RngStream) {
        let rate = self.params.per_gene_rate();
        match self.kind {
            MutationKind::Simple => mutation::simple_in_place(genes, self.bounds, rate, rng),
            MutationKind::Gaussian => mutation::gaussian_in_place(genes, self.bounds, rate, rng),
            MutationKind::Identity => {}
        }
    }
}
