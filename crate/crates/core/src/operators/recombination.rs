//! Two-parent recombination operators.
//!
//! Every operator here works on copies of the parents: the `*_in_place`
//! kernels receive two gene slices initialised with the parent values and
//! overwrite them with the offspring. The allocating wrappers check lengths
//! and parameters before delegating to the kernels.

use crate::error::{Error, Result};
use crate::genome::Genome;
use crate::rng::RngStream;

fn check_pair(p1: &[f64], p2: &[f64]) -> Result<()> {
    if p1.len() != p2.len() {
        return Err(Error::usage(format!(
            "parents differ in length: {} vs {}",
            p1.len(),
            p2.len()
        )));
    }
    Ok(())
}

fn check_weight(name: &str, w: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::usage(format!("{name} must lie in [0, 1], got {w}")));
    }
    Ok(())
}

fn check_swaps(k_swaps: usize, n: usize) -> Result<()> {
    if k_swaps < 1 {
        return Err(Error::usage("k_swaps must be at least 1"));
    }
    if k_swaps > n {
        return Err(Error::usage(format!(
            "k_swaps = {k_swaps} exceeds genome length {n}"
        )));
    }
    Ok(())
}

/// Convex blend of two values with weight `w` on the first:
/// `(w·v1 + (1−w)·v2, (1−w)·v1 + w·v2)`.
///
/// `w = 0` is an exact exchange and `w = 1` the identity.
#[inline]
pub fn blend_pair(v1: f64, v2: f64, w: f64) -> (f64, f64) {
    if w == 0.0 {
        (v2, v1)
    } else if w == 1.0 {
        (v1, v2)
    } else {
        (w * v1 + (1.0 - w) * v2, (1.0 - w) * v1 + w * v2)
    }
}

pub(crate) fn ax_in_place(a: &mut [f64], b: &mut [f64], lambda: f64) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        (*x, *y) = blend_pair(*x, *y, lambda);
    }
}

/// Arithmetical crossover: `h1 = λ·c1 + (1−λ)·c2`, `h2 = λ·c2 + (1−λ)·c1` at
/// every locus.
pub fn ax_crossover(p1: &Genome, p2: &Genome, lambda: f64) -> Result<(Genome, Genome)> {
    check_pair(p1, p2)?;
    check_weight("lambda", lambda)?;
    let (mut a, mut b) = (p1.clone(), p2.clone());
    ax_in_place(&mut a, &mut b, lambda);
    Ok((a, b))
}

/// Interval `[C_min − I·α, C_max + I·α]` sampled by BLX-α at one locus.
pub fn blx_interval(c1: f64, c2: f64, alpha: f64) -> (f64, f64) {
    let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
    let ext = (hi - lo) * alpha;
    (lo - ext, hi + ext)
}

pub(crate) fn blx_in_place(a: &mut [f64], b: &mut [f64], alpha: f64, rng: &mut RngStream) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (lo, hi) = blx_interval(*x, *y, alpha);
        if lo == hi {
            // Identical parents: the interval is a single point.
            continue;
        }
        *x = rng.uniform_in(lo, hi);
        *y = rng.uniform_in(lo, hi);
    }
}

/// BLX-α: each offspring gene is drawn uniformly from the parents' interval
/// extended by `alpha` times its width on both sides.
pub fn blx_alpha(
    p1: &Genome,
    p2: &Genome,
    alpha: f64,
    rng: &mut RngStream,
) -> Result<(Genome, Genome)> {
    check_pair(p1, p2)?;
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::usage(format!("BLX alpha must be >= 0, got {alpha}")));
    }
    let (mut a, mut b) = (p1.clone(), p2.clone());
    blx_in_place(&mut a, &mut b, alpha, rng);
    Ok((a, b))
}

/// How many spread factors SBX draws per parent pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SbxMode {
    /// A fresh `u` (and spread factor) at every locus.
    #[default]
    PerLocus,
    /// One spread factor shared by all loci of the pair.
    PerPair,
}

/// SBX spread factor for a uniform deviate `u` and distribution index `eta`.
#[inline]
pub fn sbx_spread_factor(u: f64, eta: f64) -> f64 {
    let e = 1.0 / (eta + 1.0);
    if u < 0.5 {
        (2.0 * u).powf(e)
    } else {
        (2.0 * (1.0 - u)).powf(-e)
    }
}

/// SBX offspring values at one locus for spread factor `beta`.
#[inline]
pub fn sbx_blend(x: f64, y: f64, beta: f64) -> (f64, f64) {
    (
        0.5 * (x * (1.0 - beta) + y * (1.0 + beta)),
        0.5 * (x * (1.0 + beta) + y * (1.0 - beta)),
    )
}

pub(crate) fn sbx_in_place(
    a: &mut [f64],
    b: &mut [f64],
    eta: f64,
    mode: SbxMode,
    rng: &mut RngStream,
) {
    let mut shared = None;
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let beta = match mode {
            SbxMode::PerLocus => sbx_spread_factor(rng.uniform(), eta),
            SbxMode::PerPair => {
                *shared.get_or_insert_with(|| sbx_spread_factor(rng.uniform(), eta))
            }
        };
        (*x, *y) = sbx_blend(*x, *y, beta);
    }
}

/// Simulated binary crossover with distribution index `eta`, one spread
/// factor per locus.
pub fn sbx(p1: &Genome, p2: &Genome, eta: f64, rng: &mut RngStream) -> Result<(Genome, Genome)> {
    sbx_with_mode(p1, p2, eta, SbxMode::PerLocus, rng)
}

pub fn sbx_with_mode(
    p1: &Genome,
    p2: &Genome,
    eta: f64,
    mode: SbxMode,
    rng: &mut RngStream,
) -> Result<(Genome, Genome)> {
    check_pair(p1, p2)?;
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::usage(format!("eta must be positive, got {eta}")));
    }
    let (mut a, mut b) = (p1.clone(), p2.clone());
    sbx_in_place(&mut a, &mut b, eta, mode, rng);
    Ok((a, b))
}

pub(crate) fn alpha_kbs_in_place(
    a: &mut [f64],
    b: &mut [f64],
    alpha: f64,
    k_swaps: usize,
    rng: &mut RngStream,
) {
    let n = a.len();
    for _ in 0..k_swaps {
        let i = rng.index(n);
        let j = rng.index(n);
        (a[i], b[j]) = blend_pair(a[i], b[j], alpha);
    }
}

/// αKBS: `k_swaps` times, blend a uniformly chosen value of the first string
/// with an independently, uniformly chosen value of the second.
///
/// Positions are drawn with replacement and swaps apply sequentially.
/// `alpha = 0` recovers the plain K-Bit-Swap, which exchanges the two values.
pub fn alpha_kbs(
    p1: &Genome,
    p2: &Genome,
    alpha: f64,
    k_swaps: usize,
    rng: &mut RngStream,
) -> Result<(Genome, Genome)> {
    check_pair(p1, p2)?;
    check_weight("alpha", alpha)?;
    check_swaps(k_swaps, p1.len())?;
    let (mut a, mut b) = (p1.clone(), p2.clone());
    alpha_kbs_in_place(&mut a, &mut b, alpha, k_swaps, rng);
    Ok((a, b))
}

/// Second-string position for βKBS: `mu + sigma·z` rounded to the nearest
/// index and clamped to `0..n`.
#[inline]
pub fn beta_kbs_partner_index(mu: usize, sigma: f64, z: f64, n: usize) -> usize {
    let u = (mu as f64 + sigma * z).round();
    if u <= 0.0 {
        0
    } else if u >= (n - 1) as f64 {
        n - 1
    } else {
        u as usize
    }
}

pub(crate) fn beta_kbs_in_place(
    a: &mut [f64],
    b: &mut [f64],
    alpha: f64,
    sigma_sq: f64,
    k_swaps: usize,
    rng: &mut RngStream,
) {
    let n = a.len();
    let sigma = sigma_sq.sqrt();
    for _ in 0..k_swaps {
        let i = rng.index(n);
        let j = beta_kbs_partner_index(i, sigma, rng.normal(), n);
        (a[i], b[j]) = blend_pair(a[i], b[j], alpha);
    }
}

/// βKBS: like [`alpha_kbs`], but the second position is drawn from a normal
/// distribution with variance `sigma_sq` centred on the first position.
pub fn beta_kbs(
    p1: &Genome,
    p2: &Genome,
    alpha: f64,
    sigma_sq: f64,
    k_swaps: usize,
    rng: &mut RngStream,
) -> Result<(Genome, Genome)> {
    check_pair(p1, p2)?;
    check_weight("alpha", alpha)?;
    check_swaps(k_swaps, p1.len())?;
    if !(sigma_sq > 0.0) || !sigma_sq.is_finite() {
        return Err(Error::usage(format!(
            "sigma_sq must be positive, got {sigma_sq}"
        )));
    }
    let (mut a, mut b) = (p1.clone(), p2.clone());
    beta_kbs_in_place(&mut a, &mut b, alpha, sigma_sq, k_swaps, rng);
    Ok((a, b))
}
