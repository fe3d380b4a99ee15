//! Independent oracles and randomized invariant checks shared by the
//! integration tests and the acceptance runner.

#![allow(dead_code)]

use kbs::operators::{
    alpha_kbs, ax_crossover, beta_kbs, blx_alpha, blx_interval, gaussian_gene, sbx, uniform_gene,
};
use kbs::prelude::*;

pub type Check = std::result::Result<(), String>;

/// Mann-Whitney U₁ counted directly: pairs where the first sample is smaller,
/// ties counting one half.
pub fn pairwise_u1(a: &[f64], b: &[f64]) -> f64 {
    let mut u = 0.0;
    for &x in a {
        for &y in b {
            if x < y {
                u += 1.0;
            } else if x == y {
                u += 0.5;
            }
        }
    }
    u
}

/// Every sequence of length `1..=max_len` over `alphabet`.
pub fn all_sequences(alphabet: &[f64], max_len: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<f64>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                alphabet.iter().map(move |&v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every multiset of size `1..=max_len` over `alphabet` (U depends only on
/// the multisets, so this covers all orderings).
pub fn all_multisets(alphabet: &[f64], max_len: usize) -> Vec<Vec<f64>> {
    fn rec(
        alphabet: &[f64],
        start: usize,
        left: usize,
        cur: &mut Vec<f64>,
        out: &mut Vec<Vec<f64>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..alphabet.len() {
            cur.push(alphabet[i]);
            rec(alphabet, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(alphabet, 0, max_len, &mut Vec::new(), &mut out);
    out
}

/// Compares U₁, U₂ and U against the pairwise count for every pair of
/// samples of size at most `max_len` over `alphabet`. Returns the number of
/// pairs checked.
pub fn check_rank_oracle(
    alphabet: &[f64],
    max_len: usize,
    exhaustive_orders: bool,
) -> Result<usize, String> {
    let samples = if exhaustive_orders {
        all_sequences(alphabet, max_len)
    } else {
        all_multisets(alphabet, max_len)
    };
    let mut checked = 0;
    for a in &samples {
        for b in &samples {
            let r = mann_whitney_u(a, b).map_err(|e| e.to_string())?;
            let u1 = pairwise_u1(a, b);
            let u2 = pairwise_u1(b, a);
            if r.u1 != u1 || r.u2 != u2 || r.u != u1.min(u2) {
                return Err(format!(
                    "a={a:?} b={b:?}: got U1={} U2={}, oracle U1={u1} U2={u2}",
                    r.u1, r.u2
                ));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// The worked examples of the rank test.
pub fn check_rank_examples() -> Check {
    let r = mann_whitney_u(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).map_err(|e| e.to_string())?;
    if (r.rank_sum_1, r.rank_sum_2, r.u1, r.u2, r.u) != (6.0, 15.0, 9.0, 0.0, 0.0) {
        return Err(format!("separated samples: {r:?}"));
    }
    let r = mann_whitney_u(&[1.0, 1.0, 2.0], &[1.0, 3.0, 3.0]).map_err(|e| e.to_string())?;
    if (r.rank_sum_1, r.rank_sum_2, r.u1, r.u2, r.u) != (8.0, 13.0, 7.0, 2.0, 2.0) {
        return Err(format!("tied samples: {r:?}"));
    }
    let a = [0.5, 1.5, 4.0, 9.0, 2.25];
    let r = mann_whitney_u(&a, &a).map_err(|e| e.to_string())?;
    if r.u1 != 12.5 || r.u2 != 12.5 || r.z != 0.0 {
        return Err(format!("identical samples: {r:?}"));
    }
    let lo: Vec<f64> = (1..=20).map(f64::from).collect();
    let hi: Vec<f64> = (21..=40).map(f64::from).collect();
    let r = mann_whitney_u(&lo, &hi).map_err(|e| e.to_string())?;
    if !(r.z < 0.0 && r.significant(0.05)) {
        return Err(format!("[1..20] vs [21..40]: {r:?}"));
    }
    Ok(())
}

fn random_genome(n: usize, scale: f64, rng: &mut RngStream) -> Genome {
    Genome::new((0..n).map(|_| rng.uniform_in(-scale, scale)).collect())
}

fn random_pair(rng: &mut RngStream) -> (Genome, Genome) {
    let n = 1 + rng.index(50);
    let scale = [1e-3, 1.0, 5.12, 600.0, 1e6][rng.index(5)];
    (random_genome(n, scale, rng), random_genome(n, scale, rng))
}

/// `|sum(after) − sum(before)| ≤ tol · scale`, with the scale taken from the
/// magnitudes before and after.
pub fn sums_agree(before: (&[f64], &[f64]), after: (&[f64], &[f64]), tol: f64) -> bool {
    let total = |a: &[f64], b: &[f64]| a.iter().chain(b).sum::<f64>();
    let mag = |a: &[f64], b: &[f64]| a.iter().chain(b).map(|x| x.abs()).sum::<f64>();
    let scale = mag(before.0, before.1).max(mag(after.0, after.1));
    (total(after.0, after.1) - total(before.0, before.1)).abs() <= tol * scale
}

/// Same check for every locus separately (operators that never move genes
/// between loci).
pub fn locus_sums_agree(before: (&[f64], &[f64]), after: (&[f64], &[f64]), tol: f64) -> bool {
    (0..before.0.len()).all(|i| {
        sums_agree(
            (&before.0[i..=i], &before.1[i..=i]),
            (&after.0[i..=i], &after.1[i..=i]),
            tol,
        )
    })
}

pub const SUM_TOL: f64 = 1e-12;

pub fn check_sum_preservation(cases: usize, seed: u64) -> Check {
    let mut rng = RngStream::new(seed);
    for case in 0..cases {
        let (p1, p2) = random_pair(&mut rng);
        let n = p1.len();
        let before = (p1.genes(), p2.genes());
        let alpha = rng.uniform();
        let k = 1 + rng.index(n);

        let (a, b) = ax_crossover(&p1, &p2, alpha).map_err(|e| e.to_string())?;
        if !locus_sums_agree(before, (&a, &b), SUM_TOL) {
            return Err(format!("AX case {case}: {p1:?} {p2:?} -> {a:?} {b:?}"));
        }
        let (a, b) = sbx(&p1, &p2, 2.0, &mut rng).map_err(|e| e.to_string())?;
        if !locus_sums_agree(before, (&a, &b), SUM_TOL) {
            return Err(format!("SBX case {case}: {p1:?} {p2:?} -> {a:?} {b:?}"));
        }
        let (a, b) = alpha_kbs(&p1, &p2, alpha, k, &mut rng).map_err(|e| e.to_string())?;
        if !sums_agree(before, (&a, &b), SUM_TOL) {
            return Err(format!(
                "alpha KBS case {case}: {p1:?} {p2:?} -> {a:?} {b:?}"
            ));
        }
        let (a, b) = beta_kbs(&p1, &p2, alpha, 4.0, k, &mut rng).map_err(|e| e.to_string())?;
        if !sums_agree(before, (&a, &b), SUM_TOL) {
            return Err(format!(
                "beta KBS case {case}: {p1:?} {p2:?} -> {a:?} {b:?}"
            ));
        }
    }
    Ok(())
}

pub fn check_blx_containment(cases: usize, seed: u64) -> Check {
    let mut rng = RngStream::new(seed);
    for case in 0..cases {
        let (p1, p2) = random_pair(&mut rng);
        let alpha = rng.uniform_in(0.0, 1.0);
        let (a, b) = blx_alpha(&p1, &p2, alpha, &mut rng).map_err(|e| e.to_string())?;
        for i in 0..p1.len() {
            let lo = p1[i].min(p2[i]);
            let hi = p1[i].max(p2[i]);
            let ext = alpha * (hi - lo);
            for v in [a[i], b[i]] {
                if !(v >= lo - ext && v <= hi + ext) {
                    return Err(format!(
                        "case {case}: gene {v} outside [{}, {}]",
                        lo - ext,
                        hi + ext
                    ));
                }
            }
        }
        let (lo, hi) = blx_interval(p1[0], p2[0], alpha);
        if lo > p1[0].min(p2[0]) || hi < p1[0].max(p2[0]) {
            return Err(format!("case {case}: interval does not cover the parents"));
        }
    }
    Ok(())
}

fn sorted_bits(a: &[f64], b: &[f64]) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().chain(b).map(|x| x.to_bits()).collect();
    v.sort_unstable();
    v
}

pub fn check_swap_multiset(cases: usize, seed: u64) -> Check {
    let mut rng = RngStream::new(seed);
    for case in 0..cases {
        let (p1, p2) = random_pair(&mut rng);
        let k = 1 + rng.index(p1.len());
        let (a, b) = alpha_kbs(&p1, &p2, 0.0, k, &mut rng).map_err(|e| e.to_string())?;
        if sorted_bits(&p1, &p2) != sorted_bits(&a, &b) {
            return Err(format!("case {case}: gene multiset changed"));
        }
    }
    Ok(())
}

/// Mean and standard deviation of unclamped GM genes on [−10, 10] against
/// 0 and √20, each within three standard errors.
pub fn check_gaussian_moments(draws: usize, seed: u64) -> Check {
    let bounds = Bounds::new(-10.0, 10.0).unwrap();
    let mut rng = RngStream::new(seed);
    let xs: Vec<f64> = (0..draws)
        .map(|_| gaussian_gene(bounds, &mut rng))
        .collect();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let sigma = 20f64.sqrt();
    let se_mean = sigma / n.sqrt();
    let se_sd = sigma / (2.0 * (n - 1.0)).sqrt();
    if mean.abs() > 3.0 * se_mean {
        return Err(format!("mean {mean} vs 0 (3 SE = {})", 3.0 * se_mean));
    }
    if (sd - sigma).abs() > 3.0 * se_sd {
        return Err(format!("sd {sd} vs {sigma} (3 SE = {})", 3.0 * se_sd));
    }
    Ok(())
}

/// Kolmogorov-Smirnov distance between a sample and U(lo, hi).
pub fn ks_uniform(mut xs: Vec<f64>, lo: f64, hi: f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = ((x - lo) / (hi - lo)).clamp(0.0, 1.0);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

pub fn check_simple_uniformity(draws: usize, seed: u64) -> Check {
    let bounds = Bounds::new(-5.12, 5.12).unwrap();
    let mut rng = RngStream::new(seed);
    let xs: Vec<f64> = (0..draws).map(|_| uniform_gene(bounds, &mut rng)).collect();
    if xs.iter().any(|&x| !bounds.contains(x)) {
        return Err("gene outside bounds".into());
    }
    let d = ks_uniform(xs, -5.12, 5.12);
    let crit = ks_critical_1pct(draws);
    if d > crit {
        return Err(format!("KS distance {d} exceeds {crit}"));
    }
    Ok(())
}
