//! The k-means clustering objective, its point datasets and a Lloyd baseline.
//!
//! The objective for centroids `μ₁..μₖ` is
//! `Σⱼ sqrt(Σ_{x ∈ Sⱼ} ‖x − μⱼ‖²)`, where `Sⱼ` holds the points whose nearest
//! centroid is `μⱼ` (ties to the lowest index). An empty cluster contributes 0.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::genome::{Bounds, Genome};
use crate::objectives::Objective;
use crate::rng::RngStream;

/// Default dataset size and coordinate interval.
pub const DEFAULT_POINTS: usize = 100;
pub const DEFAULT_INTERVAL: (f64, f64) = (0.0, 10.0);

/// A fixed cloud of `m` points in `d` dimensions, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    coords: Vec<f64>,
    dim: usize,
    seed: u64,
}

impl Dataset {
    pub fn from_points(points: &[Vec<f64>], seed: u64) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::config(
                "dataset needs at least one point of positive dimension",
            ));
        }
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::config("dataset points differ in dimension"));
        }
        Ok(Self {
            coords: points.concat(),
            dim,
            seed,
        })
    }

    /// `m` points with coordinates i.i.d. uniform in `interval`. Requires `m > k`.
    pub fn generate(m: usize, d: usize, k: usize, interval: Bounds, seed: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::config("dataset dimension must be positive"));
        }
        if m <= k {
            return Err(Error::config(format!(
                "dataset needs more points than clusters (m = {m}, k = {k})"
            )));
        }
        let mut rng = RngStream::new(seed);
        let coords = (0..m * d)
            .map(|_| interval.clamp(rng.uniform_in(interval.lower(), interval.upper())))
            .collect();
        Ok(Self {
            coords,
            dim: d,
            seed,
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// Writes the header line `m d seed` and one point per line with 17
    /// significant digits per coordinate.
    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{} {} {}", self.len(), self.dim, self.seed)?;
        for p in self.points() {
            let mut first = true;
            for x in p {
                if !first {
                    w.write_all(b" ")?;
                }
                first = false;
                write!(w, "{x:.16e}")?;
            }
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let bad = |msg: String| Error::config(format!("malformed dataset: {msg}"));
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| bad("missing header".into()))?
            .map_err(|e| bad(e.to_string()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [m, d, seed] = fields[..] else {
            return Err(bad(format!("header `{header}` is not `m d seed`")));
        };
        let m: usize = m
            .parse()
            .map_err(|_| bad(format!("bad point count `{m}`")))?;
        let d: usize = d.parse().map_err(|_| bad(format!("bad dimension `{d}`")))?;
        let seed: u64 = seed
            .parse()
            .map_err(|_| bad(format!("bad seed `{seed}`")))?;
        if d == 0 {
            return Err(bad("dimension must be positive".into()));
        }
        let mut coords = Vec::with_capacity(m * d);
        for (row, line) in lines.enumerate() {
            let line = line.map_err(|e| bad(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let before = coords.len();
            for tok in line.split_whitespace() {
                coords.push(
                    tok.parse::<f64>()
                        .map_err(|_| bad(format!("row {}: bad number `{tok}`", row + 1)))?,
                );
            }
            if coords.len() - before != d {
                return Err(bad(format!(
                    "row {} has {} coordinates, expected {d}",
                    row + 1,
                    coords.len() - before
                )));
            }
        }
        if coords.len() != m * d {
            return Err(bad(format!(
                "expected {m} points, found {}",
                coords.len() / d
            )));
        }
        Ok(Self {
            coords,
            dim: d,
            seed,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        self.write_to(&mut w)
            .and_then(|_| w.flush())
            .map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(BufReader::new(file))
    }

    /// Smallest interval containing every coordinate.
    pub fn coordinate_range(&self) -> (f64, f64) {
        self.coords
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            })
    }
}

/// `m` points uniform in `[0, 10]^d`, seeded.
pub fn generate_dataset(m: usize, d: usize, k: usize, seed: u64) -> Result<Dataset> {
    let interval = Bounds::new(DEFAULT_INTERVAL.0, DEFAULT_INTERVAL.1)?;
    Dataset::generate(m, d, k, interval, seed)
}

/// `k` centroids of dimension `d`. As a genome they are concatenated.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusteringSolution {
    pub centroids: Vec<Vec<f64>>,
}

impl ClusteringSolution {
    pub fn from_genome(genome: &[f64], k: usize, d: usize) -> Result<Self> {
        if genome.len() != k * d {
            return Err(Error::usage(format!(
                "genome of length {} cannot hold {k} centroids of dimension {d}",
                genome.len()
            )));
        }
        Ok(Self {
            centroids: genome.chunks_exact(d).map(<[f64]>::to_vec).collect(),
        })
    }

    pub fn to_genome(&self) -> Genome {
        Genome::new(self.centroids.concat())
    }
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Nearest centroid (lowest index on ties) and its squared distance.
#[inline]
fn nearest(point: &[f64], centroids: &[f64], d: usize) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centroids.chunks_exact(d).enumerate() {
        let dist = sq_dist(point, c);
        if dist < best.1 {
            best = (j, dist);
        }
    }
    best
}

pub(crate) fn kmeans_objective_unchecked(centroids: &[f64], data: &Dataset, k: usize) -> f64 {
    cluster_costs(centroids, data, k).0
}

/// Clustering objective and total within-cluster squared error under the
/// nearest-centroid assignment.
fn cluster_costs(centroids: &[f64], data: &Dataset, k: usize) -> (f64, f64) {
    let d = data.dim();
    let mut sse = [0.0f64; 16];
    let mut heap;
    let sse: &mut [f64] = if k <= sse.len() {
        &mut sse[..k]
    } else {
        heap = vec![0.0; k];
        &mut heap
    };
    for p in data.points() {
        let (j, dist) = nearest(p, centroids, d);
        sse[j] += dist;
    }
    (sse.iter().map(|s| s.sqrt()).sum(), sse.iter().sum())
}

/// Clustering objective of the `k` centroids encoded in `genome`.
pub fn kmeans_objective(genome: &[f64], data: &Dataset, k: usize) -> Result<f64> {
    if k == 0 || genome.len() != k * data.dim() {
        return Err(Error::usage(format!(
            "genome length {} does not match k·d = {}·{}",
            genome.len(),
            k,
            data.dim()
        )));
    }
    Ok(kmeans_objective_unchecked(genome, data, k))
}

/// The k-means objective as a GA problem over concatenated centroids.
#[derive(Clone, Debug)]
pub struct KMeansProblem<'a> {
    data: &'a Dataset,
    k: usize,
    bounds: Bounds,
}

impl<'a> KMeansProblem<'a> {
    pub fn new(data: &'a Dataset, k: usize, bounds: Bounds) -> Result<Self> {
        if k == 0 || data.len() <= k {
            return Err(Error::config(format!(
                "k = {k} needs 0 < k < number of points ({})",
                data.len()
            )));
        }
        Ok(Self { data, k, bounds })
    }

    /// Gene bounds taken from the dataset's coordinate range.
    pub fn from_data(data: &'a Dataset, k: usize) -> Result<Self> {
        let (lo, hi) = data.coordinate_range();
        Self::new(data, k, Bounds::new(lo, hi)?)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn data(&self) -> &Dataset {
        self.data
    }
}

impl Objective for KMeansProblem<'_> {
    fn dim(&self) -> usize {
        self.k * self.data.dim()
    }

    fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        kmeans_objective_unchecked(x, self.data, self.k)
    }
}

/// Result of one Lloyd run.
#[derive(Clone, Debug, PartialEq)]
pub struct LloydOutcome {
    pub solution: ClusteringSolution,
    /// Clustering objective of the final centroids.
    pub objective: f64,
    /// Clustering objective after initialisation and after every update step.
    /// Not monotone in general: nearest-centroid reassignment lowers the total
    /// squared error, not the sum of per-cluster roots.
    pub trace: Vec<f64>,
    /// Total within-cluster squared error at the same points; never increases.
    pub sse_trace: Vec<f64>,
    /// Number of assignment steps performed.
    pub iterations: usize,
}

/// Lloyd's algorithm seeded with `k` distinct data points.
///
/// Alternates nearest-centroid assignment and mean updates until the
/// assignment no longer changes or `max_iter` assignments were made. A
/// cluster left empty is re-seeded with a random data point.
pub fn lloyd(
    data: &Dataset,
    k: usize,
    rng: &mut RngStream,
    max_iter: usize,
) -> Result<LloydOutcome> {
    let m = data.len();
    let d = data.dim();
    if k == 0 || m <= k {
        return Err(Error::config(format!(
            "lloyd needs 0 < k < m (k = {k}, m = {m})"
        )));
    }
    if max_iter == 0 {
        return Err(Error::config("max_iter must be positive"));
    }
    let mut centroids: Vec<f64> = rand::seq::index::sample(rng, m, k)
        .into_iter()
        .flat_map(|i| data.point(i).to_vec())
        .collect();
    let (obj, sse) = cluster_costs(&centroids, data, k);
    let mut trace = vec![obj];
    let mut sse_trace = vec![sse];
    let mut assignment = vec![usize::MAX; m];
    let mut sums = vec![0.0; k * d];
    let mut counts = vec![0usize; k];
    let mut iterations = 0;

    while iterations < max_iter {
        iterations += 1;
        let mut changed = false;
        for (i, p) in data.points().enumerate() {
            let (j, _) = nearest(p, &centroids, d);
            if assignment[i] != j {
                assignment[i] = j;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        sums.iter_mut().for_each(|s| *s = 0.0);
        counts.iter_mut().for_each(|c| *c = 0);
        for (i, p) in data.points().enumerate() {
            let j = assignment[i];
            counts[j] += 1;
            for (s, x) in sums[j * d..(j + 1) * d].iter_mut().zip(p) {
                *s += x;
            }
        }
        for j in 0..k {
            let c = &mut centroids[j * d..(j + 1) * d];
            if counts[j] == 0 {
                c.copy_from_slice(data.point(rng.index(m)));
            } else {
                let n = counts[j] as f64;
                for (cx, s) in c.iter_mut().zip(&sums[j * d..(j + 1) * d]) {
                    *cx = s / n;
                }
            }
        }
        let (obj, sse) = cluster_costs(&centroids, data, k);
        trace.push(obj);
        sse_trace.push(sse);
    }

    let objective = *trace.last().expect("non-empty trace");
    Ok(LloydOutcome {
        solution: ClusteringSolution::from_genome(&centroids, k, d)?,
        objective,
        trace,
        sse_trace,
        iterations,
    })
}
