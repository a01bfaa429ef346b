//! Lloyd's K-Means with a seeded farthest-point start.

use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ClusterError, Labeling};
use crate::geometry::{BBox, Point2D};

const DEFAULT_MAX_ITER: usize = 100;
const DEFAULT_RELATIVE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KMeansParams {
    pub k: usize,
    #[cfg_attr(feature = "serde", serde(default = "default_max_iter"))]
    pub max_iter: usize,
    #[cfg_attr(feature = "serde", serde(default))]
    pub seed: u64,
    /// Stop once no centroid moves this far. `None` means 1e-6 of the data's
    /// bounding-box diagonal.
    #[cfg_attr(feature = "serde", serde(default))]
    pub tol: Option<f64>,
}

#[cfg(feature = "serde")]
fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}

impl KMeansParams {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            max_iter: DEFAULT_MAX_ITER,
            seed,
            tol: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KMeansFit {
    pub labeling: Labeling,
    /// Indexed by cluster id.
    pub centroids: Vec<Point2D>,
    /// Sum of squared distances after every assignment step.
    pub inertia_history: Vec<f64>,
    pub iterations: usize,
}

impl KMeansFit {
    pub fn inertia(&self) -> f64 {
        self.inertia_history.last().copied().unwrap_or(0.0)
    }
}

pub fn kmeans(points: &[Point2D], params: &KMeansParams) -> Result<Labeling, ClusterError> {
    kmeans_fit(points, params).map(|f| f.labeling)
}

/// Runs K-Means and keeps the per-iteration inertia.
///
/// The first centre is drawn with the seeded generator; each following one is
/// the point farthest from all centres chosen so far. A cluster that loses
/// all its points is re-seeded at the point farthest from its own centroid.
/// Cluster ids are ordered by centroid, x first, then y.
pub fn kmeans_fit(points: &[Point2D], params: &KMeansParams) -> Result<KMeansFit, ClusterError> {
    let k = params.k;
    if k == 0 {
        return Err(ClusterError::InvalidParam("k must be at least 1"));
    }
    if params.max_iter == 0 {
        return Err(ClusterError::InvalidParam("max_iter must be at least 1"));
    }
    if !points.iter().all(Point2D::is_finite) {
        return Err(ClusterError::InvalidParam("non-finite coordinate"));
    }
    let mut distinct = points.to_vec();
    distinct.sort_unstable_by(Point2D::lex_cmp);
    distinct.dedup();
    if k > distinct.len() {
        return Err(ClusterError::InvalidParam(
            "k exceeds the number of distinct points",
        ));
    }
    let tol = match params.tol {
        Some(t) if t >= 0.0 => t,
        Some(_) => return Err(ClusterError::InvalidParam("tol must be non-negative")),
        None => DEFAULT_RELATIVE_TOL * BBox::of(points).map_or(0.0, |b| b.diagonal()),
    };

    let mut centroids = farthest_point_start(points, k, params.seed);
    let mut assignment = vec![0usize; points.len()];
    let mut inertia_history = Vec::new();
    let mut iterations = 0;

    while iterations < params.max_iter {
        iterations += 1;
        inertia_history.push(assign(points, &centroids, &mut assignment));

        let mut sums = vec![(0.0f64, 0.0f64); k];
        let mut counts = vec![0usize; k];
        for (p, &c) in points.iter().zip(&assignment) {
            sums[c].0 += p.x;
            sums[c].1 += p.y;
            counts[c] += 1;
        }
        let mut next: Vec<Point2D> = (0..k)
            .map(|c| {
                if counts[c] > 0 {
                    Point2D::new(sums[c].0 / counts[c] as f64, sums[c].1 / counts[c] as f64)
                } else {
                    centroids[c]
                }
            })
            .collect();
        reseed_empty(points, &mut assignment, &mut counts, &mut next);

        let shift = centroids
            .iter()
            .zip(&next)
            .map(|(a, b)| a.dist(b))
            .fold(0.0, f64::max);
        centroids = next;
        if shift < tol {
            break;
        }
    }
    inertia_history.push(assign(points, &centroids, &mut assignment));

    // Rank surviving clusters by centroid position.
    let mut used = vec![false; k];
    for &c in &assignment {
        used[c] = true;
    }
    let mut order: Vec<usize> = (0..k).filter(|&c| used[c]).collect();
    order.sort_by(|&a, &b| centroids[a].lex_cmp(&centroids[b]).then(a.cmp(&b)));
    let mut rank = vec![0i32; k];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r as i32;
    }
    let labels = assignment.iter().map(|&c| rank[c]).collect();

    Ok(KMeansFit {
        labeling: Labeling {
            labels,
            n_clusters: order.len(),
        },
        centroids: order.iter().map(|&c| centroids[c]).collect(),
        inertia_history,
        iterations,
    })
}

fn farthest_point_start(points: &[Point2D], k: usize, seed: u64) -> Vec<Point2D> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = points[rng.random_range(0..points.len())];
    let mut centroids = Vec::with_capacity(k);
    centroids.push(first);
    let mut nearest: Vec<f64> = points.iter().map(|p| p.dist2(&first)).collect();
    while centroids.len() < k {
        let (far, _) = nearest
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &d)| {
                if d > best.1 {
                    (i, d)
                } else {
                    best
                }
            });
        let c = points[far];
        centroids.push(c);
        for (d, p) in nearest.iter_mut().zip(points) {
            *d = d.min(p.dist2(&c));
        }
    }
    centroids
}

/// Nearest-centroid assignment (lowest index on ties). Returns the inertia.
fn assign(points: &[Point2D], centroids: &[Point2D], assignment: &mut [usize]) -> f64 {
    let mut inertia = 0.0;
    for (p, slot) in points.iter().zip(assignment.iter_mut()) {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (c, centroid) in centroids.iter().enumerate() {
            let d = p.dist2(centroid);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        *slot = best;
        inertia += best_d;
    }
    inertia
}

fn reseed_empty(
    points: &[Point2D],
    assignment: &mut [usize],
    counts: &mut [usize],
    centroids: &mut [Point2D],
) {
    for empty in 0..counts.len() {
        if counts[empty] > 0 {
            continue;
        }
        let mut far = None;
        let mut far_d = -1.0;
        for (i, p) in points.iter().enumerate() {
            let c = assignment[i];
            if counts[c] < 2 {
                continue;
            }
            let d = p.dist2(&centroids[c]);
            if d > far_d {
                far_d = d;
                far = Some(i);
            }
        }
        if let Some(i) = far {
            counts[assignment[i]] -= 1;
            assignment[i] = empty;
            counts[empty] = 1;
            centroids[empty] = points[i];
        }
    }
}
