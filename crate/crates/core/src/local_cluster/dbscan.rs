//! Density-based clustering with interchangeable neighbourhood backends.

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use super::{build_grid_index, ClusterError, Labeling, NOISE};
use crate::geometry::Point2D;
use crate::Clock;

/// Largest point count for which the distance-matrix backend will allocate.
pub const DEFAULT_MATRIX_CAP: usize = 60_000;

/// How neighbourhoods are found.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum DbscanBackend {
    /// Uniform grid with cells of side `eps`.
    #[default]
    GridIndex,
    /// Precomputed pairwise distances; O(n²) memory.
    DistanceMatrix,
    /// Linear scan per query.
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DbscanParams {
    /// Neighbourhood radius.
    pub eps: f64,
    /// Neighbours (the point itself included) needed to be a core point.
    pub min_pts: usize,
    #[cfg_attr(feature = "serde", serde(default))]
    pub backend: DbscanBackend,
}

impl DbscanParams {
    pub fn new(eps: f64, min_pts: usize) -> Self {
        Self {
            eps,
            min_pts,
            backend: DbscanBackend::default(),
        }
    }

    pub fn with_backend(self, backend: DbscanBackend) -> Self {
        Self { backend, ..self }
    }

    pub fn validate(&self) -> Result<(), ClusterError> {
        if self.eps <= 0.0 || !self.eps.is_finite() {
            return Err(ClusterError::InvalidParam(
                "eps must be positive and finite",
            ));
        }
        if self.min_pts == 0 {
            return Err(ClusterError::InvalidParam("min_pts must be at least 1"));
        }
        Ok(())
    }
}

/// Clusters `points` with the backend selected in `params`.
///
/// Core points have at least `min_pts` points within `eps` (themselves
/// included). Clusters are grown from the lowest-id unvisited core point, so
/// ids follow discovery order and a border point reachable from several
/// clusters joins the one discovered first. The partition does not depend on
/// the backend.
pub fn dbscan(points: &[Point2D], params: &DbscanParams) -> Result<Labeling, ClusterError> {
    params.validate()?;
    let eps2 = params.eps * params.eps;
    match params.backend {
        DbscanBackend::GridIndex => {
            let grid = build_grid_index(points, params.eps)?;
            Ok(expand_clusters(points.len(), params.min_pts, |i, out| {
                grid.region_query_into(points, i, params.eps, out)
            }))
        }
        DbscanBackend::BruteForce => Ok(expand_clusters(points.len(), params.min_pts, |i, out| {
            out.clear();
            let c = points[i];
            out.extend((0..points.len()).filter(|&j| c.dist2(&points[j]) <= eps2));
        })),
        DbscanBackend::DistanceMatrix => {
            let matrix = DistanceMatrix::build(points, DEFAULT_MATRIX_CAP)?;
            dbscan_with_matrix(&matrix, params)
        }
    }
}

/// Condensed upper-triangular matrix of squared pairwise distances.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    dist2: Vec<f64>,
}

impl DistanceMatrix {
    pub fn build(points: &[Point2D], cap: usize) -> Result<Self, ClusterError> {
        let n = points.len();
        if n > cap {
            return Err(ClusterError::MemoryBudgetExceeded { points: n, cap });
        }
        let mut dist2 = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            let p = points[i];
            dist2.extend(points[i + 1..].iter().map(|q| p.dist2(q)));
        }
        Ok(Self { n, dist2 })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn row_start(&self, i: usize) -> usize {
        // Offset of entry (i, i + 1).
        i * self.n - i * (i + 1) / 2
    }

    /// Squared distance between points `i` and `j`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            core::cmp::Ordering::Equal => 0.0,
            core::cmp::Ordering::Less => self.dist2[self.row_start(i) + (j - i - 1)],
            core::cmp::Ordering::Greater => self.get(j, i),
        }
    }

    fn neighbours_into(&self, i: usize, eps2: f64, out: &mut Vec<usize>) {
        out.clear();
        for j in 0..i {
            if self.dist2[self.row_start(j) + (i - j - 1)] <= eps2 {
                out.push(j);
            }
        }
        out.push(i);
        let start = self.row_start(i);
        let row = &self.dist2[start..start + (self.n - i - 1)];
        out.extend(
            row.iter()
                .enumerate()
                .filter(|(_, &d)| d <= eps2)
                .map(|(k, _)| i + 1 + k),
        );
    }
}

/// DBSCAN over a precomputed matrix. `params.backend` is ignored.
pub fn dbscan_with_matrix(
    matrix: &DistanceMatrix,
    params: &DbscanParams,
) -> Result<Labeling, ClusterError> {
    params.validate()?;
    let eps2 = params.eps * params.eps;
    Ok(expand_clusters(matrix.len(), params.min_pts, |i, out| {
        matrix.neighbours_into(i, eps2, out)
    }))
}

/// Outcome of a distance-matrix run with its two phases timed separately.
#[derive(Clone, Debug)]
pub struct MatrixRun {
    pub labeling: Labeling,
    pub matrix_build: Duration,
    pub cluster: Duration,
}

/// Builds the distance matrix (up to `cap` points), then clusters over it.
pub fn dbscan_distance_matrix<C: Clock + ?Sized>(
    points: &[Point2D],
    params: &DbscanParams,
    cap: usize,
    clock: &C,
) -> Result<MatrixRun, ClusterError> {
    params.validate()?;
    let t0 = clock.now();
    let matrix = DistanceMatrix::build(points, cap)?;
    let t1 = clock.now();
    let labeling = dbscan_with_matrix(&matrix, params)?;
    let t2 = clock.now();
    Ok(MatrixRun {
        labeling,
        matrix_build: t1.saturating_sub(t0),
        cluster: t2.saturating_sub(t1),
    })
}

const UNVISITED: i32 = -2;

fn expand_clusters<Q>(n: usize, min_pts: usize, mut query: Q) -> Labeling
where
    Q: FnMut(usize, &mut Vec<usize>),
{
    let mut labels = vec![UNVISITED; n];
    let mut neighbours = Vec::new();
    let mut frontier = Vec::new();
    let mut cluster = 0i32;

    for seed in 0..n {
        if labels[seed] != UNVISITED {
            continue;
        }
        query(seed, &mut neighbours);
        if neighbours.len() < min_pts {
            labels[seed] = NOISE;
            continue;
        }
        labels[seed] = cluster;
        claim(&neighbours, &mut labels, cluster, &mut frontier);
        // Every point enters the frontier at most once, so each is queried once.
        while let Some(q) = frontier.pop() {
            query(q, &mut neighbours);
            if neighbours.len() >= min_pts {
                claim(&neighbours, &mut labels, cluster, &mut frontier);
            }
        }
        cluster += 1;
    }

    Labeling {
        labels,
        n_clusters: cluster as usize,
    }
}

#[inline]
fn claim(neighbours: &[usize], labels: &mut [i32], cluster: i32, frontier: &mut Vec<usize>) {
    for &r in neighbours {
        match labels[r] {
            UNVISITED => {
                labels[r] = cluster;
                frontier.push(r);
            }
            NOISE => labels[r] = cluster,
            _ => {}
        }
    }
}
