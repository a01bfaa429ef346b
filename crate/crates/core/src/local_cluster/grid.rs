use alloc::vec::Vec;
use hashbrown::HashMap;

use super::ClusterError;
use crate::geometry::Point2D;

/// Uniform grid over the plane mapping integer cell coordinates to the ids of
/// the points that fall in them.
#[derive(Clone, Debug)]
pub struct GridIndex {
    cell_size: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

/// Buckets every point into the cell `floor(coord / cell_size)`.
pub fn build_grid_index(points: &[Point2D], cell_size: f64) -> Result<GridIndex, ClusterError> {
    if cell_size <= 0.0 || !cell_size.is_finite() {
        return Err(ClusterError::InvalidParam(
            "cell_size must be positive and finite",
        ));
    }
    let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        cells.entry(cell_of(p, cell_size)).or_default().push(i);
    }
    Ok(GridIndex { cell_size, cells })
}

#[inline]
fn cell_of(p: &Point2D, cell_size: f64) -> (i64, i64) {
    (
        libm::floor(p.x / cell_size) as i64,
        libm::floor(p.y / cell_size) as i64,
    )
}

impl GridIndex {
    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, key: (i64, i64)) -> &[usize] {
        self.cells.get(&key).map_or(&[], Vec::as_slice)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(i64, i64), &Vec<usize>)> {
        self.cells.iter()
    }

    /// Ids within distance `eps` of `points[center]`, the center included.
    ///
    /// Only the 3x3 block of cells around the center is scanned, so `eps`
    /// must not exceed the cell size.
    pub fn region_query(&self, points: &[Point2D], center: usize, eps: f64) -> Vec<usize> {
        let mut out = Vec::new();
        self.region_query_into(points, center, eps, &mut out);
        out
    }

    pub fn region_query_into(
        &self,
        points: &[Point2D],
        center: usize,
        eps: f64,
        out: &mut Vec<usize>,
    ) {
        debug_assert!(eps <= self.cell_size);
        out.clear();
        let c = points[center];
        let (cx, cy) = cell_of(&c, self.cell_size);
        let eps2 = eps * eps;
        for dx in -1..=1 {
            for dy in -1..=1 {
                for &j in self.cell((cx + dx, cy + dy)) {
                    if c.dist2(&points[j]) <= eps2 {
                        out.push(j);
                    }
                }
            }
        }
    }
}
