use alloc::vec;
use alloc::vec::Vec;
use hashbrown::HashMap;

/// Label of points that belong to no cluster.
pub const NOISE: i32 = -1;

/// Per-point cluster ids `0..n_clusters`, with [`NOISE`] for unassigned points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub labels: Vec<i32>,
    pub n_clusters: usize,
}

impl Labeling {
    pub fn all_noise(n: usize) -> Self {
        Self {
            labels: vec![NOISE; n],
            n_clusters: 0,
        }
    }

    /// Renumbers arbitrary non-negative ids to `0..k` in order of first
    /// appearance. Negative ids become [`NOISE`].
    pub fn from_raw(raw: &[i64]) -> Self {
        let mut remap: HashMap<i64, i32> = HashMap::new();
        let labels = raw
            .iter()
            .map(|&r| {
                if r < 0 {
                    NOISE
                } else {
                    let next = remap.len() as i32;
                    *remap.entry(r).or_insert(next)
                }
            })
            .collect();
        Self {
            labels,
            n_clusters: remap.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l == NOISE).count()
    }

    /// Point ids of every cluster, indexed by cluster id.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_clusters];
        for (i, &l) in self.labels.iter().enumerate() {
            if l >= 0 {
                out[l as usize].push(i);
            }
        }
        out
    }

    /// Same labels renumbered by first appearance, so that equal partitions
    /// compare equal.
    pub fn canonical(&self) -> Self {
        let raw: Vec<i64> = self.labels.iter().map(|&l| l as i64).collect();
        Self::from_raw(&raw)
    }
}
