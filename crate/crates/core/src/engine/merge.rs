use alloc::vec;
use alloc::vec::Vec;

use super::{DdcError, LocalModel, LocalTiming, MergeKind, MergePolicy};
use crate::geometry::{merge_contours, min_vertex_distance, polygons_intersect, Contour};
use crate::Clock;

/// The group member responsible for merging: the smallest node id.
pub fn elect_leader(group: &[usize]) -> Result<usize, DdcError> {
    group.iter().copied().min().ok_or(DdcError::EmptyGroup)
}

/// Connected components of the graph linking contours that satisfy
/// `policy`. Components are sorted internally and ordered by their first
/// index; singletons are included.
pub fn find_overlaps(contours: &[Contour], policy: &MergePolicy) -> Vec<Vec<usize>> {
    let n = contours.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if uf.find(i) != uf.find(j) && linked(&contours[i], &contours[j], policy) {
                uf.union(i, j);
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = uf.find(i);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[r]].push(i);
    }
    comps
}

pub(crate) fn linked(a: &Contour, b: &Contour, policy: &MergePolicy) -> bool {
    if let Some(gate) = policy.density_gate {
        let (lo, hi) = if a.density <= b.density {
            (a.density, b.density)
        } else {
            (b.density, a.density)
        };
        if hi > gate * lo {
            return false;
        }
    }
    match policy.kind {
        MergeKind::PolygonOverlap => polygons_intersect(&a.polygon, &b.polygon),
        MergeKind::BoundaryProximity => match policy.resolve_eps(a, b) {
            Some(eps) => {
                a.polygon.bbox().intersects(b.polygon.bbox(), eps)
                    && min_vertex_distance(&a.polygon, &b.polygon) <= eps
            }
            None => false,
        },
    }
}

/// Result of a leader merging its group.
#[derive(Clone, Debug, PartialEq)]
pub struct MergeOutcome {
    pub model: LocalModel,
    pub contours_in: usize,
    pub overlaps: usize,
    pub rounds: usize,
    /// Bytes the non-leader members send to the leader.
    pub bytes_received: usize,
}

/// Pools the contours of a group at its leader and merges linked ones until
/// no pair satisfies `policy`.
pub fn merge_group<C: Clock + ?Sized>(
    models: &[LocalModel],
    policy: &MergePolicy,
    lambda_norm: f64,
    clock: &C,
) -> Result<MergeOutcome, DdcError> {
    let ids: Vec<usize> = models.iter().map(|m| m.node_id).collect();
    let leader = elect_leader(&ids)?;
    let start = clock.now();
    let bytes_received = models
        .iter()
        .filter(|m| m.node_id != leader)
        .map(|m| m.bytes_estimate)
        .sum();
    let mut contours: Vec<Contour> = models
        .iter()
        .flat_map(|m| m.contours.iter().cloned())
        .collect();
    let contours_in = contours.len();
    let mut overlaps = 0;
    let mut rounds = 0;
    loop {
        let comps = find_overlaps(&contours, policy);
        if comps.len() == contours.len() {
            break;
        }
        rounds += 1;
        let mut next = Vec::with_capacity(comps.len());
        for comp in comps {
            if comp.len() == 1 {
                next.push(contours[comp[0]].clone());
            } else {
                overlaps += 1;
                let group: Vec<Contour> = comp.iter().map(|&i| contours[i].clone()).collect();
                next.push(merge_contours(&group, lambda_norm)?);
            }
        }
        contours = next;
    }
    let timing = LocalTiming {
        total: clock.elapsed_since(start),
        ..LocalTiming::default()
    };
    Ok(MergeOutcome {
        model: LocalModel::new(leader, contours, timing),
        contours_in,
        overlaps,
        rounds,
        bytes_received,
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
