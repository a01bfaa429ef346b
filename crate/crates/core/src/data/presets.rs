//! Benchmark analogs `t1`..`t6` with pinned clustering parameters.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{DatasetSpec, Placement, ShapeKind, ShapeSpec};
use crate::geometry::{BBox, Point2D};

pub const PRESET_NAMES: [&str; 6] = ["t1", "t2", "t3", "t4", "t5", "t6"];

/// A benchmark dataset together with the parameters it is meant to be run with.
#[derive(Clone, Debug, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub spec: DatasetSpec,
    pub expected_clusters: usize,
    pub eps: f64,
    pub min_pts: usize,
    /// Per-node cluster count for K-Means runs.
    pub kmeans_k: usize,
    pub lambda: f64,
}

/// Looks a preset up by name (case-insensitive). The dataset seed is 1.
pub fn preset(name: &str) -> Option<Preset> {
    let lower: String = name.chars().map(|c| c.to_ascii_lowercase()).collect();
    Some(match lower.as_str() {
        "t1" => t1(),
        "t2" => t2(),
        "t3" => t3(),
        "t4" => t4(),
        "t5" => t5(),
        "t6" => t6(),
        _ => return None,
    })
}

const SEED: u64 = 1;

fn square(side: f64) -> BBox {
    BBox::new(Point2D::new(0.0, 0.0), Point2D::new(side, side))
}

fn shape(kind: ShapeKind, placement: Placement, points: usize) -> ShapeSpec {
    ShapeSpec {
        kind,
        placement,
        points,
    }
}

fn oval(aspect: f64) -> ShapeKind {
    ShapeKind::Oval { aspect, taper: 0.0 }
}

fn ring(inner_ratio: f64, start_angle: f64, sweep: f64) -> ShapeKind {
    ShapeKind::Annulus {
        inner_ratio,
        start_angle,
        sweep,
    }
}

fn strokes(lines: &[&[[f64; 2]]], thickness: f64) -> ShapeKind {
    ShapeKind::StencilPolyline {
        strokes: lines.iter().map(|l| l.to_vec()).collect(),
        thickness,
    }
}

fn t1() -> Preset {
    Preset {
        name: "t1",
        description: "big egg-shaped oval and four small ovals",
        spec: DatasetSpec {
            shapes: vec![
                shape(
                    ShapeKind::Oval {
                        aspect: 1.35,
                        taper: 0.25,
                    },
                    Placement::at(50.0, 60.0, 20.0),
                    6000,
                ),
                shape(
                    oval(0.6),
                    Placement::at(18.0, 18.0, 8.0).rotated(PI / 6.0),
                    2000,
                ),
                shape(oval(0.5), Placement::at(50.0, 14.0, 9.0), 2000),
                shape(
                    oval(0.6),
                    Placement::at(82.0, 18.0, 8.0).rotated(-PI / 6.0),
                    2000,
                ),
                shape(
                    oval(0.5),
                    Placement::at(88.0, 62.0, 9.0).rotated(PI / 2.0),
                    2000,
                ),
            ],
            noise_fraction: 0.0,
            bbox: square(100.0),
            seed: SEED,
        },
        expected_clusters: 5,
        eps: 2.0,
        min_pts: 4,
        kmeans_k: 8,
        lambda: 0.9,
    }
}

fn t2() -> Preset {
    Preset {
        name: "t2",
        description: "four small circles and two linked circles",
        spec: DatasetSpec {
            shapes: vec![
                shape(ShapeKind::Disk, Placement::at(18.0, 20.0, 8.0), 3000),
                shape(ShapeKind::Disk, Placement::at(50.0, 20.0, 8.0), 3000),
                shape(ShapeKind::Disk, Placement::at(82.0, 20.0, 8.0), 3000),
                shape(ShapeKind::Disk, Placement::at(18.0, 75.0, 8.0), 3000),
                shape(
                    ShapeKind::LinkedCircles {
                        separation: 1.6,
                        aspect: 1.0,
                    },
                    Placement::at(65.0, 72.0, 8.0),
                    5080,
                ),
            ],
            noise_fraction: 0.0,
            bbox: square(100.0),
            seed: SEED,
        },
        expected_clusters: 5,
        eps: 2.0,
        min_pts: 4,
        kmeans_k: 8,
        lambda: 0.7,
    }
}

fn t3() -> Preset {
    Preset {
        name: "t3",
        description: "two small circles, one big circle and two linked ovals",
        spec: DatasetSpec {
            shapes: vec![
                shape(ShapeKind::Disk, Placement::at(80.0, 85.0, 7.0), 4000),
                shape(ShapeKind::Disk, Placement::at(85.0, 55.0, 7.0), 4000),
                shape(ShapeKind::Disk, Placement::at(35.0, 60.0, 22.0), 14350),
                shape(
                    ShapeKind::LinkedCircles {
                        separation: 1.5,
                        aspect: 0.6,
                    },
                    Placement::at(60.0, 15.0, 10.0),
                    8000,
                ),
            ],
            noise_fraction: 0.0,
            bbox: square(100.0),
            seed: SEED,
        },
        expected_clusters: 4,
        eps: 2.0,
        min_pts: 4,
        kmeans_k: 8,
        lambda: 0.7,
    }
}

fn t4() -> Preset {
    let wave: Vec<[f64; 2]> = (0..=20)
        .map(|i| {
            let x = i as f64 / 20.0;
            [x * 40.0 - 20.0, 5.0 * libm::sin(x * 2.0 * PI)]
        })
        .collect();
    Preset {
        name: "t4",
        description: "non-convex shapes with uniform noise",
        spec: DatasetSpec {
            shapes: vec![
                shape(
                    ring(0.6, PI / 4.0, 1.5 * PI),
                    Placement::at(25.0, 72.0, 15.0),
                    1500,
                ),
                shape(strokes(&[&wave], 3.0), Placement::at(70.0, 30.0, 1.0), 1400),
                shape(
                    ring(0.6, 0.0, 2.0 * PI),
                    Placement::at(78.0, 75.0, 12.0),
                    1500,
                ),
                shape(
                    strokes(&[&[[8.0, 45.0], [8.0, 10.0], [35.0, 10.0]]], 4.0),
                    Placement::at(0.0, 0.0, 1.0),
                    1200,
                ),
                shape(
                    ShapeKind::GaussianBlob,
                    Placement::at(55.0, 55.0, 3.0),
                    1000,
                ),
                shape(
                    oval(0.3),
                    Placement::at(88.0, 50.0, 7.0).rotated(PI / 4.0),
                    1000,
                ),
            ],
            noise_fraction: 0.05,
            bbox: square(100.0),
            seed: SEED,
        },
        expected_clusters: 6,
        eps: 1.5,
        min_pts: 6,
        kmeans_k: 8,
        lambda: 0.7,
    }
}

fn t5() -> Preset {
    Preset {
        name: "t5",
        description: "shapes surrounded by rings with uniform noise",
        spec: DatasetSpec {
            shapes: vec![
                shape(
                    ring(0.7, 0.0, 2.0 * PI),
                    Placement::at(25.0, 70.0, 18.0),
                    1700,
                ),
                shape(ShapeKind::Disk, Placement::at(25.0, 70.0, 6.0), 900),
                shape(
                    ring(0.65, 0.0, 2.0 * PI),
                    Placement::at(72.0, 70.0, 16.0),
                    1500,
                ),
                shape(
                    oval(0.6),
                    Placement::at(72.0, 70.0, 5.5).rotated(PI / 5.0),
                    700,
                ),
                shape(
                    ring(0.65, PI / 3.0, 5.0 * PI / 3.0),
                    Placement::at(25.0, 25.0, 16.0),
                    1500,
                ),
                shape(ShapeKind::Disk, Placement::at(25.0, 25.0, 5.0), 700),
                shape(ShapeKind::Disk, Placement::at(60.0, 30.0, 6.0), 1000),
                shape(
                    strokes(&[&[[50.0, 8.0], [95.0, 8.0]]], 3.0),
                    Placement::at(0.0, 0.0, 1.0),
                    700,
                ),
                shape(
                    oval(0.5),
                    Placement::at(85.0, 35.0, 6.0).rotated(PI / 3.0),
                    800,
                ),
            ],
            noise_fraction: 0.05,
            bbox: square(100.0),
            seed: SEED,
        },
        expected_clusters: 9,
        eps: 1.5,
        min_pts: 6,
        kmeans_k: 10,
        lambda: 0.8,
    }
}

fn t6() -> Preset {
    const C: &[&[[f64; 2]]] = &[&[[0.7, 1.0], [0.0, 1.0], [0.0, 0.0], [0.7, 0.0]]];
    const L: &[&[[f64; 2]]] = &[&[[0.0, 1.0], [0.0, 0.0], [0.7, 0.0]]];
    const U: &[&[[f64; 2]]] = &[&[[0.0, 1.0], [0.0, 0.0], [0.7, 0.0], [0.7, 1.0]]];
    const S: &[&[[f64; 2]]] = &[&[
        [0.7, 1.0],
        [0.0, 1.0],
        [0.0, 0.5],
        [0.7, 0.5],
        [0.7, 0.0],
        [0.0, 0.0],
    ]];
    const T: &[&[[f64; 2]]] = &[&[[0.0, 1.0], [0.7, 1.0]], &[[0.35, 1.0], [0.35, 0.0]]];
    const E: &[&[[f64; 2]]] = &[
        &[[0.7, 1.0], [0.0, 1.0], [0.0, 0.0], [0.7, 0.0]],
        &[[0.0, 0.5], [0.55, 0.5]],
    ];
    let letters = [
        (C, 15.0, 70.0),
        (L, 45.0, 70.0),
        (U, 75.0, 70.0),
        (S, 15.0, 30.0),
        (T, 45.0, 30.0),
        (E, 75.0, 30.0),
    ];
    let shapes = letters
        .iter()
        .enumerate()
        .map(|(i, (glyph, cx, cy))| {
            let centred: Vec<Vec<[f64; 2]>> = glyph
                .iter()
                .map(|s| s.iter().map(|p| [p[0] - 0.35, p[1] - 0.5]).collect())
                .collect();
            shape(
                ShapeKind::StencilPolyline {
                    strokes: centred,
                    thickness: 3.0 / 18.0,
                },
                Placement::at(*cx, *cy, 18.0),
                if i < 4 { 1267 } else { 1266 },
            )
        })
        .collect();
    Preset {
        name: "t6",
        description: "block letters with uniform noise",
        spec: DatasetSpec {
            shapes,
            noise_fraction: 0.05,
            bbox: square(100.0),
            seed: SEED,
        },
        expected_clusters: 6,
        eps: 1.5,
        min_pts: 6,
        kmeans_k: 8,
        lambda: 0.6,
    }
}

/// Ten equal disks on a 5 x 2 layout totalling `n_points`; used for
/// scalability sweeps.
pub fn scalability_spec(n_points: usize, seed: u64) -> DatasetSpec {
    let per = n_points / 10;
    let shapes = (0..10)
        .map(|i| {
            let extra = usize::from(i < n_points % 10);
            let (col, row) = ((i % 5) as f64, (i / 5) as f64);
            shape(
                ShapeKind::Disk,
                Placement::at(12.0 + 19.0 * col, 25.0 + 50.0 * row, 8.0),
                per + extra,
            )
        })
        .collect();
    DatasetSpec {
        shapes,
        noise_fraction: 0.0,
        bbox: square(100.0),
        seed,
    }
}
