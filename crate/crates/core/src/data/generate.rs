use alloc::vec::Vec;
use core::f64::consts::PI;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{DataError, Dataset};
use crate::geometry::{BBox, Point2D};
use crate::local_cluster::NOISE;

/// Position, orientation and size of a shape. Shapes are defined in local
/// units (roughly the unit disk) and mapped by scale, then rotation
/// (radians, counter-clockwise), then translation to `center`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Placement {
    pub center: Point2D,
    #[cfg_attr(feature = "serde", serde(default))]
    pub rotation: f64,
    pub scale: f64,
}

impl Placement {
    pub const fn at(x: f64, y: f64, scale: f64) -> Self {
        Self {
            center: Point2D::new(x, y),
            rotation: 0.0,
            scale,
        }
    }

    pub const fn rotated(self, rotation: f64) -> Self {
        Self { rotation, ..self }
    }

    fn apply(&self, local: (f64, f64)) -> Point2D {
        let (s, c) = libm::sincos(self.rotation);
        let x = local.0 * self.scale;
        let y = local.1 * self.scale;
        Point2D::new(self.center.x + c * x - s * y, self.center.y + s * x + c * y)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum ShapeKind {
    /// Isotropic normal distribution; `scale` is the standard deviation.
    GaussianBlob,
    /// Uniform over the disk of radius `scale`.
    Disk,
    /// Uniform over an ellipse with semi-axes `1` and `aspect`. A non-zero
    /// `taper` widens one end and narrows the other, giving an egg.
    Oval {
        aspect: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        taper: f64,
    },
    /// Uniform over the ring between radii `inner_ratio` and 1, restricted to
    /// the angular sector starting at `start_angle` spanning `sweep` radians.
    Annulus {
        inner_ratio: f64,
        #[cfg_attr(feature = "serde", serde(default))]
        start_angle: f64,
        #[cfg_attr(feature = "serde", serde(default = "full_turn"))]
        sweep: f64,
    },
    /// Two overlapping ellipses (semi-axes `1` and `aspect`) whose centres
    /// are `separation` apart along the local x axis.
    LinkedCircles { separation: f64, aspect: f64 },
    /// Thick strokes along polylines, e.g. block letters. Vertices are in
    /// local units, `thickness` is the full stroke width.
    StencilPolyline {
        strokes: Vec<Vec<[f64; 2]>>,
        thickness: f64,
    },
}

#[cfg(feature = "serde")]
fn full_turn() -> f64 {
    2.0 * PI
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShapeSpec {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub kind: ShapeKind,
    pub placement: Placement,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DatasetSpec {
    pub shapes: Vec<ShapeSpec>,
    /// Share of the final dataset that is uniform background noise.
    #[cfg_attr(feature = "serde", serde(default))]
    pub noise_fraction: f64,
    /// Region the noise is drawn from.
    pub bbox: BBox,
    pub seed: u64,
}

impl DatasetSpec {
    pub fn shape_points(&self) -> usize {
        self.shapes.iter().map(|s| s.points).sum()
    }

    pub fn noise_points(&self) -> usize {
        let shapes = self.shape_points() as f64;
        libm::round(shapes * self.noise_fraction / (1.0 - self.noise_fraction)) as usize
    }

    pub fn total_points(&self) -> usize {
        self.shape_points() + self.noise_points()
    }

    pub fn validate(&self) -> Result<(), DataError> {
        if !(0.0..1.0).contains(&self.noise_fraction) {
            return Err(DataError::InvalidSpec("noise_fraction must be in [0, 1)"));
        }
        if !(self.bbox.min.is_finite() && self.bbox.max.is_finite())
            || self.bbox.width() <= 0.0
            || self.bbox.height() <= 0.0
        {
            return Err(DataError::InvalidSpec(
                "bbox must be finite with positive extent",
            ));
        }
        for s in &self.shapes {
            s.validate()?;
        }
        Ok(())
    }
}

impl ShapeSpec {
    fn validate(&self) -> Result<(), DataError> {
        let p = &self.placement;
        if self.points == 0 {
            return Err(DataError::InvalidSpec(
                "every shape needs at least one point",
            ));
        }
        if p.scale <= 0.0
            || !p.scale.is_finite()
            || !p.center.is_finite()
            || !p.rotation.is_finite()
        {
            return Err(DataError::InvalidSpec(
                "placement must be finite with positive scale",
            ));
        }
        let ok = match &self.kind {
            ShapeKind::GaussianBlob | ShapeKind::Disk => true,
            ShapeKind::Oval { aspect, taper } => *aspect > 0.0 && taper.abs() < 1.0,
            ShapeKind::Annulus {
                inner_ratio, sweep, ..
            } => (0.0..1.0).contains(inner_ratio) && *sweep > 0.0 && *sweep <= 2.0 * PI,
            ShapeKind::LinkedCircles { separation, aspect } => *separation >= 0.0 && *aspect > 0.0,
            ShapeKind::StencilPolyline { strokes, thickness } => {
                *thickness > 0.0
                    && !strokes.is_empty()
                    && strokes.iter().all(|s| s.len() >= 2)
                    && stroke_length(strokes) > 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(DataError::InvalidSpec("shape parameters out of range"))
        }
    }
}

fn stroke_length(strokes: &[Vec<[f64; 2]>]) -> f64 {
    strokes
        .iter()
        .flat_map(|s| s.windows(2))
        .map(|w| libm::hypot(w[1][0] - w[0][0], w[1][1] - w[0][1]))
        .sum()
}

/// Generates the dataset described by `spec` with ground-truth labels.
///
/// Shape `i` contributes exactly `shapes[i].points` points labeled `i`,
/// followed by the noise points labeled `-1`. Output is fully determined by
/// `spec.seed`.
pub fn generate(spec: &DatasetSpec) -> Result<Dataset, DataError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let total = spec.total_points();
    let mut points = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);
    for (i, shape) in spec.shapes.iter().enumerate() {
        sample_shape(shape, &mut rng, &mut points);
        labels.resize(points.len(), i as i32);
    }
    let bb = spec.bbox;
    for _ in 0..spec.noise_points() {
        points.push(Point2D::new(
            rng.random_range(bb.min.x..bb.max.x),
            rng.random_range(bb.min.y..bb.max.y),
        ));
        labels.push(NOISE);
    }
    Ok(Dataset {
        points,
        labels: Some(labels),
    })
}

fn sample_shape(shape: &ShapeSpec, rng: &mut ChaCha8Rng, out: &mut Vec<Point2D>) {
    let place = &shape.placement;
    let n = shape.points;
    let mut push = |local: (f64, f64)| out.push(place.apply(local));
    match &shape.kind {
        ShapeKind::GaussianBlob => {
            for _ in 0..n {
                push((StandardNormal.sample(rng), StandardNormal.sample(rng)));
            }
        }
        ShapeKind::Disk => {
            for _ in 0..n {
                push(unit_disk(rng));
            }
        }
        ShapeKind::Oval { aspect, taper } => {
            let (aspect, taper) = (*aspect, *taper);
            let half_w = 1.0 + taper.abs();
            for _ in 0..n {
                // Rejection keeps the density uniform over the tapered outline.
                let p = loop {
                    let x = rng.random_range(-half_w..half_w);
                    let y = rng.random_range(-aspect..aspect);
                    let w = 1.0 + taper * y / aspect;
                    let (u, v) = (x / w, y / aspect);
                    if u * u + v * v <= 1.0 {
                        break (x, y);
                    }
                };
                push(p);
            }
        }
        ShapeKind::Annulus {
            inner_ratio,
            start_angle,
            sweep,
        } => {
            let r2 = inner_ratio * inner_ratio;
            for _ in 0..n {
                let r = libm::sqrt(r2 + rng.random::<f64>() * (1.0 - r2));
                let t = start_angle + rng.random::<f64>() * sweep;
                push((r * libm::cos(t), r * libm::sin(t)));
            }
        }
        ShapeKind::LinkedCircles { separation, aspect } => {
            let half = separation / 2.0;
            for _ in 0..n {
                let p = loop {
                    let x = rng.random_range(-(half + 1.0)..(half + 1.0));
                    let y = rng.random_range(-aspect..*aspect);
                    let v = y / aspect;
                    let inside = |cx: f64| (x - cx) * (x - cx) + v * v <= 1.0;
                    if inside(-half) || inside(half) {
                        break (x, y);
                    }
                };
                push(p);
            }
        }
        ShapeKind::StencilPolyline { strokes, thickness } => {
            let segments: Vec<([f64; 2], [f64; 2], f64)> = strokes
                .iter()
                .flat_map(|s| s.windows(2))
                .map(|w| {
                    (
                        w[0],
                        w[1],
                        libm::hypot(w[1][0] - w[0][0], w[1][1] - w[0][1]),
                    )
                })
                .filter(|s| s.2 > 0.0)
                .collect();
            let total: f64 = segments.iter().map(|s| s.2).sum();
            for _ in 0..n {
                let mut pick = rng.random::<f64>() * total;
                let mut seg = segments[segments.len() - 1];
                for s in &segments {
                    if pick < s.2 {
                        seg = *s;
                        break;
                    }
                    pick -= s.2;
                }
                let (a, b, len) = seg;
                let t = rng.random::<f64>();
                let off = (rng.random::<f64>() - 0.5) * thickness;
                let (nx, ny) = (-(b[1] - a[1]) / len, (b[0] - a[0]) / len);
                push((
                    a[0] + t * (b[0] - a[0]) + off * nx,
                    a[1] + t * (b[1] - a[1]) + off * ny,
                ));
            }
        }
    }
}

fn unit_disk(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let r = libm::sqrt(rng.random::<f64>());
    let t = rng.random::<f64>() * 2.0 * PI;
    (r * libm::cos(t), r * libm::sin(t))
}
