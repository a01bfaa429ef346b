use ddc_core::geometry::{
    characteristic_shape, delaunay, merge_contours, min_vertex_distance, point_in_polygon,
    polygons_intersect, Contour, Location, Point2D, Polygon, GEO_TOLERANCE,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn uniform(n: usize, seed: u64, side: f64) -> Vec<Point2D> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Point2D::new(rng.random_range(0.0..side), rng.random_range(0.0..side)))
        .collect()
}

/// Andrew's monotone chain; counter-clockwise, collinear points dropped.
fn convex_hull(points: &[Point2D]) -> Vec<Point2D> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    let cross =
        |o: Point2D, a: Point2D, b: Point2D| (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    let mut hull: Vec<Point2D> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2D>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn shoelace(ring: &[Point2D]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
        .abs()
        / 2.0
}

fn sorted(mut v: Vec<Point2D>) -> Vec<Point2D> {
    v.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    v
}

fn winding_number(p: Point2D, ring: &[Point2D]) -> i32 {
    let n = ring.len();
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        let side = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
        if a.y <= p.y {
            if b.y > p.y && side > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && side < 0.0 {
            w -= 1;
        }
    }
    w
}

fn seg_dist(p: Point2D, a: Point2D, b: Point2D) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
    let (qx, qy) = (a.x + t * dx, a.y + t * dy);
    ((p.x - qx).powi(2) + (p.y - qy).powi(2)).sqrt()
}

/// Star-shaped polygon with jittered radii around `c`.
fn random_star(rng: &mut ChaCha8Rng, c: Point2D, n: usize, r: f64) -> Vec<Point2D> {
    (0..n)
        .map(|i| {
            let t = i as f64 / n as f64 * std::f64::consts::TAU;
            let rr = r * rng.random_range(0.3..1.0);
            Point2D::new(c.x + rr * t.cos(), c.y + rr * t.sin())
        })
        .collect()
}

#[test]
fn delaunay_empty_circumcircle_on_random_points() {
    let pts = uniform(200, 42, 100.0);
    let tri = delaunay(&pts).unwrap();
    assert!(!tri.triangles.is_empty());
    for t in &tri.triangles {
        let [a, b, c] = t.map(|i| tri.vertices[i]);
        // Circumcentre by the perpendicular-bisector formula.
        let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        let (a2, b2, c2) = (
            a.x * a.x + a.y * a.y,
            b.x * b.x + b.y * b.y,
            c.x * c.x + c.y * c.y,
        );
        let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
        let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
        let r = ((a.x - ux).powi(2) + (a.y - uy).powi(2)).sqrt();
        for p in &pts {
            let dist = ((p.x - ux).powi(2) + (p.y - uy).powi(2)).sqrt();
            assert!(
                dist >= r * (1.0 - 1e-9),
                "point strictly inside a circumcircle"
            );
        }
    }
    let hull_vertices: Vec<Point2D> = tri
        .boundary_edges
        .iter()
        .map(|&(i, _)| tri.vertices[i])
        .collect();
    assert_eq!(sorted(hull_vertices), sorted(convex_hull(&pts)));
}

#[test]
fn delaunay_minimal_cases() {
    let tri = delaunay(&[
        Point2D::new(0.0, 0.0),
        Point2D::new(1.0, 0.0),
        Point2D::new(0.0, 1.0),
    ])
    .unwrap();
    assert_eq!((tri.triangles.len(), tri.boundary_edges.len()), (1, 3));
    let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)].map(|(x, y)| Point2D::new(x, y));
    let tri = delaunay(&sq).unwrap();
    assert_eq!((tri.triangles.len(), tri.boundary_edges.len()), (2, 4));
    let line: Vec<_> = (0..5)
        .map(|i| Point2D::new(i as f64, 2.0 * i as f64))
        .collect();
    assert!(delaunay(&line).is_err());
}

#[test]
fn c_shape_is_concave_and_contains_its_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts: Vec<Point2D> = (0..1000)
        .map(|_| {
            let t = rng.random_range(0.25 * std::f64::consts::PI..1.75 * std::f64::consts::PI);
            let r = (rng.random_range(64.0..100.0f64)).sqrt();
            Point2D::new(r * t.cos(), r * t.sin())
        })
        .collect();
    let shape = characteristic_shape(&pts, 0.2).unwrap();
    assert!(shape.is_simple());
    let hull_area = shoelace(&convex_hull(&pts));
    assert!(
        shape.area() < 0.8 * hull_area,
        "{} vs hull {}",
        shape.area(),
        hull_area
    );
    assert!(pts
        .iter()
        .all(|&p| point_in_polygon(p, &shape).is_covered()));
}

#[test]
fn regular_polygon_area_matches_closed_form() {
    let n = 64;
    let ring: Vec<_> = (0..n)
        .map(|i| {
            let t = i as f64 / n as f64 * std::f64::consts::TAU;
            Point2D::new(t.cos(), t.sin())
        })
        .collect();
    let expected = 0.5 * n as f64 * (std::f64::consts::TAU / n as f64).sin();
    assert!((Polygon::new(ring).unwrap().area() - expected).abs() < 1e-12);
}

#[test]
fn point_in_polygon_agrees_with_winding_number() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ring = random_star(&mut rng, Point2D::new(0.0, 0.0), 40, 10.0);
    let poly = Polygon::new(ring.clone()).unwrap();
    assert!(poly.is_simple());
    let mut checked = 0;
    for _ in 0..10_000 {
        let p = Point2D::new(rng.random_range(-11.0..11.0), rng.random_range(-11.0..11.0));
        let near = (0..ring.len())
            .any(|i| seg_dist(p, ring[i], ring[(i + 1) % ring.len()]) <= GEO_TOLERANCE * 10.0);
        if near {
            continue;
        }
        let expected = if winding_number(p, &ring) != 0 {
            Location::Inside
        } else {
            Location::Outside
        };
        assert_eq!(point_in_polygon(p, &poly), expected, "{p:?}");
        checked += 1;
    }
    assert!(checked > 9_900);
    assert_eq!(point_in_polygon(ring[3], &poly), Location::OnBoundary);
}

#[test]
fn min_vertex_distance_matches_pair_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let a = random_star(&mut rng, Point2D::new(0.0, 0.0), 50, 5.0);
        let cb = Point2D::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0));
        let b = random_star(&mut rng, cb, 50, 5.0);
        let brute = a
            .iter()
            .flat_map(|p| b.iter().map(move |q| p.dist(q)))
            .fold(f64::INFINITY, f64::min);
        let (pa, pb) = (Polygon::new(a).unwrap(), Polygon::new(b).unwrap());
        assert_eq!(min_vertex_distance(&pa, &pb), brute);
    }
}

#[test]
fn overlapping_squares_merge_to_their_hull() {
    let sq = |x: f64, y: f64| {
        let p = Polygon::rectangle(Point2D::new(x, y), Point2D::new(x + 1.0, y + 1.0)).unwrap();
        Contour::new(p, 10, 0, None)
    };
    let (a, b) = (sq(0.0, 0.0), sq(0.5, 0.5));
    assert!(polygons_intersect(&a.polygon, &b.polygon));
    let merged = merge_contours(&[a.clone(), b.clone()], 1.0).unwrap();
    let corners: Vec<Point2D> = a
        .polygon
        .vertices()
        .iter()
        .chain(b.polygon.vertices())
        .copied()
        .collect();
    let hull = convex_hull(&corners);
    assert_eq!(
        sorted(merged.polygon.vertices().to_vec()),
        sorted(hull.clone())
    );
    assert!((merged.polygon.area() - shoelace(&hull)).abs() < 1e-12);
    assert_eq!(merged.point_count, 20);
    assert!((merged.density - 20.0 / merged.polygon.area()).abs() <= 1e-9 * merged.density);

    let twice = merge_contours(&[a.clone(), a.clone()], 0.3).unwrap();
    assert_eq!(
        sorted(twice.polygon.vertices().to_vec()),
        sorted(a.polygon.vertices().to_vec())
    );
    assert_eq!(twice.point_count, 20);
}

fn point_set() -> impl Strategy<Value = Vec<Point2D>> {
    prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 3..120)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point2D::new(x, y)).collect())
        .prop_filter(
            "needs a non-degenerate triangulation",
            |p: &Vec<Point2D>| delaunay(p).is_ok(),
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lambda_one_gives_the_convex_hull(pts in point_set()) {
        let shape = characteristic_shape(&pts, 1.0).unwrap();
        prop_assert_eq!(sorted(shape.vertices().to_vec()), sorted(convex_hull(&pts)));
    }

    #[test]
    fn every_point_is_covered(pts in point_set(), lambda in 0.0..=1.0f64) {
        let shape = characteristic_shape(&pts, lambda).unwrap();
        prop_assert!(shape.is_simple());
        for &p in &pts {
            prop_assert!(point_in_polygon(p, &shape).is_covered());
        }
    }

    #[test]
    fn area_grows_with_lambda(pts in point_set(), l1 in 0.0..=1.0f64, l2 in 0.0..=1.0f64) {
        let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let a = characteristic_shape(&pts, lo).unwrap().area();
        let b = characteristic_shape(&pts, hi).unwrap().area();
        prop_assert!(a <= b * (1.0 + 1e-12));
    }

    #[test]
    fn pairwise_predicates_are_symmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let polys: Vec<Polygon> = (0..3)
            .map(|_| {
                let c = Point2D::new(rng.random_range(-8.0..8.0), rng.random_range(-8.0..8.0));
                Polygon::new(random_star(&mut rng, c, 7, 4.0)).unwrap()
            })
            .collect();
        let (a, b, c) = (&polys[0], &polys[1], &polys[2]);
        prop_assert_eq!(polygons_intersect(a, b), polygons_intersect(b, a));
        prop_assert_eq!(min_vertex_distance(a, b), min_vertex_distance(b, a));
        let diameter = b
            .vertices()
            .iter()
            .flat_map(|p| b.vertices().iter().map(move |q| p.dist(q)))
            .fold(0.0, f64::max);
        prop_assert!(min_vertex_distance(a, c) <= min_vertex_distance(a, b) + diameter + min_vertex_distance(b, c) + 1e-12);
    }

    #[test]
    fn merge_ignores_member_order(seed in any::<u64>(), lambda in 0.0..=1.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group: Vec<Contour> = (0..4)
            .map(|i| {
                let c = Point2D::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
                Contour::new(Polygon::new(random_star(&mut rng, c, 9, 3.0)).unwrap(), 10 + i, i, Some(1.0))
            })
            .collect();
        let forward = merge_contours(&group, lambda).unwrap();
        let mut reversed = group.clone();
        reversed.reverse();
        reversed.swap(0, 2);
        let backward = merge_contours(&reversed, lambda).unwrap();
        prop_assert_eq!(forward, backward);
    }
}

#[test]
fn seeded_point_sets_give_hull_and_containment() {
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(3..300);
        let pts: Vec<Point2D> = (0..n)
            .map(|_| Point2D::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0)))
            .collect();
        let hull = characteristic_shape(&pts, 1.0).unwrap();
        assert_eq!(
            sorted(hull.vertices().to_vec()),
            sorted(convex_hull(&pts)),
            "seed {seed}"
        );
        let shape = characteristic_shape(&pts, rng.random_range(0.0..=1.0)).unwrap();
        assert!(
            pts.iter()
                .all(|&p| point_in_polygon(p, &shape).is_covered()),
            "seed {seed}"
        );
    }
}
