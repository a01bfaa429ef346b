use ddc_core::data::{
    generate, partition, preset, DatasetFragment, DatasetSpec, PartitionStrategy, Placement,
    ShapeKind, ShapeSpec,
};
use ddc_core::engine::{
    assign_points, elect_leader, find_overlaps, merge_group, run_ddc, run_ddc_fragments,
    run_local_phase, BackendParams, DdcConfig, DdcError, LocalModel, LocalTiming, MergeKind,
    MergePolicy, NodeParams, ProximityEps, TopologyConfig,
};
use ddc_core::eval::{adjusted_rand_index, oracle_contours, oracle_single_machine};
use ddc_core::geometry::{min_vertex_distance, polygons_intersect, BBox, Contour, Polygon};
use ddc_core::local_cluster::{DbscanParams, KMeansParams, Labeling, NOISE};
use ddc_core::{Executor, NullClock, Point2D, Sequential};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Runs tasks last-to-first, each on its own thread, and restores input order.
struct ReversedThreads;

impl Executor for ReversedThreads {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        let n = items.len();
        let f = &f;
        let mut out: Vec<Option<R>> = (0..n).map(|_| None).collect();
        std::thread::scope(|s| {
            let handles: Vec<_> = items
                .into_iter()
                .enumerate()
                .rev()
                .map(|(i, t)| (i, s.spawn(move || f(t))))
                .collect();
            for (i, h) in handles {
                out[i] = Some(h.join().unwrap());
            }
        });
        out.into_iter().map(Option::unwrap).collect()
    }
}

fn dbscan(eps: f64, min_pts: usize) -> BackendParams {
    BackendParams::Dbscan(DbscanParams::new(eps, min_pts))
}

fn shape(kind: ShapeKind, x: f64, y: f64, scale: f64, points: usize) -> ShapeSpec {
    ShapeSpec {
        kind,
        placement: Placement::at(x, y, scale),
        points,
    }
}

fn spec(shapes: Vec<ShapeSpec>, noise_fraction: f64, side: f64, seed: u64) -> DatasetSpec {
    DatasetSpec {
        shapes,
        noise_fraction,
        bbox: BBox::new(Point2D::new(0.0, 0.0), Point2D::new(side, side)),
        seed,
    }
}

fn square_contour(x: f64, y: f64, side: f64, node: usize) -> Contour {
    let p = Polygon::rectangle(Point2D::new(x, y), Point2D::new(x + side, y + side)).unwrap();
    Contour::new(p, 50, node, Some(0.5))
}

fn model(node_id: usize, contours: Vec<Contour>) -> LocalModel {
    LocalModel::new(node_id, contours, LocalTiming::default())
}

fn brute_components(
    contours: &[Contour],
    linked: impl Fn(&Contour, &Contour) -> bool,
) -> Vec<Vec<usize>> {
    let n = contours.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if linked(&contours[i], &contours[j]) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[r]].push(i);
    }
    comps
}

fn sorted_components(mut comps: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort();
    comps
}

fn assert_fixpoint(global: &ddc_core::engine::GlobalModel, policy: &MergePolicy) {
    let comps = find_overlaps(&global.contours, policy);
    assert_eq!(
        comps.len(),
        global.contours.len(),
        "final contours still link"
    );
}

#[test]
fn leader_is_minimum_id() {
    assert_eq!(elect_leader(&[3]).unwrap(), 3);
    assert_eq!(elect_leader(&[7, 2, 5]).unwrap(), 2);
    assert_eq!(elect_leader(&[5, 7, 2]).unwrap(), 2);
    assert!(matches!(elect_leader(&[]), Err(DdcError::EmptyGroup)));
}

#[test]
fn overlap_components() {
    let far = [
        square_contour(0.0, 0.0, 1.0, 0),
        square_contour(10.0, 10.0, 1.0, 1),
    ];
    assert_eq!(
        find_overlaps(&far, &MergePolicy::polygon_overlap()),
        vec![vec![0], vec![1]]
    );
    let chain = [
        square_contour(0.0, 0.0, 1.0, 0),
        square_contour(0.8, 0.0, 1.0, 1),
        square_contour(1.6, 0.0, 1.0, 2),
    ];
    assert!(!polygons_intersect(&chain[0].polygon, &chain[2].polygon));
    assert_eq!(
        find_overlaps(&chain, &MergePolicy::polygon_overlap()),
        vec![vec![0, 1, 2]]
    );
}

#[test]
fn overlap_components_match_union_find() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..10 {
        let contours: Vec<Contour> = (0..20)
            .map(|i| {
                let side = rng.random_range(0.5..3.0);
                square_contour(
                    rng.random_range(0.0..15.0),
                    rng.random_range(0.0..15.0),
                    side,
                    i,
                )
            })
            .collect();
        let overlap = MergePolicy::polygon_overlap();
        let expected =
            brute_components(&contours, |a, b| polygons_intersect(&a.polygon, &b.polygon));
        assert_eq!(
            sorted_components(find_overlaps(&contours, &overlap)),
            sorted_components(expected)
        );

        let near = MergePolicy::proximity(ProximityEps::Fixed(1.0));
        let expected = brute_components(&contours, |a, b| {
            min_vertex_distance(&a.polygon, &b.polygon) <= 1.0
        });
        assert_eq!(
            sorted_components(find_overlaps(&contours, &near)),
            sorted_components(expected)
        );

        let gated = MergePolicy::polygon_overlap().with_density_gate(1.5);
        let expected = brute_components(&contours, |a, b| {
            polygons_intersect(&a.polygon, &b.polygon)
                && a.density.max(b.density) / a.density.min(b.density) <= 1.5
        });
        assert_eq!(
            sorted_components(find_overlaps(&contours, &gated)),
            sorted_components(expected)
        );
    }
}

#[test]
fn trivial_group_merges() {
    let policy = MergePolicy::polygon_overlap();
    let a = model(
        4,
        vec![
            square_contour(0.0, 0.0, 1.0, 4),
            square_contour(5.0, 0.0, 1.0, 4),
        ],
    );
    let out = merge_group(std::slice::from_ref(&a), &policy, 0.5, &NullClock).unwrap();
    assert_eq!(out.model.contours, a.contours);
    assert_eq!(out.model.node_id, 4);

    let b = model(2, vec![square_contour(0.0, 9.0, 1.0, 2)]);
    let out = merge_group(&[a.clone(), b.clone()], &policy, 0.5, &NullClock).unwrap();
    assert_eq!(out.model.node_id, 2);
    assert_eq!(out.model.contours.len(), 3);
    assert_eq!(out.bytes_received, a.bytes_estimate);
    assert!(a.bytes_estimate > 0);
}

#[test]
fn split_ring_merges_into_one_contour() {
    let ring = spec(
        vec![shape(
            ShapeKind::Annulus {
                inner_ratio: 0.6,
                start_angle: 0.0,
                sweep: std::f64::consts::TAU,
            },
            30.0,
            30.0,
            20.0,
            3000,
        )],
        0.0,
        60.0,
        3,
    );
    let data = generate(&ring).unwrap();
    let backend = dbscan(2.0, 4);
    assert_eq!(
        oracle_single_machine(&data.points, &backend)
            .unwrap()
            .n_clusters,
        1
    );

    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (i, p) in data.points.iter().enumerate() {
        if p.x < 30.0 {
            left.push(i)
        } else {
            right.push(i)
        }
    }
    let fragment = |node_id: usize, ids: &[usize]| DatasetFragment {
        node_id,
        points: ids.iter().map(|&i| data.points[i]).collect(),
        origin_ids: ids.to_vec(),
    };
    let models: Vec<LocalModel> = [fragment(0, &left), fragment(1, &right)]
        .iter()
        .map(|f| {
            run_local_phase(
                f,
                &NodeParams {
                    node_id: f.node_id,
                    backend: backend.clone(),
                },
                0.5,
                &NullClock,
            )
            .unwrap()
        })
        .collect();
    assert_eq!(models.iter().map(|m| m.contours.len()).sum::<usize>(), 2);
    let out = merge_group(
        &models,
        &MergePolicy::proximity(ProximityEps::Auto),
        0.5,
        &NullClock,
    )
    .unwrap();
    assert_eq!(out.model.contours.len(), 1);
    assert_eq!(out.model.contours[0].point_count, 3000);
    assert_eq!(out.rounds, 1);
}

#[test]
fn local_phase_on_two_noisy_blobs() {
    let s = spec(
        vec![
            shape(ShapeKind::GaussianBlob, 25.0, 50.0, 2.0, 950),
            shape(ShapeKind::GaussianBlob, 75.0, 50.0, 2.0, 950),
        ],
        0.05,
        100.0,
        9,
    );
    let data = generate(&s).unwrap();
    assert_eq!(data.len(), 2000);
    let fragment = DatasetFragment {
        node_id: 0,
        points: data.points.clone(),
        origin_ids: (0..data.len()).collect(),
    };
    let m = run_local_phase(
        &fragment,
        &NodeParams {
            node_id: 0,
            backend: dbscan(1.5, 6),
        },
        0.3,
        &NullClock,
    )
    .unwrap();
    assert_eq!(
        m.contours.len(),
        2,
        "{:?}",
        m.contours
            .iter()
            .map(|c| (c.point_count, c.polygon.centroid()))
            .collect::<Vec<_>>()
    );
    assert!(m.vertex_count() as f64 / data.len() as f64 <= 0.05);

    let empty = DatasetFragment {
        node_id: 3,
        points: vec![],
        origin_ids: vec![],
    };
    assert!(matches!(
        run_local_phase(
            &empty,
            &NodeParams {
                node_id: 3,
                backend: dbscan(1.0, 2)
            },
            0.3,
            &NullClock
        ),
        Err(DdcError::EmptyFragment(3))
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let scatter: Vec<Point2D> = (0..200)
        .map(|_| Point2D::new(rng.random_range(0.0..1000.0), rng.random_range(0.0..1000.0)))
        .collect();
    let frag = DatasetFragment {
        node_id: 0,
        points: scatter,
        origin_ids: (0..200).collect(),
    };
    assert!(run_local_phase(
        &frag,
        &NodeParams {
            node_id: 0,
            backend: dbscan(0.5, 3)
        },
        0.3,
        &NullClock
    )
    .unwrap()
    .contours
    .is_empty());
}

#[test]
fn single_node_equals_the_oracle() {
    let p = preset("t4").unwrap();
    let data = generate(&p.spec).unwrap();
    let backend = dbscan(p.eps, p.min_pts);
    let policy = MergePolicy::proximity(ProximityEps::Auto);
    let cfg = DdcConfig::uniform(
        TopologyConfig::new(1, 2).unwrap(),
        backend.clone(),
        policy,
        p.lambda,
    );
    let global = run_ddc(&data.points, &cfg, &Sequential, &NullClock).unwrap();
    assert_eq!(global.levels, 0);
    assert!(global.merge_trace.is_empty());
    let oracle = oracle_contours(&data.points, &backend, p.lambda, &NullClock).unwrap();
    assert_eq!(global.contours, oracle.contours);

    let assigned = assign_points(&global, &data.points);
    let reference = oracle_single_machine(&data.points, &backend).unwrap();
    let inside: Vec<usize> = (0..data.len())
        .filter(|&i| reference.labels[i] != NOISE && assigned.labels[i] != NOISE)
        .collect();
    assert!(inside.len() as f64 > 0.99 * (data.len() - reference.noise_count()) as f64);
    let pick = |l: &Labeling| {
        Labeling::from_raw(
            &inside
                .iter()
                .map(|&i| l.labels[i] as i64)
                .collect::<Vec<_>>(),
        )
    };
    assert_eq!(
        adjusted_rand_index(&pick(&reference), &pick(&assigned), true).unwrap(),
        1.0
    );
}

#[test]
fn every_preset_recovers_its_clusters() {
    for name in ddc_core::data::PRESET_NAMES {
        let p = preset(name).unwrap();
        let data = generate(&p.spec).unwrap();
        let policy = MergePolicy::proximity(ProximityEps::Auto);
        let cfg = DdcConfig::uniform(
            TopologyConfig::new(5, 2).unwrap(),
            dbscan(p.eps, p.min_pts),
            policy,
            p.lambda,
        );
        let global = run_ddc(&data.points, &cfg, &Sequential, &NullClock).unwrap();
        assert_eq!(global.n_clusters(), p.expected_clusters, "{name}");
        assert_eq!(global.levels, 3);
        assert_fixpoint(&global, &policy);
        let ari = adjusted_rand_index(
            &data.truth().unwrap(),
            &assign_points(&global, &data.points),
            true,
        )
        .unwrap();
        assert!(ari >= 0.95, "{name}: {ari}");
    }
}

#[test]
fn kmeans_oracle_fails_on_nonconvex_preset() {
    let p = preset("t4").unwrap();
    let data = generate(&p.spec).unwrap();
    let km = oracle_single_machine(
        &data.points,
        &BackendParams::KMeans(KMeansParams::new(6, 1)),
    )
    .unwrap();
    let ari = adjusted_rand_index(&data.truth().unwrap(), &km, true).unwrap();
    assert!(ari < 0.9, "{ari}");
}

#[test]
fn config_errors() {
    let topo = TopologyConfig::new(4, 2).unwrap();
    assert!(TopologyConfig::new(0, 2).is_err());
    assert!(TopologyConfig::new(4, 1).is_err());
    let km = BackendParams::KMeans(KMeansParams::new(3, 0));
    let auto = DdcConfig::uniform(topo, km, MergePolicy::proximity(ProximityEps::Auto), 0.3);
    assert!(matches!(auto.validate(), Err(DdcError::Config(_))));
    let bad_lambda = DdcConfig::uniform(topo, dbscan(1.0, 3), MergePolicy::polygon_overlap(), 1.5);
    assert!(bad_lambda.validate().is_err());
    let mut per_node =
        DdcConfig::uniform(topo, dbscan(1.0, 3), MergePolicy::polygon_overlap(), 0.3);
    per_node.backends = vec![dbscan(1.0, 3); 3];
    assert!(per_node.validate().is_err());
    assert!(MergePolicy::polygon_overlap()
        .with_density_gate(0.5)
        .validate()
        .is_err());
    assert_eq!(MergePolicy::default().kind, MergeKind::BoundaryProximity);
}

#[test]
fn topology_level_counts() {
    let levels = |n, d| TopologyConfig::new(n, d).unwrap().levels();
    assert_eq!(levels(1, 2), 0);
    assert_eq!(levels(5, 2), 3);
    assert_eq!(levels(5, 5), 1);
    assert_eq!(levels(9, 3), 2);
    assert_eq!(levels(64, 2), 6);
}

fn blob_layout(seed: u64) -> (DatasetSpec, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.random_range(1..6);
    let shapes = (0..k)
        .map(|i| {
            let x = 15.0 + 30.0 * (i % 3) as f64;
            let y = 20.0 + 40.0 * (i / 3) as f64;
            shape(
                ShapeKind::Disk,
                x + rng.random_range(-3.0..3.0),
                y,
                rng.random_range(4.0..8.0),
                rng.random_range(300..800),
            )
        })
        .collect();
    (spec(shapes, 0.0, 100.0, seed), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn runs_reach_a_fixpoint_and_ignore_scheduling(
        seed in any::<u64>(),
        n_nodes in 1usize..9,
        degree in 2usize..5,
        random in any::<bool>(),
        proximity in any::<bool>(),
    ) {
        let (s, k) = blob_layout(seed);
        let data = generate(&s).unwrap();
        let policy = if proximity { MergePolicy::proximity(ProximityEps::Auto) } else { MergePolicy::polygon_overlap() };
        let mut cfg = DdcConfig::uniform(TopologyConfig::new(n_nodes, degree).unwrap(), dbscan(1.5, 4), policy, 0.6);
        cfg.partition = if random { PartitionStrategy::Random } else { PartitionStrategy::SpatialGrid };
        cfg.partition_seed = seed;
        let a = run_ddc(&data.points, &cfg, &Sequential, &NullClock).unwrap();
        let b = run_ddc(&data.points, &cfg, &ReversedThreads, &NullClock).unwrap();
        prop_assert_eq!(&a, &b);
        if a.levels > 0 {
            assert_fixpoint(&a, &policy);
        }
        if (proximity && !random) || n_nodes == 1 {
            prop_assert_eq!(a.n_clusters(), k);
        }
        let levels = a.merge_trace.iter().map(|r| r.level).max().unwrap_or(0);
        prop_assert_eq!(levels, a.levels);
        let fragments = partition(&data.points, n_nodes, cfg.partition, seed).unwrap();
        let c = run_ddc_fragments(fragments, &cfg, &Sequential, &NullClock).unwrap();
        prop_assert_eq!(&a, &c);
    }
}
