use rand::Rng;

use noisyhull::exec::Exec;
use noisyhull::experiment::{tetrahedron, unit_cube};
use noisyhull::gen::{fan_triangulation, moment_points, rng, sphere_tangent_halfspaces};
use noisyhull::geom::{halfspace_contains, Point2};
use noisyhull::hull3d::{
    bf_halfspace_intersection, build_slab_ppl, exact_halfspace_intersection, exact_hull3d, exact_locate, ppl_query,
    verify_hull3d, Location, Triangulation,
};
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::FailTarget;
use noisyhull::walk::WalkConfig;

#[test]
fn fixtures_at_p0() {
    let model = NoiseModel::noiseless(0);
    let t = FailTarget::new(4, 2.0);
    let tet = bf_halfspace_intersection(&mut Exec::new(&model), &tetrahedron(), &t).unwrap();
    assert_eq!(tet.vertices.len(), 4);
    assert!((0..4).all(|v| tet.neighbours(v).len() == 3));
    let cube = bf_halfspace_intersection(&mut Exec::new(&model), &unit_cube(), &t).unwrap();
    assert_eq!((cube.vertices.len(), cube.adjacency.len()), (8, 12));
}

#[test]
fn reported_vertices_satisfy_every_halfspace() {
    let mut r = rng(31);
    for s in 0..30u64 {
        let n = r.random_range(4..=20);
        let hs = sphere_tangent_halfspaces(n, &mut r);
        let model = NoiseModel::new(0.2, s).unwrap();
        let got = bf_halfspace_intersection(&mut Exec::new(&model), &hs, &FailTarget::new(n as u64, 2.0)).unwrap();
        if got == exact_halfspace_intersection(&hs).unwrap() {
            for v in &got.vertices {
                for (k, h) in hs.iter().enumerate() {
                    if !v.defining.contains(&k) {
                        assert!(halfspace_contains(&v.point, h).unwrap());
                    }
                }
            }
        }
        for &[a, b] in &got.adjacency {
            assert!(got.neighbours(a).contains(&b) && got.neighbours(b).contains(&a));
        }
    }
}

#[test]
fn two_triangles_share_an_edge() {
    let tri = Triangulation {
        vertices: vec![
            Point2::new(0, 0),
            Point2::new(10, 1),
            Point2::new(3, 10),
            Point2::new(12, 9),
        ],
        triangles: vec![[0, 1, 2], [1, 3, 2]],
    };
    let model = NoiseModel::noiseless(0);
    let s = build_slab_ppl(&mut Exec::new(&model), &tri, &FailTarget::new(4, 2.0)).unwrap();
    for slab in &s.slabs {
        for k in 0..slab.regions.len() {
            assert!(slab.regions[k].is_some());
        }
    }
    let wc = WalkConfig::default();
    for q in [
        Point2::new(4, 3),
        Point2::new(9, 6),
        Point2::new(-5, 0),
        Point2::new(12, 0),
    ] {
        let got = ppl_query(&mut Exec::new(&model), &s, q, &FailTarget::new(4, 2.0), &wc).unwrap();
        assert_eq!(got, exact_locate(&tri, q), "{q:?}");
    }
}

#[test]
fn single_triangle_slabs() {
    let tri = Triangulation {
        vertices: vec![Point2::new(0, 0), Point2::new(4, 1), Point2::new(1, 5)],
        triangles: vec![[0, 1, 2]],
    };
    let model = NoiseModel::noiseless(0);
    let s = build_slab_ppl(&mut Exec::new(&model), &tri, &FailTarget::new(4, 2.0)).unwrap();
    assert_eq!(s.boundaries.len(), 3);
    assert_eq!(s.slabs.len(), 4);
    assert!(s.slabs.iter().flat_map(|sl| &sl.regions).all(|r| *r == Some(0)));
}

#[test]
fn fan_queries_at_p_0_2() {
    let r = 32usize;
    let wc = WalkConfig::default();
    let t = FailTarget::new(64, 2.0);
    let mut g = rng(32);
    let mut probes = 0u64;
    let mut wrong = 0u64;
    for round in 0..20u64 {
        let tri = fan_triangulation(r, &mut g);
        let model = NoiseModel::new(0.2, 320 + round).unwrap();
        let mut e = Exec::new(&model);
        let s = build_slab_ppl(&mut e, &tri, &t).unwrap();
        assert!(s.region_count() <= (r + 1) * (2 * r + 1));
        for _ in 0..50 {
            let q = Point2::new(g.random_range(-300_000..300_000), g.random_range(-300_000..300_000));
            let before = e.searches();
            let got = ppl_query(&mut e, &s, q, &t, &wc).unwrap();
            assert_eq!(e.searches() - before, 2);
            probes += 1;
            if got != exact_locate(&tri, q) {
                wrong += 1;
            }
        }
    }
    assert!(wrong as f64 / probes as f64 <= 0.001, "{wrong}/{probes}");
}

#[test]
fn overlapping_triangles_are_rejected() {
    let tri = Triangulation {
        vertices: vec![
            Point2::new(0, 0),
            Point2::new(10, 0),
            Point2::new(0, 10),
            Point2::new(1, 1),
        ],
        triangles: vec![[0, 1, 2], [0, 1, 3]],
    };
    let model = NoiseModel::noiseless(0);
    assert!(build_slab_ppl(&mut Exec::new(&model), &tri, &FailTarget::new(4, 2.0)).is_err());
    let outside = Triangulation {
        vertices: tri.vertices.clone(),
        triangles: vec![[0, 1, 2]],
    };
    let s = build_slab_ppl(&mut Exec::new(&model), &outside, &FailTarget::new(4, 2.0)).unwrap();
    let q = Point2::new(50, 50);
    let got = ppl_query(
        &mut Exec::new(&model),
        &s,
        q,
        &FailTarget::new(4, 2.0),
        &WalkConfig::default(),
    )
    .unwrap();
    assert_eq!(got, Location::Outside);
}

#[test]
fn hull_verification() {
    let wc = WalkConfig::default();
    let pts = moment_points(8, &mut rng(33));
    let hull = exact_hull3d(&pts).unwrap();
    let model = NoiseModel::noiseless(0);
    let t = FailTarget::new(8, 5.0);
    assert!(verify_hull3d(&mut Exec::new(&model), &pts, &hull, &t, &wc)
        .unwrap()
        .is_valid());

    let pts = moment_points(64, &mut rng(34));
    let hull = exact_hull3d(&pts).unwrap();
    let t = FailTarget::new(64, 5.0);
    let bad = (0..100u64)
        .filter(|&s| {
            let model = NoiseModel::new(0.2, 3400 + s).unwrap();
            !verify_hull3d(&mut Exec::new(&model), &pts, &hull, &t, &wc)
                .unwrap()
                .is_valid()
        })
        .count();
    assert_eq!(bad, 0);
}
