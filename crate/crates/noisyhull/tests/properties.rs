use proptest::prelude::*;

use noisyhull::exec::Exec;
use noisyhull::gen::{erdos_points, rng, sphere_tangent_halfspaces};
use noisyhull::geom::{has_collinear_triple, Point2};
use noisyhull::hull2d::{exact_upper_hull, noisy_upper_hull, Hull2dConfig};
use noisyhull::hull3d::{bf_halfspace_intersection, exact_halfspace_intersection};
use noisyhull::io::{format_halfspaces, format_points, parse_halfspaces, parse_points};
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::{noisy_sort, FailTarget};

/// Small-coordinate point sets in general position.
fn point_sets() -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::btree_set((-200i64..200, -200i64..200), 1..60).prop_filter_map("general position", |s| {
        let pts: Vec<Point2> = s.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
        (!has_collinear_triple(&pts)).then_some(pts)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn noiseless_pipeline_is_exact(pts in point_sets(), seed in any::<u64>()) {
        let model = NoiseModel::noiseless(seed);
        let (got, stats) = noisy_upper_hull(&mut Exec::new(&model), &pts, &Hull2dConfig::default()).unwrap();
        prop_assert_eq!(got, exact_upper_hull(&pts).unwrap());
        prop_assert_eq!(stats.failed_subproblems, 0);
    }

    #[test]
    fn noisy_output_is_sorted_subset(pts in point_sets(), seed in any::<u64>()) {
        let model = NoiseModel::new(0.3, seed).unwrap();
        let (got, _) = noisy_upper_hull(&mut Exec::new(&model), &pts, &Hull2dConfig::default()).unwrap();
        prop_assert!(got.hull.iter().all(|p| pts.contains(p)));
        prop_assert_eq!(got.status.len(), pts.len());
    }

    #[test]
    fn seeds_replay(n in 3usize..200, seed in any::<u64>()) {
        let pts = erdos_points(n, &mut rng(seed));
        let model = NoiseModel::new(0.25, seed).unwrap();
        let run = || {
            let mut e = Exec::new(&model);
            let r = noisy_upper_hull(&mut e, &pts, &Hull2dConfig::default()).unwrap();
            (r.0, e.report())
        };
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn sort_is_a_permutation(v in prop::collection::vec(any::<i32>(), 0..200), seed in any::<u64>()) {
        let model = NoiseModel::new(0.4, seed).unwrap();
        let t = FailTarget::new(2, 0.1);
        let mut perm = noisy_sort(&mut Exec::new(&model), &v, |a, b| Ok(a < b), &t).unwrap();
        perm.sort_unstable();
        prop_assert_eq!(perm, (0..v.len()).collect::<Vec<_>>());
    }

    #[test]
    fn text_round_trip(pts in point_sets(), seed in any::<u64>()) {
        prop_assert_eq!(parse_points(&format_points(&pts)).unwrap(), pts);
        let hs = sphere_tangent_halfspaces(6, &mut rng(seed));
        prop_assert_eq!(parse_halfspaces(&format_halfspaces(&hs)).unwrap(), hs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn noiseless_intersection_is_exact(n in 4usize..=20, seed in any::<u64>()) {
        let hs = sphere_tangent_halfspaces(n, &mut rng(seed));
        let model = NoiseModel::noiseless(seed);
        let got = bf_halfspace_intersection(&mut Exec::new(&model), &hs, &FailTarget::new(n as u64, 2.0)).unwrap();
        prop_assert_eq!(got, exact_halfspace_intersection(&hs).unwrap());
    }
}
