use noisyhull::exec::Exec;
use noisyhull::gen::{hull_pair, rng};
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::FailTarget;
use noisyhull::walk::tangent::{exact_upper_tangent, is_upper_tangent, upper_tangent};
use noisyhull::walk::WalkConfig;
use rand::Rng;

#[test]
fn noiseless_walk_matches_brute_force_on_500_pairs() {
    let mut r = rng(2024);
    let m = NoiseModel::noiseless(1);
    let cfg = WalkConfig::default();
    let t = FailTarget::new(4096, 2.0);
    for _ in 0..500 {
        let sa = r.random_range(1..=64);
        let sb = r.random_range(1..=64);
        let (a, b) = hull_pair(sa, sb, &mut r);
        let want = exact_upper_tangent(&a, &b).expect("tangent exists");
        let mut e = Exec::new(&m);
        let got = upper_tangent(&mut e, &a, &b, &t, &cfg).unwrap();
        assert_eq!(got, want, "sizes {sa} {sb}");
        assert!(is_upper_tangent(&a, &b, got.0, got.1));
    }
}
