use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;

use noisyhull::exec::Exec;
use noisyhull::gen::rng;
use noisyhull::geom::{orient2d_exact, Halfspace3, Orientation, Point2, Point3, RatPoint3, COORD_BOUND};
use noisyhull::noise::{calibrate_repetitions, majority_tail, NoiseModel};

/// Four-sigma band for `draws` Bernoulli(p) trials.
fn band(p: f64, draws: u64) -> f64 {
    4.0 * (p * (1.0 - p) / draws as f64).sqrt()
}

#[test]
fn orient2d_matches_wide_determinant() {
    let mut r = rng(1);
    for _ in 0..1000 {
        let mut coord = || r.random_range(-COORD_BOUND..=COORD_BOUND);
        let [a, b, c] = [0; 3].map(|_| Point2::new(coord(), coord()));
        let big = |v: i64| BigInt::from(v);
        let det = (big(b.x) - big(a.x)) * (big(c.y) - big(a.y)) - (big(b.y) - big(a.y)) * (big(c.x) - big(a.x));
        let want = if det.is_positive() {
            Orientation::Ccw
        } else if det.is_negative() {
            Orientation::Cw
        } else {
            Orientation::Collinear
        };
        assert_eq!(orient2d_exact(a, b, c), want, "{a:?} {b:?} {c:?}");
    }
    assert_eq!(
        orient2d_exact(Point2::new(0, 0), Point2::new(1, 0), Point2::new(0, 1)),
        Orientation::Ccw
    );
    assert_eq!(
        orient2d_exact(Point2::new(0, 0), Point2::new(1, 1), Point2::new(2, 2)),
        Orientation::Collinear
    );
}

#[test]
fn flip_rate_at_p_0_3() {
    let m = NoiseModel::new(0.3, 42).unwrap();
    let mut e = Exec::new(&m);
    let draws = 100_000u64;
    let wrong = (0..draws).filter(|_| !e.flip(true)).count() as f64 / draws as f64;
    assert!((wrong - 0.3).abs() <= 0.006, "{wrong}");
    assert!(band(0.3, draws) <= 0.006);
    assert_eq!(e.report().raw_flips, draws);
}

#[test]
fn noiseless_channel_is_truthful() {
    let m = NoiseModel::noiseless(3);
    let mut e = Exec::new(&m);
    assert!((0..1000).all(|i| e.flip(i % 2 == 0) == (i % 2 == 0)));
}

#[test]
fn replay_is_identical() {
    let m = NoiseModel::new(0.4, 9).unwrap();
    let run = || {
        let mut e = Exec::at_site(&m, 77);
        (0..500).map(|_| e.flip(true)).collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
    let mut other = Exec::at_site(&m, 78);
    assert_ne!(run(), (0..500).map(|_| other.flip(true)).collect::<Vec<_>>());
}

#[test]
fn noisy_orient2d_rate() {
    let m = NoiseModel::new(0.25, 5).unwrap();
    let mut e = Exec::new(&m);
    let (a, b, c) = (Point2::new(0, 0), Point2::new(1, 0), Point2::new(0, 1));
    let draws = 100_000;
    let cw = (0..draws)
        .filter(|_| e.noisy_orient2d(a, b, c).unwrap() == Orientation::Cw)
        .count() as f64;
    assert!((cw / draws as f64 - 0.25).abs() <= 0.006);
    assert!(e.noisy_orient2d(a, b, Point2::new(5, 0)).is_err());
}

#[test]
fn noisy_halfspace_rate() {
    let m = NoiseModel::new(0.2, 6).unwrap();
    let mut e = Exec::new(&m);
    let o = RatPoint3::from_int(Point3::new(0, 0, 0));
    let h = Halfspace3::new(1, 0, 0, 1);
    let draws = 100_000;
    let wrong = (0..draws).filter(|_| !e.noisy_halfspace_test(&o, &h).unwrap()).count() as f64;
    assert!((wrong / draws as f64 - 0.2).abs() <= 0.005);

    let z = NoiseModel::noiseless(0);
    let mut e = Exec::new(&z);
    assert!(e.noisy_halfspace_test(&o, &h).unwrap());
    assert!(!e.noisy_halfspace_test(&o, &Halfspace3::new(1, 0, 0, -1)).unwrap());
}

#[test]
fn noisy_orient3d_rate() {
    let m = NoiseModel::new(0.2, 8).unwrap();
    let mut e = Exec::new(&m);
    let p = [
        Point3::new(0, 0, 0),
        Point3::new(1, 0, 0),
        Point3::new(0, 1, 0),
        Point3::new(0, 0, 1),
    ];
    let draws = 100_000;
    let z = NoiseModel::noiseless(0);
    let want = Exec::new(&z).noisy_orient3d(p[0], p[1], p[2], p[3]).unwrap();
    let wrong = (0..draws)
        .filter(|_| e.noisy_orient3d(p[0], p[1], p[2], p[3]).unwrap() != want)
        .count() as f64;
    assert!((wrong / draws as f64 - 0.2).abs() <= 0.005);
}

#[test]
fn calibration_examples() {
    assert_eq!(calibrate_repetitions(1000, 5.0, 0.0).unwrap(), 1);
    assert_eq!(calibrate_repetitions(2, 1.0, 0.1).unwrap(), 1);
    // Tail(3, 0.1) = 0.028 <= 1/16 < Tail(1, 0.1).
    assert_eq!(calibrate_repetitions(4, 2.0, 0.1).unwrap(), 3);
    assert!((majority_tail(3, 0.1) - 0.028).abs() < 1e-12);
}

#[test]
fn majority_vote_rate_matches_tail() {
    let m = NoiseModel::new(0.3, 12).unwrap();
    let rep = m.rep_for(5);
    let mut e = Exec::new(&m);
    let draws = 100_000u64;
    let wrong = (0..draws).filter(|_| !e.vote(true, &rep)).count() as f64 / draws as f64;
    let want = majority_tail(5, 0.3);
    assert!((wrong - want).abs() <= band(want, draws), "{wrong} vs {want}");
}

#[test]
fn calibrated_vote_meets_target() {
    let m = NoiseModel::new(0.3, 13).unwrap();
    let rep = m.repetition(64, 2.0).unwrap();
    assert_eq!(rep.k, calibrate_repetitions(64, 2.0, 0.3).unwrap());
    let mut e = Exec::new(&m);
    let draws = 100_000u64;
    let wrong = (0..draws).filter(|_| !e.vote(true, &rep)).count() as f64 / draws as f64;
    assert!(wrong <= 2.0 * 64f64.powi(-2), "{wrong}");
}

#[test]
fn calibration_at_256_4_0_3() {
    let k = calibrate_repetitions(256, 4.0, 0.3).unwrap();
    let target = 256f64.powi(-4);
    assert!(majority_tail(k, 0.3) <= target && majority_tail(k - 2, 0.3) > target);
    // Exact rational tails: Tail(223) = 2.153e-10 <= 2^-32 < Tail(221) = 2.574e-10.
    assert_eq!(k, 223);
}
