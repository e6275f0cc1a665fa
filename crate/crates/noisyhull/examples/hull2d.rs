//! Noisy upper hull of random points, checked against the exact hull.
use noisyhull::exec::Exec;
use noisyhull::gen::{erdos_points, rng};
use noisyhull::hull2d::{exact_upper_hull, noisy_upper_hull, Hull2dConfig};
use noisyhull::noise::NoiseModel;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1024);
    let pts = erdos_points(n, &mut rng(1));
    let model = NoiseModel::new(0.2, 1).unwrap();
    let mut e = Exec::new(&model);
    let (res, stats) = noisy_upper_hull(&mut e, &pts, &Hull2dConfig::default()).unwrap();
    println!(
        "n={n}: {} hull vertices, exact match {}",
        res.hull.len(),
        res == exact_upper_hull(&pts).unwrap()
    );
    println!("{:?} {:?}", e.report(), stats);
}
