//! The brute-force hull used to repair failed subproblems.
use noisyhull::exec::Exec;
use noisyhull::gen::{erdos_points, rng};
use noisyhull::geom::Point2;
use noisyhull::hull2d::{brute_force_upper_hull, exact_upper_hull};
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::FailTarget;
use noisyhull::walk::WalkConfig;

fn main() {
    for m in [16usize, 64, 256] {
        let mut pts: Vec<Point2> = erdos_points(m, &mut rng(m as u64));
        pts.sort_by_key(|p| (p.x, p.y));
        let model = NoiseModel::new(0.2, 9).unwrap();
        let mut e = Exec::new(&model);
        let t = FailTarget::new((m * m) as u64, 2.0);
        let got = brute_force_upper_hull(&mut e, &pts, &t, &WalkConfig::default()).unwrap();
        let r = e.report();
        println!(
            "m={m}: exact {}, work {}, span {}",
            got == exact_upper_hull(&pts).unwrap(),
            r.work,
            r.span
        );
    }
}
