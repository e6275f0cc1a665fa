//! Verifying a 3D hull by projecting its upper and lower parts.
use noisyhull::exec::Exec;
use noisyhull::gen::{moment_points, rng};
use noisyhull::geom::Point3;
use noisyhull::hull3d::{exact_hull3d, verify_hull3d};
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::FailTarget;
use noisyhull::walk::WalkConfig;

fn main() {
    let mut pts = moment_points(40, &mut rng(8));
    let hull = exact_hull3d(&pts).unwrap();
    let model = NoiseModel::new(0.2, 8).unwrap();
    let t = FailTarget::new(40, 5.0);
    let wc = WalkConfig::default();
    let mut e = Exec::new(&model);
    println!(
        "{} faces: {:?}, {:?}",
        hull.faces.len(),
        verify_hull3d(&mut e, &pts, &hull, &t, &wc).unwrap(),
        e.report()
    );

    // Add a point far above everything but keep the old claim.
    pts.push(Point3::new(0, 0, 1 << 20));
    let mut stale = hull.clone();
    stale.status.push(false);
    println!(
        "stale claim: {:?}",
        verify_hull3d(&mut Exec::new(&model), &pts, &stale, &t, &wc).unwrap()
    );
}
