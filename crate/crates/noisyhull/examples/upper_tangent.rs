//! Upper tangent of two separated hulls by a pushdown walk.
use noisyhull::exec::Exec;
use noisyhull::gen::{hull_pair, rng};
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::FailTarget;
use noisyhull::walk::tangent::{exact_upper_tangent, upper_tangent};
use noisyhull::walk::WalkConfig;

fn main() {
    let (a, b) = hull_pair(40, 25, &mut rng(5));
    let want = exact_upper_tangent(&a, &b).unwrap();
    let model = NoiseModel::new(0.2, 5).unwrap();
    let mut e = Exec::new(&model);
    let got = upper_tangent(&mut e, &a, &b, &FailTarget::new(4096, 2.0), &WalkConfig::default()).unwrap();
    println!("tangent {got:?}, exact {want:?}");
    println!("{:?} -> {:?}", a[got.0], b[got.1]);
    println!("{:?}", e.report());
}
