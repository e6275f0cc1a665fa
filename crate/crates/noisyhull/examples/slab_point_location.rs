//! Slab point location over a fan triangulation.
use rand::Rng;

use noisyhull::exec::Exec;
use noisyhull::gen::{fan_triangulation, rng};
use noisyhull::geom::Point2;
use noisyhull::hull3d::{build_slab_ppl, exact_locate, ppl_query};
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::FailTarget;
use noisyhull::walk::WalkConfig;

fn main() {
    let mut r = rng(6);
    let tri = fan_triangulation(32, &mut r);
    let model = NoiseModel::new(0.2, 6).unwrap();
    let t = FailTarget::new(64, 2.0);
    let mut e = Exec::new(&model);
    let s = build_slab_ppl(&mut e, &tri, &t).unwrap();
    println!(
        "{} slabs, {} regions, build {:?}",
        s.slabs.len(),
        s.region_count(),
        e.report()
    );
    let mut agree = 0;
    for _ in 0..1000 {
        let q = Point2::new(r.random_range(-300_000..300_000), r.random_range(-300_000..300_000));
        if ppl_query(&mut e, &s, q, &t, &WalkConfig::default()).unwrap() == exact_locate(&tri, q) {
            agree += 1;
        }
    }
    println!("{agree}/1000 queries agree with exact location");
}
