//! Brute-force intersection of halfspaces tangent to a sphere.
use noisyhull::exec::Exec;
use noisyhull::gen::{rng, sphere_tangent_halfspaces};
use noisyhull::hull3d::{bf_halfspace_intersection, exact_halfspace_intersection};
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::FailTarget;

fn main() {
    let hs = sphere_tangent_halfspaces(12, &mut rng(4));
    let model = NoiseModel::new(0.2, 4).unwrap();
    let mut e = Exec::new(&model);
    let poly = bf_halfspace_intersection(&mut e, &hs, &FailTarget::new(12, 2.0)).unwrap();
    println!(
        "{} vertices, {} edges, exact {}",
        poly.vertices.len(),
        poly.adjacency.len(),
        poly == exact_halfspace_intersection(&hs).unwrap()
    );
    for v in poly.vertices.iter().take(3) {
        println!("  {:?} from planes {:?}", v.point.to_f64(), v.defining);
    }
    println!("{:?}", e.report());
}
