//! Checking claimed hulls, clean and with injected faults.
use noisyhull::exec::Exec;
use noisyhull::experiment::{inject_fault, FaultKind, Instance2};
use noisyhull::gen::{erdos_points, rng};
use noisyhull::hull2d::sweep_upper_hull;
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::FailTarget;
use noisyhull::walk::WalkConfig;

fn main() {
    let clean = Instance2::exact(&erdos_points(64, &mut rng(2))).unwrap();
    let model = NoiseModel::new(0.2, 2).unwrap();
    let t = FailTarget::new(64, 5.0);
    let wc = WalkConfig::default();
    let cases = [
        ("clean", vec![]),
        ("corrupt-hull-point", vec![FaultKind::CorruptHullPoint]),
        ("flip-status", vec![FaultKind::FlipStatus]),
        ("move-point-outside", vec![FaultKind::MovePointOutside]),
    ];
    for (name, faults) in cases {
        let inst = inject_fault(&clean, &faults, 3);
        let v = sweep_upper_hull(&mut Exec::new(&model), &inst.points, &inst.result, &t, &wc).unwrap();
        println!("{name:>20}: {v:?}");
    }
}
