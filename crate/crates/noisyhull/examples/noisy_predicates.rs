//! Raw noisy orientation tests against majority votes.
use noisyhull::exec::Exec;
use noisyhull::geom::{Orientation, Point2};
use noisyhull::noise::{majority_tail, NoiseModel};

fn main() {
    let model = NoiseModel::new(0.3, 7).unwrap();
    let mut e = Exec::new(&model);
    let (a, b, c) = (Point2::new(0, 0), Point2::new(4, 0), Point2::new(1, 3));
    let draws = 100_000;
    let wrong = (0..draws)
        .filter(|_| e.noisy_orient2d(a, b, c).unwrap() != Orientation::Ccw)
        .count();
    println!("raw orient2d wrong {:.4} (p = 0.3)", wrong as f64 / draws as f64);

    for k in [1, 5, 15, 45] {
        let rep = model.rep_for(k);
        let wrong = (0..draws).filter(|_| !e.vote(true, &rep)).count();
        println!(
            "k={k:>2}: vote wrong {:.5}, exact tail {:.5}",
            wrong as f64 / draws as f64,
            majority_tail(k, 0.3)
        );
    }
    let r = e.report();
    println!("raw flips {}, logical ops {}", r.raw_flips, r.logical_ops);
}
