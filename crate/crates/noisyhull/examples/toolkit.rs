//! Max-find, binary search and sort with a faulty comparator.
use rand::Rng;

use noisyhull::exec::Exec;
use noisyhull::gen::rng;
use noisyhull::noise::NoiseModel;
use noisyhull::toolkit::{noisy_binary_search, noisy_max_find, noisy_sort, FailTarget};
use noisyhull::walk::WalkConfig;

fn main() {
    let mut r = rng(3);
    let vals: Vec<i64> = (0..500).map(|_| r.random_range(0..1_000_000)).collect();
    let model = NoiseModel::new(0.25, 3).unwrap();
    let t = FailTarget::new(vals.len() as u64, 3.0);

    let mut e = Exec::new(&model);
    let i = noisy_max_find(&mut e, &vals, |a, b| Ok(a < b), &t).unwrap();
    println!(
        "max {} (true {}), {:?}",
        vals[i],
        vals.iter().max().unwrap(),
        e.report()
    );

    let mut e = Exec::new(&model);
    let perm = noisy_sort(&mut e, &vals, |a, b| Ok(a < b), &t).unwrap();
    let sorted: Vec<i64> = perm.iter().map(|&i| vals[i]).collect();
    println!("sorted: {}, {:?}", sorted.windows(2).all(|w| w[0] <= w[1]), e.report());

    let mut e = Exec::new(&model);
    let q = 500_000;
    let pos = noisy_binary_search(&mut e, &sorted, &q, |a, b| Ok(a < b), &t, &WalkConfig::default()).unwrap();
    println!(
        "insert {q} at {pos} (true {}), {:?}",
        sorted.partition_point(|x| *x < q),
        e.report()
    );
}
