//! A pushdown walk searching a sorted array through an oracle that lies.
use noisyhull::exec::Exec;
use noisyhull::noise::NoiseModel;
use noisyhull::walk::bst::{BstOracle, BST_TESTS_PER_CALL};
use noisyhull::walk::{implicit_depth, pushdown_walk, WalkBudget, WalkConfig, WalkResult};

fn main() {
    let keys: Vec<i64> = (0..1000).map(|i| 3 * i).collect();
    let q = 1234;
    let model = NoiseModel::new(0.2, 11).unwrap();
    let rep = model.oracle_repetition(BST_TESTS_PER_CALL).unwrap();
    let budget = WalkBudget::for_epsilon(&WalkConfig::default(), implicit_depth(keys.len()), 1e-3);
    println!("oracle votes of {}, {} steps", rep.k, budget.steps);

    let mut hits = 0;
    for seed in 0..1000 {
        let m = NoiseModel::new(0.2, seed).unwrap();
        let mut e = Exec::new(&m);
        let mut oracle = BstOracle::new(&keys, &q, |a: &i64, b: &i64| Ok(a < b), rep);
        let out = pushdown_walk(&mut e, &mut oracle, &budget).unwrap();
        if let WalkResult::Found((lo, _)) = out.result {
            if lo == keys.partition_point(|k| *k < q) {
                hits += 1;
            }
        }
    }
    println!("found {q} in {hits}/1000 walks");
}
