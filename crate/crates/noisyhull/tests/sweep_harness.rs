use std::cell::RefCell;
use std::collections::HashSet;

use rand::Rng;

use noisyhull::error::{Error, Result};
use noisyhull::exec::Exec;
use noisyhull::gen::rng;
use noisyhull::noise::NoiseModel;
use noisyhull::sweep::{failure_budget, solve_with_sweeping, SweepConfig, SweepInstance, Verdict};
use noisyhull::toolkit::{noisy_max_find, FailTarget};

/// Children are value lists, solutions the index of the maximum.
struct MaxFind {
    child_target: FailTarget,
    corrupt: HashSet<usize>,
    brute_calls: RefCell<usize>,
}

impl MaxFind {
    fn new(child_target: FailTarget) -> Self {
        MaxFind {
            child_target,
            corrupt: HashSet::new(),
            brute_calls: RefCell::new(0),
        }
    }
}

impl SweepInstance for MaxFind {
    type Input = (usize, Vec<u64>);
    type Solution = usize;

    fn size(&self, input: &Self::Input) -> usize {
        input.1.len()
    }

    fn solve(&self, exec: &mut Exec<'_>, (id, v): &Self::Input) -> Result<usize> {
        if self.corrupt.contains(id) {
            return Ok((v.iter().enumerate().min_by_key(|(_, x)| **x).unwrap()).0);
        }
        noisy_max_find(exec, v, |a, b| Ok(a < b), &self.child_target)
    }

    fn verify(&self, exec: &mut Exec<'_>, (_, v): &Self::Input, s: &usize, t: &FailTarget) -> Result<Verdict> {
        let rep = t.union(v.len()).repetition(exec)?;
        let ok = exec.parallel_for(v.iter(), |e, x| e.vote(*x <= v[*s], &rep));
        exec.prefix(v.len());
        Ok(Verdict::from_bool(ok.into_iter().all(|b| b)))
    }

    fn brute_force(&self, exec: &mut Exec<'_>, (_, v): &Self::Input, t: &FailTarget) -> Result<usize> {
        *self.brute_calls.borrow_mut() += 1;
        noisy_max_find(exec, v, |a, b| Ok(a < b), t)
    }
}

fn children(count: usize, size: usize, seed: u64) -> Vec<(usize, Vec<u64>)> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| (i, (0..size).map(|_| r.random()).collect()))
        .collect()
}

fn argmax(v: &[u64]) -> usize {
    (0..v.len()).max_by_key(|&i| v[i]).unwrap()
}

#[test]
fn budgets() {
    assert_eq!(failure_budget(8), 2);
    assert_eq!(failure_budget(27), 3);
    assert_eq!(failure_budget(64), 4);
    assert_eq!(failure_budget(65), 5);
}

#[test]
fn clean_children_need_no_brute_force() {
    let model = NoiseModel::noiseless(0);
    let inst = MaxFind::new(FailTarget::new(64, 2.0));
    let kids = children(16, 32, 1);
    let cfg = SweepConfig { budget: 2, retries: 0 };
    let out = solve_with_sweeping(&mut Exec::new(&model), &kids, &inst, &FailTarget::new(512, 3.0), &cfg).unwrap();
    assert!(out.failed_indices.is_empty());
    assert_eq!(*inst.brute_calls.borrow(), 0);
    assert_eq!(out.event_log().lines().count(), 16);
}

#[test]
fn corrupted_child_is_found_and_fixed() {
    let model = NoiseModel::noiseless(0);
    let mut inst = MaxFind::new(FailTarget::new(64, 2.0));
    inst.corrupt.insert(5);
    let kids = children(16, 32, 2);
    let cfg = SweepConfig { budget: 2, retries: 0 };
    let out = solve_with_sweeping(&mut Exec::new(&model), &kids, &inst, &FailTarget::new(512, 3.0), &cfg).unwrap();
    assert_eq!(out.failed_indices, vec![5]);
    assert_eq!(out.solutions[5], argmax(&kids[5].1));
    assert!(out.event_log().lines().nth(5).unwrap().contains("\"recomputed\":true"));
}

#[test]
fn budget_exhaustion_is_reported() {
    let model = NoiseModel::noiseless(0);
    let mut inst = MaxFind::new(FailTarget::new(64, 2.0));
    inst.corrupt.extend([1, 2, 3]);
    let kids = children(8, 8, 3);
    let cfg = SweepConfig { budget: 2, retries: 2 };
    let err = solve_with_sweeping(&mut Exec::new(&model), &kids, &inst, &FailTarget::new(64, 3.0), &cfg).unwrap_err();
    assert_eq!(err, Error::BudgetExceeded { failed: 3, budget: 2 });
}

#[test]
fn failures_track_the_child_failure_rate() {
    // Children solved at a deliberately weak target; failures counted by the
    // sweep against failures counted by an exact check of each child.
    let weak = FailTarget::new(2, 1.0);
    let kids = children(64, 64, 4);
    let trials = 200u64;
    let (mut flagged, mut truly_wrong) = (0usize, 0usize);
    for s in 0..trials {
        let model = NoiseModel::new(0.25, 40_000 + s).unwrap();
        let inst = MaxFind::new(weak);
        let wrong: usize = {
            let mut e = Exec::at_site(&model, 0);
            let sols = e.parallel_for(kids.iter(), |c, k| inst.solve(c, k).unwrap());
            sols.iter().zip(&kids).filter(|(s, k)| **s != argmax(&k.1)).count()
        };
        let cfg = SweepConfig { budget: 64, retries: 0 };
        let out = solve_with_sweeping(
            &mut Exec::at_site(&model, 0),
            &kids,
            &inst,
            &FailTarget::new(4096, 3.0),
            &cfg,
        );
        let out = out.unwrap();
        assert!(out.solutions.iter().zip(&kids).all(|(s, k)| *s == argmax(&k.1)));
        flagged += out.failed_indices.len();
        truly_wrong += wrong;
    }
    assert!(truly_wrong > 0, "the weak target should produce failures");
    let rate = truly_wrong as f64 / (64 * trials) as f64;
    let mean = flagged as f64 / trials as f64;
    let sd = (64.0 * rate * (1.0 - rate) / trials as f64).sqrt();
    assert!(mean <= 64.0 * rate + 4.0 * sd, "mean {mean} vs rate {rate}");
}
