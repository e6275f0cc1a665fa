//! Noise-tolerant max-find, binary search and sort.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::noise::Repetition;
use crate::walk::bst::{BstOracle, BST_TESTS_PER_CALL};
use crate::walk::{implicit_depth, pushdown_walk, WalkBudget, WalkConfig, WalkResult};

/// Target failure probability `base^(-exponent)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailTarget {
    pub base: u64,
    pub exponent: f64,
}

impl FailTarget {
    pub fn new(base: u64, exponent: f64) -> Self {
        assert!(
            base >= 2 && exponent > 0.0,
            "FailTarget needs base >= 2 and exponent > 0"
        );
        FailTarget { base, exponent }
    }

    /// Same target, clamping tiny bases up to 2.
    pub fn at_least(base: u64, exponent: f64) -> Self {
        FailTarget::new(base.max(2), exponent)
    }

    pub fn failure(&self) -> f64 {
        (self.base as f64).powf(-self.exponent)
    }

    /// `log2(1 / failure)`.
    pub fn log2_inv(&self) -> f64 {
        self.exponent * (self.base as f64).log2()
    }

    /// Per-event target such that `count` events together stay within `self`:
    /// the exponent grows by the least integer `d` with `base^d >= count`.
    pub fn union(&self, count: usize) -> FailTarget {
        let mut d = 0u32;
        let mut pow: u128 = 1;
        while pow < count as u128 {
            pow *= self.base as u128;
            d += 1;
        }
        FailTarget {
            base: self.base,
            exponent: self.exponent + d as f64,
        }
    }

    pub fn plus(&self, de: f64) -> FailTarget {
        FailTarget {
            base: self.base,
            exponent: self.exponent + de,
        }
    }

    pub fn repetition(&self, exec: &Exec<'_>) -> Result<Repetition> {
        exec.model().repetition(self.base, self.exponent)
    }
}

/// Index of the maximum under `less` (the exact truth of `a < b`) by a
/// balanced tournament; every match is a majority vote.
pub fn noisy_max_find<T, F>(exec: &mut Exec<'_>, items: &[T], mut less: F, t: &FailTarget) -> Result<usize>
where
    F: FnMut(&T, &T) -> Result<bool>,
{
    if items.is_empty() {
        return Err(Error::EmptyInput);
    }
    if items.len() == 1 {
        return Ok(0);
    }
    let rep = t.union(items.len() - 1).repetition(exec)?;
    let mut alive: Vec<usize> = (0..items.len()).collect();
    while alive.len() > 1 {
        let pairs: Vec<&[usize]> = alive.chunks(2).collect();
        alive = exec.try_parallel_for(pairs, |e, pair| {
            if pair.len() == 1 {
                return Ok(pair[0]);
            }
            let (a, b) = (pair[0], pair[1]);
            let a_lt_b = e.vote_on(less(&items[a], &items[b]), &rep)?;
            Ok(if a_lt_b { b } else { a })
        })?;
    }
    Ok(alive[0])
}

/// Insertion position of `query` in `seq` (number of elements `< query`) by
/// a pushdown walk over the implicit midpoint tree. `less(e, q)` is the
/// exact truth of `e < q`.
pub fn noisy_binary_search<T, Q, F>(
    exec: &mut Exec<'_>,
    seq: &[T],
    query: &Q,
    less: F,
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<usize>
where
    F: FnMut(&T, &Q) -> Result<bool>,
{
    exec.count_search();
    if seq.is_empty() {
        return Ok(0);
    }
    let rep = exec.model().oracle_repetition(BST_TESTS_PER_CALL)?;
    let budget = WalkBudget::for_target(cfg, implicit_depth(seq.len()), t);
    let mut oracle = BstOracle::new(seq, query, less, rep);
    let out = pushdown_walk(exec, &mut oracle, &budget)?;
    Ok(match out.result {
        WalkResult::Found((lo, _)) => lo,
        WalkResult::NotFound => out.state.current.0,
    })
}

/// Comparator stages of Batcher's odd-even merge sort on `n` slots, with
/// comparators touching slots `>= n` dropped.
pub fn batcher_stages(n: usize) -> Vec<Vec<(usize, usize)>> {
    let size = n.next_power_of_two();
    let mut stages = Vec::new();
    let mut p = 1;
    while p < size {
        let mut k = p;
        while k >= 1 {
            let mut stage = Vec::new();
            let mut j = k % p;
            while j + k < size {
                for i in 0..k.min(size - j - k) {
                    let (a, b) = (i + j, i + j + k);
                    if a / (2 * p) == b / (2 * p) && b < n {
                        stage.push((a, b));
                    }
                }
                j += 2 * k;
            }
            if !stage.is_empty() {
                stages.push(stage);
            }
            k /= 2;
        }
        p *= 2;
    }
    stages
}

/// Permutation `perm` with `items[perm[0]] < items[perm[1]] < ...`. Batcher's
/// odd-even merge sort with every compare-exchange majority-voted, so the
/// output is a permutation even when votes fail.
pub fn noisy_sort<T, F>(exec: &mut Exec<'_>, items: &[T], mut less: F, t: &FailTarget) -> Result<Vec<usize>>
where
    F: FnMut(&T, &T) -> Result<bool>,
{
    let n = items.len();
    let mut perm: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return Ok(perm);
    }
    let stages = batcher_stages(n);
    let comparators: usize = stages.iter().map(|s| s.len()).sum();
    let rep = t.union(comparators).repetition(exec)?;
    for stage in stages {
        let swaps = exec.try_parallel_for(stage.iter(), |e, &(a, b)| {
            let truth = less(&items[perm[b]], &items[perm[a]])?;
            Ok(e.vote(truth, &rep))
        })?;
        for (&(a, b), swap) in stage.iter().zip(swaps) {
            if swap {
                perm.swap(a, b);
            }
        }
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoiseModel;

    fn lt(a: &i64, b: &i64) -> Result<bool> {
        Ok(a < b)
    }

    #[test]
    fn union_steps() {
        let t = FailTarget::new(64, 2.0);
        assert_eq!(t.union(1).exponent, 2.0);
        assert_eq!(t.union(63).exponent, 3.0);
        assert_eq!(t.union(64).exponent, 3.0);
        assert_eq!(t.union(65).exponent, 4.0);
    }

    #[test]
    fn batcher_sorts_every_small_permutation_exactly() {
        // 0-1 principle: a comparator network sorts everything iff it sorts
        // every 0-1 input.
        for n in 1..=12usize {
            let stages = batcher_stages(n);
            for mask in 0u32..(1 << n) {
                let mut v: Vec<u32> = (0..n).map(|i| (mask >> i) & 1).collect();
                for s in &stages {
                    for &(a, b) in s {
                        if v[b] < v[a] {
                            v.swap(a, b);
                        }
                    }
                }
                assert!(v.windows(2).all(|w| w[0] <= w[1]), "n={n} mask={mask:b}");
            }
        }
    }

    #[test]
    fn noiseless_toolkit_is_exact() {
        let m = NoiseModel::noiseless(3);
        let mut e = Exec::new(&m);
        let t = FailTarget::new(64, 2.0);
        let keys: Vec<i64> = vec![5, -3, 17, 8, 0, 16, 2];
        assert_eq!(noisy_max_find(&mut e, &keys, lt, &t).unwrap(), 2);
        let perm = noisy_sort(&mut e, &keys, lt, &t).unwrap();
        let sorted: Vec<i64> = perm.iter().map(|&i| keys[i]).collect();
        assert_eq!(sorted, vec![-3, 0, 2, 5, 8, 16, 17]);
        let s = sorted.clone();
        let cfg = WalkConfig::default();
        for q in -5..20 {
            let pos = noisy_binary_search(&mut e, &s, &q, lt, &t, &cfg).unwrap();
            assert_eq!(pos, s.partition_point(|v| *v < q));
        }
        assert_eq!(noisy_binary_search(&mut e, &[] as &[i64], &3, lt, &t, &cfg).unwrap(), 0);
    }

    #[test]
    fn single_item_costs_nothing() {
        let m = NoiseModel::new(0.3, 3).unwrap();
        let mut e = Exec::new(&m);
        let t = FailTarget::new(64, 2.0);
        assert_eq!(noisy_max_find(&mut e, &[4i64], lt, &t).unwrap(), 0);
        assert_eq!(noisy_sort(&mut e, &[4i64], lt, &t).unwrap(), vec![0]);
        assert_eq!(e.report().logical_ops, 0);
        assert_eq!(noisy_max_find(&mut e, &[] as &[i64], lt, &t), Err(Error::EmptyInput));
    }
}
