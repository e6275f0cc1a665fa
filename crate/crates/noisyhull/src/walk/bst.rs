//! Transition oracle for search in the implicit midpoint tree over a sorted
//! slice. A node is a range `[lo, hi]` of candidate insertion positions; its
//! ancestor bounds are `seq[lo - 1]` and `seq[hi]`.

use super::{Action, TransitionOracle};
use crate::error::Result;
use crate::exec::Exec;
use crate::noise::Repetition;

/// Noisy primitives one call may evaluate: two bound checks and one split.
pub const BST_TESTS_PER_CALL: u32 = 3;

pub struct BstOracle<'a, T, Q, F> {
    seq: &'a [T],
    query: &'a Q,
    less: F,
    rep: Repetition,
}

impl<'a, T, Q, F> BstOracle<'a, T, Q, F>
where
    F: FnMut(&T, &Q) -> Result<bool>,
{
    /// `less(e, q)` is the exact truth of `e < q`.
    pub fn new(seq: &'a [T], query: &'a Q, less: F, rep: Repetition) -> Self {
        BstOracle { seq, query, less, rep }
    }

    fn test(&mut self, exec: &mut Exec<'_>, i: usize) -> Result<bool> {
        let truth = (self.less)(&self.seq[i], self.query)?;
        Ok(exec.vote(truth, &self.rep))
    }
}

impl<T, Q, F> TransitionOracle for BstOracle<'_, T, Q, F>
where
    F: FnMut(&T, &Q) -> Result<bool>,
{
    type Node = (usize, usize);

    fn root(&self) -> (usize, usize) {
        (0, self.seq.len())
    }

    fn advance(&mut self, exec: &mut Exec<'_>, &(lo, hi): &(usize, usize)) -> Result<Action<(usize, usize)>> {
        if lo > 0 && !self.test(exec, lo - 1)? {
            return Ok(Action::Backtrack);
        }
        if hi < self.seq.len() && self.test(exec, hi)? {
            return Ok(Action::Backtrack);
        }
        if lo == hi {
            return Ok(Action::AtTarget);
        }
        let mid = (lo + hi) / 2;
        Ok(if self.test(exec, mid)? {
            Action::Descend((mid + 1, hi))
        } else {
            Action::Descend((lo, mid))
        })
    }
}
