//! Failure sweeping: solve children at their own confidence, verify every
//! child at the parent's confidence, and recompute the few failures with a
//! slower brute-force routine.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::toolkit::FailTarget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Valid,
    Invalid,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Valid
        } else {
            Verdict::Invalid
        }
    }

    pub fn is_valid(self) -> bool {
        self == Verdict::Valid
    }
}

pub trait SweepInstance {
    type Input;
    type Solution;

    fn size(&self, input: &Self::Input) -> usize;

    fn solve(&self, exec: &mut Exec<'_>, input: &Self::Input) -> Result<Self::Solution>;

    fn verify(
        &self,
        exec: &mut Exec<'_>,
        input: &Self::Input,
        solution: &Self::Solution,
        t: &FailTarget,
    ) -> Result<Verdict>;

    fn brute_force(&self, exec: &mut Exec<'_>, input: &Self::Input, t: &FailTarget) -> Result<Self::Solution>;

    /// Extension point for splitting oversized children before solving.
    /// The default keeps the children as given.
    fn pre_split(&self, children: Vec<Self::Input>) -> Vec<Self::Input> {
        children
    }
}

/// `ceil(m^(1/3))`, the number of failed children a level can repair.
pub fn failure_budget(m: usize) -> usize {
    let mut q = 1usize;
    while q * q * q < m {
        q += 1;
    }
    q
}

pub const DEFAULT_RETRIES: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub budget: usize,
    pub retries: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepEvent {
    pub index: usize,
    pub size: usize,
    pub verified: bool,
    pub recomputed: bool,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome<S> {
    pub solutions: Vec<S>,
    pub failed_indices: Vec<usize>,
    pub retries_used: u32,
    pub events: Vec<SweepEvent>,
}

impl<S> SweepOutcome<S> {
    /// The event log as JSON lines.
    pub fn event_log(&self) -> String {
        self.events
            .iter()
            .map(|e| serde_json::to_string(e).expect("plain struct") + "\n")
            .collect()
    }
}

pub fn solve_with_sweeping<I: SweepInstance>(
    exec: &mut Exec<'_>,
    children: &[I::Input],
    inst: &I,
    parent_target: &FailTarget,
    cfg: &SweepConfig,
) -> Result<SweepOutcome<I::Solution>> {
    if children.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut failed_count = 0;
    for attempt in 0..=cfg.retries {
        let mut solutions = exec.try_parallel_for(children.iter(), |e, c| inst.solve(e, c))?;
        let verdicts = exec.try_parallel_for(children.iter().zip(&solutions), |e, (c, s)| {
            inst.verify(e, c, s, parent_target)
        })?;
        exec.prefix(children.len());
        let failed: Vec<usize> = (0..children.len()).filter(|&i| !verdicts[i].is_valid()).collect();
        if failed.len() > cfg.budget {
            failed_count = failed.len();
            continue;
        }
        let fixed = exec.try_parallel_for(failed.iter(), |e, &i| inst.brute_force(e, &children[i], parent_target))?;
        for (&i, s) in failed.iter().zip(fixed) {
            solutions[i] = s;
        }
        let events = (0..children.len())
            .map(|i| SweepEvent {
                index: i,
                size: inst.size(&children[i]),
                verified: verdicts[i].is_valid(),
                recomputed: failed.contains(&i),
            })
            .collect();
        return Ok(SweepOutcome {
            solutions,
            failed_indices: failed,
            retries_used: attempt,
            events,
        });
    }
    Err(Error::BudgetExceeded {
        failed: failed_count,
        budget: cfg.budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_values() {
        assert_eq!(failure_budget(8), 2);
        assert_eq!(failure_budget(27), 3);
        assert_eq!(failure_budget(64), 4);
        assert_eq!(failure_budget(65), 5);
        assert_eq!(failure_budget(2), 2);
    }
}
