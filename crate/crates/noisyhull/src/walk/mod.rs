//! Path-guided pushdown random walks.
//!
//! The walk keeps a stack of visited nodes. A truthful oracle either moves
//! one step down the unique valid path, backtracks off an invalid node, or,
//! at the target, pushes a sentinel copy of the target. After exactly `N`
//! steps the node with the most sentinels on the stack is returned.

pub mod bst;
pub mod tangent;

use crate::error::Result;
use crate::exec::Exec;
use crate::toolkit::FailTarget;

pub const DEFAULT_BUDGET_CONSTANT: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkConfig {
    /// The constant `A` in `N = A (|P| + ceil(log2(1/eps)))`.
    pub budget_constant: u64,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            budget_constant: DEFAULT_BUDGET_CONSTANT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkBudget {
    pub path_bound: u64,
    /// `ceil(log2(1 / epsilon))`.
    pub log_inv_epsilon: u64,
    pub steps: u64,
}

impl WalkBudget {
    pub fn new(cfg: &WalkConfig, path_bound: u64, log_inv_epsilon: u64) -> Self {
        WalkBudget {
            path_bound,
            log_inv_epsilon,
            steps: cfg.budget_constant * (path_bound + log_inv_epsilon),
        }
    }

    pub fn for_epsilon(cfg: &WalkConfig, path_bound: u64, epsilon: f64) -> Self {
        WalkBudget::new(cfg, path_bound, (1.0 / epsilon).log2().ceil().max(0.0) as u64)
    }

    pub fn for_target(cfg: &WalkConfig, path_bound: u64, t: &FailTarget) -> Self {
        WalkBudget::new(cfg, path_bound, t.log2_inv().ceil() as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action<N> {
    Descend(N),
    Backtrack,
    AtTarget,
}

pub trait TransitionOracle {
    type Node: Clone + PartialEq;

    fn root(&self) -> Self::Node;

    /// One oracle call at `node`. Must return a child of `node`, a
    /// backtrack, or declare `node` the target.
    fn advance(&mut self, exec: &mut Exec<'_>, node: &Self::Node) -> Result<Action<Self::Node>>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkResult<N> {
    Found(N),
    NotFound,
}

#[derive(Debug, Clone)]
pub struct WalkState<N> {
    /// Visited nodes; `true` marks a sentinel copy of a claimed target.
    pub stack: Vec<(N, bool)>,
    pub current: N,
    pub steps: u64,
}

impl<N: Clone + PartialEq> WalkState<N> {
    fn new(root: N) -> Self {
        WalkState {
            stack: Vec::new(),
            current: root,
            steps: 0,
        }
    }

    /// Node with the most sentinel copies on the stack.
    pub fn dominant(&self) -> WalkResult<N> {
        let mut counts: Vec<(N, usize)> = Vec::new();
        for (n, s) in &self.stack {
            if !*s {
                continue;
            }
            match counts.iter_mut().find(|(m, _)| m == n) {
                Some(e) => e.1 += 1,
                None => counts.push((n.clone(), 1)),
            }
        }
        let mut best: Option<(N, usize)> = None;
        for (n, c) in counts {
            if best.as_ref().is_none_or(|b| c > b.1) {
                best = Some((n, c));
            }
        }
        match best {
            Some((n, _)) => WalkResult::Found(n),
            None => WalkResult::NotFound,
        }
    }
}

#[derive(Debug, Clone)]
pub struct WalkOutcome<N> {
    pub result: WalkResult<N>,
    pub state: WalkState<N>,
}

pub fn pushdown_walk<O: TransitionOracle>(
    exec: &mut Exec<'_>,
    oracle: &mut O,
    budget: &WalkBudget,
) -> Result<WalkOutcome<O::Node>> {
    let mut st = WalkState::new(oracle.root());
    for _ in 0..budget.steps {
        exec.tick(1);
        match oracle.advance(exec, &st.current)? {
            Action::Descend(child) => {
                let prev = std::mem::replace(&mut st.current, child);
                st.stack.push((prev, false));
            }
            Action::AtTarget => st.stack.push((st.current.clone(), true)),
            Action::Backtrack => {
                if let Some((n, _)) = st.stack.pop() {
                    st.current = n;
                }
            }
        }
        st.steps += 1;
    }
    Ok(WalkOutcome {
        result: st.dominant(),
        state: st,
    })
}

/// Depth of the implicit midpoint tree over `n` slots: `ceil(log2(n + 1))`.
pub fn implicit_depth(n: usize) -> u64 {
    crate::noise::ceil_log2(n as u64 + 1)
}
