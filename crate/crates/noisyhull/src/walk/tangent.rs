//! Upper tangent of two x-separated upper hulls by a pushdown walk over the
//! decision tree of the classical double binary search.
//!
//! A tree node holds the candidate index ranges in both hulls. Each range
//! bound remembers the probe pair whose case analysis produced it, so a node
//! can be checked by replaying those (at most four) conclusions.

use serde::{Deserialize, Serialize};

use super::{implicit_depth, pushdown_walk, Action, TransitionOracle, WalkBudget, WalkConfig, WalkResult};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::{above, meet_left_of, orient2d_exact, Orientation, Point2};
use crate::noise::Repetition;
use crate::toolkit::FailTarget;

/// Worst-case primitives per oracle call: 5 for the probe pair, 1 + 4 + 1 + 4
/// to replay the bound certificates.
pub const TANGENT_TESTS_PER_CALL: u32 = 15;

/// An x-sorted upper hull.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperHull {
    pub pts: Vec<Point2>,
}

impl UpperHull {
    pub fn new(pts: Vec<Point2>) -> Result<Self> {
        let h = UpperHull { pts };
        h.check()?;
        Ok(h)
    }

    /// x strictly increasing and every consecutive triple a right turn.
    pub fn check(&self) -> Result<()> {
        if self.pts.is_empty() {
            return Err(Error::EmptyInput);
        }
        if self.pts.windows(2).any(|w| w[0].xkey() >= w[1].xkey()) {
            return Err(Error::DegenerateInput("hull not x-increasing".into()));
        }
        if self
            .pts
            .windows(3)
            .any(|w| orient2d_exact(w[0], w[1], w[2]) != Orientation::Cw)
        {
            return Err(Error::DegenerateInput("hull has a non-right turn".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Stay,
    Left,
    Right,
}

/// Outcome of the case analysis at a probe pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseOutcome {
    Done,
    Advance { a: Move, b: Move },
}

/// Source of primitive answers: exact, or voted through the channel.
trait Tester {
    fn test(&mut self, truth: Result<bool>) -> Result<bool>;
}

struct Exact;

impl Tester for Exact {
    fn test(&mut self, truth: Result<bool>) -> Result<bool> {
        truth
    }
}

struct Voted<'e, 'm> {
    exec: &'e mut Exec<'m>,
    rep: Repetition,
}

impl Tester for Voted<'_, '_> {
    fn test(&mut self, truth: Result<bool>) -> Result<bool> {
        let t = truth.map_err(|_| Error::DegenerateTangent)?;
        Ok(self.exec.vote(t, &self.rep))
    }
}

struct Probe<'h> {
    a: &'h [Point2],
    b: &'h [Point2],
    sep2: i64,
}

impl Probe<'_> {
    fn new<'h>(a: &'h [Point2], b: &'h [Point2]) -> Probe<'h> {
        Probe {
            a,
            b,
            sep2: a[a.len() - 1].xkey() + b[0].xkey(),
        }
    }

    // Neighbour tests against the line through a[i], b[j]. A missing
    // neighbour counts as below.
    fn la(&self, t: &mut impl Tester, i: usize, j: usize) -> Result<bool> {
        if i == 0 {
            return Ok(false);
        }
        t.test(above(self.a[i], self.b[j], self.a[i - 1]))
    }

    fn ra(&self, t: &mut impl Tester, i: usize, j: usize) -> Result<bool> {
        if i + 1 >= self.a.len() {
            return Ok(false);
        }
        t.test(above(self.a[i], self.b[j], self.a[i + 1]))
    }

    fn lb(&self, t: &mut impl Tester, i: usize, j: usize) -> Result<bool> {
        if j == 0 {
            return Ok(false);
        }
        t.test(above(self.a[i], self.b[j], self.b[j - 1]))
    }

    fn rb(&self, t: &mut impl Tester, i: usize, j: usize) -> Result<bool> {
        if j + 1 >= self.b.len() {
            return Ok(false);
        }
        t.test(above(self.a[i], self.b[j], self.b[j + 1]))
    }

    /// Both chains concave at (i, j): does the meet of edge a[i]a[i+1] with
    /// edge b[j-1]b[j] lie left of the separator? The edges cannot be
    /// parallel when both chains really are concave; a noisy replay may still
    /// ask, and parallel edges then read as "no".
    fn meet_left(&self, t: &mut impl Tester, i: usize, j: usize) -> Result<bool> {
        let truth = meet_left_of(self.a[i], self.a[i + 1], self.b[j - 1], self.b[j], self.sep2).unwrap_or(false);
        t.test(Ok(truth))
    }

    fn case(&self, t: &mut impl Tester, i: usize, j: usize) -> Result<CaseOutcome> {
        let la = self.la(t, i, j)?;
        let ra = !la && self.ra(t, i, j)?;
        let rb = self.rb(t, i, j)?;
        let lb = !rb && self.lb(t, i, j)?;
        let out = if la || rb {
            CaseOutcome::Advance {
                a: if la { Move::Left } else { Move::Stay },
                b: if rb { Move::Right } else { Move::Stay },
            }
        } else {
            match (ra, lb) {
                (false, false) => CaseOutcome::Done,
                (true, false) => CaseOutcome::Advance {
                    a: Move::Right,
                    b: Move::Stay,
                },
                (false, true) => CaseOutcome::Advance {
                    a: Move::Stay,
                    b: Move::Left,
                },
                (true, true) => {
                    if self.meet_left(t, i, j)? {
                        CaseOutcome::Advance {
                            a: Move::Right,
                            b: Move::Stay,
                        }
                    } else {
                        CaseOutcome::Advance {
                            a: Move::Stay,
                            b: Move::Left,
                        }
                    }
                }
            }
        };
        Ok(out)
    }

    // Replays of single conclusions, evaluating only the primitives the
    // conclusion depends on.
    fn holds(&self, t: &mut impl Tester, slot: usize, i: usize, j: usize) -> Result<bool> {
        Ok(match slot {
            A_LEFT => self.la(t, i, j)?,
            B_RIGHT => self.rb(t, i, j)?,
            A_RIGHT => self.ra(t, i, j)? && !self.rb(t, i, j)? && (!self.lb(t, i, j)? || self.meet_left(t, i, j)?),
            B_LEFT => self.lb(t, i, j)? && !self.la(t, i, j)? && (!self.ra(t, i, j)? || !self.meet_left(t, i, j)?),
            _ => unreachable!(),
        })
    }
}

/// Case analysis at probe pair `(i, j)` with exact predicates.
pub fn ovl_case_analysis(a: &[Point2], b: &[Point2], i: usize, j: usize) -> Result<CaseOutcome> {
    Probe::new(a, b)
        .case(&mut Exact, i, j)
        .map_err(|_| Error::DegenerateTangent)
}

// Certificate slots. A_RIGHT raised the lower bound of A's range, A_LEFT
// lowered its upper bound; likewise for B.
const A_RIGHT: usize = 0;
const A_LEFT: usize = 1;
const B_RIGHT: usize = 2;
const B_LEFT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangentNode {
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub certs: [Option<(u32, u32)>; 4],
}

impl TangentNode {
    pub fn probe(&self) -> (usize, usize) {
        ((self.a.0 + self.a.1) / 2, (self.b.0 + self.b.1) / 2)
    }
}

pub struct TangentOracle<'h> {
    probe: Probe<'h>,
    rep: Repetition,
}

impl<'h> TangentOracle<'h> {
    pub fn new(a: &'h [Point2], b: &'h [Point2], rep: Repetition) -> Self {
        TangentOracle {
            probe: Probe::new(a, b),
            rep,
        }
    }
}

fn shift(range: (usize, usize), mid: usize, m: Move) -> Option<(usize, usize)> {
    match m {
        Move::Stay => Some(range),
        Move::Left => (mid > range.0).then(|| (range.0, mid - 1)),
        Move::Right => (mid < range.1).then(|| (mid + 1, range.1)),
    }
}

impl TransitionOracle for TangentOracle<'_> {
    type Node = TangentNode;

    fn root(&self) -> TangentNode {
        TangentNode {
            a: (0, self.probe.a.len() - 1),
            b: (0, self.probe.b.len() - 1),
            certs: [None; 4],
        }
    }

    fn advance(&mut self, exec: &mut Exec<'_>, node: &TangentNode) -> Result<Action<TangentNode>> {
        let mut t = Voted { exec, rep: self.rep };
        for (slot, cert) in node.certs.iter().enumerate() {
            if let Some((i, j)) = *cert {
                if !self.probe.holds(&mut t, slot, i as usize, j as usize)? {
                    return Ok(Action::Backtrack);
                }
            }
        }
        let (i, j) = node.probe();
        let (ma, mb) = match self.probe.case(&mut t, i, j)? {
            CaseOutcome::Done => return Ok(Action::AtTarget),
            CaseOutcome::Advance { a, b } => (a, b),
        };
        let (Some(ra), Some(rb)) = (shift(node.a, i, ma), shift(node.b, j, mb)) else {
            return Ok(Action::Backtrack);
        };
        let mut certs = node.certs;
        let here = Some((i as u32, j as u32));
        match ma {
            Move::Left => certs[A_LEFT] = here,
            Move::Right => certs[A_RIGHT] = here,
            Move::Stay => {}
        }
        match mb {
            Move::Left => certs[B_LEFT] = here,
            Move::Right => certs[B_RIGHT] = here,
            Move::Stay => {}
        }
        Ok(Action::Descend(TangentNode { a: ra, b: rb, certs }))
    }
}

/// Upper tangent `(i, j)` of hull `a` (left) and hull `b` (right).
pub fn upper_tangent(
    exec: &mut Exec<'_>,
    a: &[Point2],
    b: &[Point2],
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<(usize, usize)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let rep = exec.model().oracle_repetition(TANGENT_TESTS_PER_CALL)?;
    let budget = WalkBudget::for_target(cfg, implicit_depth(a.len()) + implicit_depth(b.len()), t);
    let mut oracle = TangentOracle::new(a, b, rep);
    let out = pushdown_walk(exec, &mut oracle, &budget)?;
    Ok(match out.result {
        WalkResult::Found(n) => n.probe(),
        WalkResult::NotFound => out.state.current.probe(),
    })
}

/// Exact check: every vertex other than the two tangent vertices lies
/// strictly below the line through `a[i]`, `b[j]`.
pub fn is_upper_tangent(a: &[Point2], b: &[Point2], i: usize, j: usize) -> bool {
    let (p, q) = (a[i], b[j]);
    a.iter()
        .enumerate()
        .all(|(k, &v)| k == i || orient2d_exact(p, q, v) == Orientation::Cw)
        && b.iter()
            .enumerate()
            .all(|(k, &v)| k == j || orient2d_exact(p, q, v) == Orientation::Cw)
}

/// Brute-force tangent over all pairs.
pub fn exact_upper_tangent(a: &[Point2], b: &[Point2]) -> Option<(usize, usize)> {
    (0..a.len())
        .flat_map(|i| (0..b.len()).map(move |j| (i, j)))
        .find(|&(i, j)| is_upper_tangent(a, b, i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoiseModel;

    fn pts(v: &[(i64, i64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    #[test]
    fn single_points() {
        let m = NoiseModel::new(0.2, 1).unwrap();
        let mut e = Exec::new(&m);
        let a = pts(&[(0, 0)]);
        let b = pts(&[(5, 3)]);
        let t = FailTarget::new(4096, 2.0);
        assert_eq!(
            upper_tangent(&mut e, &a, &b, &t, &WalkConfig::default()).unwrap(),
            (0, 0)
        );
        assert_eq!(e.report().logical_ops, 0);
    }

    #[test]
    fn four_by_four_case_sequence() {
        let a = pts(&[(0, 0), (2, 5), (4, 6), (6, 4)]);
        let b = pts(&[(10, 3), (12, 7), (14, 8), (16, 2)]);
        let want = exact_upper_tangent(&a, &b).unwrap();
        // Follow exact case outcomes from the root.
        let (mut ra, mut rb) = ((0usize, 3usize), (0usize, 3usize));
        loop {
            let (i, j) = ((ra.0 + ra.1) / 2, (rb.0 + rb.1) / 2);
            match ovl_case_analysis(&a, &b, i, j).unwrap() {
                CaseOutcome::Done => {
                    assert_eq!((i, j), want);
                    break;
                }
                CaseOutcome::Advance { a: ma, b: mb } => {
                    ra = shift(ra, i, ma).unwrap();
                    rb = shift(rb, j, mb).unwrap();
                }
            }
        }
        let m = NoiseModel::noiseless(0);
        let mut e = Exec::new(&m);
        let got = upper_tangent(&mut e, &a, &b, &FailTarget::new(4096, 2.0), &WalkConfig::default()).unwrap();
        assert_eq!(got, want);
    }
}
