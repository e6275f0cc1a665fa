//! Checking a claimed upper hull under noise.

use crate::error::Result;
use crate::exec::Exec;
use crate::geom::{orient2d_exact, x_less, Orientation, Point2};
use crate::sweep::Verdict;
use crate::toolkit::{noisy_binary_search, FailTarget};
use crate::walk::WalkConfig;

fn right_turn(a: Point2, b: Point2, c: Point2) -> Result<bool> {
    match orient2d_exact(a, b, c) {
        Orientation::Cw => Ok(true),
        Orientation::Ccw => Ok(false),
        Orientation::Collinear => Err(crate::error::Error::CollinearInput),
    }
}

/// Check `hull` (increasing indices into the x-sorted `pts`) against all of
/// `pts`: every hull triple turns right and every other point lies below the
/// hull edge spanning it. `t` is the target of each single test.
pub fn verify_indices(
    exec: &mut Exec<'_>,
    pts: &[Point2],
    hull: &[usize],
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<Verdict> {
    let m = pts.len();
    // Label checks; no geometry involved.
    exec.prefix(hull.len());
    let well_formed =
        !hull.is_empty() && hull[0] == 0 && hull[hull.len() - 1] == m - 1 && hull.windows(2).all(|w| w[0] < w[1]);
    if !well_formed {
        return Ok(Verdict::Invalid);
    }
    let hp: Vec<Point2> = hull.iter().map(|&i| pts[i]).collect();
    let rep = t.repetition(exec)?;

    let convex = exec.try_parallel_for(1..hp.len().saturating_sub(1), |e, i| {
        e.vote_on(right_turn(hp[i - 1], hp[i], hp[i + 1]), &rep)
    })?;

    let mut on_hull = vec![false; m];
    for &i in hull {
        on_hull[i] = true;
    }
    let others: Vec<usize> = (0..m).filter(|&i| !on_hull[i]).collect();
    let below = exec.try_parallel_for(others, |e, q| {
        let qp = pts[q];
        let pos = noisy_binary_search(e, &hp, &qp, |h, q| Ok(x_less(*h, *q)), t, cfg)?;
        if pos == 0 || pos == hp.len() {
            return Ok(false);
        }
        e.vote_on(right_turn(hp[pos - 1], hp[pos], qp), &rep)
    })?;

    exec.prefix(m);
    Ok(Verdict::from_bool(convex.iter().chain(&below).all(|&b| b)))
}
