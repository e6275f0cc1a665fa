//! Brute-force upper hull: classify every point of each group by neighbour
//! max-finds and a convex-chain test, then merge the group hulls once.

use super::combine::combine_level;
use super::groups;
use crate::error::Result;
use crate::exec::Exec;
use crate::geom::{above, orient2d_exact, y_less, Orientation, Point2};
use crate::noise::Repetition;
use crate::toolkit::{noisy_max_find, FailTarget};
use crate::walk::WalkConfig;

/// Groups up to this size are classified by testing every spanning pair.
pub const SMALL_GROUP: usize = 6;

/// Every consecutive triple of `seq` is a right turn, each triple decided by
/// one vote. Consecutive repeats are dropped first; a triple that still
/// repeats a point fails.
pub fn convex_chain_test(exec: &mut Exec<'_>, seq: &[Point2], rep: &Repetition) -> Result<bool> {
    let mut chain: Vec<Point2> = Vec::with_capacity(seq.len());
    for &p in seq {
        if chain.last() != Some(&p) {
            chain.push(p);
        }
    }
    for w in chain.windows(3) {
        if w[0] == w[2] {
            return Ok(false);
        }
        let truth = match orient2d_exact(w[0], w[1], w[2]) {
            Orientation::Cw => true,
            Orientation::Ccw => false,
            Orientation::Collinear => return Err(crate::error::Error::CollinearInput),
        };
        if !exec.vote(truth, rep) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// On-hull flags for an x-sorted group that is small enough to test every
/// point against every spanning pair.
fn classify_small(exec: &mut Exec<'_>, s: &[Point2], rep: &Repetition) -> Result<Vec<bool>> {
    let n = s.len();
    exec.try_parallel_for(0..n, |e, p| {
        if p == 0 || p + 1 == n {
            return Ok(true);
        }
        for a in 0..p {
            for b in p + 1..n {
                if !e.vote_on(above(s[a], s[b], s[p]), rep)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

fn classify_large(exec: &mut Exec<'_>, s: &[Point2], t: &FailTarget, rep: &Repetition) -> Result<Vec<bool>> {
    let n = s.len();
    let top = noisy_max_find(exec, s, |a, b| Ok(y_less(*a, *b)), t)?;
    let (l, r, tp) = (s[0], s[n - 1], s[top]);
    exec.try_parallel_for(0..n, |e, p| {
        if p == 0 || p + 1 == n || p == top {
            return Ok(true);
        }
        let pp = s[p];
        // Clockwise neighbour: the point right of p seen at the steepest
        // slope; counter-clockwise: the point left of p at the shallowest.
        let right = &s[p + 1..];
        let cw = right[noisy_max_find(e, right, |x, y| above(pp, *x, *y), t)?];
        let left = &s[..p];
        let ccw = left[noisy_max_find(e, left, |x, y| above(*x, pp, *y), t)?];
        Ok(
            convex_chain_test(e, &[l, ccw, pp, cw, tp, r], rep)?
                || convex_chain_test(e, &[tp, ccw, pp, cw, r, l], rep)?,
        )
    })
}

/// Upper hull of the x-sorted `pts` as increasing indices, failing with
/// probability at most `t` overall.
pub fn brute_force_indices(
    exec: &mut Exec<'_>,
    pts: &[Point2],
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<Vec<usize>> {
    let m = pts.len();
    if m <= 2 {
        return Ok((0..m).collect());
    }
    let parts = groups(m);
    let g = parts.len();
    let per_op = t.union(12 * m + 4 * g * g);
    let rep = per_op.repetition(exec)?;
    let flags = exec.try_parallel_for(parts.iter().cloned(), |e, range| {
        let s = &pts[range];
        if s.len() <= SMALL_GROUP {
            classify_small(e, s, &rep)
        } else {
            classify_large(e, s, &per_op, &rep)
        }
    })?;
    exec.prefix(m);
    let group_hulls: Vec<Vec<Point2>> = parts
        .iter()
        .zip(&flags)
        .map(|(r, f)| r.clone().filter(|&i| f[i - r.start]).map(|i| pts[i]).collect())
        .collect();
    let group_index: Vec<Vec<usize>> = parts
        .iter()
        .zip(&flags)
        .map(|(r, f)| r.clone().filter(|&i| f[i - r.start]).collect())
        .collect();
    let views: Vec<&[Point2]> = group_hulls.iter().map(|h| h.as_slice()).collect();
    let merged = combine_level(exec, &views, &per_op, cfg)?;
    Ok(merged.into_iter().map(|(j, v)| group_index[j][v]).collect())
}
