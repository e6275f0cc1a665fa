//! Merging x-separated upper hulls through all-pairs tangents.

use crate::error::Result;
use crate::exec::Exec;
use crate::geom::{slope_greater, Point2};
use crate::toolkit::{noisy_max_find, FailTarget};
use crate::walk::tangent::upper_tangent;
use crate::walk::WalkConfig;

/// A tangent between hull `i` and hull `j > i`, by vertex index in each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tangent {
    pub i: usize,
    pub j: usize,
    pub at_i: usize,
    pub at_j: usize,
}

impl Tangent {
    fn segment(&self, hulls: &[&[Point2]]) -> (Point2, Point2) {
        (hulls[self.i][self.at_i], hulls[self.j][self.at_j])
    }
}

/// Tangents for every pair `i < j`, row-major.
#[derive(Debug, Clone)]
pub struct TangentMatrix {
    pub g: usize,
    pub tangents: Vec<Tangent>,
}

impl TangentMatrix {
    pub fn get(&self, i: usize, j: usize) -> &Tangent {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // Row i starts after sum_{r<i} (g - 1 - r) entries.
        let row = i * (2 * self.g - i - 1) / 2;
        &self.tangents[row + (j - i - 1)]
    }
}

pub fn tangent_matrix(
    exec: &mut Exec<'_>,
    hulls: &[&[Point2]],
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<TangentMatrix> {
    let g = hulls.len();
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (i + 1..g).map(move |j| (i, j))).collect();
    let tangents = exec.try_parallel_for(pairs, |e, (i, j)| {
        let (at_i, at_j) = upper_tangent(e, hulls[i], hulls[j], t, cfg)?;
        Ok(Tangent { i, j, at_i, at_j })
    })?;
    Ok(TangentMatrix { g, tangents })
}

/// Merge x-sorted, x-separated upper hulls (left to right) into the upper
/// hull of their union. Returns `(hull, vertex)` pairs in x-order. `t` is
/// the target of each tangent walk, max-find and contribution test.
pub fn combine_level(
    exec: &mut Exec<'_>,
    hulls: &[&[Point2]],
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<Vec<(usize, usize)>> {
    let g = hulls.len();
    if g == 1 {
        return Ok((0..hulls[0].len()).map(|v| (0, v)).collect());
    }
    let tm = tangent_matrix(exec, hulls, t, cfg)?;
    let rep = t.repetition(exec)?;

    // V_j: smallest-slope tangent to U_j from the left; W_j: largest-slope
    // tangent from U_j to the right.
    let per_hull = exec.try_parallel_for(0..g, |e, j| {
        let steeper = |x: &Tangent, y: &Tangent| {
            let (a0, a1) = x.segment(hulls);
            let (b0, b1) = y.segment(hulls);
            Ok(slope_greater(a0, a1, b0, b1))
        };
        let v = if j > 0 {
            let left: Vec<Tangent> = (0..j).map(|i| *tm.get(i, j)).collect();
            Some(left[noisy_max_find(e, &left, steeper, t)?])
        } else {
            None
        };
        let w = if j + 1 < g {
            let right: Vec<Tangent> = (j + 1..g).map(|k| *tm.get(j, k)).collect();
            Some(right[noisy_max_find(e, &right, |x, y| steeper(y, x), t)?])
        } else {
            None
        };
        let range = match (v, w) {
            (None, Some(w)) => Some((0, w.at_i)),
            (Some(v), None) => Some((v.at_j, hulls[j].len() - 1)),
            (Some(v), Some(w)) => {
                let (a0, a1) = v.segment(hulls);
                let (b0, b1) = w.segment(hulls);
                let turns = e.vote(slope_greater(a0, a1, b0, b1), &rep);
                (turns && v.at_j <= w.at_i).then_some((v.at_j, w.at_i))
            }
            (None, None) => unreachable!(),
        };
        Ok(range)
    })?;

    exec.prefix(g);
    let mut out = Vec::new();
    for (j, r) in per_hull.into_iter().enumerate() {
        if let Some((lo, hi)) = r {
            out.extend((lo..=hi).map(|v| (j, v)));
        }
    }
    Ok(out)
}
