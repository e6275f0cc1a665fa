//! 3D hull verification: local convexity at every edge, then every
//! non-hull point located under the upper and over the lower hull by
//! projecting each half to the xy-plane.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::{orient2d_exact, orient3d_exact, Orientation, Point3, Sign};
use crate::sweep::Verdict;
use crate::toolkit::FailTarget;
use crate::walk::WalkConfig;

use super::ppl::{build_unchecked, ppl_query, Location, Triangulation};

/// A claimed hull: on-hull flags and outward faces, counter-clockwise seen
/// from outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull3 {
    pub status: Vec<bool>,
    pub faces: Vec<[usize; 3]>,
}

fn canonical(f: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&i| f[i]).unwrap();
    [f[k], f[(k + 1) % 3], f[(k + 2) % 3]]
}

/// Exact hull by testing every triple; errors on four coplanar points.
pub fn exact_hull3d(pts: &[Point3]) -> Result<Hull3> {
    let n = pts.len();
    if n < 4 {
        return Err(Error::DegenerateInput("need at least four points".into()));
    }
    if let Some(p) = pts.iter().find(|p| !p.in_bounds()) {
        return Err(Error::DegenerateInput(format!("point {p:?} out of bounds")));
    }
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (mut neg, mut pos) = (false, false);
                for (l, &q) in pts.iter().enumerate() {
                    if l == i || l == j || l == k {
                        continue;
                    }
                    match orient3d_exact(pts[i], pts[j], pts[k], q) {
                        Sign::Negative => neg = true,
                        Sign::Positive => pos = true,
                        Sign::Zero => return Err(Error::DegenerateInput("four coplanar points".into())),
                    }
                }
                match (neg, pos) {
                    (true, false) => faces.push([i, j, k]),
                    (false, true) => faces.push([i, k, j]),
                    _ => {}
                }
            }
        }
    }
    let mut status = vec![false; n];
    for f in &faces {
        for &v in f {
            status[v] = true;
        }
    }
    faces = faces.into_iter().map(canonical).collect();
    faces.sort_unstable();
    Ok(Hull3 { status, faces })
}

/// Label checks: faces use flagged points only, every flagged point is on a
/// face, and every directed edge is matched by exactly one reverse edge.
/// Returns the third vertex across each directed edge.
fn surface(n: usize, h: &Hull3) -> Option<HashMap<(usize, usize), usize>> {
    if h.status.len() != n || h.faces.is_empty() {
        return None;
    }
    let mut across = HashMap::new();
    let mut used = vec![false; n];
    for f in &h.faces {
        if f.iter().any(|&v| v >= n || !h.status[v]) || f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return None;
        }
        for k in 0..3 {
            used[f[k]] = true;
            if across.insert((f[k], f[(k + 1) % 3]), f[(k + 2) % 3]).is_some() {
                return None;
            }
        }
    }
    if across.keys().any(|&(a, b)| !across.contains_key(&(b, a))) || (0..n).any(|v| h.status[v] != used[v]) {
        return None;
    }
    Some(across)
}

/// Check `claimed` against `pts`; `t` is the target of every single test,
/// point-location build and query.
pub fn verify_hull3d(
    exec: &mut Exec<'_>,
    pts: &[Point3],
    claimed: &Hull3,
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<Verdict> {
    let n = pts.len();
    exec.prefix(3 * claimed.faces.len() + n);
    let Some(across) = surface(n, claimed) else {
        return Ok(Verdict::Invalid);
    };
    let rep = t.repetition(exec)?;
    let inside = |a: Point3, b: Point3, c: Point3, d: Point3| match orient3d_exact(a, b, c, d) {
        Sign::Negative => Ok(true),
        Sign::Positive => Ok(false),
        Sign::Zero => Err(Error::DegenerateInput("four coplanar points".into())),
    };

    // Each face against the far vertex of its three neighbours.
    let convex = exec.try_parallel_for(claimed.faces.iter(), |e, f| {
        let [a, b, c] = f.map(|v| pts[v]);
        let mut ok = true;
        for k in 0..3 {
            let x = across[&(f[(k + 1) % 3], f[k])];
            ok &= e.vote_on(inside(a, b, c, pts[x]), &rep)?;
        }
        Ok(ok)
    })?;
    exec.prefix(convex.len());
    if !convex.iter().all(|&b| b) {
        return Ok(Verdict::Invalid);
    }

    // Faces whose outward normal points up.
    let up = exec.try_parallel_for(claimed.faces.iter(), |e, f| {
        let [a, b, c] = f.map(|v| pts[v].xy());
        let truth = match orient2d_exact(a, b, c) {
            Orientation::Ccw => Ok(true),
            Orientation::Cw => Ok(false),
            Orientation::Collinear => Err(Error::CollinearInput),
        };
        e.vote_on(truth, &rep)
    })?;
    exec.prefix(up.len());

    let others: Vec<usize> = (0..n).filter(|&i| !claimed.status[i]).collect();
    if others.is_empty() {
        return Ok(Verdict::Valid);
    }
    let projected: Vec<_> = pts.iter().map(|p| p.xy()).collect();
    let halves = exec.try_parallel_for([true, false], |e, upper| {
        let faces: Vec<[usize; 3]> = claimed
            .faces
            .iter()
            .zip(&up)
            .filter(|(_, &u)| u == upper)
            .map(|(f, _)| *f)
            .collect();
        if faces.is_empty() {
            return Ok(false);
        }
        let tri = Triangulation {
            vertices: projected.clone(),
            triangles: faces.clone(),
        };
        let ppl = build_unchecked(e, &tri, t)?;
        let ok = e.try_parallel_for(others.iter(), |e2, &u| {
            match ppl_query(e2, &ppl, projected[u], t, cfg)? {
                Location::Outside => Ok(false),
                Location::Triangle(i) => {
                    let [a, b, c] = faces[i].map(|v| pts[v]);
                    e2.vote_on(inside(a, b, c, pts[u]), &rep)
                }
            }
        })?;
        e.prefix(ok.len());
        Ok(ok.iter().all(|&b| b))
    })?;
    Ok(Verdict::from_bool(halves.iter().all(|&b| b)))
}
