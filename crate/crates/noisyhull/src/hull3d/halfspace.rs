//! Brute-force halfspace intersection: test every candidate vertex against
//! every halfspace, then link survivors that share two planes.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::{halfspace_contains, halfspace_side, plane_meet, Halfspace3, RatPoint3, Sign};
use crate::toolkit::{noisy_sort, FailTarget};

/// Vertex of an arrangement: the meet of three planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CandidateVertex {
    pub point: RatPoint3,
    pub defining: [usize; 3],
}

/// Vertices sorted by defining triple, edges as sorted vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope3 {
    pub vertices: Vec<CandidateVertex>,
    pub adjacency: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct PolytopeJson {
    vertices: Vec<[[i128; 2]; 3]>,
    adjacency: Vec<[usize; 2]>,
    defining: Vec<[usize; 3]>,
}

impl Polytope3 {
    pub fn to_json(&self) -> String {
        let j = PolytopeJson {
            vertices: self.vertices.iter().map(|v| v.point.reduced()).collect(),
            adjacency: self.adjacency.clone(),
            defining: self.vertices.iter().map(|v| v.defining).collect(),
        };
        serde_json::to_string(&j).expect("plain struct")
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.adjacency
            .iter()
            .filter_map(|&[a, b]| (a == v).then_some(b).or((b == v).then_some(a)))
            .collect()
    }
}

/// All triples of planes that meet in a single point, in lexicographic
/// triple order.
pub fn candidate_vertices(h: &[Halfspace3]) -> Vec<CandidateVertex> {
    let n = h.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if let Some(point) = plane_meet([&h[i], &h[j], &h[k]]) {
                    out.push(CandidateVertex {
                        point,
                        defining: [i, j, k],
                    });
                }
            }
        }
    }
    out
}

fn cross(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [i128; 3], b: [i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// The normals positively span space, i.e. no direction `u` has
/// `a_k . u <= 0` for every halfspace. Extreme rays of that cone are
/// crossings of two normals' planes, so those are the only candidates.
fn normals_bound(h: &[Halfspace3]) -> bool {
    let ns: Vec<[i128; 3]> = h.iter().map(|x| x.normal()).collect();
    let mut rank3 = false;
    'outer: for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            let c = cross(ns[i], ns[j]);
            if c == [0, 0, 0] {
                continue;
            }
            if ns.iter().any(|&u| dot(c, u) != 0) {
                rank3 = true;
                break 'outer;
            }
        }
    }
    if !rank3 {
        return false;
    }
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            let c = cross(ns[i], ns[j]);
            if c == [0, 0, 0] {
                continue;
            }
            for u in [c, [-c[0], -c[1], -c[2]]] {
                if ns.iter().all(|a| dot(*a, u) <= 0) {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact pre-pass: coefficient bounds, boundedness, no vertex on a fourth
/// plane, and at least one vertex inside everything.
pub fn validate_halfspaces(h: &[Halfspace3]) -> Result<()> {
    if h.len() < 4 {
        return Err(Error::UnboundedOrEmpty);
    }
    for x in h {
        x.validate()?;
    }
    if !normals_bound(h) {
        return Err(Error::UnboundedOrEmpty);
    }
    let mut inside = 0;
    for v in candidate_vertices(h) {
        let mut all = true;
        for (k, x) in h.iter().enumerate() {
            if v.defining.contains(&k) {
                continue;
            }
            match halfspace_side(&v.point, x) {
                Sign::Zero => return Err(Error::DegenerateInput(format!("four planes meet at {:?}", v.defining))),
                Sign::Positive => all = false,
                Sign::Negative => {}
            }
        }
        inside += all as usize;
    }
    if inside < 4 {
        return Err(Error::UnboundedOrEmpty);
    }
    Ok(())
}

/// Edges of a vertex set: pairs sharing two defining planes, found by
/// sorting `(plane pair, vertex)` keys.
fn link(exec: &mut Exec<'_>, verts: &[CandidateVertex], t: &FailTarget) -> Result<Vec<[usize; 2]>> {
    let mut keys: Vec<(usize, usize, usize)> = Vec::with_capacity(3 * verts.len());
    for (v, c) in verts.iter().enumerate() {
        let [a, b, d] = c.defining;
        keys.extend([(a, b, v), (a, d, v), (b, d, v)]);
    }
    let perm = noisy_sort(exec, &keys, |x, y| Ok(x < y), t)?;
    exec.prefix(keys.len());
    let sorted: Vec<_> = perm.iter().map(|&i| keys[i]).collect();
    let mut edges: Vec<[usize; 2]> = sorted
        .windows(2)
        .filter(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        .map(|w| [w[0].2.min(w[1].2), w[0].2.max(w[1].2)])
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(edges)
}

/// Noisy intersection of `h`, failing with probability at most `t` overall.
pub fn bf_halfspace_intersection(exec: &mut Exec<'_>, h: &[Halfspace3], t: &FailTarget) -> Result<Polytope3> {
    validate_halfspaces(h)?;
    let n = h.len();
    let cands = candidate_vertices(h);
    let per_test = t.plus(1.0).union(cands.len() * n);
    let rep = per_test.repetition(exec)?;
    let keep = exec.try_parallel_for(cands.iter(), |e, v| {
        let tests = e.try_parallel_for((0..n).filter(|k| !v.defining.contains(k)), |e2, k| {
            e2.vote_on(halfspace_contains(&v.point, &h[k]), &rep)
        })?;
        e.prefix(tests.len());
        Ok(tests.into_iter().all(|b| b))
    })?;
    exec.prefix(cands.len());
    let vertices: Vec<CandidateVertex> = cands
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(v, _)| v)
        .collect();
    let adjacency = link(exec, &vertices, &t.plus(1.0))?;
    Ok(Polytope3 { vertices, adjacency })
}

/// Exact enumeration; the reference the noisy version is compared to.
pub fn exact_halfspace_intersection(h: &[Halfspace3]) -> Result<Polytope3> {
    validate_halfspaces(h)?;
    let vertices: Vec<CandidateVertex> = candidate_vertices(h)
        .into_iter()
        .filter(|v| {
            h.iter()
                .enumerate()
                .all(|(k, x)| v.defining.contains(&k) || halfspace_side(&v.point, x) == Sign::Negative)
        })
        .collect();
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        let [a, b, c] = v.defining;
        for key in [(a, b), (a, c), (b, c)] {
            by_pair.entry(key).or_default().push(i);
        }
    }
    let mut adjacency: Vec<[usize; 2]> = by_pair
        .values()
        .filter(|vs| vs.len() == 2)
        .map(|vs| [vs[0].min(vs[1]), vs[0].max(vs[1])])
        .collect();
    adjacency.sort_unstable();
    Ok(Polytope3 { vertices, adjacency })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoiseModel;

    fn hs(v: &[(i64, i64, i64, i64)]) -> Vec<Halfspace3> {
        v.iter().map(|&(a, b, c, d)| Halfspace3::new(a, b, c, d)).collect()
    }

    #[test]
    fn tetrahedron_and_cube() {
        let m = NoiseModel::noiseless(1);
        let t = FailTarget::new(20, 2.0);
        let tet = hs(&[(-1, 0, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (1, 1, 1, 1)]);
        let p = bf_halfspace_intersection(&mut Exec::new(&m), &tet, &t).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert!((0..4).all(|v| p.neighbours(v).len() == 3));
        let cube = hs(&[
            (1, 0, 0, 1),
            (-1, 0, 0, 0),
            (0, 1, 0, 1),
            (0, -1, 0, 0),
            (0, 0, 1, 1),
            (0, 0, -1, 0),
        ]);
        let p = bf_halfspace_intersection(&mut Exec::new(&m), &cube, &t).unwrap();
        assert_eq!((p.vertices.len(), p.adjacency.len()), (8, 12));
        assert_eq!(p, exact_halfspace_intersection(&cube).unwrap());
    }

    #[test]
    fn rejects_unbounded() {
        let slab = hs(&[(1, 0, 0, 1), (-1, 0, 0, 0), (0, 1, 0, 1), (0, -1, 0, 0), (0, 0, 1, 1)]);
        assert_eq!(validate_halfspaces(&slab), Err(Error::UnboundedOrEmpty));
        let empty = hs(&[
            (1, 0, 0, -5),
            (-1, 0, 0, 0),
            (0, 1, 0, 1),
            (0, -1, 0, 0),
            (0, 0, 1, 1),
            (0, 0, -1, 0),
        ]);
        assert_eq!(validate_halfspaces(&empty), Err(Error::UnboundedOrEmpty));
    }
}
