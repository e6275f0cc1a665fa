//! Slab point location over a triangulated convex region: vertical lines
//! through every vertex, regions between consecutive crossing edges, each
//! region mapped to its triangle by voted containment tests.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::{orient2d_exact, Orientation, Point2};
use crate::toolkit::{noisy_binary_search, noisy_sort, FailTarget};
use crate::walk::WalkConfig;

/// Largest supported triangle count.
pub const SLAB_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub vertices: Vec<Point2>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Triangle(usize),
    Outside,
}

/// An edge with `a` strictly left of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: Point2,
    pub b: Point2,
}

#[derive(Debug, Clone, Default)]
pub struct Slab {
    /// Crossing edges, bottom to top.
    pub edges: Vec<Edge>,
    /// Triangle of the region between `edges[k]` and `edges[k + 1]`.
    pub regions: Vec<Option<usize>>,
}

#[derive(Debug, Clone)]
pub struct SlabStructure {
    /// Distinct vertex x-coordinates, increasing.
    pub boundaries: Vec<i64>,
    /// `boundaries.len() + 1` slabs; the two outer ones are empty.
    pub slabs: Vec<Slab>,
}

impl SlabStructure {
    pub fn region_count(&self) -> usize {
        self.slabs.iter().map(|s| s.regions.len()).sum()
    }
}

fn orient_sign(o: Orientation) -> i8 {
    match o {
        Orientation::Ccw => 1,
        Orientation::Cw => -1,
        Orientation::Collinear => 0,
    }
}

fn area2(t: [Point2; 3]) -> i128 {
    let [a, b, c] = t;
    ((b.x - a.x) as i128) * ((c.y - a.y) as i128) - ((b.y - a.y) as i128) * ((c.x - a.x) as i128)
}

/// Some edge line of one triangle has the other weakly on its far side.
fn separated(p: [Point2; 3], q: [Point2; 3]) -> bool {
    let sides = |t: [Point2; 3], o: [Point2; 3]| {
        let s = orient_sign(orient2d_exact(t[0], t[1], t[2]));
        (0..3).any(|i| {
            o.iter()
                .all(|&v| orient_sign(orient2d_exact(t[i], t[(i + 1) % 3], v)) * s <= 0)
        })
    };
    sides(p, q) || sides(q, p)
}

fn hull_area2(pts: &[Point2]) -> i128 {
    let mut v = pts.to_vec();
    v.sort_unstable_by_key(|p| (p.x, p.y));
    v.dedup();
    let half = |it: &mut dyn Iterator<Item = Point2>| {
        let mut h: Vec<Point2> = Vec::new();
        for p in it {
            while h.len() >= 2 && orient2d_exact(h[h.len() - 2], h[h.len() - 1], p) != Orientation::Ccw {
                h.pop();
            }
            h.push(p);
        }
        h
    };
    let mut lower = half(&mut v.iter().copied());
    let mut upper = half(&mut v.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let n = lower.len();
    (0..n)
        .map(|i| {
            let (a, b) = (lower[i], lower[(i + 1) % n]);
            a.x as i128 * b.y as i128 - a.y as i128 * b.x as i128
        })
        .sum()
}

impl Triangulation {
    /// Exact check: non-degenerate triangles with disjoint interiors whose
    /// areas add up to the area of the vertices' convex hull.
    pub fn validate(&self) -> Result<()> {
        if self.triangles.is_empty() {
            return Err(Error::NotATriangulation("no triangles".into()));
        }
        if self.triangles.len() > SLAB_CAP {
            return Err(Error::NotATriangulation(format!("more than {SLAB_CAP} triangles")));
        }
        let tris: Vec<[Point2; 3]> = self
            .triangles
            .iter()
            .map(|t| {
                if t.iter().any(|&i| i >= self.vertices.len()) {
                    return Err(Error::NotATriangulation("vertex index out of range".into()));
                }
                Ok(t.map(|i| self.vertices[i]))
            })
            .collect::<Result<_>>()?;
        if let Some(p) = self.vertices.iter().find(|p| !p.in_bounds()) {
            return Err(Error::NotATriangulation(format!(
                "vertex ({}, {}) out of bounds",
                p.x, p.y
            )));
        }
        if tris.iter().any(|&t| area2(t) == 0) {
            return Err(Error::NotATriangulation("degenerate triangle".into()));
        }
        for i in 0..tris.len() {
            for j in i + 1..tris.len() {
                if !separated(tris[i], tris[j]) {
                    return Err(Error::NotATriangulation(format!("triangles {i} and {j} overlap")));
                }
            }
        }
        let used: Vec<Point2> = tris.iter().flatten().copied().collect();
        let total: i128 = tris.iter().map(|&t| area2(t).abs()).sum();
        if total != hull_area2(&used) {
            return Err(Error::NotATriangulation(
                "triangles do not cover a convex region".into(),
            ));
        }
        Ok(())
    }
}

/// `y` of the edge's line at `x = x2 / 2`, as a fraction over `2 * dx`.
fn y_at(e: &Edge, x2: i128) -> (i128, i128) {
    let dx = (e.b.x - e.a.x) as i128;
    let dy = (e.b.y - e.a.y) as i128;
    (2 * e.a.y as i128 * dx + dy * (x2 - 2 * e.a.x as i128), 2 * dx)
}

/// A rational point `(nx / den, ny / den)`.
#[derive(Debug, Clone, Copy)]
struct RatPoint2 {
    nx: i128,
    ny: i128,
    den: i128,
}

fn orient_rat(a: Point2, b: Point2, p: RatPoint2) -> Result<bool> {
    let v = ((b.x - a.x) as i128) * (p.ny - a.y as i128 * p.den) - ((b.y - a.y) as i128) * (p.nx - a.x as i128 * p.den);
    match v.signum() {
        1 => Ok(true),
        -1 => Ok(false),
        _ => Err(Error::CollinearInput),
    }
}

/// Point halfway between two crossing edges on the slab's middle line.
fn representative(lo: &Edge, hi: &Edge, x2: i128) -> RatPoint2 {
    let (n1, d1) = y_at(lo, x2);
    let (n2, d2) = y_at(hi, x2);
    // y = (n1/d1 + n2/d2) / 2, x = x2 / 2.
    let den = 2 * d1 * d2;
    RatPoint2 {
        nx: x2 * d1 * d2,
        ny: n1 * d2 + n2 * d1,
        den,
    }
}

fn edge_below(e: &Edge, f: &Edge, x2: i128) -> Result<bool> {
    let (n1, d1) = y_at(e, x2);
    let (n2, d2) = y_at(f, x2);
    match (n1 * d2).cmp(&(n2 * d1)) {
        std::cmp::Ordering::Less => Ok(true),
        std::cmp::Ordering::Greater => Ok(false),
        std::cmp::Ordering::Equal => Err(Error::NotATriangulation("edges cross inside a slab".into())),
    }
}

/// Build the slab structure; `t` bounds the failure of the whole build.
pub fn build_slab_ppl(exec: &mut Exec<'_>, tri: &Triangulation, t: &FailTarget) -> Result<SlabStructure> {
    tri.validate()?;
    build_unchecked(exec, tri, t)
}

/// `build_slab_ppl` without the exact validation pass, for triangulations
/// that came out of noisy computations.
pub(crate) fn build_unchecked(exec: &mut Exec<'_>, tri: &Triangulation, t: &FailTarget) -> Result<SlabStructure> {
    let r = tri.triangles.len();

    let mut xs: Vec<i64> = tri.triangles.iter().flatten().map(|&i| tri.vertices[i].x).collect();
    xs.sort_unstable();
    xs.dedup();
    let nb = xs.len();
    let order = noisy_sort(exec, &xs, |a, b| Ok(a < b), &t.plus(1.0))?;
    let boundaries: Vec<i64> = order.iter().map(|&i| xs[i]).collect();
    let rank: HashMap<i64, usize> = boundaries.iter().enumerate().map(|(i, &x)| (x, i)).collect();

    let mut edges: Vec<Edge> = Vec::new();
    for t3 in &tri.triangles {
        for k in 0..3 {
            let (p, q) = (tri.vertices[t3[k]], tri.vertices[t3[(k + 1) % 3]]);
            if p.x == q.x {
                continue;
            }
            let e = if p.x < q.x {
                Edge { a: p, b: q }
            } else {
                Edge { a: q, b: p }
            };
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    exec.prefix(3 * r);

    // Slab s (1 <= s < nb) lies between boundaries s - 1 and s.
    let crossing: Vec<Vec<Edge>> = (0..=nb)
        .map(|s| {
            if s == 0 || s == nb {
                return Vec::new();
            }
            edges
                .iter()
                .filter(|e| rank[&e.a.x] < s && rank[&e.b.x] >= s)
                .copied()
                .collect()
        })
        .collect();
    let region_total: usize = crossing.iter().map(|c| c.len().saturating_sub(1)).sum();
    let per_op = t
        .plus(1.0)
        .union(3 * r * region_total.max(1) + edges.len() * edges.len() * nb);
    let rep = per_op.repetition(exec)?;

    let slabs = exec.try_parallel_for(crossing.into_iter().enumerate(), |e, (s, cross)| {
        if cross.is_empty() {
            return Ok(Slab::default());
        }
        let x2 = boundaries[s - 1] as i128 + boundaries[s] as i128;
        let order = noisy_sort(e, &cross, |f, g| edge_below(f, g, x2), &per_op)?;
        let sorted: Vec<Edge> = order.iter().map(|&i| cross[i]).collect();
        let regions = e.try_parallel_for(0..sorted.len() - 1, |e2, k| {
            let p = representative(&sorted[k], &sorted[k + 1], x2);
            let hits = e2.try_parallel_for(tri.triangles.iter(), |e3, t3| {
                let [a, b, c] = t3.map(|i| tri.vertices[i]);
                let s1 = e3.vote_on(orient_rat(a, b, p), &rep)?;
                let s2 = e3.vote_on(orient_rat(b, c, p), &rep)?;
                let s3 = e3.vote_on(orient_rat(c, a, p), &rep)?;
                Ok(s1 == s2 && s2 == s3)
            })?;
            e2.prefix(hits.len());
            Ok(hits.iter().position(|&h| h))
        })?;
        Ok(Slab { edges: sorted, regions })
    })?;
    Ok(SlabStructure { boundaries, slabs })
}

/// Locate `q` with two noisy binary searches, each at target `t`.
pub fn ppl_query(
    exec: &mut Exec<'_>,
    s: &SlabStructure,
    q: Point2,
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<Location> {
    let slab = noisy_binary_search(exec, &s.boundaries, &q, |b, q| Ok(*b < q.x), t, cfg)?;
    let sl = &s.slabs[slab];
    let k = noisy_binary_search(
        exec,
        &sl.edges,
        &q,
        |e, q| Ok(orient2d_exact(e.a, e.b, *q) == Orientation::Ccw),
        t,
        cfg,
    )?;
    if k == 0 || k == sl.edges.len() {
        return Ok(Location::Outside);
    }
    Ok(sl.regions[k - 1].map_or(Location::Outside, Location::Triangle))
}

/// Exact location. A point on a shared edge goes to the first triangle
/// containing it.
pub fn exact_locate(tri: &Triangulation, q: Point2) -> Location {
    for (i, t3) in tri.triangles.iter().enumerate() {
        let [a, b, c] = t3.map(|i| tri.vertices[i]);
        let s = [
            orient2d_exact(a, b, q),
            orient2d_exact(b, c, q),
            orient2d_exact(c, a, q),
        ]
        .map(orient_sign);
        if s.iter().all(|&v| v >= 0) || s.iter().all(|&v| v <= 0) {
            return Location::Triangle(i);
        }
    }
    Location::Outside
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoiseModel;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn single_triangle() {
        let tri = Triangulation {
            vertices: vec![p(0, 0), p(10, 1), p(4, 9)],
            triangles: vec![[0, 1, 2]],
        };
        let m = NoiseModel::noiseless(0);
        let mut e = Exec::new(&m);
        let s = build_slab_ppl(&mut e, &tri, &FailTarget::new(8, 2.0)).unwrap();
        assert_eq!(s.boundaries.len(), 3);
        assert_eq!(s.slabs.len(), 4);
        assert!(s.slabs.iter().flat_map(|x| &x.regions).all(|r| *r == Some(0)));
        let cfg = WalkConfig::default();
        let t = FailTarget::new(8, 2.0);
        let before = e.searches();
        assert_eq!(ppl_query(&mut e, &s, p(5, 3), &t, &cfg).unwrap(), Location::Triangle(0));
        assert_eq!(e.searches() - before, 2);
        assert_eq!(ppl_query(&mut e, &s, p(50, 3), &t, &cfg).unwrap(), Location::Outside);
    }

    #[test]
    fn rejects_overlap() {
        let tri = Triangulation {
            vertices: vec![p(0, 0), p(10, 0), p(0, 10), p(10, 10)],
            triangles: vec![[0, 1, 2], [0, 1, 3]],
        };
        assert!(matches!(tri.validate(), Err(Error::NotATriangulation(_))));
    }
}
