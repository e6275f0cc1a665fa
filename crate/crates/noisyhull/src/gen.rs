//! Input generators that produce general position by construction.
//!
//! For a prime `P`, the points `(t, t^2 mod P)` have no three collinear and
//! `(t, t^2 mod P, t^3 mod P)` have no four coplanar: the relevant
//! determinants reduce mod `P` to Vandermonde determinants of distinct `t`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{has_collinear_triple, orient2d_exact, Halfspace3, Orientation, Point2, Point3};
use crate::hull3d::{validate_halfspaces, Triangulation};

/// Largest prime below 2^20.
pub const PRIME: i64 = 1_048_573;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn distinct_ts(n: usize, r: &mut impl Rng) -> Vec<i64> {
    assert!(n as i64 <= PRIME, "at most {PRIME} points");
    sample(r, PRIME as usize, n).into_iter().map(|t| t as i64).collect()
}

/// `n` points of the modular parabola, centred on the origin. They look
/// uniform in a square and have no three collinear.
pub fn erdos_points(n: usize, r: &mut impl Rng) -> Vec<Point2> {
    let h = PRIME / 2;
    distinct_ts(n, r)
        .into_iter()
        .map(|t| Point2::new(t - h, (t * t) % PRIME - h))
        .collect()
}

/// Modular-parabola points restricted to a disk, which gives larger hulls
/// than the square.
pub fn erdos_points_disk(n: usize, r: &mut impl Rng) -> Vec<Point2> {
    let h = PRIME / 2;
    let mut out = Vec::with_capacity(n);
    let mut seen = std::collections::HashSet::new();
    while out.len() < n {
        let t = r.random_range(0..PRIME);
        let p = Point2::new(t - h, (t * t) % PRIME - h);
        if p.x * p.x + p.y * p.y <= h * h && seen.insert(t) {
            out.push(p);
        }
    }
    out
}

/// `n` points on the parabola `y = -x^2`, all of them upper-hull vertices.
pub fn parabola_points(n: usize, r: &mut impl Rng) -> Vec<Point2> {
    assert!(n <= 2049);
    sample(r, 2049, n)
        .into_iter()
        .map(|i| i as i64 - 1024)
        .map(|x| Point2::new(x, -x * x))
        .collect()
}

/// Modular moment-curve points: no four coplanar, and the projection to the
/// xy-plane has no three collinear.
pub fn moment_points(n: usize, r: &mut impl Rng) -> Vec<Point3> {
    let h = PRIME / 2;
    distinct_ts(n, r)
        .into_iter()
        .map(|t| {
            let t2 = (t * t) % PRIME;
            Point3::new(t - h, t2 - h, (t2 * t) % PRIME - h)
        })
        .collect()
}

/// An x-sorted strictly convex upper chain of exactly `n` points: the
/// affine image `(k t, -t^2 + s t)` of integer parabola points.
fn parabola_chain(n: usize, r: &mut impl Rng) -> Vec<Point2> {
    assert!(n <= 1025);
    let k = r.random_range(1..=256i64);
    let s = r.random_range(-512..=512i64);
    let mut ts: Vec<i64> = sample(r, 1025, n).into_iter().map(|i| i as i64 - 512).collect();
    ts.sort_unstable();
    ts.into_iter().map(|t| Point2::new(k * t, -t * t + s * t)).collect()
}

/// Two x-separated upper hulls of the given sizes whose union is in general
/// position.
pub fn hull_pair(sa: usize, sb: usize, r: &mut impl Rng) -> (Vec<Point2>, Vec<Point2>) {
    loop {
        let side = |sign: i64, n: usize, r: &mut ChaCha8Rng| {
            let chain = parabola_chain(n, r);
            let (lo, hi) = (chain[0].x, chain[n - 1].x);
            let gap = r.random_range(1..65_536i64);
            let dx = if sign < 0 { -hi - gap } else { -lo + gap };
            let dy = r.random_range(-262_144..262_144i64);
            chain
                .into_iter()
                .map(|p| Point2::new(p.x + dx, p.y + dy))
                .collect::<Vec<_>>()
        };
        let mut cr = ChaCha8Rng::seed_from_u64(r.random());
        let a = side(-1, sa, &mut cr);
        let b = side(1, sb, &mut cr);
        let mut all = a.clone();
        all.extend_from_slice(&b);
        if !has_collinear_triple(&all) {
            return (a, b);
        }
    }
}

/// A strictly convex polygon with `n` vertices in counter-clockwise order,
/// no three collinear.
pub fn convex_polygon(n: usize, r: &mut impl Rng) -> Vec<Point2> {
    assert!(n >= 3);
    let rad = 262_144.0f64;
    loop {
        let mut th: Vec<f64> = (0..n).map(|_| r.random_range(0.0..std::f64::consts::TAU)).collect();
        th.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let pts: Vec<Point2> = th
            .iter()
            .map(|t| Point2::new((rad * t.cos()).round() as i64, (rad * t.sin()).round() as i64))
            .collect();
        let convex = (0..n).all(|i| orient2d_exact(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) == Orientation::Ccw);
        let mut xs: Vec<i64> = pts.iter().map(|p| p.x).collect();
        xs.sort_unstable();
        xs.dedup();
        if convex && xs.len() == n && !has_collinear_triple(&pts) {
            return pts;
        }
    }
}

/// A fan triangulation of a random convex polygon with `r + 2` vertices.
pub fn fan_triangulation(r: usize, rng: &mut impl Rng) -> Triangulation {
    let vertices = convex_polygon(r + 2, rng);
    let triangles = (1..=r).map(|i| [0, i, i + 1]).collect();
    Triangulation { vertices, triangles }
}

/// Radius of the sphere the generated planes touch.
pub const SPHERE_RADIUS: f64 = 1000.0;

/// `n` halfspaces `u . x <= ceil(R |u|)` with random integer normals, so
/// each plane touches or clears the sphere of radius `R` around the
/// origin. Resampled until the set is bounded and in general position.
pub fn sphere_tangent_halfspaces(n: usize, rng: &mut impl Rng) -> Vec<Halfspace3> {
    assert!(n >= 4);
    loop {
        let hs: Vec<Halfspace3> = (0..n)
            .map(|_| loop {
                let u: [i64; 3] = [0; 3].map(|_| rng.random_range(-64..=64));
                let norm2 = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) as f64;
                if norm2 > 0.0 {
                    break Halfspace3::new(u[0], u[1], u[2], (SPHERE_RADIUS * norm2.sqrt()).ceil() as i64);
                }
            })
            .collect();
        if validate_halfspaces(&hs).is_ok() {
            return hs;
        }
    }
}
