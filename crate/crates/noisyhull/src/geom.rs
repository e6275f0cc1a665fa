//! Exact integer geometry. Every predicate here is a ground truth that the
//! noise channel later corrupts, so nothing in this module uses floats.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Largest admissible coordinate magnitude.
pub const COORD_BOUND: i64 = 1 << 20;

/// Shear factor for the lexicographic x-order. `SHEAR * x + y` is strictly
/// increasing in `(x, y)` order for bounded coordinates.
pub const SHEAR: i64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    pub x: i64,
    pub y: i64,
}

impl Point2 {
    pub const fn new(x: i64, y: i64) -> Self {
        Point2 { x, y }
    }

    /// Position along the sheared x-axis; realizes the (x, y) tie-break.
    #[inline]
    pub fn xkey(self) -> i64 {
        SHEAR * self.x + self.y
    }

    pub fn in_bounds(self) -> bool {
        self.x.abs() <= COORD_BOUND && self.y.abs() <= COORD_BOUND
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Point3 {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Point3 { x, y, z }
    }

    pub fn in_bounds(self) -> bool {
        self.x.abs() <= COORD_BOUND && self.y.abs() <= COORD_BOUND && self.z.abs() <= COORD_BOUND
    }

    pub fn xy(self) -> Point2 {
        Point2::new(self.x, self.y)
    }
}

/// The halfspace `a x + b y + c z <= d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Halfspace3 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Halfspace3 {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Halfspace3 { a, b, c, d }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a == 0 && self.b == 0 && self.c == 0 {
            return Err(Error::DegenerateInput("halfspace with zero normal".into()));
        }
        if [self.a, self.b, self.c, self.d].iter().any(|v| v.abs() > COORD_BOUND) {
            return Err(Error::DegenerateInput("halfspace coefficient out of bounds".into()));
        }
        Ok(())
    }

    pub fn normal(&self) -> [i128; 3] {
        [self.a as i128, self.b as i128, self.c as i128]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

#[inline]
fn cross(ax: i64, ay: i64, bx: i64, by: i64) -> i64 {
    ax * by - ay * bx
}

/// Sign of `(b - a) x (c - a)`. Fits in i64 for bounded inputs.
#[inline]
pub fn orient2d_exact(a: Point2, b: Point2, c: Point2) -> Orientation {
    let d = cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y);
    match d.cmp(&0) {
        Ordering::Greater => Orientation::Ccw,
        Ordering::Less => Orientation::Cw,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// `c` strictly above the line through `a` and `b`, where `a` precedes `b`
/// in x-order. Errors on collinear triples.
#[inline]
pub fn above(a: Point2, b: Point2, c: Point2) -> Result<bool> {
    match orient2d_exact(a, b, c) {
        Orientation::Ccw => Ok(true),
        Orientation::Cw => Ok(false),
        Orientation::Collinear => Err(Error::CollinearInput),
    }
}

#[inline]
pub fn x_less(a: Point2, b: Point2) -> bool {
    (a.x, a.y) < (b.x, b.y)
}

#[inline]
pub fn y_less(a: Point2, b: Point2) -> bool {
    (a.y, a.x) < (b.y, b.x)
}

/// Slope of `a0 -> a1` strictly greater than slope of `b0 -> b1`; both
/// segments must point forward in x-order. Cross-multiplied, no division.
#[inline]
pub fn slope_greater(a0: Point2, a1: Point2, b0: Point2, b1: Point2) -> bool {
    let (dax, day) = ((a1.x - a0.x) as i128, (a1.y - a0.y) as i128);
    let (dbx, dby) = ((b1.x - b0.x) as i128, (b1.y - b0.y) as i128);
    dax * dby - day * dbx < 0
}

/// Whether the intersection of line `p0 p1` with line `q0 q1` lies strictly
/// left of the separator `sep2 / 2` on the sheared x-axis.
/// Returns `None` when the lines are parallel.
pub fn meet_left_of(p0: Point2, p1: Point2, q0: Point2, q1: Point2, sep2: i64) -> Option<bool> {
    let d1 = ((p1.x - p0.x) as i128, (p1.y - p0.y) as i128);
    let d2 = ((q1.x - q0.x) as i128, (q1.y - q0.y) as i128);
    let den = d1.0 * d2.1 - d1.1 * d2.0;
    if den == 0 {
        return None;
    }
    let w = ((q0.x - p0.x) as i128, (q0.y - p0.y) as i128);
    let num = w.0 * d2.1 - w.1 * d2.0;
    // X = p0 + (num / den) d1 ; compare 2 * xkey(X) with sep2.
    let s = SHEAR as i128;
    let d1k = s * d1.0 + d1.1;
    let lhs = (2 * p0.xkey() as i128 - sep2 as i128) * den + 2 * num * d1k;
    Some(if den > 0 { lhs < 0 } else { lhs > 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

fn sign_of(v: i128) -> Sign {
    match v.cmp(&0) {
        Ordering::Greater => Sign::Positive,
        Ordering::Less => Sign::Negative,
        Ordering::Equal => Sign::Zero,
    }
}

fn det3(m: [[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Sign of `det[b - a, c - a, d - a]`; positive when `d` is on the side the
/// right-handed normal of triangle `a b c` points to.
pub fn orient3d_exact(a: Point3, b: Point3, c: Point3, d: Point3) -> Sign {
    let r = |p: Point3| [(p.x - a.x) as i128, (p.y - a.y) as i128, (p.z - a.z) as i128];
    sign_of(det3([r(b), r(c), r(d)]))
}

/// A point with exact rational coordinates `(nx, ny, nz) / den`, `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RatPoint3 {
    pub nx: i128,
    pub ny: i128,
    pub nz: i128,
    pub den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl RatPoint3 {
    pub fn from_int(p: Point3) -> Self {
        RatPoint3 {
            nx: p.x as i128,
            ny: p.y as i128,
            nz: p.z as i128,
            den: 1,
        }
    }

    /// Reduced `[num, den]` pairs per coordinate.
    pub fn reduced(&self) -> [[i128; 2]; 3] {
        let one = |n: i128| {
            let g = gcd(n, self.den).max(1);
            [n / g, self.den / g]
        };
        [one(self.nx), one(self.ny), one(self.nz)]
    }

    pub fn to_f64(&self) -> [f64; 3] {
        let d = self.den as f64;
        [self.nx as f64 / d, self.ny as f64 / d, self.nz as f64 / d]
    }
}

/// Solve the three plane equations `a x + b y + c z = d` by Cramer's rule.
/// `None` when the normals are linearly dependent.
pub fn plane_meet(h: [&Halfspace3; 3]) -> Option<RatPoint3> {
    let m = [h[0].normal(), h[1].normal(), h[2].normal()];
    let d = [h[0].d as i128, h[1].d as i128, h[2].d as i128];
    let det = det3(m);
    if det == 0 {
        return None;
    }
    let col = |k: usize| {
        let mut mm = m;
        for r in 0..3 {
            mm[r][k] = d[r];
        }
        det3(mm)
    };
    let (mut nx, mut ny, mut nz, mut den) = (col(0), col(1), col(2), det);
    if den < 0 {
        nx = -nx;
        ny = -ny;
        nz = -nz;
        den = -den;
    }
    Some(RatPoint3 { nx, ny, nz, den })
}

/// Sign of `a x + b y + c z - d` at `v`.
pub fn halfspace_side(v: &RatPoint3, h: &Halfspace3) -> Sign {
    let s = h.a as i128 * v.nx + h.b as i128 * v.ny + h.c as i128 * v.nz - h.d as i128 * v.den;
    sign_of(s)
}

/// Strict inside test; `OnBoundary` when the vertex lies on the plane.
pub fn halfspace_contains(v: &RatPoint3, h: &Halfspace3) -> Result<bool> {
    match halfspace_side(v, h) {
        Sign::Negative => Ok(true),
        Sign::Positive => Ok(false),
        Sign::Zero => Err(Error::OnBoundary),
    }
}

/// Validate a 2D input: bounds, duplicates. With `full` also reject any
/// collinear triple (O(n^2 log n)).
pub fn validate_points(pts: &[Point2], full: bool) -> Result<()> {
    if pts.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(p) = pts.iter().find(|p| !p.in_bounds()) {
        return Err(Error::DegenerateInput(format!(
            "point ({}, {}) out of bounds",
            p.x, p.y
        )));
    }
    let mut sorted: Vec<Point2> = pts.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DegenerateInput("duplicate point".into()));
    }
    if full && has_collinear_triple(pts) {
        return Err(Error::DegenerateInput("three collinear points".into()));
    }
    Ok(())
}

/// Detect three collinear points by sorting reduced directions around every
/// point.
pub fn has_collinear_triple(pts: &[Point2]) -> bool {
    let mut dirs: Vec<(i64, i64)> = Vec::with_capacity(pts.len());
    for (i, a) in pts.iter().enumerate() {
        dirs.clear();
        for b in &pts[i + 1..] {
            let (mut dx, mut dy) = (b.x - a.x, b.y - a.y);
            let g = gcd(dx as i128, dy as i128) as i64;
            dx /= g;
            dy /= g;
            if dx < 0 || (dx == 0 && dy < 0) {
                dx = -dx;
                dy = -dy;
            }
            dirs.push((dx, dy));
        }
        dirs.sort_unstable();
        if dirs.windows(2).any(|w| w[0] == w[1]) {
            return true;
        }
    }
    false
}
