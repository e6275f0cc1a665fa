//! Noisy 2D upper hull: noisy x-sort, then sqrt(n)-way divide and conquer
//! where every level verifies its children and recomputes the few bad ones.

pub mod brute;
pub mod combine;
pub mod verify;

use std::ops::Range;

use serde::{Deserialize, Serialize};

pub use brute::{brute_force_indices, convex_chain_test};
pub use combine::{combine_level, tangent_matrix, Tangent, TangentMatrix};
pub use verify::verify_indices;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::{orient2d_exact, validate_points, x_less, Orientation, Point2};
use crate::sweep::{failure_budget, solve_with_sweeping, SweepConfig, SweepInstance, Verdict, DEFAULT_RETRIES};
use crate::toolkit::{noisy_sort, FailTarget};
use crate::walk::WalkConfig;

/// Per-point on-hull flags (input order) and the hull itself in x-order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullResult {
    pub status: Vec<bool>,
    pub hull: Vec<Point2>,
}

#[derive(Serialize)]
struct HullJson {
    hull: Vec<[i64; 2]>,
    status: Vec<bool>,
}

impl HullResult {
    /// Result for points already in x-order with hull given by index.
    pub fn from_indices(pts: &[Point2], hull: &[usize]) -> Self {
        let mut status = vec![false; pts.len()];
        for &i in hull {
            status[i] = true;
        }
        HullResult {
            status,
            hull: hull.iter().map(|&i| pts[i]).collect(),
        }
    }

    /// Hull positions, assuming the statuses refer to x-sorted points.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.status.len()).filter(|&i| self.status[i]).collect()
    }

    pub fn to_json(&self) -> String {
        let j = HullJson {
            hull: self.hull.iter().map(|p| [p.x, p.y]).collect(),
            status: self.status.clone(),
        };
        serde_json::to_string(&j).expect("plain struct")
    }
}

/// Monotone chain over exact predicates.
pub fn exact_upper_hull(points: &[Point2]) -> Result<HullResult> {
    validate_points(points, false)?;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i].x, points[i].y));
    let mut chain: Vec<usize> = Vec::new();
    for &i in &order {
        while chain.len() >= 2 {
            let (a, b) = (points[chain[chain.len() - 2]], points[chain[chain.len() - 1]]);
            match orient2d_exact(a, b, points[i]) {
                Orientation::Cw => break,
                Orientation::Ccw => {
                    chain.pop();
                }
                Orientation::Collinear => return Err(Error::DegenerateInput("three collinear points".into())),
            }
        }
        chain.push(i);
    }
    let mut status = vec![false; points.len()];
    for &i in &chain {
        status[i] = true;
    }
    Ok(HullResult {
        status,
        hull: chain.iter().map(|&i| points[i]).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hull2dConfig {
    /// Per-operation exponent: at a level of size m each noisy operation
    /// fails with probability at most m^-c.
    pub c: f64,
    /// Per-subproblem exponent; must satisfy c >= 1 + c'.
    pub c_prime: f64,
    pub walk: WalkConfig,
    pub retries: u32,
    /// Reject collinear triples up front instead of on first contact.
    pub full_validation: bool,
}

impl Default for Hull2dConfig {
    fn default() -> Self {
        Hull2dConfig {
            c: 5.0,
            c_prime: 3.0,
            walk: WalkConfig::default(),
            retries: DEFAULT_RETRIES,
            full_validation: false,
        }
    }
}

impl Hull2dConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c_prime > 0.0) {
            return Err(Error::Config("c and c' must be positive".into()));
        }
        if self.c < 1.0 + self.c_prime {
            return Err(Error::Config(format!(
                "c = {} is below 1 + c' = {}",
                self.c,
                1.0 + self.c_prime
            )));
        }
        if self.walk.budget_constant == 0 {
            return Err(Error::Config("walk budget constant must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hull2dStats {
    /// Children flagged by verification and recomputed, over all levels.
    pub failed_subproblems: u64,
    /// Whole-level reruns after a budget overflow.
    pub retries: u64,
}

impl std::ops::AddAssign for Hull2dStats {
    fn add_assign(&mut self, o: Self) {
        self.failed_subproblems += o.failed_subproblems;
        self.retries += o.retries;
    }
}

/// `ceil(sqrt(m))` consecutive index ranges of near-equal size.
pub fn groups(m: usize) -> Vec<Range<usize>> {
    let mut g = 1;
    while g * g < m {
        g += 1;
    }
    (0..g)
        .map(|i| i * m / g..(i + 1) * m / g)
        .filter(|r| !r.is_empty())
        .collect()
}

#[derive(Debug, Clone)]
pub struct LevelSolution {
    pub hull: Vec<usize>,
    pub stats: Hull2dStats,
}

struct Level<'a> {
    pts: &'a [Point2],
    cfg: &'a Hull2dConfig,
}

impl SweepInstance for Level<'_> {
    type Input = Range<usize>;
    type Solution = LevelSolution;

    fn size(&self, input: &Range<usize>) -> usize {
        input.len()
    }

    fn solve(&self, exec: &mut Exec<'_>, input: &Range<usize>) -> Result<LevelSolution> {
        solve_level(exec, &self.pts[input.clone()], self.cfg)
    }

    fn verify(&self, exec: &mut Exec<'_>, input: &Range<usize>, s: &LevelSolution, t: &FailTarget) -> Result<Verdict> {
        verify_indices(exec, &self.pts[input.clone()], &s.hull, t, &self.cfg.walk)
    }

    fn brute_force(&self, exec: &mut Exec<'_>, input: &Range<usize>, t: &FailTarget) -> Result<LevelSolution> {
        let hull = brute_force_indices(exec, &self.pts[input.clone()], t, &self.cfg.walk)?;
        Ok(LevelSolution {
            hull,
            stats: Hull2dStats::default(),
        })
    }
}

/// Upper hull of x-sorted points by recursion on sqrt(m) groups. Each
/// level verifies its children at its own target and brute-forces failures.
pub fn solve_level(exec: &mut Exec<'_>, pts: &[Point2], cfg: &Hull2dConfig) -> Result<LevelSolution> {
    let m = pts.len();
    if m <= 2 {
        return Ok(LevelSolution {
            hull: (0..m).collect(),
            stats: Hull2dStats::default(),
        });
    }
    let children = groups(m);
    let largest = children.iter().map(|r| r.len()).max().unwrap_or(1);
    let t = FailTarget::at_least(m as u64, cfg.c);
    let sweep = SweepConfig {
        budget: failure_budget(largest),
        retries: cfg.retries,
    };
    let out = solve_with_sweeping(exec, &children, &Level { pts, cfg }, &t, &sweep)?;

    let mut stats = Hull2dStats {
        failed_subproblems: out.failed_indices.len() as u64,
        retries: out.retries_used as u64,
    };
    let child_hulls: Vec<Vec<Point2>> = out
        .solutions
        .iter()
        .zip(&children)
        .map(|(s, r)| {
            stats += s.stats;
            s.hull.iter().map(|&i| pts[r.start + i]).collect()
        })
        .collect();
    let views: Vec<&[Point2]> = child_hulls.iter().map(|h| h.as_slice()).collect();
    let merged = combine_level(exec, &views, &t, &cfg.walk)?;
    let hull = merged
        .into_iter()
        .map(|(j, v)| children[j].start + out.solutions[j].hull[v])
        .collect();
    Ok(LevelSolution { hull, stats })
}

/// Upper hull of `points` in any order; statuses refer to input order.
pub fn noisy_upper_hull(
    exec: &mut Exec<'_>,
    points: &[Point2],
    cfg: &Hull2dConfig,
) -> Result<(HullResult, Hull2dStats)> {
    cfg.validate()?;
    validate_points(points, cfg.full_validation)?;
    let n = points.len();
    let perm = noisy_sort(
        exec,
        points,
        |a, b| Ok(x_less(*a, *b)),
        &FailTarget::at_least(n as u64, cfg.c),
    )?;
    let sorted: Vec<Point2> = perm.iter().map(|&i| points[i]).collect();
    let sol = solve_level(exec, &sorted, cfg)?;
    let mut status = vec![false; n];
    for &i in &sol.hull {
        status[perm[i]] = true;
    }
    let hull = sol.hull.iter().map(|&i| sorted[i]).collect();
    Ok((HullResult { status, hull }, sol.stats))
}

/// Sweep check of a claimed result for x-sorted `pts`. Statuses must match
/// the hull sequence; then the hull is tested as in `verify_indices`.
pub fn sweep_upper_hull(
    exec: &mut Exec<'_>,
    pts: &[Point2],
    claimed: &HullResult,
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<Verdict> {
    if claimed.status.len() != pts.len() {
        return Ok(Verdict::Invalid);
    }
    let idx = claimed.indices();
    exec.prefix(pts.len());
    if idx.len() != claimed.hull.len() || idx.iter().zip(&claimed.hull).any(|(&i, h)| pts[i] != *h) {
        return Ok(Verdict::Invalid);
    }
    verify_indices(exec, pts, &idx, t, cfg)
}

/// Brute-force hull of x-sorted `pts` as a `HullResult`.
pub fn brute_force_upper_hull(
    exec: &mut Exec<'_>,
    pts: &[Point2],
    t: &FailTarget,
    cfg: &WalkConfig,
) -> Result<HullResult> {
    if pts.is_empty() {
        return Err(Error::EmptyInput);
    }
    let idx = brute_force_indices(exec, pts, t, cfg)?;
    Ok(HullResult::from_indices(pts, &idx))
}

/// Lower hull by reflecting y.
pub fn noisy_lower_hull(
    exec: &mut Exec<'_>,
    points: &[Point2],
    cfg: &Hull2dConfig,
) -> Result<(HullResult, Hull2dStats)> {
    let flipped: Vec<Point2> = points.iter().map(|p| Point2::new(p.x, -p.y)).collect();
    let (mut r, s) = noisy_upper_hull(exec, &flipped, cfg)?;
    for p in &mut r.hull {
        p.y = -p.y;
    }
    Ok((r, s))
}
