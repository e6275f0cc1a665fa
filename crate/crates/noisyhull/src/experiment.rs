//! Trial runners behind the command line: one record per
//! (n, p, trial), every `correct` flag decided by an exact oracle.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{CostReport, Exec};
use crate::gen::{erdos_points, rng, sphere_tangent_halfspaces};
use crate::geom::{has_collinear_triple, orient2d_exact, Halfspace3, Orientation, Point2};
use crate::hull2d::{exact_upper_hull, noisy_upper_hull, sweep_upper_hull, Hull2dConfig, HullResult};
use crate::hull3d::{bf_halfspace_intersection, exact_halfspace_intersection};
use crate::noise::{calibrate_repetitions_capped, ln_majority_tail, mix64, NoiseModel, DEFAULT_REPETITION_CAP};
use crate::toolkit::FailTarget;
use crate::walk::bst::{BstOracle, BST_TESTS_PER_CALL};
use crate::walk::{implicit_depth, pushdown_walk, WalkBudget, WalkConfig, WalkResult};

pub const CSV_HEADER: &str = "algorithm,n,p,seed,correct,span,work,raw_flips,logical_ops,failed_subproblems,retries";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub algorithm: String,
    pub n: u64,
    pub p: f64,
    pub seed: u64,
    pub correct: bool,
    pub span: u64,
    pub work: u64,
    pub raw_flips: u64,
    pub logical_ops: u64,
    pub failed_subproblems: u64,
    pub retries: u64,
}

impl TrialRecord {
    fn new(algorithm: &str, n: usize, p: f64, seed: u64, correct: bool, cost: CostReport) -> Self {
        TrialRecord {
            algorithm: algorithm.into(),
            n: n as u64,
            p,
            seed,
            correct,
            span: cost.span,
            work: cost.work,
            raw_flips: cost.raw_flips,
            logical_ops: cost.logical_ops,
            failed_subproblems: 0,
            retries: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

/// Write records with a fixed header (CSV) or one object per line.
pub fn write_records<W: Write>(out: W, records: &[TrialRecord], format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_HEADER.split(','))
                .map_err(|e| Error::Io(e.to_string()))?;
            for r in records {
                w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            let mut out = out;
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r).expect("plain struct"))?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub ns: Vec<usize>,
    pub ps: Vec<f64>,
    pub trials: u64,
    /// Trial `i` uses seed `seed + i`.
    pub seed: u64,
    pub c: f64,
    pub c_prime: f64,
    pub budget_constant: u64,
    pub retries: u32,
    pub repetition_cap: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let h = Hull2dConfig::default();
        ExperimentConfig {
            ns: vec![256],
            ps: vec![0.2],
            trials: 1,
            seed: 0,
            c: h.c,
            c_prime: h.c_prime,
            budget_constant: h.walk.budget_constant,
            retries: h.retries,
            repetition_cap: DEFAULT_REPETITION_CAP,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.ns.is_empty() || self.ps.is_empty() {
            return Err(Error::Config("need at least one n and one p".into()));
        }
        if let Some(p) = self.ps.iter().find(|p| !(0.0..0.5).contains(*p)) {
            return Err(Error::Config(format!("p must lie in [0, 1/2); got {p}")));
        }
        self.hull2d().validate()
    }

    pub fn hull2d(&self) -> Hull2dConfig {
        Hull2dConfig {
            c: self.c,
            c_prime: self.c_prime,
            walk: WalkConfig {
                budget_constant: self.budget_constant,
            },
            retries: self.retries,
            full_validation: false,
        }
    }

    fn model(&self, p: f64, seed: u64) -> Result<NoiseModel> {
        Ok(NoiseModel::new(p, seed)?.with_repetition_cap(self.repetition_cap))
    }

    /// `(n, p, seed)` in output order.
    fn grid(&self) -> impl Iterator<Item = (usize, f64, u64)> + '_ {
        self.ns.iter().flat_map(move |&n| {
            self.ps
                .iter()
                .flat_map(move |&p| (0..self.trials).map(move |i| (n, p, self.seed.wrapping_add(i))))
        })
    }
}

/// Seed for an instance generator, decorrelated from the channel seed.
pub fn instance_seed(seed: u64, n: usize) -> u64 {
    mix64(seed ^ mix64(n as u64 ^ 0x5EED))
}

pub fn run_hull2d(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let hc = cfg.hull2d();
    cfg.grid()
        .map(|(n, p, seed)| {
            let pts = erdos_points(n, &mut rng(instance_seed(seed, n)));
            let model = cfg.model(p, seed)?;
            let mut e = Exec::new(&model);
            let (got, stats) = noisy_upper_hull(&mut e, &pts, &hc)?;
            let correct = got == exact_upper_hull(&pts)?;
            let mut r = TrialRecord::new("hull2d", n, p, seed, correct, e.report());
            r.failed_subproblems = stats.failed_subproblems;
            r.retries = stats.retries;
            Ok(r)
        })
        .collect()
}

/// Fixed and random halfspace inputs for the 3D runner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture3 {
    Random,
    Tetrahedron,
    Cube,
}

pub fn tetrahedron() -> Vec<Halfspace3> {
    vec![
        Halfspace3::new(-1, 0, 0, 0),
        Halfspace3::new(0, -1, 0, 0),
        Halfspace3::new(0, 0, -1, 0),
        Halfspace3::new(1, 1, 1, 1),
    ]
}

pub fn unit_cube() -> Vec<Halfspace3> {
    vec![
        Halfspace3::new(1, 0, 0, 1),
        Halfspace3::new(-1, 0, 0, 0),
        Halfspace3::new(0, 1, 0, 1),
        Halfspace3::new(0, -1, 0, 0),
        Halfspace3::new(0, 0, 1, 1),
        Halfspace3::new(0, 0, -1, 0),
    ]
}

/// Brute-force intersection trials at target `(n, c)`. Fixtures ignore `n`
/// and record their own size.
pub fn run_hull3d_bf(cfg: &ExperimentConfig, fixture: Fixture3) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    if fixture == Fixture3::Random {
        if let Some(n) = cfg.ns.iter().find(|&&n| n < 4) {
            return Err(Error::Config(format!("need at least 4 halfspaces; got {n}")));
        }
    }
    cfg.grid()
        .map(|(n, p, seed)| {
            let hs = match fixture {
                Fixture3::Random => sphere_tangent_halfspaces(n, &mut rng(instance_seed(seed, n))),
                Fixture3::Tetrahedron => tetrahedron(),
                Fixture3::Cube => unit_cube(),
            };
            let model = cfg.model(p, seed)?;
            let mut e = Exec::new(&model);
            let got = bf_halfspace_intersection(&mut e, &hs, &FailTarget::at_least(hs.len() as u64, cfg.c))?;
            let correct = got == exact_halfspace_intersection(&hs)?;
            Ok(TrialRecord::new("hull3d-bf", hs.len(), p, seed, correct, e.report()))
        })
        .collect()
}

/// Walk bench: one noisy search for a random key in `n` sorted keys at
/// failure `epsilon`, budget `A (depth + log2(1/epsilon))`.
pub fn run_walk_bench(cfg: &ExperimentConfig, epsilon: f64) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Config(format!("epsilon must lie in (0, 1); got {epsilon}")));
    }
    let wc = WalkConfig {
        budget_constant: cfg.budget_constant,
    };
    cfg.grid()
        .map(|(n, p, seed)| {
            use rand::Rng;
            let mut r = rng(instance_seed(seed, n));
            let keys: Vec<i64> = (0..n as i64).map(|i| 2 * i).collect();
            let q: i64 = r.random_range(-1..=2 * n as i64);
            let model = cfg.model(p, seed)?;
            let mut e = Exec::new(&model);
            let rep = model.oracle_repetition(BST_TESTS_PER_CALL)?;
            let budget = WalkBudget::for_epsilon(&wc, implicit_depth(n), epsilon);
            let mut oracle = BstOracle::new(&keys, &q, |a: &i64, b: &i64| Ok(a < b), rep);
            let out = pushdown_walk(&mut e, &mut oracle, &budget)?;
            let want = keys.partition_point(|k| *k < q);
            let correct = matches!(out.result, WalkResult::Found((lo, _)) if lo == want);
            Ok(TrialRecord::new("walk-bench", n, p, seed, correct, e.report()))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationRow {
    pub n: u64,
    pub c: f64,
    pub p: f64,
    pub k: u64,
    /// `ln Tail(k, p)` and `ln Tail(k - 2, p)` (the latter unset for k = 1).
    pub ln_tail_k: f64,
    pub ln_tail_k_minus_2: Option<f64>,
    pub ln_target: f64,
}

pub const CALIBRATION_HEADER: &str = "n,c,p,k,ln_tail_k,ln_tail_k_minus_2,ln_target";

pub fn run_calibration_dump(cfg: &ExperimentConfig, cs: &[f64]) -> Result<Vec<CalibrationRow>> {
    if cs.iter().any(|&c| c <= 0.0) {
        return Err(Error::Config("c must be positive".into()));
    }
    let mut rows = Vec::new();
    for &n in &cfg.ns {
        for &p in &cfg.ps {
            for &c in cs {
                let k = calibrate_repetitions_capped(n as u64, c, p, cfg.repetition_cap)?;
                rows.push(CalibrationRow {
                    n: n as u64,
                    c,
                    p,
                    k,
                    ln_tail_k: ln_majority_tail(k, p),
                    ln_tail_k_minus_2: (k >= 3).then(|| ln_majority_tail(k - 2, p)),
                    ln_target: -c * (n as f64).ln(),
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_calibration<W: Write>(out: W, rows: &[CalibrationRow], format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CALIBRATION_HEADER.split(','))
                .map_err(|e| Error::Io(e.to_string()))?;
            for r in rows {
                w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            let mut out = out;
            for r in rows {
                writeln!(out, "{}", serde_json::to_string(r).expect("plain struct"))?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaultKind {
    /// Push an interior hull vertex below the segment of its neighbours.
    CorruptHullPoint,
    /// Label a non-hull point as a hull vertex.
    FlipStatus,
    /// Lift a non-hull point above the hull, keeping its label.
    MovePointOutside,
}

impl std::str::FromStr for FaultKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrupt-hull-point" => Ok(FaultKind::CorruptHullPoint),
            "flip-status" => Ok(FaultKind::FlipStatus),
            "move-point-outside" => Ok(FaultKind::MovePointOutside),
            _ => Err(Error::Config(format!("unknown fault kind {s:?}"))),
        }
    }
}

/// An x-sorted point set with a claimed result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance2 {
    pub points: Vec<Point2>,
    pub result: HullResult,
}

impl Instance2 {
    /// Sorted copy of `points` with its exact hull.
    pub fn exact(points: &[Point2]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort_by_key(|p| (p.x, p.y));
        let result = exact_upper_hull(&pts)?;
        Ok(Instance2 { points: pts, result })
    }
}

/// Floor and ceiling of the hull's height at `x`.
fn hull_y_at(hull: &[Point2], x: i64) -> Option<(i64, i64)> {
    let w = hull.windows(2).find(|w| w[0].x <= x && x <= w[1].x)?;
    let (a, b) = (w[0], w[1]);
    let num = a.y as i128 * (b.x - a.x) as i128 + (b.y - a.y) as i128 * (x - a.x) as i128;
    let den = (b.x - a.x) as i128;
    Some((num.div_euclid(den) as i64, (num + den - 1).div_euclid(den) as i64))
}

/// Apply each fault in turn; `target` picks the affected point among the
/// eligible ones. Faults with no eligible point leave the instance alone.
pub fn inject_fault(inst: &Instance2, kinds: &[FaultKind], target: usize) -> Instance2 {
    let mut out = inst.clone();
    for &k in kinds {
        out = inject_one(&out, k, target);
    }
    out
}

fn inject_one(inst: &Instance2, kind: FaultKind, target: usize) -> Instance2 {
    let mut out = inst.clone();
    let status = &inst.result.status;
    let sel = |v: Vec<usize>| (!v.is_empty()).then(|| v[target % v.len()]);
    let interior_hull: Vec<usize> = {
        let idx = inst.result.indices();
        idx.iter()
            .copied()
            .filter(|&i| i != idx[0] && i != *idx.last().unwrap())
            .collect()
    };
    let off_hull: Vec<usize> = (0..status.len()).filter(|&i| !status[i]).collect();
    // Move point i vertically from y0 in steps of `dir` until it stays in
    // general position.
    let relocate = |out: &mut Instance2, i: usize, y0: i64, dir: i64| {
        let mut y = y0;
        loop {
            out.points[i].y = y;
            let unique = out
                .points
                .iter()
                .enumerate()
                .all(|(j, p)| j == i || *p != out.points[i]);
            if unique && out.points[i].in_bounds() && !has_collinear_triple(&out.points) {
                break;
            }
            y += dir;
        }
    };
    match kind {
        FaultKind::CorruptHullPoint => {
            let Some(i) = sel(interior_hull) else { return out };
            let idx = inst.result.indices();
            let pos = idx.iter().position(|&v| v == i).unwrap();
            let (a, b) = (inst.points[idx[pos - 1]], inst.points[idx[pos + 1]]);
            let line = a.y as i128 + (b.y - a.y) as i128 * (inst.points[i].x - a.x) as i128 / (b.x - a.x) as i128;
            relocate(&mut out, i, line as i64 - 2, -1);
            debug_assert_eq!(orient2d_exact(a, out.points[i], b), Orientation::Ccw);
        }
        FaultKind::FlipStatus => {
            let Some(i) = sel(off_hull) else { return out };
            out.result.status[i] = true;
        }
        FaultKind::MovePointOutside => {
            let Some(i) = sel(off_hull) else { return out };
            let (_, hi) = hull_y_at(&inst.result.hull, inst.points[i].x).expect("interior point under the hull");
            relocate(&mut out, i, hi + 1, 1);
        }
    }
    out.result.hull = out.result.indices().iter().map(|&i| out.points[i]).collect();
    out
}

/// Sweep trials: build an exact instance, inject `faults`, verify at target
/// `(n, c)`. `correct` means the verdict matches the truth: Invalid for a
/// faulted instance, Valid for a clean one.
pub fn run_sweep_demo(cfg: &ExperimentConfig, faults: &[FaultKind]) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let wc = WalkConfig {
        budget_constant: cfg.budget_constant,
    };
    cfg.grid()
        .map(|(n, p, seed)| {
            let pts = erdos_points(n, &mut rng(instance_seed(seed, n)));
            let clean = Instance2::exact(&pts)?;
            let inst = inject_fault(&clean, faults, seed as usize);
            let changed = inst != clean;
            let model = cfg.model(p, seed)?;
            let mut e = Exec::new(&model);
            let v = sweep_upper_hull(
                &mut e,
                &inst.points,
                &inst.result,
                &FailTarget::at_least(n as u64, cfg.c),
                &wc,
            )?;
            let correct = v.is_valid() != changed;
            Ok(TrialRecord::new("sweep-demo", n, p, seed, correct, e.report()))
        })
        .collect()
}
