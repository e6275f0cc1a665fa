//! The Bernoulli noise channel, counter-based randomness and repetition
//! calibration.

use std::collections::BTreeMap;
use std::sync::Mutex;

use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// Stream key for a site. Draw `i` of the site is `draw_bits(key, i)`.
#[inline]
pub fn site_key(master_seed: u64, site: u64) -> u64 {
    mix64(master_seed ^ mix64(site ^ 0x5bd1_e995_0000_0001))
}

#[inline]
pub fn draw_bits(key: u64, index: u64) -> u64 {
    mix64(key.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Child site id from a parent site, the spawn number within the parent and
/// the child index.
#[inline]
pub fn child_site(parent: u64, spawn: u64, index: u64) -> u64 {
    mix64(
        parent ^ mix64(spawn.wrapping_mul(0xd6e8_feb8_6659_fd93) ^ index.wrapping_mul(GOLDEN) ^ 0xa076_1d64_78bd_642f),
    )
}

fn prob_threshold(p: f64) -> u64 {
    if p <= 0.0 {
        0
    } else {
        (p * 18_446_744_073_709_551_616.0) as u64
    }
}

/// Natural log of `P[Bin(k, p) >= ceil(k / 2)]`.
pub fn ln_majority_tail(k: u64, p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let h = k.div_ceil(2);
    let lp = p.ln();
    let lq = (-p).ln_1p();
    let first = ln_binomial(k, h) + h as f64 * lp + (k - h) as f64 * lq;
    let ratio = p / (1.0 - p);
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for i in h..k {
        term *= (k - i) as f64 / (i + 1) as f64 * ratio;
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    first + sum.ln()
}

pub fn majority_tail(k: u64, p: f64) -> f64 {
    ln_majority_tail(k, p).exp()
}

/// Largest repetition count calibration will consider.
pub const DEFAULT_REPETITION_CAP: u64 = 1 << 24;

/// Minimal odd `k` with `ln_tail(k) <= ln_target`.
fn minimal_odd(p: f64, ln_target: f64, cap: u64) -> Result<u64> {
    let ok = |k: u64| ln_majority_tail(k, p) <= ln_target;
    if p <= 0.0 || ok(1) {
        return Ok(1);
    }
    // Odd k = 2j + 1; search over j.
    let mut hi = 1u64;
    while !ok(2 * hi + 1) {
        hi *= 2;
        if 2 * hi + 1 > cap {
            return Err(Error::Config(format!("repetition count exceeds cap {cap} at p={p}")));
        }
    }
    let mut lo = hi / 2; // ok(2 lo + 1) is false
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(2 * mid + 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(2 * hi + 1)
}

/// Minimal odd `k` with `Tail(k, p) <= n^(-c)`.
pub fn calibrate_repetitions(n: u64, c: f64, p: f64) -> Result<u64> {
    calibrate_repetitions_capped(n, c, p, DEFAULT_REPETITION_CAP)
}

/// `calibrate_repetitions` with a configuration error above `cap`.
pub fn calibrate_repetitions_capped(n: u64, c: f64, p: f64, cap: u64) -> Result<u64> {
    if n < 2 || c <= 0.0 || !(0.0..0.5).contains(&p) {
        return Err(Error::Config(format!(
            "calibrate needs n >= 2, c > 0, p in [0, 1/2); got n={n} c={c} p={p}"
        )));
    }
    minimal_odd(p, -c * (n as f64).ln(), cap)
}

/// Per-call error ceiling a pushdown walk oracle must respect.
pub const ORACLE_ERROR_CEILING: f64 = 1.0 / 15.0;

/// Minimal odd `r` such that `tests * Tail(r, p) < 1/15`; a union bound over
/// the `tests` primitives one oracle call may evaluate.
pub fn oracle_repetitions(p: f64, tests: u32) -> Result<u64> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::Config(format!("p must lie in [0, 1/2); got {p}")));
    }
    // Strict inequality: shave one ulp off the target.
    let ln_target = (ORACLE_ERROR_CEILING / tests as f64).ln() - 1e-12;
    minimal_odd(p, ln_target, DEFAULT_REPETITION_CAP)
}

/// How a majority vote of `k` flips is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VoteMode {
    /// One draw decides the bundle outcome with probability `Tail(k, p)`.
    /// Exactly the distribution of the literal vote, at the cost of one hash.
    #[default]
    Aggregated,
    /// `k` independent flips and a majority count.
    Literal,
}

/// A calibrated repetition count together with the thresholds the channel
/// needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Repetition {
    pub k: u64,
    /// Draws below this value make the whole bundle answer wrong.
    pub(crate) wrong_threshold: u64,
    /// Simulated span of one vote: a parallel tally over `k` flips.
    pub(crate) span: u64,
}

impl Repetition {
    fn new(k: u64, p: f64) -> Self {
        let tail = if k == 1 { p } else { majority_tail(k, p) };
        Repetition {
            k,
            wrong_threshold: prob_threshold(tail),
            span: 1 + ceil_log2(k),
        }
    }

    /// A literal majority at error probability `p` with no calibration.
    pub fn fixed(k: u64, p: f64) -> Self {
        assert!(k % 2 == 1, "repetition count must be odd");
        Repetition::new(k, p)
    }
}

pub fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

/// Cached calibration results: `(n, c, p) -> k`.
#[derive(Debug)]
pub struct CalibrationTable {
    entries: Mutex<BTreeMap<(u64, u64, u64), u64>>,
    cap: u64,
}

impl Default for CalibrationTable {
    fn default() -> Self {
        CalibrationTable {
            entries: Mutex::new(BTreeMap::new()),
            cap: DEFAULT_REPETITION_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CalibrationEntry {
    pub n: u64,
    pub c: f64,
    pub p: f64,
    pub k: u64,
}

impl CalibrationTable {
    pub fn get_or_compute(&self, n: u64, c: f64, p: f64) -> Result<u64> {
        let key = (n, c.to_bits(), p.to_bits());
        if let Some(k) = self.entries.lock().unwrap().get(&key) {
            return Ok(*k);
        }
        let k = calibrate_repetitions_capped(n, c, p, self.cap)?;
        self.entries.lock().unwrap().insert(key, k);
        Ok(k)
    }

    pub fn entries(&self) -> Vec<CalibrationEntry> {
        self.entries
            .lock()
            .unwrap()
            .iter()
            .map(|(&(n, c, p), &k)| CalibrationEntry {
                n,
                c: f64::from_bits(c),
                p: f64::from_bits(p),
                k,
            })
            .collect()
    }
}

/// Error probability, master seed and calibration state of one noisy run.
#[derive(Debug)]
pub struct NoiseModel {
    p: f64,
    seed: u64,
    mode: VoteMode,
    flip_threshold: u64,
    table: CalibrationTable,
    reps: Mutex<BTreeMap<(u64, u64), Repetition>>,
}

impl NoiseModel {
    pub fn new(p: f64, seed: u64) -> Result<Self> {
        if !(0.0..0.5).contains(&p) {
            return Err(Error::Config(format!("p must lie in [0, 1/2); got {p}")));
        }
        Ok(NoiseModel {
            p,
            seed,
            mode: VoteMode::default(),
            flip_threshold: prob_threshold(p),
            table: CalibrationTable::default(),
            reps: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn noiseless(seed: u64) -> Self {
        NoiseModel::new(0.0, seed).expect("p = 0 is valid")
    }

    pub fn with_mode(mut self, mode: VoteMode) -> Self {
        self.mode = mode;
        self
    }

    /// Refuse calibrations that would need more than `cap` repetitions.
    pub fn with_repetition_cap(mut self, cap: u64) -> Self {
        self.table.cap = cap;
        self
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn mode(&self) -> VoteMode {
        self.mode
    }

    pub fn is_noiseless(&self) -> bool {
        self.flip_threshold == 0
    }

    #[inline]
    pub(crate) fn flip_threshold(&self) -> u64 {
        self.flip_threshold
    }

    pub fn table(&self) -> &CalibrationTable {
        &self.table
    }

    /// Repetition reaching failure `n^(-c)` per bundle.
    pub fn repetition(&self, n: u64, c: f64) -> Result<Repetition> {
        let k = self.table.get_or_compute(n.max(2), c, self.p)?;
        Ok(self.rep_for(k))
    }

    /// Repetition for a walk oracle evaluating up to `tests` primitives.
    pub fn oracle_repetition(&self, tests: u32) -> Result<Repetition> {
        let key = (u64::MAX, tests as u64);
        if let Some(r) = self.reps.lock().unwrap().get(&key) {
            return Ok(*r);
        }
        let r = self.rep_for(oracle_repetitions(self.p, tests)?);
        self.reps.lock().unwrap().insert(key, r);
        Ok(r)
    }

    pub fn rep_for(&self, k: u64) -> Repetition {
        let mut reps = self.reps.lock().unwrap();
        *reps.entry((k, 0)).or_insert_with(|| Repetition::new(k, self.p))
    }
}
