//! Simulated work/span accounting and the execution context that carries
//! the noise channel through a computation.
//!
//! Tasks run sequentially on the calling thread; the meter charges them as if
//! they ran in parallel. A task's random stream depends only on its position
//! in the task tree, so results do not depend on execution order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    halfspace_contains, orient2d_exact, orient3d_exact, Halfspace3, Orientation, Point2, Point3, RatPoint3, Sign,
};
use crate::noise::{child_site, draw_bits, site_key, NoiseModel, Repetition, VoteMode};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub span: u64,
    pub work: u64,
    pub raw_flips: u64,
    pub logical_ops: u64,
}

impl CostReport {
    fn absorb_parallel(&mut self, children: &[CostReport]) {
        self.span += children.iter().map(|c| c.span).max().unwrap_or(0);
        for c in children {
            self.work += c.work;
            self.raw_flips += c.raw_flips;
            self.logical_ops += c.logical_ops;
        }
    }
}

/// Sequence of `(spawn, index)` steps from the root task. Used to derive
/// site ids; `Exec` only keeps the resulting hash.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TaskPath(pub Vec<(u64, u64)>);

impl TaskPath {
    pub fn child(&self, spawn: u64, index: u64) -> TaskPath {
        let mut v = self.0.clone();
        v.push((spawn, index));
        TaskPath(v)
    }

    pub fn site(&self) -> u64 {
        self.0.iter().fold(ROOT_SITE, |s, &(sp, i)| child_site(s, sp, i))
    }
}

const ROOT_SITE: u64 = 0;

pub struct Exec<'m> {
    model: &'m NoiseModel,
    site: u64,
    key: u64,
    draws: u64,
    spawns: u64,
    meter: CostReport,
    searches: u64,
}

impl<'m> Exec<'m> {
    pub fn new(model: &'m NoiseModel) -> Self {
        Exec::at_site(model, ROOT_SITE)
    }

    pub fn at_site(model: &'m NoiseModel, site: u64) -> Self {
        Exec {
            model,
            site,
            key: site_key(model.seed(), site),
            draws: 0,
            spawns: 0,
            meter: CostReport::default(),
            searches: 0,
        }
    }

    pub fn model(&self) -> &'m NoiseModel {
        self.model
    }

    pub fn site(&self) -> u64 {
        self.site
    }

    pub fn report(&self) -> CostReport {
        self.meter
    }

    /// Number of noisy binary searches started in this task and its children.
    pub fn searches(&self) -> u64 {
        self.searches
    }

    pub(crate) fn count_search(&mut self) {
        self.searches += 1;
    }

    /// Charge `cost` sequential steps.
    #[inline]
    pub fn tick(&mut self, cost: u64) {
        self.meter.span += cost;
        self.meter.work += cost;
    }

    /// Charge a noise-free prefix computation over `n` elements.
    pub fn prefix(&mut self, n: usize) {
        if n == 0 {
            return;
        }
        self.meter.span += crate::noise::ceil_log2(n as u64).max(1);
        self.meter.work += n as u64;
    }

    #[inline]
    fn next_draw(&mut self) -> u64 {
        let u = draw_bits(self.key, self.draws);
        self.draws += 1;
        u
    }

    /// One raw noisy primitive: returns `!truth` with probability `p`.
    #[inline]
    pub fn flip(&mut self, truth: bool) -> bool {
        self.meter.raw_flips += 1;
        self.tick(1);
        let t = self.model.flip_threshold();
        if t == 0 {
            return truth;
        }
        truth ^ (self.next_draw() < t)
    }

    /// Majority of `rep.k` noisy evaluations of a predicate whose exact value
    /// is `truth`.
    #[inline]
    pub fn vote(&mut self, truth: bool, rep: &Repetition) -> bool {
        self.meter.logical_ops += 1;
        self.meter.raw_flips += rep.k;
        self.meter.span += rep.span;
        self.meter.work += rep.k;
        let t = self.model.flip_threshold();
        if t == 0 {
            return truth;
        }
        let wrong = match self.model.mode() {
            VoteMode::Aggregated => self.next_draw() < rep.wrong_threshold,
            VoteMode::Literal => {
                let mut bad = 0;
                for _ in 0..rep.k {
                    if self.next_draw() < t {
                        bad += 1;
                    }
                }
                bad > rep.k / 2
            }
        };
        truth ^ wrong
    }

    /// Same as `vote` for a fallible predicate.
    #[inline]
    pub fn vote_on(&mut self, truth: Result<bool>, rep: &Repetition) -> Result<bool> {
        Ok(self.vote(truth?, rep))
    }

    /// Orientation of `a b c` through one raw flip; a flip reports the
    /// opposite turn.
    pub fn noisy_orient2d(&mut self, a: Point2, b: Point2, c: Point2) -> Result<Orientation> {
        let ccw = match orient2d_exact(a, b, c) {
            Orientation::Ccw => true,
            Orientation::Cw => false,
            Orientation::Collinear => return Err(Error::CollinearInput),
        };
        Ok(if self.flip(ccw) {
            Orientation::Ccw
        } else {
            Orientation::Cw
        })
    }

    /// Sign of `orient3d_exact` through one raw flip.
    pub fn noisy_orient3d(&mut self, a: Point3, b: Point3, c: Point3, d: Point3) -> Result<Sign> {
        let pos = match orient3d_exact(a, b, c, d) {
            Sign::Positive => true,
            Sign::Negative => false,
            Sign::Zero => return Err(Error::DegenerateInput("four coplanar points".into())),
        };
        Ok(if self.flip(pos) { Sign::Positive } else { Sign::Negative })
    }

    /// Strict containment of `v` in `h` through one raw flip.
    pub fn noisy_halfspace_test(&mut self, v: &RatPoint3, h: &Halfspace3) -> Result<bool> {
        Ok(self.flip(halfspace_contains(v, h)?))
    }

    fn spawn(&mut self) -> u64 {
        let s = self.spawns;
        self.spawns += 1;
        s
    }

    fn child(&self, spawn: u64, index: u64) -> Exec<'m> {
        Exec::at_site(self.model, child_site(self.site, spawn, index))
    }

    /// Run `f` on every item as independent tasks. Span grows by the largest
    /// task span, work and counters by the sum.
    pub fn parallel_for<T, R, F>(&mut self, items: impl IntoIterator<Item = T>, mut f: F) -> Vec<R>
    where
        F: FnMut(&mut Exec<'m>, T) -> R,
    {
        let spawn = self.spawn();
        let mut meters = Vec::new();
        let mut out = Vec::new();
        for (i, item) in items.into_iter().enumerate() {
            let mut c = self.child(spawn, i as u64);
            out.push(f(&mut c, item));
            meters.push(c.meter);
            self.searches += c.searches;
        }
        self.meter.absorb_parallel(&meters);
        out
    }

    /// `parallel_for` over fallible tasks. All tasks run; the first error in
    /// task order is returned.
    pub fn try_parallel_for<T, R, F>(&mut self, items: impl IntoIterator<Item = T>, f: F) -> Result<Vec<R>>
    where
        F: FnMut(&mut Exec<'m>, T) -> Result<R>,
    {
        self.parallel_for(items, f).into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_tasks() {
        let m = NoiseModel::noiseless(0);
        let mut e = Exec::new(&m);
        e.parallel_for(0..8, |c, _| c.tick(3));
        assert_eq!(
            e.report(),
            CostReport {
                span: 3,
                work: 24,
                raw_flips: 0,
                logical_ops: 0
            }
        );
        e.parallel_for(Vec::<u8>::new(), |c, _| c.tick(3));
        assert_eq!(e.report().span, 3);
    }

    #[test]
    fn nested_fanout() {
        let m = NoiseModel::noiseless(0);
        let mut e = Exec::new(&m);
        e.parallel_for(0..4, |c, _| {
            c.parallel_for(0..4, |g, _| g.tick(1));
        });
        assert_eq!((e.report().span, e.report().work), (1, 16));
        let mut e = Exec::new(&m);
        e.parallel_for(0..4, |c, _| {
            c.tick(1);
            c.parallel_for(0..4, |g, _| g.tick(1));
        });
        assert_eq!((e.report().span, e.report().work), (2, 20));
    }

    #[test]
    fn paths_match_sites() {
        let m = NoiseModel::new(0.2, 5).unwrap();
        let mut e = Exec::new(&m);
        let sites = e.parallel_for(0..3, |c, i| {
            let inner = c.parallel_for(0..2, |g, _| g.site());
            (c.site(), i, inner)
        });
        let root = TaskPath::default();
        for (site, i, inner) in sites {
            let p = root.child(0, i);
            assert_eq!(site, p.site());
            for (j, s) in inner.into_iter().enumerate() {
                assert_eq!(s, p.child(0, j as u64).site());
            }
        }
    }

    #[test]
    fn vote_counts() {
        let m = NoiseModel::new(0.3, 1).unwrap();
        let rep = m.repetition(64, 2.0).unwrap();
        let mut e = Exec::new(&m);
        e.vote(true, &rep);
        let r = e.report();
        assert_eq!((r.logical_ops, r.raw_flips), (1, rep.k));
        assert!(r.span <= r.work);
    }

    #[test]
    fn raw_predicates() {
        let m = NoiseModel::noiseless(0);
        let mut e = Exec::new(&m);
        let (a, b, c) = (Point2::new(0, 0), Point2::new(1, 0), Point2::new(0, 1));
        assert_eq!(e.noisy_orient2d(a, b, c).unwrap(), Orientation::Ccw);
        assert_eq!(e.noisy_orient2d(a, b, Point2::new(2, 0)), Err(Error::CollinearInput));
        let o = RatPoint3::from_int(Point3::new(0, 0, 0));
        assert!(e.noisy_halfspace_test(&o, &Halfspace3::new(1, 0, 0, 1)).unwrap());
        assert!(!e.noisy_halfspace_test(&o, &Halfspace3::new(1, 0, 0, -1)).unwrap());
        assert_eq!(
            e.noisy_halfspace_test(&o, &Halfspace3::new(1, 0, 0, 0)),
            Err(Error::OnBoundary)
        );
        assert_eq!(e.report().raw_flips, 3);
    }
}
