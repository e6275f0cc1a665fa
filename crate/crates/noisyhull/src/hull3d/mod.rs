//! Brute-force halfspace intersection, slab point location and hull
//! verification by projection.

pub mod halfspace;
pub mod ppl;
pub mod verify;

pub use halfspace::{
    bf_halfspace_intersection, candidate_vertices, exact_halfspace_intersection, validate_halfspaces, CandidateVertex,
    Polytope3,
};
pub use ppl::{build_slab_ppl, exact_locate, ppl_query, Location, SlabStructure, Triangulation};
pub use verify::{exact_hull3d, verify_hull3d, Hull3};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::gen::{fan_triangulation, moment_points, rng, sphere_tangent_halfspaces};
    use crate::geom::Point3;
    use crate::noise::NoiseModel;
    use crate::sweep::Verdict;
    use crate::toolkit::FailTarget;
    use crate::walk::WalkConfig;

    #[test]
    fn noiseless_random_intersections_match() {
        let m = NoiseModel::noiseless(0);
        let mut r = rng(2);
        for _ in 0..20 {
            let h = sphere_tangent_halfspaces(12, &mut r);
            let got = bf_halfspace_intersection(&mut Exec::new(&m), &h, &FailTarget::new(12, 2.0)).unwrap();
            let want = exact_halfspace_intersection(&h).unwrap();
            assert_eq!(got, want);
            assert!(got
                .vertices
                .iter()
                .enumerate()
                .all(|(v, _)| got.neighbours(v).len() == 3));
        }
    }

    #[test]
    fn fan_locations() {
        let m = NoiseModel::noiseless(0);
        let mut r = rng(3);
        let tri = fan_triangulation(16, &mut r);
        let mut e = Exec::new(&m);
        let t = FailTarget::new(16, 2.0);
        let s = build_slab_ppl(&mut e, &tri, &t).unwrap();
        assert!(s.region_count() <= 17 * 33);
        for t3 in &tri.triangles {
            let [a, b, c] = t3.map(|i| tri.vertices[i]);
            let q = crate::geom::Point2::new((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3);
            let want = exact_locate(&tri, q);
            assert_eq!(ppl_query(&mut e, &s, q, &t, &WalkConfig::default()).unwrap(), want);
        }
    }

    #[test]
    fn verify_moment_hull() {
        let m = NoiseModel::noiseless(0);
        let mut r = rng(4);
        let pts = moment_points(40, &mut r);
        let h = exact_hull3d(&pts).unwrap();
        let t = FailTarget::new(40, 2.0);
        let cfg = WalkConfig::default();
        assert_eq!(
            verify_hull3d(&mut Exec::new(&m), &pts, &h, &t, &cfg).unwrap(),
            Verdict::Valid
        );
        let inner = (0..pts.len()).find(|&i| !h.status[i]).unwrap();
        let mut moved = pts.clone();
        moved[inner] = Point3::new(pts[inner].x, pts[inner].y, 1 << 20);
        assert_eq!(
            verify_hull3d(&mut Exec::new(&m), &moved, &h, &t, &cfg).unwrap(),
            Verdict::Invalid
        );
    }
}
