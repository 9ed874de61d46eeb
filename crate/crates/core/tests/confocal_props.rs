mod common;

use common::{coordinate, rel, sq_axes, system_and_point};
use confocal_core::confocal::{ApollonianCurve, ConfocalSystem, FrameAtPoint};
use confocal_core::numerics::{dot, minimize_1d, Domain};
use proptest::prelude::*;

proptest! {
    #[test]
    fn roots_interlace((a, x) in system_and_point(2..=6)) {
        let sys = ConfocalSystem::new(a.clone()).unwrap();
        let l = sys.elliptic_coordinates(&x).unwrap().lambdas().to_vec();
        let n = a.len();
        prop_assert!(l[0] < a[n - 1]);
        for j in 1..n {
            prop_assert!(a[n - j] < l[j] && l[j] < a[n - 1 - j], "λ={:?} a={:?}", l, a);
        }
    }

    #[test]
    fn coordinates_round_trip((a, x) in system_and_point(2..=6)) {
        let sys = ConfocalSystem::new(a).unwrap();
        let table = sys.axes_table(&sys.elliptic_coordinates(&x).unwrap());
        let back = table.point(&x).unwrap();
        for (b, xi) in back.iter().zip(&x) {
            prop_assert!(rel(b.abs(), xi.abs()) <= 1e-9);
            prop_assert_eq!(b.signum(), xi.signum());
        }
    }

    #[test]
    fn frame_is_orthonormal_and_norm_splits((a, x) in system_and_point(2..=6)) {
        let sys = ConfocalSystem::new(a).unwrap();
        let ec = sys.elliptic_coordinates(&x).unwrap();
        let frame = sys.frame_at_point(&x).unwrap();
        prop_assert!(frame.orthogonality_defect() <= 1e-10);
        let (lhs, rhs) = sys.norm_identity_check(&ec);
        prop_assert!(rel(lhs, rhs) <= 1e-9);
    }

    #[test]
    fn support_distances((a, x) in system_and_point(2..=6)) {
        let sys = ConfocalSystem::new(a).unwrap();
        let ec = sys.elliptic_coordinates(&x).unwrap();
        let table = sys.axes_table(&ec);
        let frame = FrameAtPoint::from_table(&x, &table).unwrap();
        let closed = FrameAtPoint::closed_form_support_sq(&table);
        for (j, &lambda) in ec.lambdas().iter().enumerate() {
            let plane = sys.confocal_quadric(lambda).unwrap().tangent_hyperplane_at(&x).unwrap();
            prop_assert!(rel(plane.distance_from_origin(), frame.support()[j]) <= 1e-9);
            prop_assert!(rel(closed[j], frame.support()[j].powi(2)) <= 1e-9);
        }
        for r in frame.dual_membership_residuals(&table) {
            prop_assert!(r.abs() <= 1e-9);
        }
    }

    #[test]
    fn central_section_axes((a, x) in system_and_point(2..=6)) {
        let sys = ConfocalSystem::new(a).unwrap();
        let ec = sys.elliptic_coordinates(&x).unwrap();
        let first = sys.confocal_quadric(ec.lambdas()[0]).unwrap();
        let frame = sys.frame_at_point(&x).unwrap();
        let sq = sys.central_section_sq_axes(&x).unwrap();
        let inv = first.signed_sq_axes().iter().fold(0.0f64, |m, s| m.max(1.0 / s.abs()));
        for j in 1..sys.dim() {
            let r2 = first.squared_radius_along(frame.normal(j)).unwrap();
            prop_assert!(rel(r2, sq[j - 1]) <= 1e-9);
            for k in j + 1..sys.dim() {
                prop_assert!(first.conjugacy_value(frame.normal(j), frame.normal(k)).unwrap().abs() <= 1e-9 * inv);
            }
        }
    }

    #[test]
    fn tangency_product_is_constant(
        a in sq_axes(2..=6),
        h in prop::collection::vec(coordinate(), 6),
        fracs in prop::collection::vec(0.05f64..1.0, 4),
    ) {
        let sys = ConfocalSystem::new(a.clone()).unwrap();
        let h = &h[..a.len()];
        let top = h.iter().zip(&a).map(|(hi, ai)| hi * hi * ai).sum::<f64>() / dot(h, h);
        let want = sys.tangency_invariant(h).unwrap();
        for f in fracs {
            let lambda = top - f * (top + 3.0);
            let s = sys.tangency_locus_product(h, lambda).unwrap();
            prop_assert!((s.product - want).abs() <= 1e-9 * want.max(a[0]));
        }
    }

    #[test]
    fn apollonian_points_solve_the_normal_system(
        a in sq_axes(2..=6),
        u in prop::collection::vec(coordinate(), 6),
        taus in prop::collection::vec(-2.0f64..2.0, 10),
    ) {
        let n = a.len();
        let curve = ApollonianCurve::new(a.clone(), u[..n].to_vec()).unwrap();
        let poles = curve.pole_parameters();
        for tau in taus {
            if poles.iter().any(|p| (tau / p - 1.0).abs() < 1e-3) {
                continue;
            }
            let x = curve.point(tau).unwrap();
            prop_assert!(curve.relative_residual(&x) <= 1e-9);
        }
        let origin = curve.point(0.0).unwrap();
        prop_assert!(origin.iter().all(|v| v.abs() <= 1e-12 * a[0]));
        let p = curve.point(1.0 / a[0]).unwrap();
        for (pi, ui) in p.iter().zip(&u) {
            prop_assert!((pi - ui).abs() <= 1e-12 * ui.abs().max(1.0));
        }
    }

    #[test]
    fn nearest_points_of_homothets_lie_on_the_curve(
        a in sq_axes(2..=2),
        u in prop::collection::vec(coordinate(), 2),
        s in 0.3f64..3.0,
    ) {
        let (p, q) = (s * a[0].sqrt(), s * a[1].sqrt());
        let d2 = |t: f64| (p * t.cos() - u[0]).powi(2) + (q * t.sin() - u[1]).powi(2);
        let best = minimize_1d(d2, Domain::Periodic { start: 0.0, period: std::f64::consts::TAU }, 4096, 1e-13);
        let x = [p * best.arg.cos(), q * best.arg.sin()];
        let curve = ApollonianCurve::new(a, u).unwrap();
        prop_assert!(curve.relative_residual(&x) <= 1e-6);
    }
}
