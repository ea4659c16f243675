//! Property tests for directed lines and dual vectors: the
//! line-to-dual-unit-vector correspondence, moment invariance, and
//! dual-angle recovery on known configurations.

use drall::{dual_angle, AngleKind, CausalCharacter, DVec3, Dual, Line, Vec3};
use proptest::prelude::*;

const TOL: f64 = 1e-10;

fn vec3_in(range: std::ops::Range<f64>) -> impl Strategy<Value = Vec3<f64>> {
    (range.clone(), range.clone(), range).prop_map(|(a, b, c)| Vec3::new(a, b, c))
}

fn close3(a: Vec3<f64>, b: Vec3<f64>, tol: f64) -> bool {
    (0..3).all(|i| (a[i] - b[i]).abs() <= tol)
}

proptest! {
    #[test]
    fn lines_round_trip_through_dual_unit_vectors(
        p in vec3_in(-5.0..5.0),
        u in vec3_in(-3.0..3.0),
    ) {
        prop_assume!(u.norm_sq().abs() > 1e-3);
        let line = Line::from_point_direction(p, u).unwrap();
        let v = line.to_dual();
        // A line maps to a dual unit vector: ⟨ṽ, ṽ⟩ = ±1 + ε·0.
        prop_assert!(v.unit_defect() < TOL);
        prop_assert!(line.direction.dot(line.moment).abs() < TOL * (1.0 + p.comp_sq()));
        let back = Line::from_dual(v).unwrap();
        prop_assert!(close3(back.direction, line.direction, TOL));
        prop_assert!(close3(back.moment, line.moment, TOL));
    }

    #[test]
    fn moment_is_invariant_under_sliding_the_base_point(
        p in vec3_in(-5.0..5.0),
        u in vec3_in(-3.0..3.0),
        t in -10.0f64..10.0,
    ) {
        prop_assume!(u.norm_sq().abs() > 1e-3);
        let a = Line::from_point_direction(p, u).unwrap();
        let b = Line::from_point_direction(p + u.scale(t), u).unwrap();
        let budget = TOL * (1.0 + p.comp_sq() + t.abs() * u.comp_sq());
        prop_assert!(close3(a.moment, b.moment, budget));
    }

    #[test]
    fn base_point_reproduces_the_moment(
        p in vec3_in(-5.0..5.0),
        u in vec3_in(-3.0..3.0),
    ) {
        prop_assume!(u.norm_sq().abs() > 1e-3);
        let line = Line::from_point_direction(p, u).unwrap();
        let q = line.base_point();
        let again = Line::from_point_direction(q, line.direction).unwrap();
        let budget = TOL * (1.0 + p.comp_sq());
        prop_assert!(close3(again.moment, line.moment, budget));
    }

    #[test]
    fn dual_inner_product_has_the_epsilon_structure(
        a in vec3_in(-3.0..3.0),
        b in vec3_in(-3.0..3.0),
        c in vec3_in(-3.0..3.0),
        d in vec3_in(-3.0..3.0),
    ) {
        let x = DVec3::new(a, b);
        let y = DVec3::new(c, d);
        let g = x.dinner(y);
        prop_assert!((g.real - a.dot(c)).abs() < TOL);
        prop_assert!((g.dual - (a.dot(d) + b.dot(c))).abs() < TOL);
        // Symmetry.
        let h = y.dinner(x);
        prop_assert!((g.real - h.real).abs() == 0.0);
        prop_assert!((g.dual - h.dual).abs() == 0.0);
    }

    #[test]
    fn dual_cross_is_antisymmetric_and_orthogonal(
        a in vec3_in(-3.0..3.0),
        b in vec3_in(-3.0..3.0),
        c in vec3_in(-3.0..3.0),
        d in vec3_in(-3.0..3.0),
    ) {
        let x = DVec3::new(a, b);
        let y = DVec3::new(c, d);
        let xy = x.dcross(y);
        let yx = y.dcross(x);
        for i in 0..3 {
            prop_assert!((xy.real[i] + yx.real[i]).abs() == 0.0);
            prop_assert!((xy.dual[i] + yx.dual[i]).abs() == 0.0);
        }
        let gx = xy.dinner(x);
        let gy = xy.dinner(y);
        let budget = TOL * (1.0 + a.comp_sq() + b.comp_sq() + c.comp_sq() + d.comp_sq()).powi(2);
        prop_assert!(gx.real.abs() < budget && gx.dual.abs() < budget);
        prop_assert!(gy.real.abs() < budget && gy.dual.abs() < budget);
    }

    #[test]
    fn spacelike_line_pairs_recover_angle_and_distance(
        theta in 0.1f64..3.0,
        d in -2.0f64..2.0,
    ) {
        // Two spacelike lines meeting the first coordinate axis at
        // right angles, mutually rotated by theta in the spacelike
        // plane and separated by d along the axis.
        let x = Line::from_point_direction(Vec3::zero(), Vec3::new(0.0, 1.0, 0.0)).unwrap();
        let y = Line::from_point_direction(
            Vec3::new(d, 0.0, 0.0),
            Vec3::new(0.0, theta.cos(), theta.sin()),
        )
        .unwrap();
        let ang = dual_angle(x.to_dual(), y.to_dual()).unwrap();
        prop_assert_eq!(ang.kind, AngleKind::SpacelikeAngle);
        prop_assert!((ang.angle() - theta).abs() < 1e-9);
        prop_assert!((ang.distance().abs() - d.abs()).abs() < 1e-9);
    }

    #[test]
    fn timelike_line_pairs_recover_rapidity_and_distance(
        phi in 0.1f64..3.0,
        d in -2.0f64..2.0,
    ) {
        let x = Line::from_point_direction(Vec3::zero(), Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let y = Line::from_point_direction(
            Vec3::new(0.0, 0.0, d),
            Vec3::new(phi.cosh(), phi.sinh(), 0.0),
        )
        .unwrap();
        prop_assert_eq!(y.causal_character(), CausalCharacter::Timelike);
        let ang = dual_angle(x.to_dual(), y.to_dual()).unwrap();
        prop_assert_eq!(ang.kind, AngleKind::Hyperbolic);
        prop_assert!((ang.angle() - phi).abs() < 1e-9);
        prop_assert!((ang.distance().abs() - d.abs()).abs() < 1e-9);
    }

    #[test]
    fn mixed_character_pairs_recover_the_lorentzian_angle(phi in -2.0f64..2.0) {
        let q = Line::from_point_direction(Vec3::zero(), Vec3::new(0.0, 1.0, 0.0)).unwrap();
        let a = Line::from_point_direction(
            Vec3::zero(),
            Vec3::new(phi.cosh(), phi.sinh(), 0.0),
        )
        .unwrap();
        let ang = dual_angle(q.to_dual(), a.to_dual()).unwrap();
        prop_assert_eq!(ang.kind, AngleKind::LorentzianTimelike);
        prop_assert!((ang.angle() - phi).abs() < 1e-9);
        prop_assert!(ang.distance().abs() < 1e-9);
    }

    #[test]
    fn dual_angle_of_a_line_with_itself_vanishes(
        p in vec3_in(-3.0..3.0),
        u in vec3_in(-2.0..2.0),
    ) {
        prop_assume!(u.norm_sq().abs() > 1e-3);
        let x = Line::from_point_direction(p, u).unwrap().to_dual();
        let ang = dual_angle(x, x).unwrap();
        prop_assert!(ang.angle().abs() < 1e-6);
        prop_assert!(ang.distance().abs() < 1e-6);
    }

    #[test]
    fn scaled_dual_vectors_are_rejected_as_lines(
        p in vec3_in(-3.0..3.0),
        u in vec3_in(-2.0..2.0),
        k in 1.5f64..4.0,
    ) {
        prop_assume!(u.norm_sq().abs() > 1e-3);
        let v = Line::from_point_direction(p, u).unwrap().to_dual().scale(k);
        prop_assert!(Line::from_dual(v).is_err());
    }
}

#[test]
fn dual_angle_matches_dual_arithmetic_on_the_catalog_frame() {
    // Rotating a spacelike dual unit vector by a constant dual angle in
    // a spacelike dual plane and reading the angle back is exact to
    // roundoff: the extraction inverts cos θ̄ as a dual function.
    let x: DVec3<f64> = DVec3::new(Vec3::new(0.0, 1.0, 0.0), Vec3::zero());
    let y: DVec3<f64> = DVec3::new(Vec3::new(0.0, 0.0, 1.0), Vec3::zero());
    let theta = Dual::new(0.7, 0.4);
    let rotated = x.scale_dual(theta.cos()) + y.scale_dual(theta.sin());
    let ang = dual_angle(x, rotated).unwrap();
    assert!((ang.angle() - 0.7).abs() < 1e-12);
    assert!((ang.distance().abs() - 0.4).abs() < 1e-12);
}
