//! Property tests for the Minkowski vector kernel: metric signature,
//! cross-product orthogonality, determinant identity, and the reverse
//! Cauchy-Schwarz bound for timelike unit vectors.

use drall::{CausalCharacter, GeomError, Vec3};
use proptest::prelude::*;

/// Residual budget for exact algebraic identities at bounded magnitude.
const EXACT_TOL: f64 = 1e-12;

fn vec3_in(range: std::ops::Range<f64>) -> impl Strategy<Value = Vec3<f64>> {
    (range.clone(), range.clone(), range).prop_map(|(a, b, c)| Vec3::new(a, b, c))
}

/// Hyperboloid parameter kept small enough that products of a few
/// components stay within the `1e-12` residual budget.
fn unit_params() -> impl Strategy<Value = (f64, f64)> {
    (-3.0f64..3.0, 0.0f64..std::f64::consts::TAU)
}

proptest! {
    #[test]
    fn metric_has_signature_minus_plus_plus(v in vec3_in(-10.0..10.0)) {
        let expected = -v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        prop_assert!((v.dot(v) - expected).abs() < EXACT_TOL * (1.0 + expected.abs()));
        prop_assert!((v.norm_sq() - v.dot(v)).abs() == 0.0);
    }

    #[test]
    fn cross_product_is_metric_orthogonal_to_both_factors(
        (u1, v1) in unit_params(),
        (u2, v2) in unit_params(),
        timelike in proptest::bool::ANY,
    ) {
        let a = if timelike {
            Vec3::sample_timelike_unit(u1, v1)
        } else {
            Vec3::sample_spacelike_unit(u1, v1)
        };
        let b = Vec3::sample_spacelike_unit(u2, v2);
        let c = a.cross(b);
        prop_assert!(c.dot(a).abs() < EXACT_TOL * (1.0 + a.comp_sq() + b.comp_sq()));
        prop_assert!(c.dot(b).abs() < EXACT_TOL * (1.0 + a.comp_sq() + b.comp_sq()));
    }

    #[test]
    fn cross_is_antisymmetric_and_bilinear(
        a in vec3_in(-5.0..5.0),
        b in vec3_in(-5.0..5.0),
        c in vec3_in(-5.0..5.0),
        k in -3.0f64..3.0,
    ) {
        let ab = a.cross(b);
        let ba = b.cross(a);
        for i in 0..3 {
            prop_assert!((ab[i] + ba[i]).abs() == 0.0);
            let lin = a.cross(b.scale(k) + c);
            let split = ab.scale(k) + a.cross(c);
            prop_assert!((lin[i] - split[i]).abs() < EXACT_TOL * 100.0);
        }
    }

    #[test]
    fn mixed_product_is_negated_determinant(
        a in vec3_in(-5.0..5.0),
        b in vec3_in(-5.0..5.0),
        c in vec3_in(-5.0..5.0),
    ) {
        let lhs = a.cross(b).dot(c);
        let det = Vec3::triple(a, b, c);
        prop_assert!((lhs + det).abs() < EXACT_TOL * (1.0 + det.abs()) * 100.0);
        prop_assert!((Vec3::mixed(a, b, c) + det).abs() == 0.0);
    }

    #[test]
    fn timelike_unit_inner_products_stay_outside_the_unit_gap(
        (u1, v1) in unit_params(),
        (u2, v2) in unit_params(),
    ) {
        // Reverse Cauchy-Schwarz: two unit timelike vectors can never
        // be metric-orthogonal; |⟨a, b⟩| ≥ 1 with equality only when
        // they are parallel.
        let a = Vec3::sample_timelike_unit(u1, v1);
        let b = Vec3::sample_timelike_unit(u2, v2);
        prop_assert!(a.dot(b).abs() >= 1.0 - 1e-9);
    }

    #[test]
    fn samplers_produce_unit_vectors_of_the_right_character(
        (u, v) in unit_params(),
    ) {
        let t = Vec3::sample_timelike_unit(u, v);
        let s = Vec3::sample_spacelike_unit(u, v);
        prop_assert!((t.norm_sq() + 1.0).abs() < EXACT_TOL * (1.0 + t.comp_sq()));
        prop_assert!((s.norm_sq() - 1.0).abs() < EXACT_TOL * (1.0 + s.comp_sq()));
        prop_assert_eq!(t.causal_character(), CausalCharacter::Timelike);
        prop_assert_eq!(s.causal_character(), CausalCharacter::Spacelike);
    }

    #[test]
    fn normalization_is_idempotent_and_preserves_direction(
        v in vec3_in(-10.0..10.0),
    ) {
        prop_assume!(v.norm_sq().abs() > 1e-6);
        let n = v.normalized().unwrap();
        prop_assert!(n.unit_defect() < EXACT_TOL);
        let again = n.normalized().unwrap();
        for i in 0..3 {
            prop_assert!((n[i] - again[i]).abs() < EXACT_TOL);
        }
        // The normalization factor is positive, so direction survives.
        let k = v.norm_sq().abs().sqrt();
        for i in 0..3 {
            prop_assert!((v[i] - n[i] * k).abs() < EXACT_TOL * (1.0 + v[i].abs()) * 10.0);
        }
    }

    #[test]
    fn null_vectors_cannot_be_normalized(u in -3.0f64..3.0, v in 0.0f64..6.28) {
        // Scaled points of the light cone: (r, r cos v, r sin v).
        let r = u.cosh();
        let n = Vec3::new(r, r * v.cos(), r * v.sin());
        prop_assert_eq!(n.causal_character(), CausalCharacter::Null);
        let rejected = matches!(n.normalized(), Err(GeomError::NullDirection));
        prop_assert!(rejected);
    }

    #[test]
    fn timelike_cross_spacelike_frame_closes(
        (u, v) in unit_params(),
    ) {
        // An orthonormal triad q (spacelike), a (timelike) with
        // h = a × q closes under the cross product the way the frame
        // algebra requires: q × h = a and h × a = −q up to roundoff.
        let a = Vec3::sample_timelike_unit(u, v);
        // A spacelike direction orthogonal to a.
        let q = Vec3::new(u.sinh(), u.cosh() * v.cos(), u.cosh() * v.sin());
        prop_assume!(q.dot(a).abs() < 1e-9);
        let h = q.cross(a);
        let qh = q.cross(h);
        let ha = h.cross(a);
        let scale = 1.0 + a.comp_sq() * q.comp_sq();
        for i in 0..3 {
            prop_assert!((qh[i] - a[i]).abs() < EXACT_TOL * scale);
            prop_assert!((ha[i] + q[i]).abs() < EXACT_TOL * scale);
        }
    }
}
