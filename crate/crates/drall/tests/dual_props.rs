//! Property tests for the dual-number scalar ring: algebraic laws,
//! nilpotency of the dual unit, and agreement of lifted functions with
//! finite differences.

use drall::{Dual, GeomError};
use proptest::prelude::*;

/// Relative slack for floating-point reassociation in ring laws.
const RING_TOL: f64 = 1e-12;

/// Finite-difference step for derivative comparisons.
const FD_STEP: f64 = 1e-5;

/// Relative tolerance for lifted derivative vs central difference.
const FD_TOL: f64 = 1e-6;

fn close(a: Dual<f64>, b: Dual<f64>) -> bool {
    let scale = 1.0 + a.real.abs() + a.dual.abs() + b.real.abs() + b.dual.abs();
    (a.real - b.real).abs() <= RING_TOL * scale && (a.dual - b.dual).abs() <= RING_TOL * scale
}

fn dual_in(range: std::ops::Range<f64>) -> impl Strategy<Value = Dual<f64>> {
    (range.clone(), range).prop_map(|(a, b)| Dual::new(a, b))
}

/// Central difference of `f` at `x`.
fn central(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    (f(x + FD_STEP) - f(x - FD_STEP)) / (2.0 * FD_STEP)
}

fn check_lift(x: f64, lifted: Dual<f64>, f: impl Fn(f64) -> f64) {
    let fd = central(&f, x);
    let denom = 1.0 + fd.abs();
    assert!(
        (lifted.dual - fd).abs() / denom < FD_TOL,
        "lift {} vs finite difference {} at x = {x}",
        lifted.dual,
        fd
    );
    assert!((lifted.real - f(x)).abs() / (1.0 + f(x).abs()) < 1e-12);
}

proptest! {
    #[test]
    fn addition_commutes_and_associates(
        x in dual_in(-50.0..50.0),
        y in dual_in(-50.0..50.0),
        z in dual_in(-50.0..50.0),
    ) {
        prop_assert!(close(x + y, y + x));
        prop_assert!(close((x + y) + z, x + (y + z)));
        prop_assert_eq!(x + Dual::zero(), x);
    }

    #[test]
    fn multiplication_commutes_associates_and_distributes(
        x in dual_in(-20.0..20.0),
        y in dual_in(-20.0..20.0),
        z in dual_in(-20.0..20.0),
    ) {
        prop_assert!(close(x * y, y * x));
        prop_assert!(close((x * y) * z, x * (y * z)));
        prop_assert!(close(x * (y + z), x * y + x * z));
        prop_assert_eq!(x * Dual::one(), x);
    }

    #[test]
    fn negation_and_subtraction_are_consistent(
        x in dual_in(-50.0..50.0),
        y in dual_in(-50.0..50.0),
    ) {
        prop_assert_eq!(x - y, x + (-y));
        prop_assert_eq!(x - x, Dual::zero());
    }

    #[test]
    fn dual_unit_is_nilpotent(b in -100.0f64..100.0) {
        // (εb)² = 0 exactly: the real product has no roundoff.
        let eps = Dual::new(0.0, b);
        prop_assert_eq!(eps * eps, Dual::zero());
    }

    #[test]
    fn pure_dual_parts_annihilate_products(
        a in -30.0f64..30.0,
        b in -30.0f64..30.0,
    ) {
        // (x + εa)(x + εb) has dual part x(a + b): no ε² leakage.
        let x = 1.5f64;
        let p = Dual::new(x, a) * Dual::new(x, b);
        prop_assert!((p.dual - x * (a + b)).abs() < 1e-12);
    }

    #[test]
    fn division_inverts_multiplication(
        x in dual_in(-20.0..20.0),
        y in (1e-3f64..20.0, -20.0f64..20.0).prop_map(|(a, b)| Dual::new(a, b)),
        sign in proptest::bool::ANY,
    ) {
        let y = if sign { y } else { -y };
        let q = x.div(y).unwrap();
        prop_assert!(close(q * y, x));
    }

    #[test]
    fn division_by_pure_dual_is_rejected(
        tiny in -1e-13f64..1e-13,
        b in -10.0f64..10.0,
        x in dual_in(-20.0..20.0),
    ) {
        let rejected = matches!(
            x.div(Dual::new(tiny, b)),
            Err(GeomError::ZeroDivisor { .. })
        );
        prop_assert!(rejected);
    }

    #[test]
    fn trig_lifts_match_finite_differences(x in -3.0f64..3.0, b in -2.0f64..2.0) {
        // Unit dual slope isolates f′; a general slope scales it.
        let d = Dual::new(x, 1.0);
        check_lift(x, d.sin(), f64::sin);
        check_lift(x, d.cos(), f64::cos);
        check_lift(x, d.sinh(), f64::sinh);
        check_lift(x, d.cosh(), f64::cosh);
        let scaled = Dual::new(x, b).sin();
        prop_assert!((scaled.dual - b * x.cos()).abs() < 1e-12 * (1.0 + b.abs()));
    }

    #[test]
    fn sqrt_and_inverse_lifts_match_finite_differences(x in 0.1f64..30.0) {
        let d = Dual::new(x, 1.0);
        check_lift(x, d.sqrt().unwrap(), f64::sqrt);
        check_lift(x, d.asinh(), f64::asinh);
        let sq = d.sqrt().unwrap();
        prop_assert!(close(sq * sq, d));
    }

    #[test]
    fn abs_restores_sign(x in dual_in(-20.0..20.0)) {
        let a = x.abs();
        prop_assert!(a.real >= 0.0);
        if x.real > 0.0 {
            prop_assert_eq!(a, x);
        } else if x.real < 0.0 {
            prop_assert_eq!(a, -x);
        }
    }

    #[test]
    fn atan2_recovers_polar_angles(theta in -3.1f64..3.1, ts in -2.0f64..2.0) {
        let ang = Dual::new(theta, ts);
        let recovered = Dual::atan2(ang.sin(), ang.cos()).unwrap();
        prop_assert!((recovered.real - theta).abs() < 1e-12);
        prop_assert!((recovered.dual - ts).abs() < 1e-11);
    }

    #[test]
    fn acos_inverts_cos_on_the_principal_branch(theta in 0.05f64..3.09, ts in -2.0f64..2.0) {
        let ang = Dual::new(theta, ts);
        let recovered = ang.cos().acos().unwrap();
        prop_assert!((recovered.real - theta).abs() < 1e-9);
        prop_assert!((recovered.dual - ts).abs() < 1e-7 * (1.0 + ts.abs()));
    }

    #[test]
    fn acosh_inverts_cosh_for_positive_arguments(t in 0.1f64..3.0, ts in -2.0f64..2.0) {
        let ang = Dual::new(t, ts);
        let recovered = ang.cosh().acosh().unwrap();
        prop_assert!((recovered.real - t).abs() < 1e-9);
        prop_assert!((recovered.dual - ts).abs() < 1e-7 * (1.0 + ts.abs()));
    }
}
