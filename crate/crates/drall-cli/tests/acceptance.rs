//! Acceptance suite: ten criteria, one test (and one pass/fail line)
//! each, at the stated tolerances. Each test prints its verdict line;
//! the harness line for the test is the authoritative pass/fail record.

use std::f64::consts::{PI, TAU};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drall::catalog;
use drall::invariants::{self, motion_invariants, MotionInvariants};
use drall::mannheim::{
    developability_condition, mannheim_partner_angle, offset_angle_law, offset_drall,
    offset_surface, striction_mannheim_check, tau_alpha, verify_pitch_relation,
    verify_projection_areas, MannheimPair, OffsetAngle,
};
use drall::{Dual, GeomError, RuledSurface, SurfaceType, Vec3};

fn eq52(c: f64) -> RuledSurface<f64> {
    catalog::circular_skew(c, 1.0).unwrap()
}

#[test]
fn criterion_01_dual_algebra_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let cases = 10_000;
    let step = 1e-5;
    for _ in 0..cases {
        let x: Dual<f64> = Dual::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
        let y: Dual<f64> = Dual::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
        let z: Dual<f64> = Dual::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));

        // Ring laws at bounded magnitude.
        let scale = 1e-12
            * (1.0 + x.real.abs() + x.dual.abs())
            * (1.0 + y.real.abs() + y.dual.abs())
            * (1.0 + z.real.abs() + z.dual.abs());
        let assoc = (x * y) * z - x * (y * z);
        assert!(assoc.real.abs() < scale && assoc.dual.abs() < scale);
        let dist = x * (y + z) - (x * y + x * z);
        assert!(dist.real.abs() < scale && dist.dual.abs() < scale);
        let comm = x * y - y * x;
        assert!(comm.real == 0.0 && comm.dual == 0.0);

        // ε-nilpotency is exact.
        let eps = Dual::new(0.0, x.dual);
        assert_eq!(eps * eps, Dual::zero());

        // Lift vs central finite difference, relative error < 1e-6.
        let a = rng.gen_range(-3.0..3.0);
        let d = Dual::new(a, 1.0);
        let lift_fd = |lift: Dual<f64>, f: &dyn Fn(f64) -> f64| {
            let fd = (f(a + step) - f(a - step)) / (2.0 * step);
            assert!(
                (lift.dual - fd).abs() / (1.0 + fd.abs()) < 1e-6,
                "lift {} vs fd {fd} at {a}",
                lift.dual
            );
        };
        lift_fd(d.sin(), &f64::sin);
        lift_fd(d.cos(), &f64::cos);
        lift_fd(d.sinh(), &f64::sinh);
        lift_fd(d.cosh(), &f64::cosh);
        let p = rng.gen_range(0.1..10.0);
        let dp = Dual::new(p, 1.0);
        let fd = ((p + step).sqrt() - (p - step).sqrt()) / (2.0 * step);
        assert!((dp.sqrt().unwrap().dual - fd).abs() / (1.0 + fd.abs()) < 1e-6);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("criterion 1 (dual algebra suite, {cases} cases in {elapsed:?}): PASS");
}

#[test]
fn criterion_02_lorentz_kernel_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let cases = 10_000;
    for _ in 0..cases {
        let u1 = rng.gen_range(-3.0..3.0);
        let v1 = rng.gen_range(0.0..TAU);
        let u2 = rng.gen_range(-3.0..3.0);
        let v2 = rng.gen_range(0.0..TAU);

        // Cross-product metric orthogonality on random unit vectors.
        let a = if rng.gen_bool(0.5) {
            Vec3::sample_timelike_unit(u1, v1)
        } else {
            Vec3::sample_spacelike_unit(u1, v1)
        };
        let b = if rng.gen_bool(0.5) {
            Vec3::sample_timelike_unit(u2, v2)
        } else {
            Vec3::sample_spacelike_unit(u2, v2)
        };
        let c = a.cross(b);
        assert!(c.dot(a).abs() < 1e-12 * (1.0 + a.comp_sq() * b.comp_sq()));
        assert!(c.dot(b).abs() < 1e-12 * (1.0 + a.comp_sq() * b.comp_sq()));

        // Two timelike unit vectors are never metric-orthogonal.
        let t1 = Vec3::sample_timelike_unit(u1, v1);
        let t2 = Vec3::sample_timelike_unit(u2, v2);
        assert!(t1.dot(t2).abs() >= 1.0 - 1e-9);
    }
    println!("criterion 2 (Lorentz kernel suite, {cases} cases): PASS");
}

#[test]
fn criterion_03_skew_circle_reproduction() {
    let surf = eq52(0.5);
    let w = 0.75f64.sqrt();

    // (a) classification
    assert_eq!(surf.surface_type().unwrap(), SurfaceType::M1Plus);

    // (b) striction curve coincides with the base circle.
    let mut max_dev = 0.0f64;
    for s in surf.probes(100) {
        let c = surf.striction_point(s).unwrap();
        let k = surf.base().value(s);
        max_dev = max_dev.max((c - k).comp_sq().sqrt());
    }
    assert!(max_dev < 1e-9, "striction deviation {max_dev}");

    // (c) pitch against the closed form −2π/√0.75.
    let pitch = invariants::pitch(&surf, 4096).unwrap();
    assert!((pitch - (-TAU / w)).abs() < 1e-8, "pitch {pitch}");

    // (d) central normal line (0, −cos s, −sin s) with zero moment.
    for s in surf.probes(100) {
        let f = surf.dual_frame_at(s).unwrap();
        let expected = Vec3::new(0.0, -s.cos(), -s.sin());
        for i in 0..3 {
            assert!((f.h.real[i] - expected[i]).abs() < 1e-12);
            assert!(f.h.dual[i].abs() < 1e-12);
        }
    }
    println!("criterion 3 (skew circle reproduction at c = 0.5): PASS");
}

fn mesh_distance(a: &RuledSurface<f64>, b: &RuledSurface<f64>) -> f64 {
    let ma = a.mesh(64, (-1.0, 1.0), 9).unwrap();
    let mb = b.mesh(64, (-1.0, 1.0), 9).unwrap();
    assert_eq!(ma.points.len(), 64 * 9);
    assert_eq!(ma.points.len(), mb.points.len());
    let mut worst = 0.0f64;
    for (p, q) in ma.points.iter().zip(&mb.points) {
        worst = worst.max((*p - *q).comp_sq().sqrt());
    }
    worst
}

#[test]
fn criterion_04_offset_reproduction() {
    let base = eq52(0.5);
    let w = 0.75f64.sqrt();

    let aligned = offset_surface(&base, &OffsetAngle::constant(Dual::new(0.0, w))).unwrap();
    let d_aligned = mesh_distance(&aligned, &catalog::oriented_offset_surface(0.5).unwrap());
    assert!(d_aligned < 1e-9, "aligned offset mesh deviation {d_aligned}");

    let right = offset_surface(&base, &OffsetAngle::constant(Dual::new(PI / 2.0, w))).unwrap();
    let d_right = mesh_distance(&right, &catalog::right_offset_surface(0.5).unwrap());
    assert!(d_right < 1e-9, "right offset mesh deviation {d_right}");

    let slant_angle = OffsetAngle::variable(
        move |s: f64| Dual::new(PI / 3.0, w * s),
        move |_s: f64| Dual::new(0.0, w),
    );
    let slant = offset_surface(&base, &slant_angle).unwrap();
    assert!(slant.period().is_none());
    let d_slant = mesh_distance(&slant, &catalog::slant_offset_surface(0.5).unwrap());
    assert!(d_slant < 1e-9, "slant offset mesh deviation {d_slant}");

    println!(
        "criterion 4 (offset reproduction, 64x9 meshes, deviations {d_aligned:.2e} / \
         {d_right:.2e} / {d_slant:.2e}): PASS"
    );
}

#[test]
fn criterion_05_pitch_relation_on_closed_fixtures() {
    let start = Instant::now();
    let angles = [
        Dual::new(0.0, 0.8),
        Dual::new(PI / 2.0, 0.8),
        Dual::new(PI / 3.0, 0.5),
        Dual::new(1.1, 0.0),
        Dual::new(0.7, -0.4),
    ];
    let mut aligned_seen = false;
    let mut right_seen = false;
    let mut coincident_seen = false;
    for c in [0.3, 0.5, 0.7] {
        for theta in angles {
            let pair = MannheimPair::new(eq52(c), OffsetAngle::constant(theta)).unwrap();
            let report = verify_pitch_relation(&pair, 2048).unwrap();
            for row in &report.rows {
                if row.enforced {
                    assert!(
                        row.pass,
                        "c = {c}, theta = ({}, {}): {} residual {}",
                        theta.real, theta.dual, row.name, row.residual
                    );
                    assert!(row.tol <= 1e-6);
                }
                aligned_seen |= row.name.contains("aligned offset") && row.pass;
                right_seen |= row.name.contains("right offset") && row.enforced && row.pass;
                coincident_seen |= row.name.contains("coincident") && row.pass;
            }
        }
    }
    assert!(aligned_seen && right_seen && coincident_seen);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 5 (pitch relation, 3 fixtures x 5 angles + case splits in {elapsed:?}): PASS"
    );
}

/// Probes where the closed-form drall quotient is well conditioned:
/// torsion and offset angle bounded away from the degeneracies.
fn masked_probes(base: &RuledSurface<f64>, angle: &OffsetAngle<f64>) -> Vec<f64> {
    base.probes(128)
        .into_iter()
        .filter(|&s| {
            let tau = base.frame_at(s).map(|f| f.k2).unwrap_or(0.0);
            let th = angle.eval(s).real;
            tau.abs() > 0.2 && th.sin().abs() > 0.15
        })
        .collect()
}

#[test]
fn criterion_06_developability_closed_form() {
    let dev: RuledSurface<f64> = catalog::tangent_developable(0.15).unwrap();

    // 5 x 5 grid of turning-law offsets anchored at (θ₀, θ₀*).
    let thetas = [0.3, 0.6, 0.9, 1.2, -0.5];
    let stars = [0.25, 0.5, -0.7, 0.8, 1.5];
    let mut checked = 0usize;
    let mut grid_points = 0usize;
    for &t0 in &thetas {
        for &u0 in &stars {
            grid_points += 1;
            let angle = offset_angle_law(&dev, Dual::new(t0, u0), 1024).unwrap();
            let pair = MannheimPair::new(dev.clone(), angle.clone()).unwrap();
            let direct = offset_surface(&dev, &angle.with_negated_distance()).unwrap();
            let probes = masked_probes(&dev, &angle);
            assert!(probes.len() >= 10, "grid point ({t0}, {u0}) unusable");
            for s in probes {
                let cf = offset_drall(&pair, s).unwrap();
                let measured = -direct.drall(s).unwrap();
                assert!(
                    (cf - measured).abs() < 1e-6,
                    "({t0}, {u0}) at s = {s}: closed form {cf} vs drall {measured}"
                );
                checked += 1;
            }
        }
    }
    assert!(grid_points >= 25);

    // Root coincidence: anchor the law so the root condition
    // tan θ = θ* τ holds exactly at s₀; the offset drall vanishes
    // there, and detunes away from the root.
    let u0 = 0.6;
    for s0 in [0.55, 1.3, 2.6, 4.1] {
        let tau = tau_alpha(&dev, s0).unwrap();
        assert!(tau.abs() > 0.2, "anchor s0 = {s0} sits at a torsion zero");
        let target = (u0 * tau).atan();
        // Two-pass anchoring: read the law's value at s₀, then shift
        // the anchor so the value lands on the root.
        let probe = offset_angle_law(&dev, Dual::new(0.0, u0), 2048).unwrap();
        let at_anchor = probe.eval(s0);
        let theta0 = Dual::new(target, u0) + at_anchor.scale(-1.0) + Dual::new(0.0, u0);
        let law = offset_angle_law(&dev, theta0, 2048).unwrap();
        let rooted = law.eval(s0);
        assert!(
            developability_condition(rooted.real, rooted.dual, tau).abs() < 1e-10,
            "root condition not anchored at s0 = {s0}"
        );

        let pair = MannheimPair::new(dev.clone(), law.clone()).unwrap();
        let cf = offset_drall(&pair, s0).unwrap();
        assert!(cf.abs() < 1e-8, "closed form {cf} at the root");
        let direct = offset_surface(&dev, &law.with_negated_distance()).unwrap();
        let measured = direct.drall(s0).unwrap();
        assert!(measured.abs() < 1e-8, "direct drall {measured} at the root");

        // Detuned anchor: away from the root the drall is visibly
        // nonzero, so the root set matches the condition's zero set.
        let detuned_angle = theta0 + Dual::new(0.2, 0.0);
        let detuned = offset_angle_law(&dev, detuned_angle, 2048).unwrap();
        let detuned_surf = offset_surface(&dev, &detuned.with_negated_distance()).unwrap();
        assert!(detuned_surf.drall(s0).unwrap().abs() > 1e-4);
    }
    println!(
        "criterion 6 (developability closed form, {grid_points} grid points, \
         {checked} probe comparisons, 4 anchored roots): PASS"
    );
}

#[test]
fn criterion_07_mannheim_partner_alignment() {
    // Arc of the twisted developable with torsion bounded away from 0.
    let full: RuledSurface<f64> = catalog::tangent_developable(0.15).unwrap();
    let arc = full.restricted(1.05, 2.05).unwrap();
    let angle = mannheim_partner_angle(&arc, 1.2, 512).unwrap();
    let pair = MannheimPair::new(arc.clone(), angle.with_negated_distance()).unwrap();

    // Premise: the constructed offset is developable on the arc.
    for s in masked_probes(&arc, pair.offset_angle()) {
        let d = pair.offset_surface().drall(s).unwrap();
        assert!(d.abs() < 1e-8, "offset drall {d} at s = {s}");
    }

    // Partner property of the striction curves: binormal of the base
    // striction parallel to the principal normal of the offset
    // striction, angular residual < 1e-6.
    let worst = striction_mannheim_check(&pair, 64).unwrap();
    assert!(worst < 1e-6, "alignment residual {worst}");
    println!("criterion 7 (Mannheim partner alignment, worst sin angle {worst:.2e}): PASS");
}

#[test]
fn criterion_08_projection_area_identities() {
    for c in [0.3, 0.5, 0.7] {
        for theta in [Dual::new(0.4, 0.2), Dual::new(PI / 2.0, 0.8)] {
            let pair = MannheimPair::new(eq52(c), OffsetAngle::constant(theta)).unwrap();
            // Report-only rows never abort: the call succeeds and every
            // row carries a recorded verdict.
            let report = verify_projection_areas(&pair, 2048).unwrap();
            for row in &report.rows {
                if row.enforced {
                    assert!(
                        row.pass,
                        "c = {c}: {} residual {}",
                        row.name, row.residual
                    );
                    assert!(row.tol <= 1e-6);
                }
            }
            // The sign ambiguities are resolved per fixture and stay
            // recorded as report rows.
            let variants = report
                .rows
                .iter()
                .filter(|r| r.name.contains("sign variant"))
                .count();
            assert!(variants >= 2, "sign-variant rows missing from the report");
        }
    }
    println!("criterion 8 (projection area identities + recorded sign variants): PASS");
}

fn invariant_components(inv: &MotionInvariants<f64>) -> Vec<f64> {
    let mut v = vec![
        inv.pitch,
        inv.angle_of_pitch,
        inv.dual_angle_of_pitch.real,
        inv.dual_angle_of_pitch.dual,
        inv.spherical_area.real,
        inv.spherical_area.dual,
    ];
    for i in 0..3 {
        v.push(inv.steiner.real[i]);
        v.push(inv.steiner.dual[i]);
        v.push(inv.area_vector.real[i]);
        v.push(inv.area_vector.dual[i]);
    }
    v
}

#[test]
fn criterion_09_quadrature_convergence() {
    // Closed fixtures with frames: all integral invariants move less
    // than 1e-8 when the node count doubles.
    let closed: Vec<(&str, RuledSurface<f64>)> = vec![
        ("eq52", eq52(0.5)),
        ("eq53", catalog::oriented_offset_surface(0.5).unwrap()),
        ("eq54", catalog::right_offset_surface(0.5).unwrap()),
        ("cone", catalog::circular_cone(0.5).unwrap()),
        ("tangent_dev", catalog::tangent_developable(0.15).unwrap()),
    ];
    for (name, surf) in &closed {
        let coarse = motion_invariants(surf, 2048).unwrap();
        let fine = motion_invariants(surf, 4096).unwrap();
        for (a, b) in invariant_components(&coarse)
            .into_iter()
            .zip(invariant_components(&fine))
        {
            assert!((a - b).abs() < 1e-8, "{name}: {a} vs {b}");
        }
    }
    // The remaining builtins reject invariants deterministically: the
    // slant offset is open and the cylinder has no frames, so node
    // doubling is vacuous for them.
    let open: RuledSurface<f64> = catalog::slant_offset_surface(0.5).unwrap();
    for nodes in [2048, 4096] {
        assert!(matches!(
            motion_invariants(&open, nodes),
            Err(GeomError::NotClosed)
        ));
    }
    let cyl: RuledSurface<f64> = catalog::circular_cylinder().unwrap();
    for nodes in [2048, 4096] {
        assert!(matches!(
            motion_invariants(&cyl, nodes),
            Err(GeomError::CylindricalPoint { .. })
        ));
    }
    println!("criterion 9 (node doubling 2048 -> 4096 across builtins): PASS");
}

#[test]
fn criterion_10_cli_determinism() {
    let args = ["verify", "--builtin", "eq52", "--theta", "0", "--theta-star", "0.8"];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_drall"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0), "exit code");
    assert_eq!(b.status.code(), Some(0), "exit code");
    assert_eq!(a.stdout, b.stdout, "stdout differs between runs");
    assert_eq!(a.stderr, b.stderr, "stderr differs between runs");
    assert!(!a.stdout.is_empty());
    println!("criterion 10 (CLI determinism, byte-identical repeated runs): PASS");
}
