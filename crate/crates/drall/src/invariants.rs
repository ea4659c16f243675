//! Integral invariants of closed ruled surfaces and line trajectories.
//!
//! A closed ruled surface sweeps out a closed one-parameter family of
//! directed lines. Over one period the family carries real and dual
//! integral invariants — the pitch, the angle of pitch, the Steiner
//! vector of the frame motion and the spherical area vector of the
//! directed-line image — all defined by closed quadratures of the frame
//! data. The integrands are parametrization-free 1-forms, so every
//! quadrature here works directly in the input parameter.

use core::cell::RefCell;

use crate::dline::{DVec3, DUAL_UNIT_TOL};
use crate::dual::Dual;
use crate::error::{GeomError, Result};
use crate::quad::{self, Linear};
use crate::scalar::Real;
use crate::surface::{frame_of_dual_jets, DJet3, RuledSurface};

/// Default number of quadrature subintervals.
pub const DEFAULT_NODES: usize = quad::DEFAULT_INTERVALS;

/// Central-difference step for derivatives of the structural
/// coefficients (used only where no closed-form rate is available).
pub(crate) const COEFF_FD_STEP: f64 = 1e-6;

/// Instantaneous rotation/translation data of the frame motion at one
/// parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfaffianSample<T> {
    /// Dual angular-velocity vector `ψ̃ = k̄₂ q̃ − ε_q k̄₁ ã`; every frame
    /// vector satisfies `dx̃ = ψ̃ × x̃`.
    pub psi: DVec3<T>,
    /// Unit instantaneous screw axis `ψ̃/‖ψ̃‖`.
    pub pole: DVec3<T>,
}

/// The closed integral invariants of a line trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionInvariants<T> {
    /// Pitch `ℓ = −∮⟨dp, x̂⟩`: net advance along the line per period.
    pub pitch: T,
    /// Angle of pitch `λ = ∮⟨dh, a⟩`: net rotation per period.
    pub angle_of_pitch: T,
    /// Dual angle of pitch `Λ̄ = ∮⟨dh̃, ã⟩`, equal to `λ + ε ℓ`.
    pub dual_angle_of_pitch: Dual<T>,
    /// Steiner vector `d̃ = ∮ψ̃` of the frame motion.
    pub steiner: DVec3<T>,
    /// Spherical area vector `w̃ = ∮ x̃ × dx̃` of the line image.
    pub area_vector: DVec3<T>,
    /// Dual spherical area `ā = 2π − Λ̄` enclosed by the line image.
    pub spherical_area: Dual<T>,
}

/// Composite Simpson quadrature over a fallible integrand: the first
/// evaluation error aborts the quadrature.
pub(crate) fn integrate_checked<T: Real, V: Linear<T>>(
    f: impl Fn(T) -> Result<V>,
    a: T,
    b: T,
    intervals: usize,
) -> Result<V> {
    let err: RefCell<Option<GeomError>> = RefCell::new(None);
    let val = quad::integrate(
        |s| {
            if err.borrow().is_some() {
                return V::lin_zero();
            }
            match f(s) {
                Ok(v) => v,
                Err(e) => {
                    *err.borrow_mut() = Some(e);
                    V::lin_zero()
                }
            }
        },
        a,
        b,
        intervals,
    );
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(val),
    }
}

fn closed_range<T: Real>(surface: &RuledSurface<T>) -> Result<(T, T)> {
    let period = surface.require_closed()?;
    let (lo, _) = surface.domain();
    Ok((lo, lo + period))
}

/// Instantaneous Pfaffian vector and screw pole of the surface frame at
/// `s`. Fails with a null-Pfaffian error when the rotation axis has a
/// lightlike direction and cannot be normalized.
pub fn pfaffian<T: Real>(surface: &RuledSurface<T>, s: T) -> Result<PfaffianSample<T>> {
    let frame = surface.dual_frame_at(s)?;
    let psi = frame.pfaffian();
    let pole = psi
        .normalized()
        .map_err(|_| GeomError::NullPfaffian { s: s.as_f64() })?;
    Ok(PfaffianSample { psi, pole })
}

/// Pitch `ℓ_q = −∮⟨k′, q̂⟩ ds` of a closed surface: the net translation
/// along the ruling over one period. Independent of the choice of point
/// path on the rulings.
pub fn pitch<T: Real>(surface: &RuledSurface<T>, nodes: usize) -> Result<T> {
    let (a, b) = closed_range(surface)?;
    integrate_checked(
        |s| Ok(-surface.base().d1(s).dot(surface.unit_ruling(s)?)),
        a,
        b,
        nodes,
    )
}

/// Angle of pitch `λ_q = ∮⟨h′, a⟩ ds` of a closed surface: the net
/// rotation about the ruling over one period.
pub fn angle_of_pitch<T: Real>(surface: &RuledSurface<T>, nodes: usize) -> Result<T> {
    let (a, b) = closed_range(surface)?;
    integrate_checked(
        |s| {
            let frame = surface.dual_frame_at(s)?;
            Ok(frame.h_d1().real.dot(frame.a.real))
        },
        a,
        b,
        nodes,
    )
}

/// Dual angle of pitch `Λ̄_q = ∮⟨dh̃, ã⟩` of a closed surface; its real
/// part is the angle of pitch and its dual part the pitch.
pub fn dual_angle_of_pitch<T: Real>(surface: &RuledSurface<T>, nodes: usize) -> Result<Dual<T>> {
    let (a, b) = closed_range(surface)?;
    integrate_checked(
        |s| {
            let frame = surface.dual_frame_at(s)?;
            Ok(frame.h_d1().dinner(frame.a))
        },
        a,
        b,
        nodes,
    )
}

/// Steiner vector `d̃ = ∮ψ̃ ds` of the frame motion of a closed surface.
pub fn steiner<T: Real>(surface: &RuledSurface<T>, nodes: usize) -> Result<DVec3<T>> {
    let (a, b) = closed_range(surface)?;
    integrate_checked(|s| Ok(surface.dual_frame_at(s)?.pfaffian()), a, b, nodes)
}

/// Spherical area vector `w̃_q = ∮ q̃ × dq̃` of the ruling image of a
/// closed surface.
pub fn area_vector<T: Real>(surface: &RuledSurface<T>, nodes: usize) -> Result<DVec3<T>> {
    let (a, b) = closed_range(surface)?;
    integrate_checked(
        |s| {
            let jet = surface.dual_ruling_jet(s)?;
            Ok(jet.v.dcross(jet.d1))
        },
        a,
        b,
        nodes,
    )
}

/// Spherical area vector `∮ x̃ × dx̃` of an arbitrary closed dual curve
/// given by its jet function.
pub fn trajectory_area_vector<T: Real>(
    jets: impl Fn(T) -> Result<DJet3<T>>,
    range: (T, T),
    nodes: usize,
) -> Result<DVec3<T>> {
    integrate_checked(
        |s| {
            let jet = jets(s)?;
            Ok(jet.v.dcross(jet.d1))
        },
        range.0,
        range.1,
        nodes,
    )
}

/// Dual area of the projection of a closed trajectory onto the plane
/// orthogonal to a dual unit `direction`: `f̄ = ⟨w̃, x̃⟩/2`.
pub fn projection_area<T: Real>(area: DVec3<T>, direction: DVec3<T>) -> Result<Dual<T>> {
    let defect = direction.unit_defect();
    if defect > T::c(DUAL_UNIT_TOL) {
        return Err(GeomError::NotUnit {
            defect: defect.as_f64(),
        });
    }
    Ok(area.dinner(direction).scale(T::c(0.5)))
}

/// Dual angle of pitch of the trajectory of a dual unit line `x̃` under
/// the frame motion with Steiner vector `d̃`: `λ̄_x = −⟨x̃, d̃⟩`.
pub fn pitch_angle_from_steiner<T: Real>(steiner: DVec3<T>, line: DVec3<T>) -> Result<Dual<T>> {
    let defect = line.unit_defect();
    if defect > T::c(DUAL_UNIT_TOL) {
        return Err(GeomError::NotUnit {
            defect: defect.as_f64(),
        });
    }
    Ok(-line.dinner(steiner))
}

/// All closed invariants of the ruling motion of a closed surface.
pub fn motion_invariants<T: Real>(
    surface: &RuledSurface<T>,
    nodes: usize,
) -> Result<MotionInvariants<T>> {
    let dual_angle = dual_angle_of_pitch(surface, nodes)?;
    Ok(MotionInvariants {
        pitch: pitch(surface, nodes)?,
        angle_of_pitch: angle_of_pitch(surface, nodes)?,
        dual_angle_of_pitch: dual_angle,
        steiner: steiner(surface, nodes)?,
        area_vector: area_vector(surface, nodes)?,
        spherical_area: Dual::new(T::c(2.0) * T::PI(), T::zero()) - dual_angle,
    })
}

/// All closed invariants of an arbitrary closed line trajectory given by
/// its dual jets over `range`. The pitch is measured along the path of
/// the line's foot point (the point nearest the origin), which stays on
/// the line throughout.
pub fn trajectory_invariants<T: Real>(
    jets: impl Fn(T) -> Result<DJet3<T>>,
    range: (T, T),
    nodes: usize,
) -> Result<MotionInvariants<T>> {
    let frame = |s: T| -> Result<_> { frame_of_dual_jets(&jets(s)?, s) };
    let dual_angle = integrate_checked(
        |s| {
            let f = frame(s)?;
            Ok(f.h_d1().dinner(f.a))
        },
        range.0,
        range.1,
        nodes,
    )?;
    let pitch = integrate_checked(
        |s| {
            let jet = jets(s)?;
            // Foot-point path p = −ε_x (x̂ × x̂*); its derivative follows
            // by the product rule from the trajectory jets.
            let eps = jet.v.real.sign();
            let p_d1 =
                (jet.d1.real.cross(jet.v.dual) + jet.v.real.cross(jet.d1.dual)).scale(-eps);
            Ok(-p_d1.dot(jet.v.real))
        },
        range.0,
        range.1,
        nodes,
    )?;
    let steiner = integrate_checked(
        |s| Ok(frame(s)?.pfaffian()),
        range.0,
        range.1,
        nodes,
    )?;
    let area_vector = trajectory_area_vector(&jets, range, nodes)?;
    Ok(MotionInvariants {
        pitch,
        angle_of_pitch: dual_angle.real,
        dual_angle_of_pitch: dual_angle,
        steiner,
        area_vector,
        spherical_area: Dual::new(T::c(2.0) * T::PI(), T::zero()) - dual_angle,
    })
}

/// Jet function of the central-normal trajectory `h̃(s)` of a surface:
/// value and first derivative follow exactly from the structural
/// equations; the second derivative additionally needs the
/// finite-differenced rates of the structural coefficients.
pub fn h_trajectory_jets<T: Real>(
    surface: &RuledSurface<T>,
) -> impl Fn(T) -> Result<DJet3<T>> + '_ {
    move |s: T| {
        let f = surface.dual_frame_at(s)?;
        let step = T::c(COEFF_FD_STEP);
        let fp = surface.dual_frame_at(s + step)?;
        let fm = surface.dual_frame_at(s - step)?;
        let half = T::one() / (T::c(2.0) * step);
        let k1_d1 = (fp.k1 - fm.k1).scale(half);
        let k2_d1 = (fp.k2 - fm.k2).scale(half);
        // h̃″ = c k̄₁′ q̃ + (c k̄₁² − ε_h ε_a k̄₂²) h̃ + k̄₂′ ã, c = −ε_q ε_h.
        let c = -f.eps_q() * f.eps_h();
        let d2 = f.q.scale_dual(k1_d1.scale(c))
            + f
                .h
                .scale_dual(f.k1 * f.k1.scale(c) - f.k2 * f.k2.scale(f.eps_h() * f.eps_a()))
            + f.a.scale_dual(k2_d1);
        Ok(DJet3 {
            v: f.h,
            d1: f.h_d1(),
            d2,
        })
    }
}

/// Invariants of the central-normal trajectory `h̃(s)` of a closed
/// surface.
pub fn h_trajectory_invariants<T: Real>(
    surface: &RuledSurface<T>,
    nodes: usize,
) -> Result<MotionInvariants<T>> {
    let range = closed_range(surface)?;
    trajectory_invariants(h_trajectory_jets(surface), range, nodes)
}
