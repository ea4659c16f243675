//! Catalog of concrete ruled surfaces used as fixtures and CLI builtins.
//!
//! The core family is a closed skew surface over a circular spacelike
//! base whose rulings tilt out of the base plane by a constant timelike
//! component `c ∈ (0, 1)`; its striction curve coincides with the base
//! and every frame quantity has a closed form, which makes it the
//! reference fixture for the integral invariants. The catalog also
//! carries the surface's oriented, right and slant offsets in closed
//! form, a circular cone and cylinder (degenerate-striction and error
//! paths), and a closed tangent developable with non-constant curvature
//! and torsion.

use crate::curve::ParamCurve;
use crate::error::{GeomError, Result};
use crate::lorentz::Vec3;
use crate::scalar::Real;
use crate::surface::RuledSurface;

fn tau<T: Real>() -> T {
    T::c(2.0) * T::PI()
}

fn check_tilt<T: Real>(c: T) -> Result<T> {
    if c <= T::zero() || c >= T::one() {
        return Err(GeomError::ConditionNotMet {
            what: "tilt parameter must satisfy 0 < c < 1",
        });
    }
    Ok((T::one() - c * c).sqrt())
}

/// Circular base curve of radius `r` in the spacelike plane.
fn circle_base<T: Real>(r: T) -> Result<ParamCurve<T>> {
    ParamCurve::new(
        move |s: T| Vec3::new(T::zero(), r * s.cos(), r * s.sin()),
        move |s: T| Vec3::new(T::zero(), -r * s.sin(), r * s.cos()),
        move |s: T| Vec3::new(T::zero(), -r * s.cos(), -r * s.sin()),
    )
    .with_period(tau::<T>())
}

/// Ruling family `(c, −sin s, cos s)` (unnormalized; Lorentz norm
/// `√(1−c²)`).
fn tilted_ruling<T: Real>(c: T) -> Result<ParamCurve<T>> {
    ParamCurve::new(
        move |s: T| Vec3::new(c, -s.sin(), s.cos()),
        move |s: T| Vec3::new(T::zero(), -s.cos(), -s.sin()),
        move |s: T| Vec3::new(T::zero(), s.sin(), -s.cos()),
    )
    .with_period(tau::<T>())
}

/// Closed skew surface over a circular base of radius `radius` with
/// rulings `(c, −sin s, cos s)/√(1−c²)`: timelike, spacelike rulings,
/// striction curve equal to the base, constant structural coefficients.
pub fn circular_skew<T: Real>(c: T, radius: T) -> Result<RuledSurface<T>> {
    check_tilt(c)?;
    if radius <= T::zero() {
        return Err(GeomError::ConditionNotMet {
            what: "radius must be positive",
        });
    }
    RuledSurface::new(circle_base(radius)?, tilted_ruling(c)?)
}

/// Base curve shared by the oriented and right offsets of
/// [`circular_skew`] (radius 1): the striction circle translated by the
/// offset distance `√(1−c²)` against the central tangent direction.
fn offset_base<T: Real>(c: T) -> Result<ParamCurve<T>> {
    ParamCurve::new(
        move |s: T| Vec3::new(-T::one(), s.cos() + c * s.sin(), s.sin() - c * s.cos()),
        move |s: T| Vec3::new(T::zero(), -s.sin() + c * s.cos(), s.cos() + c * s.sin()),
        move |s: T| Vec3::new(T::zero(), -s.cos() - c * s.sin(), -s.sin() + c * s.cos()),
    )
    .with_period(tau::<T>())
}

/// Oriented offset (offset angle `0 + ε√(1−c²)`) of [`circular_skew`]
/// with radius 1: same ruling directions along the translated striction
/// circle.
pub fn oriented_offset_surface<T: Real>(c: T) -> Result<RuledSurface<T>> {
    check_tilt(c)?;
    RuledSurface::new(offset_base(c)?, tilted_ruling(c)?)
}

/// Right offset (offset angle `π/2 + ε√(1−c²)`) of [`circular_skew`]
/// with radius 1: rulings along the central normals of the base surface.
pub fn right_offset_surface<T: Real>(c: T) -> Result<RuledSurface<T>> {
    check_tilt(c)?;
    let ruling = ParamCurve::new(
        |s: T| Vec3::new(T::zero(), -s.cos(), -s.sin()),
        |s: T| Vec3::new(T::zero(), s.sin(), -s.cos()),
        |s: T| Vec3::new(T::zero(), s.cos(), s.sin()),
    )
    .with_period(tau::<T>())?;
    RuledSurface::new(offset_base(c)?, ruling)
}

/// Slant offset (offset angle `π/3 + ε√(1−c²)·s`) of [`circular_skew`]
/// with radius 1. The growing offset distance makes the base curve
/// aperiodic, so the surface is open (sampled over `[0, 2π]`).
pub fn slant_offset_surface<T: Real>(c: T) -> Result<RuledSurface<T>> {
    let w = check_tilt(c)?;
    let base = ParamCurve::new(
        move |s: T| {
            Vec3::new(
                -s,
                s.cos() + c * s * s.sin(),
                s.sin() - c * s * s.cos(),
            )
        },
        move |s: T| {
            Vec3::new(
                -T::one(),
                (c - T::one()) * s.sin() + c * s * s.cos(),
                (T::one() - c) * s.cos() + c * s * s.sin(),
            )
        },
        move |s: T| {
            Vec3::new(
                T::zero(),
                (T::c(2.0) * c - T::one()) * s.cos() - c * s * s.sin(),
                (T::c(2.0) * c - T::one()) * s.sin() + c * s * s.cos(),
            )
        },
    );
    let half = T::one() / (T::c(2.0) * w);
    let tilt = T::c(3.0).sqrt() / T::c(2.0);
    let ruling = ParamCurve::new(
        move |s: T| {
            Vec3::new(
                c * half,
                -s.sin() * half - tilt * s.cos(),
                s.cos() * half - tilt * s.sin(),
            )
        },
        move |s: T| {
            Vec3::new(
                T::zero(),
                -s.cos() * half + tilt * s.sin(),
                -s.sin() * half - tilt * s.cos(),
            )
        },
        move |s: T| {
            Vec3::new(
                T::zero(),
                s.sin() * half + tilt * s.cos(),
                -s.cos() * half + tilt * s.sin(),
            )
        },
    );
    RuledSurface::new(base, ruling)
}

/// Circular cone: the rulings of [`circular_skew`] all passing through
/// the origin. Developable, with the striction curve collapsed to the
/// apex.
pub fn circular_cone<T: Real>(c: T) -> Result<RuledSurface<T>> {
    check_tilt(c)?;
    let base = ParamCurve::new(
        |_s: T| Vec3::zero(),
        |_s: T| Vec3::zero(),
        |_s: T| Vec3::zero(),
    )
    .with_period(tau::<T>())?;
    RuledSurface::new(base, tilted_ruling(c)?)
}

/// Circular cylinder with constant timelike ruling: every point is
/// cylindrical, so frame and striction queries report the degeneracy.
pub fn circular_cylinder<T: Real>() -> Result<RuledSurface<T>> {
    let ruling = ParamCurve::new(
        |_s: T| Vec3::new(T::one(), T::zero(), T::zero()),
        |_s: T| Vec3::zero(),
        |_s: T| Vec3::zero(),
    )
    .with_period(tau::<T>())?;
    RuledSurface::new(circle_base(T::one())?, ruling)
}

/// Closed tangent developable: rulings are the tangents of a wobbling
/// closed spacelike curve (amplitude `amp < 1/2` keeps the tangents
/// spacelike). Striction curve equals the base, drall vanishes, and the
/// structural coefficients are the curvature and torsion of the base,
/// both non-constant.
pub fn tangent_developable<T: Real>(amp: T) -> Result<RuledSurface<T>> {
    if amp <= T::zero() || amp >= T::c(0.5) {
        return Err(GeomError::ConditionNotMet {
            what: "wobble amplitude must satisfy 0 < amp < 1/2",
        });
    }
    let two = T::c(2.0);
    let base = ParamCurve::new(
        move |s: T| Vec3::new(amp * (two * s).sin(), s.cos(), s.sin()),
        move |s: T| Vec3::new(two * amp * (two * s).cos(), -s.sin(), s.cos()),
        move |s: T| Vec3::new(-T::c(4.0) * amp * (two * s).sin(), -s.cos(), -s.sin()),
    )
    .with_period(tau::<T>())?;
    let ruling = ParamCurve::new(
        move |s: T| Vec3::new(two * amp * (two * s).cos(), -s.sin(), s.cos()),
        move |s: T| Vec3::new(-T::c(4.0) * amp * (two * s).sin(), -s.cos(), -s.sin()),
        move |s: T| Vec3::new(-T::c(8.0) * amp * (two * s).cos(), s.sin(), -s.cos()),
    )
    .with_period(tau::<T>())?;
    RuledSurface::new(base, ruling)
}
