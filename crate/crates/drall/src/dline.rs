//! Dual Lorentzian vectors and directed lines.
//!
//! A dual vector `x̃ = x̄ + εx̄*` pairs two Minkowski vectors. When `x̄` is a
//! unit direction and `x̄*` the moment `p × x̄` of a point on a line, the
//! dual vector has dual unit length and encodes the whole directed line —
//! the classical transfer between line geometry and the dual unit
//! spheres. The dual angle `θ̄ = θ + εθ*` between two such vectors then
//! carries the real angle between the lines in its real part and their
//! common-normal distance in its dual part.

use crate::dual::Dual;
use crate::error::{GeomError, Result};
use crate::lorentz::{CausalCharacter, Vec3, NULL_TOL};
use crate::quad::Linear;
use crate::scalar::Real;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Tolerance for the dual unit check: both `||⟨x̃,x̃⟩.real| − 1|` and
/// `|⟨x̃,x̃⟩.dual|` must stay below this.
pub const DUAL_UNIT_TOL: f64 = 1e-9;

/// Below this on `sin θ` / `sinh θ`, angle extraction switches to the
/// parallel-line limit rule (the matching span-test threshold is its
/// square).
pub const DEGENERATE_SIN_TOL: f64 = 1e-9;

/// A dual Lorentzian vector `x̄ + εx̄*`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DVec3<T> {
    /// Real part `x̄`.
    pub real: Vec3<T>,
    /// Dual part `x̄*`.
    pub dual: Vec3<T>,
}

impl<T: Real> DVec3<T> {
    /// Builds `real + ε·dual`.
    #[inline]
    pub fn new(real: Vec3<T>, dual: Vec3<T>) -> Self {
        DVec3 { real, dual }
    }

    /// Embeds a real vector with zero dual part.
    #[inline]
    pub fn from_real(real: Vec3<T>) -> Self {
        DVec3 {
            real,
            dual: Vec3::zero(),
        }
    }

    /// The zero dual vector.
    #[inline]
    pub fn zero() -> Self {
        DVec3 {
            real: Vec3::zero(),
            dual: Vec3::zero(),
        }
    }

    /// Real part `x̄`.
    #[inline]
    pub fn real_part(self) -> Vec3<T> {
        self.real
    }

    /// Dual part `x̄*`.
    #[inline]
    pub fn dual_part(self) -> Vec3<T> {
        self.dual
    }

    /// Multiplies by a real scalar.
    #[inline]
    pub fn scale(self, k: T) -> Self {
        DVec3 {
            real: self.real.scale(k),
            dual: self.dual.scale(k),
        }
    }

    /// Multiplies by a dual scalar: `(λ+ελ*)(x̄+εx̄*) = λx̄ + ε(λ*x̄ + λx̄*)`.
    #[inline]
    pub fn scale_dual(self, k: Dual<T>) -> Self {
        DVec3 {
            real: self.real.scale(k.real),
            dual: self.real.scale(k.dual) + self.dual.scale(k.real),
        }
    }

    /// Dual Lorentzian inner product
    /// `⟨x̃, ỹ⟩ = ⟨x̄, ȳ⟩ + ε(⟨x̄, ȳ*⟩ + ⟨x̄*, ȳ⟩)`.
    #[inline]
    pub fn dinner(self, rhs: Self) -> Dual<T> {
        Dual {
            real: self.real.dot(rhs.real),
            dual: self.real.dot(rhs.dual) + self.dual.dot(rhs.real),
        }
    }

    /// Dual Lorentzian cross product
    /// `x̃ × ỹ = x̄ × ȳ + ε(x̄* × ȳ + x̄ × ȳ*)`.
    #[inline]
    pub fn dcross(self, rhs: Self) -> Self {
        DVec3 {
            real: self.real.cross(rhs.real),
            dual: self.dual.cross(rhs.real) + self.real.cross(rhs.dual),
        }
    }

    /// Causal character of the dual vector (that of its real part).
    #[inline]
    pub fn causal_character(self) -> CausalCharacter {
        self.real.causal_character()
    }

    /// How far the vector is from dual unit length: the larger of
    /// `||⟨x̃,x̃⟩.real| − 1|` and `|⟨x̃,x̃⟩.dual|`.
    pub fn unit_defect(self) -> T {
        let g = self.dinner(self);
        (g.real.abs() - T::one()).abs().max(g.dual.abs())
    }

    /// Dual norm `‖x̃‖` with `⟨x̃,x̃⟩ = ±‖x̃‖²`; fails on (numerically)
    /// null real parts.
    pub fn dnorm(self) -> Result<Dual<T>> {
        let g = self.dinner(self);
        if g.real.abs() < T::c(NULL_TOL) {
            return Err(GeomError::NullDirection);
        }
        let sign = if g.real > T::zero() { T::one() } else { -T::one() };
        g.scale(sign).sqrt()
    }

    /// Divides by the dual norm, producing a dual unit vector.
    pub fn normalized(self) -> Result<Self> {
        let n = self.dnorm()?;
        Ok(self.scale_dual(Dual::one().div(n)?))
    }
}

impl<T: Real> Add for DVec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        DVec3 {
            real: self.real + rhs.real,
            dual: self.dual + rhs.dual,
        }
    }
}

impl<T: Real> Sub for DVec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        DVec3 {
            real: self.real - rhs.real,
            dual: self.dual - rhs.dual,
        }
    }
}

impl<T: Real> Neg for DVec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        DVec3 {
            real: -self.real,
            dual: -self.dual,
        }
    }
}

impl<T: Real> Linear<T> for DVec3<T> {
    fn lin_zero() -> Self {
        DVec3::zero()
    }
    fn lin_add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn lin_sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn lin_scale(self, k: T) -> Self {
        self.scale(k)
    }
}

impl<T: Real> fmt::Display for DVec3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ε·{}", self.real, self.dual)
    }
}

/// Free-function form of [`DVec3::dinner`].
#[inline]
pub fn dinner<T: Real>(x: DVec3<T>, y: DVec3<T>) -> Dual<T> {
    x.dinner(y)
}

/// Free-function form of [`DVec3::dcross`].
#[inline]
pub fn dcross<T: Real>(x: DVec3<T>, y: DVec3<T>) -> DVec3<T> {
    x.dcross(y)
}

/// A directed non-null line, stored as a unit direction plus its moment
/// about the origin. Invariants: `⟨direction, direction⟩ = ±1` and
/// `⟨direction, moment⟩ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line<T> {
    /// Unit direction of the line.
    pub direction: Vec3<T>,
    /// Moment `p × direction` for any point `p` on the line.
    pub moment: Vec3<T>,
}

impl<T: Real> Line<T> {
    /// Builds the directed line through `p` with direction `u`
    /// (normalized internally). Fails with [`GeomError::NullDirection`]
    /// when `u` is null or zero: null lines have no dual unit
    /// representative.
    pub fn from_point_direction(p: Vec3<T>, u: Vec3<T>) -> Result<Self> {
        let direction = u.normalized()?;
        Ok(Line {
            direction,
            moment: p.cross(direction),
        })
    }

    /// The dual unit vector `direction + ε·moment` representing the line.
    #[inline]
    pub fn to_dual(self) -> DVec3<T> {
        DVec3 {
            real: self.direction,
            dual: self.moment,
        }
    }

    /// Reads a line off a dual unit vector; fails with
    /// [`GeomError::NotUnit`] when the vector is not dual unit to
    /// [`DUAL_UNIT_TOL`].
    pub fn from_dual(v: DVec3<T>) -> Result<Self> {
        let defect = v.unit_defect();
        if defect > T::c(DUAL_UNIT_TOL) {
            return Err(GeomError::NotUnit {
                defect: defect.as_f64(),
            });
        }
        Ok(Line {
            direction: v.real,
            moment: v.dual,
        })
    }

    /// The point of the line closest to the origin (foot of the common
    /// perpendicular): `p₀ = −⟨u,u⟩ · u × m`.
    pub fn base_point(self) -> Vec3<T> {
        let sign = if self.direction.norm_sq() > T::zero() {
            T::one()
        } else {
            -T::one()
        };
        self.direction.cross(self.moment).scale(-sign)
    }

    /// Causal character of the line (that of its direction).
    #[inline]
    pub fn causal_character(self) -> CausalCharacter {
        self.direction.causal_character()
    }
}

/// Free-function form of [`Line::from_point_direction`].
#[inline]
pub fn line_from_point_direction<T: Real>(p: Vec3<T>, u: Vec3<T>) -> Result<Line<T>> {
    Line::from_point_direction(p, u)
}

/// Which of the four angle cases applies, by the causal characters of the
/// two dual vectors (and, for two spacelike ones, of their span).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleKind {
    /// Both vectors timelike: `⟨x̃, ỹ⟩ = −cosh θ̄`.
    Hyperbolic,
    /// Both spacelike, spanning a timelike plane: `|⟨x̃, ỹ⟩| = cosh θ̄`.
    Central,
    /// Both spacelike, spanning a spacelike plane: `⟨x̃, ỹ⟩ = cos θ̄`.
    SpacelikeAngle,
    /// One spacelike, one timelike: `⟨x̃, ỹ⟩ = sinh θ̄`.
    LorentzianTimelike,
}

impl fmt::Display for AngleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AngleKind::Hyperbolic => "hyperbolic",
            AngleKind::Central => "central",
            AngleKind::SpacelikeAngle => "spacelike",
            AngleKind::LorentzianTimelike => "Lorentzian timelike",
        };
        f.write_str(s)
    }
}

/// Dual angle `θ̄ = θ + εθ*` between two dual unit vectors, together with
/// the case it was extracted from. For lines, `θ` is the angle between
/// the directions and `θ*` the common-normal distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualAngle<T> {
    /// `θ + εθ*`.
    pub value: Dual<T>,
    /// Which inverse function produced the value.
    pub kind: AngleKind,
}

impl<T: Real> DualAngle<T> {
    /// Wraps an already-known dual angle.
    pub fn new(value: Dual<T>, kind: AngleKind) -> Self {
        DualAngle { value, kind }
    }

    /// Real part `θ` (offset angle).
    #[inline]
    pub fn angle(self) -> T {
        self.value.real
    }

    /// Dual part `θ*` (offset distance).
    #[inline]
    pub fn distance(self) -> T {
        self.value.dual
    }
}

fn require_dual_unit<T: Real>(v: DVec3<T>) -> Result<()> {
    let defect = v.unit_defect();
    if defect > T::c(DUAL_UNIT_TOL) {
        return Err(GeomError::NotUnit {
            defect: defect.as_f64(),
        });
    }
    Ok(())
}

/// Parallel-line limit rule: when `sin θ` (or `sinh θ`) underflows, the
/// offset distance is the norm of the dual part of the cross product,
/// which equals the common-normal distance and stays well conditioned.
fn limit_distance<T: Real>(x: DVec3<T>, y: DVec3<T>) -> T {
    x.dcross(y).dual.norm()
}

/// Dual angle between two dual unit vectors, by the four-case rule:
///
/// * both timelike — `⟨x̃, ỹ⟩ = −cosh θ̄` (hyperbolic);
/// * both spacelike, timelike span — `|⟨x̃, ỹ⟩| = cosh θ̄` (central);
/// * both spacelike, spacelike span — `⟨x̃, ỹ⟩ = cos θ̄`;
/// * mixed — `⟨x̃, ỹ⟩ = sinh θ̄` (Lorentzian timelike).
///
/// The span of two spacelike vectors is timelike when
/// `⟨x̄ × ȳ, x̄ × ȳ⟩ > 0` and spacelike when it is negative; when it
/// vanishes numerically the directions are parallel and the angle
/// degenerates to `θ = 0` with the distance taken from the limit rule.
pub fn dual_angle<T: Real>(x: DVec3<T>, y: DVec3<T>) -> Result<DualAngle<T>> {
    require_dual_unit(x)?;
    require_dual_unit(y)?;
    let cx = x.causal_character();
    let cy = y.causal_character();
    if cx == CausalCharacter::Null || cy == CausalCharacter::Null {
        return Err(GeomError::NullDirection);
    }
    let g = x.dinner(y);
    let sin_tol = T::c(DEGENERATE_SIN_TOL);
    let clamp_tol = T::c(1e-12);
    match (cx, cy) {
        (CausalCharacter::Timelike, CausalCharacter::Timelike) => {
            // ⟨x̃, ỹ⟩ = −cosh θ̄; same time orientation required.
            let m = -g;
            extract_acosh(m, sin_tol, clamp_tol, AngleKind::Hyperbolic, x, y)
        }
        (CausalCharacter::Spacelike, CausalCharacter::Spacelike) => {
            let span = {
                let c = x.real.cross(y.real);
                c.norm_sq()
            };
            let span_tol = sin_tol * sin_tol;
            if span > span_tol {
                // Timelike span: |⟨x̃, ỹ⟩| = cosh θ̄.
                extract_acosh(g.abs(), sin_tol, clamp_tol, AngleKind::Central, x, y)
            } else if span < -span_tol {
                // Spacelike span: ⟨x̃, ỹ⟩ = cos θ̄.
                extract_acos(g, sin_tol, clamp_tol, x, y)
            } else {
                // Parallel directions: the spanned plane degenerates, the
                // real angle is 0 and the distance comes from the limit
                // rule.
                Ok(DualAngle {
                    value: Dual::new(T::zero(), limit_distance(x, y)),
                    kind: AngleKind::Central,
                })
            }
        }
        _ => {
            // One timelike, one spacelike: ⟨x̃, ỹ⟩ = sinh θ̄; asinh and
            // cosh θ ≥ 1 make this case unconditionally well posed.
            let theta = g.asinh();
            Ok(DualAngle {
                value: theta,
                kind: AngleKind::LorentzianTimelike,
            })
        }
    }
}

/// Inverts `m = cosh θ̄` with the degenerate limit rule at `θ = 0`.
fn extract_acosh<T: Real>(
    m: Dual<T>,
    sin_tol: T,
    clamp_tol: T,
    kind: AngleKind,
    x: DVec3<T>,
    y: DVec3<T>,
) -> Result<DualAngle<T>> {
    if m.real < T::one() - clamp_tol {
        return Err(GeomError::DomainError {
            func: "acosh",
            arg: m.real.as_f64(),
        });
    }
    let sinh = (m.real * m.real - T::one()).max(T::zero()).sqrt();
    if sinh < sin_tol {
        return Ok(DualAngle {
            value: Dual::new(T::zero(), limit_distance(x, y)),
            kind,
        });
    }
    Ok(DualAngle {
        value: Dual::new(m.real.acosh(), m.dual / sinh),
        kind,
    })
}

/// Inverts `g = cos θ̄` with the degenerate limit rule at `θ = 0, π`.
fn extract_acos<T: Real>(
    g: Dual<T>,
    sin_tol: T,
    clamp_tol: T,
    x: DVec3<T>,
    y: DVec3<T>,
) -> Result<DualAngle<T>> {
    if g.real.abs() > T::one() + clamp_tol {
        return Err(GeomError::DomainError {
            func: "acos",
            arg: g.real.as_f64(),
        });
    }
    let c = g.real.max(-T::one()).min(T::one());
    let sin = (T::one() - c * c).max(T::zero()).sqrt();
    if sin < sin_tol {
        let theta = if c > T::zero() { T::zero() } else { T::PI() };
        return Ok(DualAngle {
            value: Dual::new(theta, limit_distance(x, y)),
            kind: AngleKind::SpacelikeAngle,
        });
    }
    Ok(DualAngle {
        value: Dual::new(c.acos(), -g.dual / sin),
        kind: AngleKind::SpacelikeAngle,
    })
}
