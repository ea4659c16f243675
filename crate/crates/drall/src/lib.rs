//! Ruled surfaces in Minkowski 3-space via dual Lorentzian vectors.
//!
//! This crate models timelike ruled surfaces with spacelike rulings in the
//! three-dimensional Minkowski space `R³₁` (metric `−, +, +`). Directed
//! lines are represented as dual unit vectors `x̄ + εx̄*` (`ε² = 0`), which
//! turns line geometry into spherical geometry over the dual numbers: the
//! moving frame of a ruled surface, its striction curve, drall, and the
//! closed-surface integral invariants (pitch, angle of pitch, dual angle
//! of pitch, Steiner vector, area vector) all become short dual-arithmetic
//! formulas. On top of that sit offset constructions pairing a surface
//! with a second one whose rulings stay aligned with the first surface's
//! central normals, together with verifiers for the relations between the
//! invariants of the pair.
//!
//! Everything is generic over the floating scalar (`f32` / `f64`) through
//! the [`Real`] trait; the `*64` aliases at the crate root fix `f64` for
//! ordinary use.

pub mod catalog;
pub mod curve;
pub mod dline;
pub mod dual;
pub mod error;
pub mod invariants;
pub mod lorentz;
pub mod mannheim;
pub mod quad;
pub mod scalar;
pub mod surface;

pub use curve::ParamCurve;
pub use invariants::MotionInvariants;
pub use mannheim::{MannheimPair, OffsetAngle, OffsetFrame, Report, ReportRow};
pub use dline::{
    dcross, dinner, dual_angle, line_from_point_direction, AngleKind, DVec3, DualAngle, Line,
};
pub use dual::Dual;
pub use error::{GeomError, Result};
pub use lorentz::{CausalCharacter, Vec3};
pub use scalar::Real;
pub use surface::{DualFrame, Frame, Mesh, RuledSurface, SurfaceType};

/// Dual scalar over `f64`.
pub type DualScalar = Dual<f64>;
/// Minkowski vector over `f64`.
pub type LVec3 = Vec3<f64>;
/// Dual Lorentzian vector over `f64`.
pub type DLVec3 = DVec3<f64>;
/// Directed line over `f64`.
pub type DirectedLine = Line<f64>;
/// Dual angle over `f64`.
pub type DualAngle64 = DualAngle<f64>;
