//! Error type shared by all geometry modules.

use thiserror::Error;

/// Errors raised by the dual-Lorentzian geometry kernel.
///
/// Parameters carried by the variants are reported as `f64` regardless of the
/// scalar the computation ran in; they are diagnostic only.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// Division by a dual number whose real part is (numerically) zero.
    #[error("division by dual zero divisor (|real part| = {magnitude:e})")]
    ZeroDivisor { magnitude: f64 },

    /// A lifted function was evaluated outside its real domain.
    #[error("domain error in lifted `{func}` at real part {arg}")]
    DomainError { func: &'static str, arg: f64 },

    /// A direction vector required to be non-null was null or zero.
    #[error("null or zero direction vector")]
    NullDirection,

    /// A vector expected to be (dual) unit was not.
    #[error("vector is not unit to tolerance (defect = {defect:e})")]
    NotUnit { defect: f64 },

    /// The ruling direction is stationary at the given parameter, so no
    /// central normal exists there.
    #[error("cylindrical point: ruling derivative vanishes at s = {s}")]
    CylindricalPoint { s: f64 },

    /// The striction construction hit a null central-normal direction.
    #[error("null central normal at s = {s}")]
    NullCentralNormal { s: f64 },

    /// A Frenet-style frame vector came out null at the given parameter.
    #[error("null frame vector at s = {s}")]
    NullFrameVector { s: f64 },

    /// The causal characters of the frame vary along the surface, so no
    /// single surface type applies.
    #[error("mixed causal type: frame characters change along the surface")]
    MixedCausalType,

    /// An operation that needs a closed (periodic) surface got an open one.
    #[error("operation requires a closed surface")]
    NotClosed,

    /// A declared period does not match the curve data.
    #[error("curve is not periodic with the declared period (max deviation = {max_dev:e})")]
    NotPeriodic { max_dev: f64 },

    /// A surface of the wrong causal type was passed to a typed operation.
    #[error("wrong surface type: expected {expected}, found {found}")]
    WrongType {
        expected: &'static str,
        found: &'static str,
    },

    /// A frame handed to an operation is not (dual) orthonormal.
    #[error("frame is not orthonormal to tolerance (defect = {defect:e})")]
    NotOrthonormal { defect: f64 },

    /// An operation that needs a developable base surface got a skew one.
    #[error("base surface is not developable (|drall| = {drall:e} at s = {s})")]
    NotDevelopable { drall: f64, s: f64 },

    /// A verifier precondition (for example a closed-form root condition)
    /// does not hold for the supplied data.
    #[error("precondition not met: {what}")]
    ConditionNotMet { what: &'static str },

    /// A closed-form expression degenerates at the requested angle.
    #[error("expression degenerates at the requested angle (theta = {theta})")]
    RightAngleDegenerate { theta: f64 },

    /// The inverse-function derivative vanishes for an angle computation
    /// (parallel or zero-angle lines). Angle routines normally resolve
    /// this through a well-conditioned limit rule instead of failing.
    #[error("degenerate angle: inverse-function derivative vanishes (sin = {sin_theta:e})")]
    DegenerateAngle { sin_theta: f64 },

    /// The instantaneous Pfaffian vector is null, so no pole direction
    /// exists at this parameter.
    #[error("null Pfaffian vector at s = {s}; pole direction undefined")]
    NullPfaffian { s: f64 },
}

/// Convenient result alias for geometry operations.
pub type Result<T> = std::result::Result<T, GeomError>;
