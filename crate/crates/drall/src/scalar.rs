//! Scalar abstraction used throughout the crate.
//!
//! Everything is generic over a floating-point scalar so the same code runs
//! in `f32` and `f64`. Concrete `f64` aliases live at the crate root.

use std::fmt::{Debug, Display};

/// Floating-point scalar the geometry is generic over.
///
/// This is a convenience aggregate of the `num-traits` bounds the crate
/// needs; it is implemented for `f32` and `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::FromPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Shorthand for converting an `f64` constant (tolerances, literals).
    #[inline]
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    /// Lossy view of the scalar as `f64`, used for diagnostics.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FloatConst;

    #[test]
    fn constants_convert_for_both_widths() {
        assert_eq!(f64::c(0.5), 0.5);
        assert_eq!(f32::c(0.5), 0.5f32);
        assert!((f64::PI() - std::f64::consts::PI).abs() == 0.0);
    }
}
