//! Dual scalars `a + εb` with `ε² = 0`.
//!
//! A dual scalar carries a value together with a first-order perturbation:
//! multiplication truncates at ε², so smooth functions extend to dual
//! arguments by `f(a + εb) = f(a) + ε b f'(a)`. That one identity does all
//! derivative bookkeeping in this crate: angles between lines, norms of
//! dual vectors and the screw invariants are computed by running ordinary
//! formulas in dual arithmetic.

use crate::error::{GeomError, Result};
use crate::scalar::Real;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Real parts smaller than this in magnitude count as zero divisors.
pub const ZERO_DIVISOR_TOL: f64 = 1e-12;

/// Dual scalar `real + ε·dual` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual<T> {
    /// Real part.
    pub real: T,
    /// Dual (ε) part.
    pub dual: T,
}

impl<T: Real> Dual<T> {
    /// Builds `real + ε·dual`.
    #[inline]
    pub fn new(real: T, dual: T) -> Self {
        Dual { real, dual }
    }

    /// Embeds a real number as `x + ε·0`.
    #[inline]
    pub fn from_real(real: T) -> Self {
        Dual {
            real,
            dual: T::zero(),
        }
    }

    /// The additive identity.
    #[inline]
    pub fn zero() -> Self {
        Dual {
            real: T::zero(),
            dual: T::zero(),
        }
    }

    /// The multiplicative identity.
    #[inline]
    pub fn one() -> Self {
        Dual {
            real: T::one(),
            dual: T::zero(),
        }
    }

    /// Multiplies by a real scalar.
    #[inline]
    pub fn scale(self, k: T) -> Self {
        Dual {
            real: self.real * k,
            dual: self.dual * k,
        }
    }

    /// Dual-safe division. The divisor must have a nonzero real part:
    /// `(a+εb)/(c+εd) = a/c + ε (b c − a d)/c²`.
    pub fn div(self, rhs: Self) -> Result<Self> {
        if rhs.real.abs() < T::c(ZERO_DIVISOR_TOL) {
            return Err(GeomError::ZeroDivisor {
                magnitude: rhs.real.abs().as_f64(),
            });
        }
        let c2 = rhs.real * rhs.real;
        Ok(Dual {
            real: self.real / rhs.real,
            dual: (self.dual * rhs.real - self.real * rhs.dual) / c2,
        })
    }

    /// Applies a differentiable function given its derivative:
    /// `f(a + εb) = f(a) + ε b f'(a)`.
    #[inline]
    pub fn lift(self, f: impl Fn(T) -> T, df: impl Fn(T) -> T) -> Self {
        Dual {
            real: f(self.real),
            dual: self.dual * df(self.real),
        }
    }

    /// Dual sine.
    #[inline]
    pub fn sin(self) -> Self {
        Dual {
            real: self.real.sin(),
            dual: self.dual * self.real.cos(),
        }
    }

    /// Dual cosine.
    #[inline]
    pub fn cos(self) -> Self {
        Dual {
            real: self.real.cos(),
            dual: -self.dual * self.real.sin(),
        }
    }

    /// Dual hyperbolic sine.
    #[inline]
    pub fn sinh(self) -> Self {
        Dual {
            real: self.real.sinh(),
            dual: self.dual * self.real.cosh(),
        }
    }

    /// Dual hyperbolic cosine.
    #[inline]
    pub fn cosh(self) -> Self {
        Dual {
            real: self.real.cosh(),
            dual: self.dual * self.real.sinh(),
        }
    }

    /// Dual square root; requires a strictly positive real part.
    pub fn sqrt(self) -> Result<Self> {
        if self.real <= T::zero() {
            return Err(GeomError::DomainError {
                func: "sqrt",
                arg: self.real.as_f64(),
            });
        }
        let r = self.real.sqrt();
        Ok(Dual {
            real: r,
            dual: self.dual / (T::c(2.0) * r),
        })
    }

    /// Dual arccosine; requires `|real| < 1`.
    pub fn acos(self) -> Result<Self> {
        if self.real.abs() >= T::one() {
            return Err(GeomError::DomainError {
                func: "acos",
                arg: self.real.as_f64(),
            });
        }
        Ok(Dual {
            real: self.real.acos(),
            dual: -self.dual / (T::one() - self.real * self.real).sqrt(),
        })
    }

    /// Dual inverse hyperbolic cosine; requires `real > 1`.
    pub fn acosh(self) -> Result<Self> {
        if self.real <= T::one() {
            return Err(GeomError::DomainError {
                func: "acosh",
                arg: self.real.as_f64(),
            });
        }
        Ok(Dual {
            real: self.real.acosh(),
            dual: self.dual / (self.real * self.real - T::one()).sqrt(),
        })
    }

    /// Dual inverse hyperbolic sine (total).
    #[inline]
    pub fn asinh(self) -> Self {
        Dual {
            real: self.real.asinh(),
            dual: self.dual / (self.real * self.real + T::one()).sqrt(),
        }
    }

    /// Dual two-argument arctangent; requires `(y.real, x.real) != (0, 0)`.
    ///
    /// `atan2(y+εy*, x+εx*) = atan2(y, x) + ε (x y* − y x*)/(x² + y²)`.
    pub fn atan2(y: Self, x: Self) -> Result<Self> {
        let denom = x.real * x.real + y.real * y.real;
        if denom < T::c(ZERO_DIVISOR_TOL) {
            return Err(GeomError::DomainError {
                func: "atan2",
                arg: denom.as_f64(),
            });
        }
        Ok(Dual {
            real: y.real.atan2(x.real),
            dual: (x.real * y.dual - y.real * x.dual) / denom,
        })
    }

    /// Absolute value of a dual scalar: negates both parts when the real
    /// part is negative (the sign of a dual number is the sign of its real
    /// part).
    #[inline]
    pub fn abs(self) -> Self {
        if self.real < T::zero() {
            -self
        } else {
            self
        }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Dual {
            real: self.real + rhs.real,
            dual: self.dual + rhs.dual,
        }
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Dual {
            real: self.real - rhs.real,
            dual: self.dual - rhs.dual,
        }
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Dual {
            real: self.real * rhs.real,
            dual: self.real * rhs.dual + self.dual * rhs.real,
        }
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Dual {
            real: -self.real,
            dual: -self.dual,
        }
    }
}

/// Operator form of [`Dual::div`]; panics on a zero divisor. Use
/// [`Dual::div`] when the divisor may degenerate.
impl<T: Real> Div for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        Dual::div(self, rhs).expect("dual division by zero divisor")
    }
}

impl<T: Real> fmt::Display for Dual<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ε·{}", self.real, self.dual)
    }
}
