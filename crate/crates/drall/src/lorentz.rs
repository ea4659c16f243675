//! Vectors in Minkowski 3-space `R³₁` with metric signature `(−, +, +)`.
//!
//! The inner product is `⟨a, b⟩ = −a₁b₁ + a₂b₂ + a₃b₃` and the cross
//! product is the one adapted to it, satisfying
//! `⟨a × b, c⟩ = −det(a, b, c)`. Vectors are classified by the sign of
//! their self inner product: spacelike (positive, or the zero vector),
//! timelike (negative) or null (zero on a nonzero vector).

use crate::error::{GeomError, Result};
use crate::scalar::Real;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

/// Vectors whose self inner product is smaller than this in magnitude are
/// treated as null (or zero, when the components themselves vanish).
pub const NULL_TOL: f64 = 1e-10;

/// Causal character of a vector with respect to the `(−, +, +)` metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalCharacter {
    /// `⟨v, v⟩ > 0`, or `v = 0`.
    Spacelike,
    /// `⟨v, v⟩ < 0`.
    Timelike,
    /// `⟨v, v⟩ = 0` with `v ≠ 0`.
    Null,
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CausalCharacter::Spacelike => "spacelike",
            CausalCharacter::Timelike => "timelike",
            CausalCharacter::Null => "null",
        };
        f.write_str(s)
    }
}

/// A vector in Minkowski 3-space; component 0 carries the minus sign of
/// the metric.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T>(pub [T; 3]);

impl<T: Real> Vec3<T> {
    /// Builds a vector from its three components.
    #[inline]
    pub fn new(a: T, b: T, c: T) -> Self {
        Vec3([a, b, c])
    }

    /// The zero vector.
    #[inline]
    pub fn zero() -> Self {
        Vec3([T::zero(); 3])
    }

    /// Multiplies by a scalar.
    #[inline]
    pub fn scale(self, k: T) -> Self {
        Vec3([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }

    /// Minkowski inner product `−a₁b₁ + a₂b₂ + a₃b₃`.
    #[inline]
    pub fn dot(self, rhs: Self) -> T {
        -self.0[0] * rhs.0[0] + self.0[1] * rhs.0[1] + self.0[2] * rhs.0[2]
    }

    /// Lorentzian cross product
    /// `(a₂b₃ − a₃b₂, a₁b₃ − a₃b₁, a₂b₁ − a₁b₂)`.
    ///
    /// It is metric-orthogonal to both factors and satisfies
    /// `⟨a × b, c⟩ = −det(a, b, c)`.
    #[inline]
    pub fn cross(self, rhs: Self) -> Self {
        let a = self.0;
        let b = rhs.0;
        Vec3([
            a[1] * b[2] - a[2] * b[1],
            a[0] * b[2] - a[2] * b[0],
            a[1] * b[0] - a[0] * b[1],
        ])
    }

    /// Plain determinant `det(a, b, c)` of the three vectors as rows.
    #[inline]
    pub fn triple(a: Self, b: Self, c: Self) -> T {
        a.0[0] * (b.0[1] * c.0[2] - b.0[2] * c.0[1])
            - a.0[1] * (b.0[0] * c.0[2] - b.0[2] * c.0[0])
            + a.0[2] * (b.0[0] * c.0[1] - b.0[1] * c.0[0])
    }

    /// Mixed product `⟨a × b, c⟩ = −det(a, b, c)`.
    #[inline]
    pub fn mixed(a: Self, b: Self, c: Self) -> T {
        -Self::triple(a, b, c)
    }

    /// Self inner product `⟨v, v⟩` (signed).
    #[inline]
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    /// Metric norm `√|⟨v, v⟩|`; zero for null vectors.
    #[inline]
    pub fn norm(self) -> T {
        self.norm_sq().abs().sqrt()
    }

    /// Euclidean squared length of the component tuple. The metric norm
    /// vanishes on null vectors, so size checks that must see every
    /// component (zero-vector tests, residuals) use this gauge instead.
    #[inline]
    pub fn comp_sq(self) -> T {
        self.0[0] * self.0[0] + self.0[1] * self.0[1] + self.0[2] * self.0[2]
    }

    /// Causal character of the vector. The zero vector counts as
    /// spacelike.
    pub fn causal_character(self) -> CausalCharacter {
        let q = self.norm_sq();
        let tol = T::c(NULL_TOL);
        if q > tol {
            CausalCharacter::Spacelike
        } else if q < -tol {
            CausalCharacter::Timelike
        } else if self.comp_sq() <= tol {
            CausalCharacter::Spacelike
        } else {
            CausalCharacter::Null
        }
    }

    /// Divides by the metric norm; fails with [`GeomError::NullDirection`]
    /// on null (or zero) vectors.
    pub fn normalized(self) -> Result<Self> {
        let n2 = self.norm_sq().abs();
        if n2 < T::c(NULL_TOL) {
            return Err(GeomError::NullDirection);
        }
        Ok(self.scale(T::one() / n2.sqrt()))
    }

    /// Signature of the self inner product: `+1` spacelike (or zero),
    /// `−1` timelike, `0` null.
    pub fn sign(self) -> T {
        match self.causal_character() {
            CausalCharacter::Spacelike => T::one(),
            CausalCharacter::Timelike => -T::one(),
            CausalCharacter::Null => T::zero(),
        }
    }

    /// How far `⟨v, v⟩` is from `±1`.
    #[inline]
    pub fn unit_defect(self) -> T {
        (self.norm_sq().abs() - T::one()).abs()
    }

    /// Point on the hyperboloid `⟨v, v⟩ = −1` (unit timelike vectors,
    /// future sheet): `(cosh u, sinh u cos v, sinh u sin v)`.
    pub fn sample_timelike_unit(u: T, v: T) -> Self {
        Vec3::new(u.cosh(), u.sinh() * v.cos(), u.sinh() * v.sin())
    }

    /// Point on the de Sitter sphere `⟨v, v⟩ = +1` (unit spacelike
    /// vectors): `(sinh u, cosh u cos v, cosh u sin v)`.
    pub fn sample_spacelike_unit(u: T, v: T) -> Self {
        Vec3::new(u.sinh(), u.cosh() * v.cos(), u.cosh() * v.sin())
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Vec3([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Vec3([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
        ])
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, k: T) -> Self {
        self.scale(k)
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    #[inline]
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Real> fmt::Display for Vec3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}
