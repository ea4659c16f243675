//! Numerical quadrature over a parameter interval.
//!
//! All closed-form invariants in this crate are loop integrals of smooth
//! 1-forms, so a fixed-grid composite Simpson rule with compensated
//! (Kahan) accumulation is both simple and accurate to machine precision
//! for the analytic integrands that arise here. A cumulative variant
//! provides the prefix integral `F(s) = ∫ₐˢ f`, needed when an angle is
//! defined through an integral law and must be evaluated at arbitrary
//! parameters.

use crate::dual::Dual;
use crate::lorentz::Vec3;
use crate::scalar::Real;

/// Default number of Simpson subintervals.
pub const DEFAULT_INTERVALS: usize = 4096;

/// Smallest number of Simpson subintervals accepted.
pub const MIN_INTERVALS: usize = 16;

/// Values that can be accumulated linearly with real weights: scalars,
/// dual scalars and (dual) vectors all integrate componentwise.
pub trait Linear<T: Real>: Copy {
    /// Additive identity.
    fn lin_zero() -> Self;
    /// Componentwise sum.
    fn lin_add(self, rhs: Self) -> Self;
    /// Componentwise difference.
    fn lin_sub(self, rhs: Self) -> Self;
    /// Multiplication by a real weight.
    fn lin_scale(self, k: T) -> Self;
}

impl<T: Real> Linear<T> for T {
    fn lin_zero() -> Self {
        T::zero()
    }
    fn lin_add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn lin_sub(self, rhs: Self) -> Self {
        self - rhs
    }
    fn lin_scale(self, k: T) -> Self {
        self * k
    }
}

impl<T: Real> Linear<T> for Dual<T> {
    fn lin_zero() -> Self {
        Dual::zero()
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

impl<T: Real> Linear<T> for Vec3<T> {
    fn lin_zero() -> Self {
        Vec3::zero()
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

/// Running sum with Kahan compensation, generic over the accumulated
/// value type.
#[derive(Clone, Copy)]
struct Kahan<V> {
    sum: V,
    comp: V,
}

impl<V> Kahan<V> {
    fn new<T: Real>() -> Self
    where
        V: Linear<T>,
    {
        Kahan {
            sum: V::lin_zero(),
            comp: V::lin_zero(),
        }
    }

    fn add<T: Real>(&mut self, term: V)
    where
        V: Linear<T>,
    {
        let y = term.lin_sub(self.comp);
        let t = self.sum.lin_add(y);
        self.comp = t.lin_sub(self.sum).lin_sub(y);
        self.sum = t;
    }
}

fn clamp_intervals(n: usize) -> usize {
    let n = n.max(MIN_INTERVALS);
    if n % 2 == 0 {
        n
    } else {
        n + 1
    }
}

/// Composite Simpson rule on `[a, b]` with `intervals` subintervals
/// (forced even and at least [`MIN_INTERVALS`]).
pub fn integrate<T: Real, V: Linear<T>>(
    f: impl Fn(T) -> V,
    a: T,
    b: T,
    intervals: usize,
) -> V {
    let n = clamp_intervals(intervals);
    let h = (b - a) / T::from_usize(n).expect("interval count fits in scalar");
    let mut acc = Kahan::<V>::new();
    acc.add(f(a));
    acc.add(f(b));
    for i in 1..n {
        let s = a + h * T::from_usize(i).expect("index fits in scalar");
        let w = if i % 2 == 1 { T::c(4.0) } else { T::c(2.0) };
        acc.add(f(s).lin_scale(w));
    }
    acc.sum.lin_scale(h / T::c(3.0))
}

/// [`integrate`] with [`DEFAULT_INTERVALS`] subintervals.
pub fn integrate_default<T: Real, V: Linear<T>>(f: impl Fn(T) -> V, a: T, b: T) -> V {
    integrate(f, a, b, DEFAULT_INTERVALS)
}

/// Prefix integral `F(s) = ∫ₐˢ f` tabulated on a uniform grid.
///
/// Each grid cell is integrated with a three-point Simpson rule (using the
/// cell midpoint), and evaluation between nodes uses cubic Hermite
/// interpolation with the exact slopes `F' = f`, so values are accurate to
/// `O(h⁴)` everywhere, not just at the nodes.
pub struct Cumulative<T, V> {
    a: T,
    h: T,
    /// Prefix values `F(s_i)` at the `cells + 1` grid nodes.
    values: Vec<V>,
    /// Integrand samples `f(s_i)` (the derivative of the prefix).
    slopes: Vec<V>,
}

impl<T: Real, V: Linear<T>> Cumulative<T, V> {
    /// Tabulates the prefix integral of `f` on `[a, b]` over `cells` grid
    /// cells (forced to at least [`MIN_INTERVALS`]).
    pub fn new(f: impl Fn(T) -> V, a: T, b: T, cells: usize) -> Self {
        let n = cells.max(MIN_INTERVALS);
        let h = (b - a) / T::from_usize(n).expect("cell count fits in scalar");
        let mut values = Vec::with_capacity(n + 1);
        let mut slopes = Vec::with_capacity(n + 1);
        let mut acc = Kahan::<V>::new();
        let node = |i: usize| a + h * T::from_usize(i).expect("index fits in scalar");
        let mut f_lo = f(a);
        values.push(acc.sum);
        slopes.push(f_lo);
        let sixth = h / T::c(6.0);
        for i in 0..n {
            let mid = node(i) + h / T::c(2.0);
            let f_hi = f(node(i + 1));
            let cell = f_lo
                .lin_add(f(mid).lin_scale(T::c(4.0)))
                .lin_add(f_hi)
                .lin_scale(sixth);
            acc.add(cell);
            values.push(acc.sum);
            slopes.push(f_hi);
            f_lo = f_hi;
        }
        Cumulative {
            a,
            h,
            values,
            slopes,
        }
    }

    /// Evaluates the prefix integral at `s`. Outside the tabulated range
    /// the boundary cell's cubic is extrapolated.
    pub fn eval(&self, s: T) -> V {
        let n = self.values.len() - 1;
        let x = (s - self.a) / self.h;
        let i = x
            .floor()
            .to_usize()
            .unwrap_or(0)
            .min(n.saturating_sub(1));
        let t = x - T::from_usize(i).expect("index fits in scalar");
        let (t2, t3) = (t * t, t * t * t);
        let h00 = T::c(2.0) * t3 - T::c(3.0) * t2 + T::one();
        let h10 = t3 - T::c(2.0) * t2 + t;
        let h01 = -T::c(2.0) * t3 + T::c(3.0) * t2;
        let h11 = t3 - t2;
        self.values[i]
            .lin_scale(h00)
            .lin_add(self.slopes[i].lin_scale(h10 * self.h))
            .lin_add(self.values[i + 1].lin_scale(h01))
            .lin_add(self.slopes[i + 1].lin_scale(h11 * self.h))
    }
}
