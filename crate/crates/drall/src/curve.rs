//! Parametrized curves `s ↦ R³₁` with first and second derivatives.
//!
//! Ruled surfaces are built from two such curves (base point and ruling
//! direction). All downstream geometry — frames, striction, invariant
//! integrands — needs up to second derivatives, so a curve carries three
//! callables. Analytic derivatives are preferred; a central-difference
//! adapter covers curves available only as values.

use crate::error::{GeomError, Result};
use crate::lorentz::Vec3;
use crate::scalar::Real;
use std::fmt;
use std::sync::Arc;

/// Maximum deviation `‖value(s+T) − value(s)‖` allowed when a period `T`
/// is declared, checked at [`PERIOD_PROBES`] points.
pub const PERIOD_TOL: f64 = 1e-9;

/// Number of probe points for the periodicity check.
pub const PERIOD_PROBES: usize = 16;

/// Central-difference step for first derivatives in the value-only
/// adapter.
pub const FD_STEP_D1: f64 = 1e-6;

/// Central-difference step for second derivatives in the value-only
/// adapter. Second differences lose twice the digits to cancellation, so
/// this step is much larger than [`FD_STEP_D1`].
pub const FD_STEP_D2: f64 = 1e-4;

type VecFn<T> = Arc<dyn Fn(T) -> Vec3<T> + Send + Sync>;

/// A curve in Minkowski 3-space with value, first and second derivative
/// callables, an optional period, and a sampling domain.
#[derive(Clone)]
pub struct ParamCurve<T> {
    value: VecFn<T>,
    d1: VecFn<T>,
    d2: VecFn<T>,
    period: Option<T>,
    domain: (T, T),
}

impl<T: Real> ParamCurve<T> {
    /// Builds an open curve from analytic value / first / second
    /// derivative callables. The default sampling domain is `[0, 2π]`.
    pub fn new(
        value: impl Fn(T) -> Vec3<T> + Send + Sync + 'static,
        d1: impl Fn(T) -> Vec3<T> + Send + Sync + 'static,
        d2: impl Fn(T) -> Vec3<T> + Send + Sync + 'static,
    ) -> Self {
        ParamCurve {
            value: Arc::new(value),
            d1: Arc::new(d1),
            d2: Arc::new(d2),
            period: None,
            domain: (T::zero(), T::c(2.0) * T::PI()),
        }
    }

    /// Builds an open curve from a value callable alone, supplying
    /// derivatives by central differences (steps [`FD_STEP_D1`] /
    /// [`FD_STEP_D2`]).
    pub fn from_values(value: impl Fn(T) -> Vec3<T> + Send + Sync + 'static) -> Self {
        let f = Arc::new(value);
        let f1 = f.clone();
        let f2 = f.clone();
        let h1 = T::c(FD_STEP_D1);
        let h2 = T::c(FD_STEP_D2);
        let d1 = move |s: T| (f1(s + h1) - f1(s - h1)).scale(T::one() / (T::c(2.0) * h1));
        let d2 = move |s: T| {
            (f2(s + h2) - f2(s).scale(T::c(2.0)) + f2(s - h2)).scale(T::one() / (h2 * h2))
        };
        ParamCurve {
            value: f,
            d1: Arc::new(d1),
            d2: Arc::new(d2),
            period: None,
            domain: (T::zero(), T::c(2.0) * T::PI()),
        }
    }

    /// Declares the curve closed with the given period and checks
    /// `value(s+T) = value(s)` at [`PERIOD_PROBES`] points to
    /// [`PERIOD_TOL`]; the sampling domain becomes `[0, T]`.
    pub fn with_period(mut self, period: T) -> Result<Self> {
        if period <= T::zero() {
            return Err(GeomError::NotPeriodic { max_dev: f64::NAN });
        }
        let mut max_dev = T::zero();
        for i in 0..PERIOD_PROBES {
            let s = period * T::from_usize(i).expect("probe index fits in scalar")
                / T::from_usize(PERIOD_PROBES).expect("probe count fits in scalar");
            let dev = ((self.value)(s + period) - (self.value)(s)).norm();
            max_dev = max_dev.max(dev);
        }
        if max_dev > T::c(PERIOD_TOL) {
            return Err(GeomError::NotPeriodic {
                max_dev: max_dev.as_f64(),
            });
        }
        self.period = Some(period);
        self.domain = (T::zero(), period);
        Ok(self)
    }

    /// Overrides the sampling domain and treats the curve as open over
    /// that window (any declared period is dropped).
    pub fn with_domain(mut self, lo: T, hi: T) -> Self {
        self.domain = (lo, hi);
        self.period = None;
        self
    }

    /// Curve point at `s`.
    #[inline]
    pub fn value(&self, s: T) -> Vec3<T> {
        (self.value)(s)
    }

    /// First derivative at `s`.
    #[inline]
    pub fn d1(&self, s: T) -> Vec3<T> {
        (self.d1)(s)
    }

    /// Second derivative at `s`.
    #[inline]
    pub fn d2(&self, s: T) -> Vec3<T> {
        (self.d2)(s)
    }

    /// Declared period, if the curve is closed.
    #[inline]
    pub fn period(&self) -> Option<T> {
        self.period
    }

    /// Whether a period was declared (and verified).
    #[inline]
    pub fn is_closed(&self) -> bool {
        self.period.is_some()
    }

    /// Sampling domain: `[0, T]` for closed curves, else the configured
    /// window.
    #[inline]
    pub fn domain(&self) -> (T, T) {
        self.domain
    }

    /// `n` uniformly spaced probe parameters over the domain. For closed
    /// curves the right endpoint is excluded (it repeats the left one);
    /// for open curves it is included.
    pub fn probes(&self, n: usize) -> Vec<T> {
        let (lo, hi) = self.domain;
        let n = n.max(2);
        let denom = if self.is_closed() { n } else { n - 1 };
        (0..n)
            .map(|i| {
                lo + (hi - lo) * T::from_usize(i).expect("probe index fits in scalar")
                    / T::from_usize(denom).expect("probe count fits in scalar")
            })
            .collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for ParamCurve<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamCurve")
            .field("period", &self.period)
            .field("domain", &self.domain)
            .finish()
    }
}
