//! Ruled surfaces `φ(s, v) = k(s) + v·q(s)` in Minkowski 3-space.
//!
//! A surface is a base curve `k` plus a ruling direction curve `q`
//! (renormalized to Lorentz unit internally). The module computes the
//! moving frame `{q, h, a}` with `h = q̂′/‖q̂′‖` and `a = q̂ × h`, its dual
//! extension along the line complex of rulings, the striction curve, the
//! distribution parameter (drall), and the causal-type classification of
//! the surface.
//!
//! Frames are computed in dual arithmetic throughout: the dual vector
//! `q̃ = q̂ + ε(k × q̂)` encodes the whole ruling line, and the dual frame
//! coefficients `k̄₁, k̄₂` then carry the real structural coefficients in
//! their real parts and the line-moment rates in their dual parts. The
//! structural equations, with `ε_x = sign⟨x, x⟩`, read
//!
//! ```text
//! dq̃ = k̄₁ h̃,   dh̃ = −ε_q ε_h k̄₁ q̃ + k̄₂ ã,   dã = −ε_h ε_a k̄₂ h̃.
//! ```

use crate::curve::ParamCurve;
use crate::dline::DVec3;
use crate::dual::Dual;
use crate::error::{GeomError, Result};
use crate::lorentz::{CausalCharacter, Vec3, NULL_TOL};
use crate::scalar::Real;
use std::fmt;

/// Euclidean size of `q̂′` below which the ruling is stationary
/// (cylindrical point).
pub const CYL_TOL: f64 = 1e-9;

/// Striction-tangent norm below which structural coefficients are
/// reported per input parameter instead of per striction arc length
/// (conical surfaces: the striction curve degenerates to a point).
pub const STRICTION_RATE_TOL: f64 = 1e-9;

/// Residual above which a striction tangent does not decompose as
/// `cosh σ q + sinh σ a` and the `sigma` field is flagged.
pub const SIGMA_RESIDUAL_TOL: f64 = 1e-6;

/// Probe points per period used by classification and invariant checks.
pub const PROBES: usize = 64;

/// Causal type of a non-null-ruled surface, by the characters of the
/// central normal `h` and the ruling `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceType {
    /// `h` spacelike, `q` timelike (timelike surface).
    M1Minus,
    /// `h` and `q` both spacelike (timelike surface).
    M1Plus,
    /// `h` timelike, `q` spacelike (spacelike surface).
    M2Plus,
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SurfaceType::M1Minus => "M1-",
            SurfaceType::M1Plus => "M1+",
            SurfaceType::M2Plus => "M2+",
        };
        f.write_str(s)
    }
}

impl SurfaceType {
    /// Short machine-friendly name.
    pub fn name(self) -> &'static str {
        match self {
            SurfaceType::M1Minus => "M1-",
            SurfaceType::M1Plus => "M1+",
            SurfaceType::M2Plus => "M2+",
        }
    }
}

/// Moving frame and structural coefficients at a parameter value.
///
/// `k1`, `k2` and `sigma` are reported with respect to the arc length of
/// the striction line when it is regular; on conical surfaces (striction
/// tangent numerically zero) they fall back to rates per input parameter
/// and `sigma = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame<T> {
    /// Unit ruling direction.
    pub q: Vec3<T>,
    /// Central normal `q̂′/‖q̂′‖`.
    pub h: Vec3<T>,
    /// Central tangent `q̂ × h`.
    pub a: Vec3<T>,
    /// Natural curvature `‖dq̂/ds_c‖`.
    pub k1: T,
    /// Natural torsion `ε_a ⟨dh/ds_c, a⟩`.
    pub k2: T,
    /// Striction: the striction tangent is `cosh σ q + sinh σ a`.
    pub sigma: T,
    /// Residual of that decomposition; values above
    /// [`SIGMA_RESIDUAL_TOL`] flag a striction tangent outside the
    /// `(q, a)`-plane hyperbolic model.
    pub sigma_residual: T,
}

impl<T: Real> Frame<T> {
    /// `sign⟨q, q⟩`.
    pub fn eps_q(&self) -> T {
        self.q.sign()
    }
    /// `sign⟨h, h⟩`.
    pub fn eps_h(&self) -> T {
        self.h.sign()
    }
    /// `sign⟨a, a⟩`.
    pub fn eps_a(&self) -> T {
        self.a.sign()
    }
}

/// Dual moving frame along the ruling lines: `q̃, h̃, ã` are dual unit
/// vectors; `k1`, `k2` are the dual structural coefficients per input
/// parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualFrame<T> {
    /// Dual ruling line `q̂ + ε(k × q̂)`.
    pub q: DVec3<T>,
    /// Dual central normal `q̃′/‖q̃′‖`.
    pub h: DVec3<T>,
    /// Dual central tangent `q̃ × h̃`.
    pub a: DVec3<T>,
    /// `k̄₁ = ‖q̃′‖` (per input parameter).
    pub k1: Dual<T>,
    /// `k̄₂ = ε_a ⟨h̃′, ã⟩` (per input parameter).
    pub k2: Dual<T>,
}

impl<T: Real> DualFrame<T> {
    /// `sign⟨q, q⟩` of the real part.
    pub fn eps_q(&self) -> T {
        self.q.real.sign()
    }
    /// `sign⟨h, h⟩` of the real part.
    pub fn eps_h(&self) -> T {
        self.h.real.sign()
    }
    /// `sign⟨a, a⟩` of the real part.
    pub fn eps_a(&self) -> T {
        self.a.real.sign()
    }

    /// Exact derivative of `h̃` per the structural equations:
    /// `dh̃ = −ε_q ε_h k̄₁ q̃ + k̄₂ ã`.
    pub fn h_d1(&self) -> DVec3<T> {
        let c = -self.eps_q() * self.eps_h();
        self.q.scale_dual(self.k1.scale(c)) + self.a.scale_dual(self.k2)
    }

    /// Exact derivative of `ã`: `dã = −ε_h ε_a k̄₂ h̃`.
    pub fn a_d1(&self) -> DVec3<T> {
        self.h.scale_dual(self.k2.scale(-self.eps_h() * self.eps_a()))
    }

    /// Instantaneous Pfaffian vector `ψ̃ = k̄₂ q̃ − ε_q k̄₁ ã`, satisfying
    /// `dx̃ = ψ̃ × x̃` for each frame vector.
    pub fn pfaffian(&self) -> DVec3<T> {
        self.q.scale_dual(self.k2) - self.a.scale_dual(self.k1.scale(self.eps_q()))
    }
}

/// Value, first and second derivative of a vector quantity at a point.
#[derive(Debug, Clone, Copy)]
pub struct Jet3<T> {
    pub v: Vec3<T>,
    pub d1: Vec3<T>,
    pub d2: Vec3<T>,
}

/// Value, first and second derivative of a dual vector quantity.
#[derive(Debug, Clone, Copy)]
pub struct DJet3<T> {
    pub v: DVec3<T>,
    pub d1: DVec3<T>,
    pub d2: DVec3<T>,
}

/// Row-major sample grid of surface points, `s` along rows, `v` along
/// columns.
#[derive(Debug, Clone)]
pub struct Mesh<T> {
    /// Number of `s` samples (rows).
    pub s_samples: usize,
    /// Number of `v` samples (columns).
    pub v_samples: usize,
    /// The `s` parameter of each row.
    pub s_values: Vec<T>,
    /// The `v` parameter of each column.
    pub v_values: Vec<T>,
    /// Row-major points.
    pub points: Vec<Vec3<T>>,
}

impl<T: Real> Mesh<T> {
    /// Point at row `i` (s index), column `j` (v index).
    pub fn at(&self, i: usize, j: usize) -> Vec3<T> {
        self.points[i * self.v_samples + j]
    }
}

/// A ruled surface `φ(s, v) = k(s) + v q̂(s)`; `q̂` is the input ruling
/// renormalized to Lorentz unit.
#[derive(Debug, Clone)]
pub struct RuledSurface<T> {
    base: ParamCurve<T>,
    ruling: ParamCurve<T>,
    surface_type: Option<SurfaceType>,
}

impl<T: Real> RuledSurface<T> {
    /// Builds a ruled surface from a base curve and a ruling direction
    /// curve. The ruling must be non-null at all probe points
    /// ([`GeomError::NullDirection`] otherwise). Classification is
    /// attempted eagerly but deferred surfaces (for example cylinders,
    /// where no frame exists) are still constructed; their type query
    /// reports the underlying error.
    pub fn new(base: ParamCurve<T>, ruling: ParamCurve<T>) -> Result<Self> {
        let mut surf = RuledSurface {
            base,
            ruling,
            surface_type: None,
        };
        for s in surf.ruling.probes(PROBES) {
            let u = surf.ruling.value(s);
            if u.norm_sq().abs() < T::c(NULL_TOL) {
                return Err(GeomError::NullDirection);
            }
        }
        surf.surface_type = surf.classify().ok();
        Ok(surf)
    }

    /// Base curve `k`.
    pub fn base(&self) -> &ParamCurve<T> {
        &self.base
    }

    /// A copy of the surface restricted to the open parameter window
    /// `[lo, hi]`: periodicity is dropped and sampling stays inside the
    /// window, while evaluation keeps the original closures. Useful for
    /// analyzing an arc away from degenerate parameters.
    pub fn restricted(&self, lo: T, hi: T) -> Result<Self> {
        RuledSurface::new(
            self.base.clone().with_domain(lo, hi),
            self.ruling.clone().with_domain(lo, hi),
        )
    }

    /// Ruling direction curve as supplied (unnormalized).
    pub fn ruling_curve(&self) -> &ParamCurve<T> {
        &self.ruling
    }

    /// Period when both generating curves are closed with matching
    /// periods.
    pub fn period(&self) -> Option<T> {
        match (self.base.period(), self.ruling.period()) {
            (Some(pb), Some(pr)) if (pb - pr).abs() < T::c(PERIOD_MATCH_TOL) => Some(pb),
            _ => None,
        }
    }

    /// The period, or [`GeomError::NotClosed`] for open surfaces.
    pub fn require_closed(&self) -> Result<T> {
        self.period().ok_or(GeomError::NotClosed)
    }

    /// Sampling domain (one period for closed surfaces).
    pub fn domain(&self) -> (T, T) {
        if let Some(p) = self.period() {
            (T::zero(), p)
        } else {
            self.base.domain()
        }
    }

    /// `n` probe parameters over the domain (endpoint excluded when
    /// closed).
    pub fn probes(&self, n: usize) -> Vec<T> {
        if self.period().is_some() {
            self.base.probes(n)
        } else {
            // Honor the base curve's openness even if the ruling closes.
            let (lo, hi) = self.domain();
            let n = n.max(2);
            (0..n)
                .map(|i| {
                    lo + (hi - lo) * T::from_usize(i).expect("probe index fits in scalar")
                        / T::from_usize(n - 1).expect("probe count fits in scalar")
                })
                .collect()
        }
    }

    /// Surface point `φ(s, v) = k(s) + v q̂(s)`.
    pub fn value(&self, s: T, v: T) -> Result<Vec3<T>> {
        Ok(self.base.value(s) + self.unit_ruling_jet(s)?.v.scale(v))
    }

    /// Unit ruling `q̂(s)`.
    pub fn unit_ruling(&self, s: T) -> Result<Vec3<T>> {
        Ok(self.unit_ruling_jet(s)?.v)
    }

    /// Unit ruling with its first two derivatives.
    pub fn unit_ruling_jet(&self, s: T) -> Result<Jet3<T>> {
        let u = self.ruling.value(s);
        let u1 = self.ruling.d1(s);
        let u2 = self.ruling.d2(s);
        let g = u.norm_sq();
        if g.abs() < T::c(NULL_TOL) {
            return Err(GeomError::NullDirection);
        }
        let eps = if g > T::zero() { T::one() } else { -T::one() };
        let m = (eps * g).sqrt();
        let m1 = eps * u.dot(u1) / m;
        let m2 = (eps * (u1.dot(u1) + u.dot(u2)) - m1 * m1) / m;
        let v = u.scale(T::one() / m);
        let d1 = u1.scale(T::one() / m) - u.scale(m1 / (m * m));
        let d2 = u2.scale(T::one() / m) - u1.scale(T::c(2.0) * m1 / (m * m))
            + u.scale((T::c(2.0) * m1 * m1 - m * m2) / (m * m * m));
        Ok(Jet3 { v, d1, d2 })
    }

    /// Dual ruling line `q̃ = q̂ + ε(k × q̂)` with its first two
    /// derivatives.
    pub fn dual_ruling_jet(&self, s: T) -> Result<DJet3<T>> {
        let q = self.unit_ruling_jet(s)?;
        let k = self.base.value(s);
        let k1 = self.base.d1(s);
        let k2 = self.base.d2(s);
        Ok(DJet3 {
            v: DVec3::new(q.v, k.cross(q.v)),
            d1: DVec3::new(q.d1, k1.cross(q.v) + k.cross(q.d1)),
            d2: DVec3::new(
                q.d2,
                k2.cross(q.v) + k1.cross(q.d1).scale(T::c(2.0)) + k.cross(q.d2),
            ),
        })
    }

    /// Dual moving frame with dual structural coefficients (rates per
    /// input parameter).
    pub fn dual_frame_at(&self, s: T) -> Result<DualFrame<T>> {
        frame_of_dual_jets(&self.dual_ruling_jet(s)?, s)
    }

    /// Striction point `c(s) = k − (⟨q̂′, k′⟩/⟨q̂′, q̂′⟩) q̂`.
    pub fn striction_point(&self, s: T) -> Result<Vec3<T>> {
        Ok(self.striction_jet(s)?.0)
    }

    /// Striction point and its derivative.
    pub fn striction_jet(&self, s: T) -> Result<(Vec3<T>, Vec3<T>)> {
        let q = self.unit_ruling_jet(s)?;
        let comp = q.d1.comp_sq();
        if comp < T::c(CYL_TOL * CYL_TOL) {
            return Err(GeomError::CylindricalPoint { s: s.as_f64() });
        }
        let d = q.d1.norm_sq();
        if d.abs() < T::c(NULL_TOL) {
            return Err(GeomError::NullCentralNormal { s: s.as_f64() });
        }
        let k = self.base.value(s);
        let k1 = self.base.d1(s);
        let k2 = self.base.d2(s);
        let n = q.d1.dot(k1);
        let lam = n / d;
        let n1 = q.d2.dot(k1) + q.d1.dot(k2);
        let d1 = T::c(2.0) * q.d1.dot(q.d2);
        let lam1 = (n1 - lam * d1) / d;
        let c = k - q.v.scale(lam);
        let c1 = k1 - q.v.scale(lam1) - q.d1.scale(lam);
        Ok((c, c1))
    }

    /// Real moving frame with coefficients per striction arc length (per
    /// input parameter on conical surfaces, where the striction curve is
    /// a point).
    pub fn frame_at(&self, s: T) -> Result<Frame<T>> {
        let df = self.dual_frame_at(s)?;
        let (q, h, a) = (df.q.real, df.h.real, df.a.real);
        let (_, c1) = self.striction_jet(s)?;
        let rate = c1.norm();
        if rate < T::c(STRICTION_RATE_TOL) {
            return Ok(Frame {
                q,
                h,
                a,
                k1: df.k1.real,
                k2: df.k2.real,
                sigma: T::zero(),
                sigma_residual: T::zero(),
            });
        }
        let t = c1.scale(T::one() / rate);
        // Decompose the unit striction tangent as cosh σ q + sinh σ a;
        // with ⟨a, a⟩ = ε_a this gives sinh σ = ε_a ⟨t, a⟩.
        let sinh_sigma = t.dot(a) * a.sign();
        let sigma = sinh_sigma.asinh();
        let rec = q.scale(sigma.cosh()) + a.scale(sigma.sinh());
        let sigma_residual = (t - rec).comp_sq().sqrt();
        Ok(Frame {
            q,
            h,
            a,
            k1: df.k1.real / rate,
            k2: df.k2.real / rate,
            sigma,
            sigma_residual,
        })
    }

    /// Distribution parameter (drall)
    /// `δ = det(k′, q̂, q̂′)/⟨q̂′, q̂′⟩`; the surface is developable iff it
    /// vanishes identically.
    pub fn drall(&self, s: T) -> Result<T> {
        let q = self.unit_ruling_jet(s)?;
        let comp = q.d1.comp_sq();
        if comp < T::c(CYL_TOL * CYL_TOL) {
            return Err(GeomError::CylindricalPoint { s: s.as_f64() });
        }
        let d = q.d1.norm_sq();
        if d.abs() < T::c(NULL_TOL) {
            return Err(GeomError::NullCentralNormal { s: s.as_f64() });
        }
        Ok(Vec3::triple(self.base.d1(s), q.v, q.d1) / d)
    }

    /// Classifies the surface by the causal characters of `(h, q)` at
    /// [`PROBES`] points: spacelike `h` with timelike `q` is `M1-`, both
    /// spacelike is `M1+`, timelike `h` with spacelike `q` is `M2+`.
    pub fn classify(&self) -> Result<SurfaceType> {
        let mut found: Option<SurfaceType> = None;
        for s in self.probes(PROBES) {
            let df = self.dual_frame_at(s)?;
            let cq = df.q.real.causal_character();
            let ch = df.h.real.causal_character();
            let t = match (ch, cq) {
                (CausalCharacter::Spacelike, CausalCharacter::Timelike) => SurfaceType::M1Minus,
                (CausalCharacter::Spacelike, CausalCharacter::Spacelike) => SurfaceType::M1Plus,
                (CausalCharacter::Timelike, CausalCharacter::Spacelike) => SurfaceType::M2Plus,
                _ => {
                    return Err(GeomError::WrongType {
                        expected: "one of M1-, M1+, M2+",
                        found: "frame outside the classification",
                    })
                }
            };
            match found {
                None => found = Some(t),
                Some(prev) if prev != t => return Err(GeomError::MixedCausalType),
                _ => {}
            }
        }
        found.ok_or(GeomError::MixedCausalType)
    }

    /// Cached surface type (classified at construction when possible).
    pub fn surface_type(&self) -> Result<SurfaceType> {
        match self.surface_type {
            Some(t) => Ok(t),
            None => self.classify(),
        }
    }

    /// Row-major grid of `φ(sᵢ, vⱼ)`; `s` spans the domain (endpoint
    /// excluded when closed), `v` spans `v_range` inclusively.
    pub fn mesh(&self, s_samples: usize, v_range: (T, T), v_samples: usize) -> Result<Mesh<T>> {
        let s_samples = s_samples.max(2);
        let v_samples = v_samples.max(2);
        let s_values = self.probes(s_samples);
        let v_values: Vec<T> = (0..v_samples)
            .map(|j| {
                v_range.0
                    + (v_range.1 - v_range.0)
                        * T::from_usize(j).expect("sample index fits in scalar")
                        / T::from_usize(v_samples - 1).expect("sample count fits in scalar")
            })
            .collect();
        let mut points = Vec::with_capacity(s_samples * v_samples);
        for &s in &s_values {
            let k = self.base.value(s);
            let q = self.unit_ruling_jet(s)?.v;
            for &v in &v_values {
                points.push(k + q.scale(v));
            }
        }
        Ok(Mesh {
            s_samples,
            v_samples,
            s_values,
            v_values,
            points,
        })
    }
}

/// Relative tolerance for matching base/ruling periods.
pub const PERIOD_MATCH_TOL: f64 = 1e-9;

/// Moving frame of a dual-unit curve from its first two derivatives:
/// `h̃ = x̃′/‖x̃′‖`, `ã = x̃ × h̃`, with the dual structural coefficients
/// `k̄₁ = ‖x̃′‖` and `k̄₂ = ε_a ⟨h̃′, ã⟩` (rates per input parameter).
/// Shared by surface frames, central-normal trajectories and offset
/// ruling families.
pub fn frame_of_dual_jets<T: Real>(jet: &DJet3<T>, s: T) -> Result<DualFrame<T>> {
    let xd = jet.d1;
    // Distinguish a stationary line (cylindrical) from a null derivative
    // direction.
    let comp = xd.real.comp_sq();
    if comp < T::c(CYL_TOL * CYL_TOL) {
        return Err(GeomError::CylindricalPoint { s: s.as_f64() });
    }
    let g = xd.real.norm_sq();
    if g.abs() < T::c(NULL_TOL) {
        return Err(GeomError::NullFrameVector { s: s.as_f64() });
    }
    let k1 = xd.dnorm()?;
    let h = xd.scale_dual(Dual::one().div(k1)?);
    let a = jet.v.dcross(h);
    if a.real.causal_character() == CausalCharacter::Null {
        return Err(GeomError::NullFrameVector { s: s.as_f64() });
    }
    // k̄₁' from ⟨x̃', x̃'⟩ = ε_h k̄₁²; then h̃' by the quotient rule and
    // k̄₂ = ε_a ⟨h̃', ã⟩.
    let eps_h = if g > T::zero() { T::one() } else { -T::one() };
    let k1_d1 = jet.d2.dinner(xd).scale(eps_h).div(k1)?;
    let h_d1 = jet.d2.scale_dual(Dual::one().div(k1)?) - xd.scale_dual(k1_d1.div(k1 * k1)?);
    let eps_a = a.real.sign();
    let k2 = h_d1.dinner(a).scale(eps_a);
    Ok(DualFrame {
        q: jet.v,
        h,
        a,
        k1,
        k2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const C: f64 = 0.5;

    fn w() -> f64 {
        (1.0 - C * C).sqrt()
    }

    /// Closed skew surface: circular base with rulings tilted out of the
    /// normal plane by a constant timelike component.
    fn skew_circle() -> RuledSurface<f64> {
        let base = ParamCurve::new(
            |s: f64| Vec3::new(0.0, s.cos(), s.sin()),
            |s: f64| Vec3::new(0.0, -s.sin(), s.cos()),
            |s: f64| Vec3::new(0.0, -s.cos(), -s.sin()),
        )
        .with_period(2.0 * PI)
        .unwrap();
        let ruling = ParamCurve::new(
            |s: f64| Vec3::new(C, -s.sin(), s.cos()),
            |s: f64| Vec3::new(0.0, -s.cos(), -s.sin()),
            |s: f64| Vec3::new(0.0, s.sin(), -s.cos()),
        )
        .with_period(2.0 * PI)
        .unwrap();
        RuledSurface::new(base, ruling).unwrap()
    }

    fn cone() -> RuledSurface<f64> {
        let base = ParamCurve::new(
            |_s: f64| Vec3::zero(),
            |_s: f64| Vec3::zero(),
            |_s: f64| Vec3::zero(),
        )
        .with_period(2.0 * PI)
        .unwrap();
        let ruling = ParamCurve::new(
            |s: f64| Vec3::new(C, -s.sin(), s.cos()),
            |s: f64| Vec3::new(0.0, -s.cos(), -s.sin()),
            |s: f64| Vec3::new(0.0, s.sin(), -s.cos()),
        )
        .with_period(2.0 * PI)
        .unwrap();
        RuledSurface::new(base, ruling).unwrap()
    }

    fn cylinder() -> RuledSurface<f64> {
        let base = ParamCurve::new(
            |s: f64| Vec3::new(0.0, s.cos(), s.sin()),
            |s: f64| Vec3::new(0.0, -s.sin(), s.cos()),
            |s: f64| Vec3::new(0.0, -s.cos(), -s.sin()),
        )
        .with_period(2.0 * PI)
        .unwrap();
        let ruling = ParamCurve::new(
            |_s: f64| Vec3::new(0.0, 0.0, 1.0),
            |_s: f64| Vec3::zero(),
            |_s: f64| Vec3::zero(),
        )
        .with_period(2.0 * PI)
        .unwrap();
        RuledSurface::new(base, ruling).unwrap()
    }

    #[test]
    fn frame_matches_closed_form_on_the_skew_circle() {
        let surf = skew_circle();
        for s in surf.probes(17) {
            let f = surf.frame_at(s).unwrap();
            let expect_h = Vec3::new(0.0, -s.cos(), -s.sin());
            let expect_q = Vec3::new(C, -s.sin(), s.cos()).scale(1.0 / w());
            assert!((f.h - expect_h).comp_sq().sqrt() < 1e-12, "s = {s}");
            assert!((f.q - expect_q).comp_sq().sqrt() < 1e-12, "s = {s}");
        }
    }

    #[test]
    fn frame_is_lorentz_orthonormal() {
        let surf = skew_circle();
        for s in surf.probes(PROBES) {
            let f = surf.frame_at(s).unwrap();
            assert!(f.q.dot(f.h).abs() < 1e-9);
            assert!(f.q.dot(f.a).abs() < 1e-9);
            assert!(f.h.dot(f.a).abs() < 1e-9);
            assert!((f.q.norm_sq().abs() - 1.0).abs() < 1e-9);
            assert!((f.h.norm_sq().abs() - 1.0).abs() < 1e-9);
            assert!((f.a.norm_sq().abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn skew_circle_structural_coefficients() {
        // Striction arc length equals s here, so k₁ = 1/w, k₂ = c/w,
        // sinh σ = −c/w.
        let surf = skew_circle();
        let f = surf.frame_at(1.3).unwrap();
        assert!((f.k1 - 1.0 / w()).abs() < 1e-10);
        assert!((f.k2 - C / w()).abs() < 1e-10);
        assert!((f.sigma.sinh() + C / w()).abs() < 1e-10);
        assert!(f.sigma_residual < 1e-10);
    }

    #[test]
    fn striction_of_the_skew_circle_is_its_base() {
        let surf = skew_circle();
        for s in surf.probes(100) {
            let c = surf.striction_point(s).unwrap();
            assert!((c - surf.base().value(s)).comp_sq().sqrt() < 1e-12);
        }
    }

    #[test]
    fn striction_tangent_is_orthogonal_to_ruling_derivative() {
        let surf = skew_circle();
        for s in surf.probes(32) {
            let (_, c1) = surf.striction_jet(s).unwrap();
            let q1 = surf.unit_ruling_jet(s).unwrap().d1;
            assert!(q1.dot(c1).abs() < 1e-8);
        }
    }

    #[test]
    fn drall_values() {
        let surf = skew_circle();
        for s in surf.probes(16) {
            assert!((surf.drall(s).unwrap() - (-C)).abs() < 1e-10, "s = {s}");
        }
        let cone = cone();
        for s in cone.probes(16) {
            assert!(cone.drall(s).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn tangent_developable_has_zero_drall() {
        // Ruling = base tangent makes the first and third determinant
        // rows proportional.
        let base = ParamCurve::new(
            |s: f64| Vec3::new(0.15 * (2.0 * s).sin(), s.cos(), s.sin()),
            |s: f64| Vec3::new(0.3 * (2.0 * s).cos(), -s.sin(), s.cos()),
            |s: f64| Vec3::new(-0.6 * (2.0 * s).sin(), -s.cos(), -s.sin()),
        )
        .with_period(2.0 * PI)
        .unwrap();
        // Ruling = base tangent (value/d1/d2 are the base's d1/d2/d3).
        let ruling = ParamCurve::new(
            |s: f64| Vec3::new(0.3 * (2.0 * s).cos(), -s.sin(), s.cos()),
            |s: f64| Vec3::new(-0.6 * (2.0 * s).sin(), -s.cos(), -s.sin()),
            |s: f64| Vec3::new(-1.2 * (2.0 * s).cos(), s.sin(), -s.cos()),
        )
        .with_period(2.0 * PI)
        .unwrap();
        let surf = RuledSurface::new(base, ruling).unwrap();
        for s in surf.probes(16) {
            assert!(surf.drall(s).unwrap().abs() < 1e-9, "s = {s}");
        }
    }

    #[test]
    fn cone_striction_degenerates_to_apex_with_zero_sigma() {
        let surf = cone();
        let c = surf.striction_point(0.9).unwrap();
        assert!(c.comp_sq().sqrt() < 1e-12);
        let f = surf.frame_at(0.9).unwrap();
        assert_eq!(f.sigma, 0.0);
    }

    #[test]
    fn cylinder_reports_cylindrical_point() {
        let surf = cylinder();
        assert!(matches!(
            surf.striction_point(0.3),
            Err(GeomError::CylindricalPoint { .. })
        ));
        assert!(matches!(
            surf.frame_at(0.3),
            Err(GeomError::CylindricalPoint { .. })
        ));
        assert!(matches!(
            surf.surface_type(),
            Err(GeomError::CylindricalPoint { .. })
        ));
    }

    #[test]
    fn classification_covers_all_three_types() {
        assert_eq!(skew_circle().surface_type().unwrap(), SurfaceType::M1Plus);

        // Timelike ruling sweeping the hyperboloid: q timelike, h spacelike.
        let r = 0.8f64;
        let ruling = ParamCurve::new(
            move |s: f64| Vec3::new(r.cosh(), r.sinh() * s.cos(), r.sinh() * s.sin()),
            move |s: f64| Vec3::new(0.0, -r.sinh() * s.sin(), r.sinh() * s.cos()),
            move |s: f64| Vec3::new(0.0, -r.sinh() * s.cos(), -r.sinh() * s.sin()),
        )
        .with_period(2.0 * PI)
        .unwrap();
        let base = ParamCurve::new(
            |s: f64| Vec3::new(0.0, s.cos(), s.sin()),
            |s: f64| Vec3::new(0.0, -s.sin(), s.cos()),
            |s: f64| Vec3::new(0.0, -s.cos(), -s.sin()),
        )
        .with_period(2.0 * PI)
        .unwrap();
        let m1m = RuledSurface::new(base, ruling).unwrap();
        assert_eq!(m1m.surface_type().unwrap(), SurfaceType::M1Minus);

        // Boost-parametrized spacelike ruling: q spacelike, h timelike.
        let ruling = ParamCurve::new(
            |s: f64| Vec3::new(s.sinh(), s.cosh(), 0.0),
            |s: f64| Vec3::new(s.cosh(), s.sinh(), 0.0),
            |s: f64| Vec3::new(s.sinh(), s.cosh(), 0.0),
        );
        let base = ParamCurve::new(
            |s: f64| Vec3::new(0.0, 0.0, s),
            |_s: f64| Vec3::new(0.0, 0.0, 1.0),
            |_s: f64| Vec3::zero(),
        );
        let m2p = RuledSurface::new(base, ruling).unwrap();
        assert_eq!(m2p.surface_type().unwrap(), SurfaceType::M2Plus);
    }

    #[test]
    fn dual_frame_vectors_are_dual_unit_and_orthogonal() {
        let surf = skew_circle();
        for s in surf.probes(32) {
            let df = surf.dual_frame_at(s).unwrap();
            assert!(df.q.unit_defect() < 1e-9);
            assert!(df.h.unit_defect() < 1e-9);
            assert!(df.a.unit_defect() < 1e-9);
            let qh = df.q.dinner(df.h);
            assert!(qh.real.abs() < 1e-9 && qh.dual.abs() < 1e-9);
            let qa = df.q.dinner(df.a);
            assert!(qa.real.abs() < 1e-9 && qa.dual.abs() < 1e-9);
            let ha = df.h.dinner(df.a);
            assert!(ha.real.abs() < 1e-9 && ha.dual.abs() < 1e-9);
        }
    }

    #[test]
    fn skew_circle_dual_frame_has_zero_dual_part_on_h() {
        // The central normal lines of this surface pass through the
        // origin, so h̃ has vanishing moment.
        let surf = skew_circle();
        for s in surf.probes(16) {
            let df = surf.dual_frame_at(s).unwrap();
            assert!(df.h.dual.comp_sq().sqrt() < 1e-10);
        }
    }

    #[test]
    fn pfaffian_reproduces_frame_derivatives() {
        let surf = skew_circle();
        let df = surf.dual_frame_at(0.7).unwrap();
        let psi = df.pfaffian();
        let dq = surf.dual_ruling_jet(0.7).unwrap().d1;
        let err = psi.dcross(df.q) - dq;
        assert!(err.real.comp_sq().sqrt() < 1e-9);
        assert!(err.dual.comp_sq().sqrt() < 1e-9);
        let dh = psi.dcross(df.h) - df.h_d1();
        assert!(dh.real.comp_sq().sqrt() < 1e-9);
        assert!(dh.dual.comp_sq().sqrt() < 1e-9);
        let da = psi.dcross(df.a) - df.a_d1();
        assert!(da.real.comp_sq().sqrt() < 1e-9);
        assert!(da.dual.comp_sq().sqrt() < 1e-9);
    }

    #[test]
    fn mesh_grid_is_row_major_and_hits_corners() {
        let surf = cylinder();
        let m = surf.mesh(2, (0.0, 1.0), 2).unwrap();
        // s ∈ {0, π} (closed domain, endpoint excluded), v ∈ {0, 1}.
        assert_eq!(m.s_samples, 2);
        assert!((m.at(0, 0) - Vec3::new(0.0, 1.0, 0.0)).comp_sq().sqrt() < 1e-12);
        assert!((m.at(0, 1) - Vec3::new(0.0, 1.0, 1.0)).comp_sq().sqrt() < 1e-12);
        assert!((m.at(1, 0) - Vec3::new(0.0, -1.0, 0.0)).comp_sq().sqrt() < 1e-12);
        assert!((m.at(1, 1) - Vec3::new(0.0, -1.0, 1.0)).comp_sq().sqrt() < 1e-12);
    }

    #[test]
    fn degenerate_v_range_collapses_to_base() {
        let surf = skew_circle();
        let m = surf.mesh(8, (0.0, 0.0), 2).unwrap();
        for (i, &s) in m.s_values.iter().enumerate() {
            assert!((m.at(i, 0) - surf.base().value(s)).comp_sq().sqrt() < 1e-12);
            assert!((m.at(i, 1) - surf.base().value(s)).comp_sq().sqrt() < 1e-12);
        }
    }

    #[test]
    fn null_rulings_are_rejected_at_construction() {
        let base = ParamCurve::new(
            |_s: f64| Vec3::zero(),
            |_s: f64| Vec3::zero(),
            |_s: f64| Vec3::zero(),
        );
        let ruling = ParamCurve::new(
            |s: f64| Vec3::new(1.0, s.cos(), s.sin()),
            |s: f64| Vec3::new(0.0, -s.sin(), s.cos()),
            |s: f64| Vec3::new(0.0, -s.cos(), -s.sin()),
        );
        assert!(matches!(
            RuledSurface::new(base, ruling),
            Err(GeomError::NullDirection)
        ));
    }
}
