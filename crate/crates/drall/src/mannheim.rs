//! Offset surfaces whose rulings make a prescribed dual angle with the
//! rulings of a base surface, plus verifiers for the relations between
//! base and offset invariants.
//!
//! Given a base surface with dual frame `{q̃, h̃, ã}` and a dual offset
//! angle `θ̄ = θ + εθ*`, the offset ruling family is
//! `q̃₁ = cos θ̄ q̃ + sin θ̄ h̃`: each offset line is turned by `θ` about
//! the common perpendicular (the central tangent `ã`) and shifted `θ*`
//! along it. The offset surface is realized through the base curve
//! `β = c − θ* ā` on the striction line translated against the central
//! tangent, which is exactly where the line of `q̃₁` passes.
//!
//! The verifiers compare quadrature values computed independently on
//! both surfaces. Rows marked *enforced* must hold for every valid
//! input; the remaining rows document alternate conventions and are
//! reported without aborting.

use std::fmt;
use std::sync::Arc;

use crate::curve::ParamCurve;
use crate::dline::DVec3;
use crate::dual::Dual;
use crate::error::{GeomError, Result};
use crate::invariants::{self, h_trajectory_invariants, integrate_checked};
use crate::lorentz::Vec3;
use crate::quad::Cumulative;
use crate::scalar::Real;
use crate::surface::{DJet3, DualFrame, RuledSurface, SurfaceType, PROBES};

/// Tolerance for the enforced verification rows.
pub const VERIFY_TOL: f64 = 1e-6;

/// Dual-orthonormality tolerance for frames handed to the offset map.
pub const ORTHONORMAL_TOL: f64 = 1e-9;

/// A surface counts as developable when its drall stays below this.
pub const DEVELOPABLE_TOL: f64 = 1e-8;

/// `|sin θ|` floor below which the developability closed forms blow up.
pub const RIGHT_ANGLE_TOL: f64 = 1e-9;

/// Central-difference step for second derivatives of constructed data.
const JET_FD_STEP: f64 = 1e-6;

/// Offset angle as a function of the base parameter: either one constant
/// dual angle or an angle law with its rate.
#[derive(Clone)]
pub enum OffsetAngle<T> {
    /// The same dual angle for every ruling.
    Constant(Dual<T>),
    /// Parameter-dependent dual angle with its first derivative.
    Variable {
        /// `θ̄(s)`.
        value: Arc<dyn Fn(T) -> Dual<T> + Send + Sync>,
        /// `θ̄′(s)`.
        rate: Arc<dyn Fn(T) -> Dual<T> + Send + Sync>,
    },
}

impl<T: Real> OffsetAngle<T> {
    /// Constant offset angle `θ + εθ*`.
    pub fn constant(theta: Dual<T>) -> Self {
        OffsetAngle::Constant(theta)
    }

    /// Angle law from value and rate functions.
    pub fn variable(
        value: impl Fn(T) -> Dual<T> + Send + Sync + 'static,
        rate: impl Fn(T) -> Dual<T> + Send + Sync + 'static,
    ) -> Self {
        OffsetAngle::Variable {
            value: Arc::new(value),
            rate: Arc::new(rate),
        }
    }

    /// `θ̄(s)`.
    pub fn eval(&self, s: T) -> Dual<T> {
        match self {
            OffsetAngle::Constant(d) => *d,
            OffsetAngle::Variable { value, .. } => value(s),
        }
    }

    /// `θ̄′(s)`.
    pub fn rate(&self, s: T) -> Dual<T> {
        match self {
            OffsetAngle::Constant(_) => Dual::zero(),
            OffsetAngle::Variable { rate, .. } => rate(s),
        }
    }

    /// Whether the angle is a single constant.
    pub fn is_constant(&self) -> bool {
        matches!(self, OffsetAngle::Constant(_))
    }

    /// The constant value, or an error for angle laws.
    pub fn as_constant(&self) -> Result<Dual<T>> {
        match self {
            OffsetAngle::Constant(d) => Ok(*d),
            OffsetAngle::Variable { .. } => Err(GeomError::ConditionNotMet {
                what: "a constant offset angle is required",
            }),
        }
    }

    /// Same rotation angle with the offset distance negated: the line is
    /// shifted toward `+ã` instead of `−ã`. The printed closed forms for
    /// developable offsets measure the distance in this orientation.
    pub fn with_negated_distance(&self) -> Self {
        match self {
            OffsetAngle::Constant(d) => OffsetAngle::Constant(Dual::new(d.real, -d.dual)),
            OffsetAngle::Variable { value, rate } => {
                let (v, r) = (value.clone(), rate.clone());
                OffsetAngle::Variable {
                    value: Arc::new(move |s| {
                        let d = v(s);
                        Dual::new(d.real, -d.dual)
                    }),
                    rate: Arc::new(move |s| {
                        let d = r(s);
                        Dual::new(d.real, -d.dual)
                    }),
                }
            }
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for OffsetAngle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OffsetAngle::Constant(d) => f.debug_tuple("Constant").field(d).finish(),
            OffsetAngle::Variable { .. } => f.write_str("Variable { .. }"),
        }
    }
}

/// The offset frame `{q̃₁, h̃₁, ã₁}` attached to an offset ruling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OffsetFrame<T> {
    /// Offset ruling `q̃₁ = cos θ̄ q̃ + sin θ̄ h̃`.
    pub q1: DVec3<T>,
    /// Offset central normal `h̃₁ = ã`.
    pub h1: DVec3<T>,
    /// Offset central tangent `ã₁ = sin θ̄ q̃ − cos θ̄ h̃`.
    pub a1: DVec3<T>,
}

fn orthonormal_defect<T: Real>(frame: &DualFrame<T>) -> T {
    let pairs = [
        frame.q.dinner(frame.q) - Dual::from_real(frame.eps_q()),
        frame.h.dinner(frame.h) - Dual::from_real(frame.eps_h()),
        frame.a.dinner(frame.a) - Dual::from_real(frame.eps_a()),
        frame.q.dinner(frame.h),
        frame.q.dinner(frame.a),
        frame.h.dinner(frame.a),
    ];
    let mut defect = T::zero();
    for p in pairs {
        defect = defect.max(p.real.abs()).max(p.dual.abs());
    }
    defect
}

/// Rotates the base frame by the dual angle `θ̄` about the central
/// tangent: `q̃₁ = cos θ̄ q̃ + sin θ̄ h̃`, `h̃₁ = ã`,
/// `ã₁ = sin θ̄ q̃ − cos θ̄ h̃`. The input frame must be dual-orthonormal.
pub fn offset_frame<T: Real>(frame: &DualFrame<T>, theta: Dual<T>) -> Result<OffsetFrame<T>> {
    let defect = orthonormal_defect(frame);
    if defect > T::c(ORTHONORMAL_TOL) {
        return Err(GeomError::NotOrthonormal {
            defect: defect.as_f64(),
        });
    }
    let (c, s) = (theta.cos(), theta.sin());
    Ok(OffsetFrame {
        q1: frame.q.scale_dual(c) + frame.h.scale_dual(s),
        h1: frame.a,
        a1: frame.q.scale_dual(s) - frame.h.scale_dual(c),
    })
}

fn require_m1plus<T: Real>(base: &RuledSurface<T>) -> Result<()> {
    let t = base.surface_type()?;
    if t != SurfaceType::M1Plus {
        return Err(GeomError::WrongType {
            expected: SurfaceType::M1Plus.name(),
            found: t.name(),
        });
    }
    Ok(())
}

const VALID_MSG: &str = "frame data available on the domain validated at construction";

/// Jet function of the offset ruling trajectory `q̃₁(s)`: value and
/// first derivative are exact by the structural equations; the second
/// derivative is a central difference of the first.
pub fn offset_trajectory_jets<T: Real>(
    base: &RuledSurface<T>,
    angle: &OffsetAngle<T>,
) -> impl Fn(T) -> Result<DJet3<T>> + Send + Sync + 'static {
    let b = base.clone();
    let ang = angle.clone();
    let one = Arc::new(move |s: T| -> Result<(DVec3<T>, DVec3<T>)> {
        let fr = b.dual_frame_at(s)?;
        let th = ang.eval(s);
        let thr = ang.rate(s);
        let (co, sn) = (th.cos(), th.sin());
        let v = fr.q.scale_dual(co) + fr.h.scale_dual(sn);
        // q̃₁′ = −θ̄′ sin θ̄ q̃ + (cos θ̄ k̄₁ + θ̄′ cos θ̄ · 1) h̃ + sin θ̄ h̃′,
        // with q̃′ = k̄₁ h̃ and h̃′ from the structural equations.
        let d1 = fr.q.scale_dual(-(thr * sn))
            + fr.h.scale_dual(co * fr.k1 + thr * co)
            + fr.h_d1().scale_dual(sn);
        Ok((v, d1))
    });
    move |s: T| {
        let (v, d1) = one(s)?;
        let step = T::c(JET_FD_STEP);
        let (_, d1p) = one(s + step)?;
        let (_, d1m) = one(s - step)?;
        let d2 = (d1p - d1m).scale(T::one() / (T::c(2.0) * step));
        Ok(DJet3 { v, d1, d2 })
    }
}

/// Constructs the offset surface of an `M1+` base: base curve
/// `β = c − θ* ā` on the translated striction line, rulings along the
/// real part of `q̃₁`. The result is closed when the base is closed and
/// the angle law is periodic.
pub fn offset_surface<T: Real>(
    base: &RuledSurface<T>,
    angle: &OffsetAngle<T>,
) -> Result<RuledSurface<T>> {
    require_m1plus(base)?;
    // Validate the frame and striction data once so the curve closures
    // below cannot fail on the sampling domain.
    for s in base.probes(PROBES) {
        base.dual_frame_at(s)?;
        base.striction_jet(s)?;
    }
    let period = match (base.period(), angle) {
        (Some(p), OffsetAngle::Constant(_)) => Some(p),
        (Some(p), OffsetAngle::Variable { value, .. }) => {
            let (lo, _) = base.domain();
            let d = value(lo) - value(lo + p);
            if d.real.abs() < T::c(crate::curve::PERIOD_TOL)
                && d.dual.abs() < T::c(crate::curve::PERIOD_TOL)
            {
                Some(p)
            } else {
                None
            }
        }
        (None, _) => None,
    };

    let (b, ang) = (base.clone(), angle.clone());
    let beta_value = Arc::new(move |s: T| -> Vec3<T> {
        let fr = b.dual_frame_at(s).expect(VALID_MSG);
        let c = b.striction_point(s).expect(VALID_MSG);
        c - fr.a.real.scale(ang.eval(s).dual)
    });
    let (b, ang) = (base.clone(), angle.clone());
    let beta_d1 = Arc::new(move |s: T| -> Vec3<T> {
        let fr = b.dual_frame_at(s).expect(VALID_MSG);
        let (_, c1) = b.striction_jet(s).expect(VALID_MSG);
        let th = ang.eval(s);
        let thr = ang.rate(s);
        c1 - fr.a.real.scale(thr.dual) - fr.a_d1().real.scale(th.dual)
    });
    let d1 = beta_d1.clone();
    let beta_d2 = move |s: T| -> Vec3<T> {
        let step = T::c(JET_FD_STEP);
        (d1(s + step) - d1(s - step)).scale(T::one() / (T::c(2.0) * step))
    };
    let bv = beta_value.clone();
    let bd = beta_d1.clone();
    let mut beta = ParamCurve::new(move |s| bv(s), move |s| bd(s), beta_d2);

    let (b, ang) = (base.clone(), angle.clone());
    let ruling_value = Arc::new(move |s: T| -> Vec3<T> {
        let fr = b.dual_frame_at(s).expect(VALID_MSG);
        let th = ang.eval(s).real;
        fr.q.real.scale(th.cos()) + fr.h.real.scale(th.sin())
    });
    let (b, ang) = (base.clone(), angle.clone());
    let ruling_d1 = Arc::new(move |s: T| -> Vec3<T> {
        let fr = b.dual_frame_at(s).expect(VALID_MSG);
        let th = ang.eval(s).real;
        let thr = ang.rate(s).real;
        let q_d1 = fr.h.real.scale(fr.k1.real);
        let h_d1 = fr.h_d1().real;
        fr.q.real.scale(-thr * th.sin())
            + q_d1.scale(th.cos())
            + fr.h.real.scale(thr * th.cos())
            + h_d1.scale(th.sin())
    });
    let d1 = ruling_d1.clone();
    let ruling_d2 = move |s: T| -> Vec3<T> {
        let step = T::c(JET_FD_STEP);
        (d1(s + step) - d1(s - step)).scale(T::one() / (T::c(2.0) * step))
    };
    let rv = ruling_value.clone();
    let rd = ruling_d1.clone();
    let mut ruling = ParamCurve::new(move |s| rv(s), move |s| rd(s), ruling_d2);

    if let Some(p) = period {
        beta = beta.with_period(p)?;
        ruling = ruling.with_period(p)?;
    } else {
        let dom = base.domain();
        beta = beta.with_domain(dom.0, dom.1);
        ruling = ruling.with_domain(dom.0, dom.1);
    }
    RuledSurface::new(beta, ruling)
}

/// A base surface together with one of its offset surfaces and the
/// offset angle connecting them.
#[derive(Debug, Clone)]
pub struct MannheimPair<T> {
    base: RuledSurface<T>,
    offset: RuledSurface<T>,
    angle: OffsetAngle<T>,
}

impl<T: Real> MannheimPair<T> {
    /// Builds the offset surface of `base` under `angle` and keeps the
    /// triple together.
    pub fn new(base: RuledSurface<T>, angle: OffsetAngle<T>) -> Result<Self> {
        let offset = offset_surface(&base, &angle)?;
        Ok(MannheimPair {
            base,
            offset,
            angle,
        })
    }

    /// The base surface.
    pub fn base_surface(&self) -> &RuledSurface<T> {
        &self.base
    }

    /// The constructed offset surface.
    pub fn offset_surface(&self) -> &RuledSurface<T> {
        &self.offset
    }

    /// The offset angle.
    pub fn offset_angle(&self) -> &OffsetAngle<T> {
        &self.angle
    }

    /// Offset frame at `s`, from the base frame and the angle there.
    pub fn offset_frame_at(&self, s: T) -> Result<OffsetFrame<T>> {
        offset_frame(&self.base.dual_frame_at(s)?, self.angle.eval(s))
    }

    /// Jet function of the offset ruling trajectory.
    pub fn trajectory_jets(&self) -> impl Fn(T) -> Result<DJet3<T>> + Send + Sync + 'static {
        offset_trajectory_jets(&self.base, &self.angle)
    }
}

/// Total turning of the ruling family over one period: `−∮ k̄₁ ds`. An
/// offset whose angle law has this total per period keeps a fixed dual
/// angle to a parallel-transported direction.
pub fn offset_angle_from_curvature<T: Real>(
    base: &RuledSurface<T>,
    nodes: usize,
) -> Result<Dual<T>> {
    let period = base.require_closed()?;
    let (lo, _) = base.domain();
    integrate_checked(
        |s| Ok(-base.dual_frame_at(s)?.k1),
        lo,
        lo + period,
        nodes,
    )
}

/// The angle law `θ̄(s) = θ̄₀ − ∫ k̄₁`, which turns the offset rulings so
/// that their derivative stays parallel to the central tangent. The
/// prefix integral is tabulated over `cells` grid cells.
pub fn offset_angle_law<T: Real>(
    base: &RuledSurface<T>,
    theta0: Dual<T>,
    cells: usize,
) -> Result<OffsetAngle<T>> {
    let (lo, hi) = match base.period() {
        Some(p) => (T::zero(), p),
        None => base.domain(),
    };
    for s in base.probes(PROBES) {
        base.dual_frame_at(s)?;
    }
    let b = base.clone();
    let prefix = Arc::new(Cumulative::new(
        move |s| b.dual_frame_at(s).expect(VALID_MSG).k1,
        lo,
        hi,
        cells,
    ));
    let b = base.clone();
    Ok(OffsetAngle::Variable {
        value: Arc::new(move |s| theta0 - prefix.eval(s)),
        rate: Arc::new(move |s| -b.dual_frame_at(s).expect(VALID_MSG).k1),
    })
}

/// Offset angle whose real part follows the turning law
/// `θ′ = −k̄₁` and whose offset distance is `θ*(s) = tan θ(s) / τ_α(s)`
/// pointwise (in the printed orientation, toward `+ã`). On a
/// developable base, an offset built from this angle with
/// [`OffsetAngle::with_negated_distance`] is itself developable, and
/// its striction curve is the Mannheim partner of the base striction
/// curve. The base must be developable with torsion bounded away from
/// zero on its domain; restrict the surface to such an arc first (see
/// [`RuledSurface::restricted`]).
pub fn mannheim_partner_angle<T: Real>(
    base: &RuledSurface<T>,
    theta0: T,
    cells: usize,
) -> Result<OffsetAngle<T>> {
    let (lo, hi) = match base.period() {
        Some(p) => (T::zero(), p),
        None => base.domain(),
    };
    for s in base.probes(PROBES) {
        tau_alpha(base, s)?;
    }
    let b = base.clone();
    let prefix = Arc::new(Cumulative::new(
        move |s| b.dual_frame_at(s).expect(VALID_MSG).k1.real,
        lo,
        hi,
        cells,
    ));
    let b = base.clone();
    let pre = prefix.clone();
    let value = Arc::new(move |s: T| {
        let th = theta0 - pre.eval(s);
        let tau = b.frame_at(s).expect(VALID_MSG).k2;
        Dual::new(th, th.tan() / tau)
    });
    let b = base.clone();
    let v = value.clone();
    let rate = Arc::new(move |s: T| {
        let step = T::c(invariants::COEFF_FD_STEP);
        let du = (v(s + step).dual - v(s - step).dual) / (T::c(2.0) * step);
        Dual::new(-b.dual_frame_at(s).expect(VALID_MSG).k1.real, du)
    });
    Ok(OffsetAngle::Variable { value, rate })
}

/// One comparison row of a verification report.
#[derive(Debug, Clone, Copy)]
pub struct ReportRow<T> {
    /// What is being compared.
    pub name: &'static str,
    /// Left-hand value (scalar rows use the real part).
    pub lhs: Dual<T>,
    /// Right-hand value.
    pub rhs: Dual<T>,
    /// Worst absolute deviation between the sides.
    pub residual: T,
    /// Tolerance the residual is judged against.
    pub tol: T,
    /// Enforced rows must pass; reported rows never abort anything.
    pub enforced: bool,
    /// Whether the residual is inside the tolerance.
    pub pass: bool,
}

/// A table of verification rows.
#[derive(Debug, Clone)]
pub struct Report<T> {
    /// The rows, in evaluation order.
    pub rows: Vec<ReportRow<T>>,
}

impl<T: Real> Report<T> {
    fn new() -> Self {
        Report { rows: Vec::new() }
    }

    fn push(&mut self, name: &'static str, lhs: Dual<T>, rhs: Dual<T>, enforced: bool) {
        self.push_with_residual(name, lhs, rhs, None, enforced);
    }

    /// Adds a row, optionally overriding the residual (for rows whose
    /// residual is a max over probes rather than `|lhs − rhs|`).
    fn push_with_residual(
        &mut self,
        name: &'static str,
        lhs: Dual<T>,
        rhs: Dual<T>,
        residual: Option<T>,
        enforced: bool,
    ) {
        let d = lhs - rhs;
        let residual = residual.unwrap_or_else(|| d.real.abs().max(d.dual.abs()));
        let tol = T::c(VERIFY_TOL);
        self.rows.push(ReportRow {
            name,
            lhs,
            rhs,
            residual,
            tol,
            enforced,
            pass: residual <= tol,
        });
    }

    /// True when every enforced row passes.
    pub fn enforced_pass(&self) -> bool {
        self.rows.iter().filter(|r| r.enforced).all(|r| r.pass)
    }

    /// True when every row (including reported ones) passes.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Pointwise pitch-angle projections of the three relevant lines onto
/// the Steiner vector of the base motion.
struct SteinerProjections<T> {
    q: Vec<Dual<T>>,
    h: Vec<Dual<T>>,
    q1: Vec<Dual<T>>,
}

fn steiner_projections<T: Real>(
    pair: &MannheimPair<T>,
    steiner: DVec3<T>,
    probes: &[T],
) -> Result<SteinerProjections<T>> {
    let mut p = SteinerProjections {
        q: Vec::with_capacity(probes.len()),
        h: Vec::with_capacity(probes.len()),
        q1: Vec::with_capacity(probes.len()),
    };
    for &s in probes {
        let fr = pair.base.dual_frame_at(s)?;
        let of = pair.offset_frame_at(s)?;
        p.q.push(invariants::pitch_angle_from_steiner(steiner, fr.q)?);
        p.h.push(invariants::pitch_angle_from_steiner(steiner, fr.h)?);
        p.q1.push(invariants::pitch_angle_from_steiner(steiner, of.q1)?);
    }
    Ok(p)
}

fn mean<T: Real>(v: &[Dual<T>]) -> Dual<T> {
    let mut acc = Dual::zero();
    for d in v {
        acc = acc + *d;
    }
    acc.scale(T::one() / T::c(v.len().max(1) as f64))
}

/// Verifies the relation between the dual pitch angles of the base, the
/// central-normal trajectory and a constant-angle offset:
/// `λ̄_{q₁} = λ̄_q cos θ̄ + λ̄_h sin θ̄`, together with its real/dual
/// splits and the special-angle cases. Enforced rows use the pitch
/// angles projected from the Steiner vector of the base motion, under
/// which the relation is exact; own-quadrature comparisons are reported
/// alongside.
pub fn verify_pitch_relation<T: Real>(
    pair: &MannheimPair<T>,
    nodes: usize,
) -> Result<Report<T>> {
    let theta = pair.angle.as_constant()?;
    pair.base.require_closed()?;
    let (co, sn) = (theta.cos(), theta.sin());

    let steiner = invariants::steiner(&pair.base, nodes)?;
    let lam_q_own = invariants::dual_angle_of_pitch(&pair.base, nodes)?;
    let lam_h_own = h_trajectory_invariants(&pair.base, nodes)?.dual_angle_of_pitch;

    let probes = pair.base.probes(32);
    let proj = steiner_projections(pair, steiner, &probes)?;

    let mut report = Report::new();

    // Dual relation with Steiner-projected pitch angles (pointwise).
    let mut worst = T::zero();
    for i in 0..probes.len() {
        let rhs = proj.q[i] * co + proj.h[i] * sn;
        let d = proj.q1[i] - rhs;
        worst = worst.max(d.real.abs()).max(d.dual.abs());
    }
    let lam_q = mean(&proj.q);
    let lam_h = mean(&proj.h);
    let lam_q1 = mean(&proj.q1);
    report.push_with_residual(
        "offset pitch angle vs rotated base pitch angles (dual)",
        lam_q1,
        lam_q * co + lam_h * sn,
        Some(worst),
        true,
    );

    // Real split: angle of pitch.
    report.push(
        "offset angle of pitch vs rotated split (real part)",
        Dual::from_real(lam_q1.real),
        Dual::from_real(lam_q.real * co.real + lam_h.real * sn.real),
        true,
    );

    // Dual split with the exact first-order expansion of the rotation.
    let exact = lam_q.dual * co.real + lam_h.dual * sn.real
        + theta.dual * (lam_h.real * co.real - lam_q.real * sn.real);
    report.push(
        "offset pitch vs rotated split (dual part, exact expansion)",
        Dual::from_real(lam_q1.dual),
        Dual::from_real(exact),
        true,
    );

    // The catalog variant of the dual split flips the sign of the
    // central-normal pitch term; it agrees only where that pitch is 0.
    let variant = lam_q.dual * co.real - lam_h.dual * sn.real
        + theta.dual * (lam_h.real * co.real - lam_q.real * sn.real);
    report.push(
        "offset pitch vs rotated split (dual part, catalog sign variant)",
        Dual::from_real(lam_q1.dual),
        Dual::from_real(variant),
        false,
    );

    // Projections against own quadratures (agreement is
    // fixture-dependent; reported only).
    let mut worst_q = T::zero();
    let mut worst_h = T::zero();
    let mut worst_q1 = T::zero();
    let lam_q1_formal = integrate_checked(
        |s| {
            let fr = pair.base.dual_frame_at(s)?;
            let of = pair.offset_frame_at(s)?;
            Ok(fr.a_d1().dinner(of.a1))
        },
        probes[0],
        probes[0] + pair.base.require_closed()?,
        nodes,
    )?;
    for i in 0..probes.len() {
        let dq = proj.q[i] - lam_q_own;
        let dh = proj.h[i] - lam_h_own;
        let dq1 = proj.q1[i] - lam_q1_formal;
        worst_q = worst_q.max(dq.real.abs()).max(dq.dual.abs());
        worst_h = worst_h.max(dh.real.abs()).max(dh.dual.abs());
        worst_q1 = worst_q1.max(dq1.real.abs()).max(dq1.dual.abs());
    }
    report.push_with_residual(
        "ruling pitch angle: Steiner projection vs own quadrature",
        lam_q,
        lam_q_own,
        Some(worst_q),
        false,
    );
    report.push_with_residual(
        "central-normal pitch angle: Steiner projection vs own quadrature",
        lam_h,
        lam_h_own,
        Some(worst_h),
        false,
    );
    report.push_with_residual(
        "offset pitch angle: Steiner projection vs offset-frame quadrature",
        lam_q1,
        lam_q1_formal,
        Some(worst_q1),
        false,
    );

    // Direct surface quadrature of the offset pitch against the
    // projected value.
    let ell_q1_surface = invariants::pitch(&pair.offset, nodes)?;
    report.push(
        "offset surface pitch vs projected pitch",
        Dual::from_real(ell_q1_surface),
        Dual::from_real(lam_q1.dual),
        false,
    );

    // Special-angle cases.
    let case_tol = T::c(RIGHT_ANGLE_TOL);
    if sn.real.abs() <= case_tol {
        report.push(
            "aligned offset: angle of pitch carries over",
            Dual::from_real(lam_q1.real),
            Dual::from_real(lam_q.real),
            true,
        );
        report.push(
            "aligned offset: pitch gains the distance-weighted normal term",
            Dual::from_real(lam_q1.dual),
            Dual::from_real(lam_q.dual + theta.dual * lam_h.real),
            true,
        );
    }
    if co.real.abs() <= case_tol {
        report.push(
            "right offset: angle of pitch becomes the central-normal one",
            Dual::from_real(lam_q1.real),
            Dual::from_real(lam_h.real),
            true,
        );
        report.push(
            "right offset: pitch relation (exact sign)",
            Dual::from_real(lam_q1.dual),
            Dual::from_real(lam_h.dual - theta.dual * lam_q.real),
            true,
        );
        report.push(
            "right offset: pitch relation (catalog sign variant)",
            Dual::from_real(lam_q1.dual),
            Dual::from_real(-lam_h.dual - theta.dual * lam_q.real),
            false,
        );
    }
    if theta.dual.abs() <= case_tol {
        report.push(
            "coincident-line offset: angle of pitch rotates",
            Dual::from_real(lam_q1.real),
            Dual::from_real(lam_q.real * co.real + lam_h.real * sn.real),
            true,
        );
        report.push(
            "coincident-line offset: pitch rotates",
            Dual::from_real(lam_q1.dual),
            Dual::from_real(lam_q.dual * co.real + lam_h.dual * sn.real),
            true,
        );
    }
    Ok(report)
}

/// Verifies the projection-area relations for a constant-angle offset:
/// the dual area of the projection of the offset ruling image onto the
/// base ruling satisfies `2f̄_{q₁,q} = λ̄_q − λ̄_{q₁} cos θ̄`, and onto the
/// central normal `2f̄_{q₁,h} = −λ̄_{q₁} sin θ̄`, with the projections
/// taken pointwise against the moving base frame. Alternate readings
/// with the central-normal pitch angle and flipped signs are reported.
pub fn verify_projection_areas<T: Real>(
    pair: &MannheimPair<T>,
    nodes: usize,
) -> Result<Report<T>> {
    let theta = pair.angle.as_constant()?;
    let period = pair.base.require_closed()?;
    let (lo, _) = pair.base.domain();
    let (co, sn) = (theta.cos(), theta.sin());
    let jets = pair.trajectory_jets();

    let half = T::c(0.5);
    let proj_on = |pick: fn(&DualFrame<T>, &OffsetFrame<T>) -> DVec3<T>| -> Result<Dual<T>> {
        integrate_checked(
            |s| {
                let jet = jets(s)?;
                let fr = pair.base.dual_frame_at(s)?;
                let of = pair.offset_frame_at(s)?;
                Ok(jet.v.dcross(jet.d1).dinner(pick(&fr, &of)))
            },
            lo,
            lo + period,
            nodes,
        )
        .map(|d| d.scale(half))
    };
    let f_q = proj_on(|fr, _| fr.q)?;
    let f_h = proj_on(|fr, _| fr.h)?;
    let f_a = proj_on(|fr, _| fr.a)?;

    let lam_q_own = invariants::dual_angle_of_pitch(&pair.base, nodes)?;
    let lam_h_own = h_trajectory_invariants(&pair.base, nodes)?.dual_angle_of_pitch;
    let lam_q1_formal = integrate_checked(
        |s| {
            let fr = pair.base.dual_frame_at(s)?;
            let of = pair.offset_frame_at(s)?;
            Ok(fr.a_d1().dinner(of.a1))
        },
        lo,
        lo + period,
        nodes,
    )?;
    let total_turn = offset_angle_from_curvature(&pair.base, nodes)?;

    let two = T::c(2.0);
    let mut report = Report::new();
    report.push(
        "ruling projection area vs pitch-angle difference",
        f_q.scale(two),
        lam_q_own - lam_q1_formal * co,
        true,
    );
    report.push(
        "central-normal projection area vs rotated offset pitch angle",
        f_h.scale(two),
        -(lam_q1_formal * sn),
        true,
    );
    report.push(
        "central-normal projection area with h-trajectory term",
        f_h.scale(two),
        lam_h_own - lam_q1_formal * sn,
        false,
    );
    report.push(
        "ruling projection area (catalog sign variant)",
        f_q.scale(two),
        lam_q_own + lam_q1_formal * co,
        false,
    );
    report.push(
        "central-normal projection area (catalog sign variant)",
        f_h.scale(two),
        lam_h_own + lam_q1_formal * sn,
        false,
    );
    report.push(
        "central-tangent projection area vs total ruling turning",
        f_a.scale(two),
        total_turn,
        false,
    );
    Ok(report)
}

/// Curvature/torsion data of the striction curve of a developable
/// surface at `s`: the structural coefficients per striction arc length
/// coincide with the Frenet curvature and torsion there.
pub fn tau_alpha<T: Real>(base: &RuledSurface<T>, s: T) -> Result<T> {
    let delta = base.drall(s)?;
    if delta.abs() > T::c(DEVELOPABLE_TOL) {
        return Err(GeomError::NotDevelopable {
            drall: delta.as_f64(),
            s: s.as_f64(),
        });
    }
    let (_, c1) = base.striction_jet(s)?;
    if c1.norm() < T::c(crate::surface::STRICTION_RATE_TOL) {
        return Err(GeomError::ConditionNotMet {
            what: "striction curve degenerates to a point",
        });
    }
    Ok(base.frame_at(s)?.k2)
}

/// Developability residual of an offset of a developable base:
/// `sin θ − θ* τ_α cos θ`. The offset is developable where this
/// vanishes.
pub fn developability_condition<T: Real>(theta: T, theta_star: T, tau: T) -> T {
    theta.sin() - theta_star * tau * theta.cos()
}

/// Closed-form drall of the offset of a developable base:
/// `δ_{q₁} = (sin θ − θ* τ_α cos θ)/(τ_α sin θ)` at the angle the pair
/// prescribes at `s`.
///
/// The closed form measures the drall of the offset shifted toward
/// `+ã` (the negated-distance orientation) and in the moment
/// convention `⟨q̂′, m′⟩/⟨q̂′, q̂′⟩`, which is the negative of the
/// determinant convention used by [`RuledSurface::drall`]; comparisons
/// against a constructed surface must account for both.
pub fn offset_drall<T: Real>(pair: &MannheimPair<T>, s: T) -> Result<T> {
    let tau = tau_alpha(&pair.base, s)?;
    let th = pair.angle.eval(s);
    if th.real.sin().abs() < T::c(RIGHT_ANGLE_TOL) {
        return Err(GeomError::RightAngleDegenerate {
            theta: th.real.as_f64(),
        });
    }
    let den = tau * th.real.sin();
    if den.abs() < T::c(crate::dual::ZERO_DIVISOR_TOL) {
        return Err(GeomError::ZeroDivisor {
            magnitude: den.abs().as_f64(),
        });
    }
    Ok(developability_condition(th.real, th.dual, tau) / den)
}

/// Closed-form pitch of the offset of a closed developable base in the
/// negated-distance orientation: `ℓ_{q₁} = −∮ (cos θ + θ* τ_α sin θ) ds`
/// over the striction arc length. Matches the direct pitch of the
/// offset constructed with [`OffsetAngle::with_negated_distance`].
pub fn offset_pitch_developable<T: Real>(pair: &MannheimPair<T>, nodes: usize) -> Result<T> {
    let period = pair.base.require_closed()?;
    let (lo, _) = pair.base.domain();
    for s in pair.base.probes(PROBES) {
        let delta = pair.base.drall(s)?;
        if delta.abs() > T::c(DEVELOPABLE_TOL) {
            return Err(GeomError::NotDevelopable {
                drall: delta.as_f64(),
                s: s.as_f64(),
            });
        }
    }
    integrate_checked(
        |s| {
            let th = pair.angle.eval(s);
            let (_, c1) = pair.base.striction_jet(s)?;
            let rate = c1.norm();
            // Arc-length 1-form: cos θ dσ + θ* (τ dσ) sin θ with
            // dσ = rate·ds and τ·dσ the per-parameter second coefficient.
            let k2_param = pair.base.dual_frame_at(s)?.k2.real;
            Ok(-(th.real.cos() * rate + th.dual * k2_param * th.real.sin()))
        },
        lo,
        lo + period,
        nodes,
    )
}

fn euclid_unit<T: Real>(v: Vec3<T>) -> Result<Vec3<T>> {
    let n = v.comp_sq().sqrt();
    if n < T::c(1e-12) {
        return Err(GeomError::NullDirection);
    }
    Ok(v.scale(T::one() / n))
}

/// Sine of the Euclidean angle between two directions (0 when
/// parallel), insensitive to either sign.
fn parallelism_residual<T: Real>(u: Vec3<T>, v: Vec3<T>) -> Result<T> {
    let u = euclid_unit(u)?;
    let v = euclid_unit(v)?;
    let mut dot = T::zero();
    for i in 0..3 {
        dot = dot + u[i] * v[i];
    }
    let rej = v - u.scale(dot);
    Ok(rej.comp_sq().sqrt())
}

/// Checks the partner property of the striction curves of a developable
/// base and a developable offset: the central tangent of the base (the
/// binormal of its striction curve) stays parallel to the principal
/// normal of the offset striction curve. Probes where the offset
/// degenerates (`sin θ` or the torsion too small) are skipped; returns
/// the worst angular residual over the usable probes.
pub fn striction_mannheim_check<T: Real>(pair: &MannheimPair<T>, probes: usize) -> Result<T> {
    // Both surfaces must be developable: the base everywhere, the
    // offset at the usable probes (checked directly on its drall, which
    // is orientation-free).
    let sample = pair.base.probes(probes.max(8));
    let mut usable = 0;
    let mut worst = T::zero();
    for &s in &sample {
        let tau = tau_alpha(&pair.base, s)?;
        let th = pair.angle.eval(s);
        if th.real.sin().abs() < T::c(0.15) || tau.abs() < T::c(0.2) {
            continue;
        }
        if pair.offset.drall(s)?.abs() > T::c(VERIFY_TOL) {
            return Err(GeomError::ConditionNotMet {
                what: "the offset family is not developable at a usable probe",
            });
        }
        usable += 1;
        // Binormal of the base striction curve = central tangent of the
        // base frame.
        let b_alpha = pair.base.frame_at(s)?.a;
        // Principal normal of the offset striction curve via its
        // Minkowski Frenet data.
        let (_, beta1) = pair.offset.striction_jet(s)?;
        let step = T::c(JET_FD_STEP);
        let (_, p) = pair.offset.striction_jet(s + step)?;
        let (_, m) = pair.offset.striction_jet(s - step)?;
        let beta2 = (p - m).scale(T::one() / (T::c(2.0) * step));
        let g = beta1.norm_sq();
        if g.abs() < T::c(1e-10) {
            return Err(GeomError::NullFrameVector { s: s.as_f64() });
        }
        let n_beta = beta2 - beta1.scale(beta2.dot(beta1) / g);
        worst = worst.max(parallelism_residual(b_alpha, n_beta)?);
    }
    if usable == 0 {
        return Err(GeomError::ConditionNotMet {
            what: "no usable probes away from the degenerate angles",
        });
    }
    Ok(worst)
}
