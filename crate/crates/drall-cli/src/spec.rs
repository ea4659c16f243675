//! Surface definitions: the built-in catalog and a plain-text config
//! format for parametric surfaces.
//!
//! Config files are `key = value` lines; `#` starts a comment. Reserved
//! keys: `name`, `kind` (`builtin` or `parametric`), `builtin`, `base`,
//! `ruling`, `period`, `domain` (`LO : HI`). Every other key is a
//! numeric parameter available in the expressions; parameters are
//! evaluated in file order so later ones can reference earlier ones.
//! `base` and `ruling` are 3-component vector expressions in `s`, e.g.
//! `base = (0, cos(s), sin(s))`. `--param NAME=VALUE` flags shadow file
//! parameters before evaluation, so derived parameters follow.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use drall::catalog;
use drall::{ParamCurve, RuledSurface, Vec3};

use crate::err::CliError;
use crate::expr::{parse_scalar, parse_vec3, Expr};

/// Identifier of a built-in surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinId {
    /// Closed skew surface ruled over a tilted circle family.
    Eq52,
    /// Its offset with rulings kept aligned.
    Eq53,
    /// Its offset with rulings turned a right angle.
    Eq54,
    /// Its open offset with rulings turned by a third of a turn and a
    /// distance growing linearly in `s`.
    Eq55,
    /// Circular cone (developable, conical striction point).
    Cone,
    /// Circular cylinder (constant ruling direction, no frame).
    Cylinder,
    /// Tangent developable of a twisted closed curve.
    TangentDev,
}

impl BuiltinId {
    const ALL: [(&'static str, BuiltinId); 7] = [
        ("eq52", BuiltinId::Eq52),
        ("eq53", BuiltinId::Eq53),
        ("eq54", BuiltinId::Eq54),
        ("eq55", BuiltinId::Eq55),
        ("cone", BuiltinId::Cone),
        ("cylinder", BuiltinId::Cylinder),
        ("tangent_dev", BuiltinId::TangentDev),
    ];

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, id)| *id)
    }

    fn name(self) -> &'static str {
        Self::ALL
            .iter()
            .find(|(_, id)| *id == self)
            .map(|(n, _)| *n)
            .expect("listed")
    }

    /// Parameters the builtin accepts, with their defaults.
    fn parameters(self) -> &'static [(&'static str, f64)] {
        match self {
            BuiltinId::Eq52 => &[("c", 0.5), ("radius", 1.0)],
            BuiltinId::Eq53 | BuiltinId::Eq54 | BuiltinId::Eq55 | BuiltinId::Cone => {
                &[("c", 0.5)]
            }
            BuiltinId::Cylinder => &[],
            BuiltinId::TangentDev => &[("amp", 0.15)],
        }
    }
}

impl fmt::Display for BuiltinId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where the surface geometry comes from.
#[derive(Debug, Clone)]
pub enum Source {
    /// One of the built-in surfaces.
    Builtin(BuiltinId),
    /// Curves parsed from expressions.
    Parametric {
        /// Base curve components.
        base: [Expr; 3],
        /// Ruling direction components.
        ruling: [Expr; 3],
        /// Declared period for closed curves.
        period: Option<f64>,
        /// Sampling window for open curves.
        domain: Option<(f64, f64)>,
    },
}

/// A resolved surface definition.
#[derive(Debug, Clone)]
pub struct SurfaceSpec {
    /// Display name.
    pub name: String,
    /// Geometry source.
    pub source: Source,
    /// Resolved numeric parameters.
    pub params: BTreeMap<String, f64>,
}

const RESERVED: [&str; 7] = ["name", "kind", "builtin", "base", "ruling", "period", "domain"];

fn parse_param_flag(raw: &str) -> Result<(String, f64), CliError> {
    let (name, value) = raw.split_once('=').ok_or_else(|| {
        CliError::Usage(format!("--param expects NAME=VALUE, got '{raw}'"))
    })?;
    let name = name.trim();
    if name.is_empty() || RESERVED.contains(&name) {
        return Err(CliError::Usage(format!("invalid parameter name '{name}'")));
    }
    let expr = parse_scalar(value.trim(), &BTreeMap::new()).map_err(|err| CliError::Parse {
        what: format!("value of --param {name}"),
        err,
    })?;
    let v = expr.as_const().ok_or_else(|| {
        CliError::Usage(format!("--param {name} must be a constant, got '{value}'"))
    })?;
    Ok((name.to_string(), v))
}

fn const_key(
    entries: &BTreeMap<String, String>,
    key: &str,
    params: &BTreeMap<String, f64>,
) -> Result<Option<f64>, CliError> {
    match entries.get(key) {
        None => Ok(None),
        Some(text) => {
            let expr = parse_scalar(text, params).map_err(|err| CliError::Parse {
                what: format!("config key '{key}'"),
                err,
            })?;
            expr.as_const().map(Some).ok_or_else(|| {
                CliError::Usage(format!("config key '{key}' must be constant"))
            })
        }
    }
}

impl SurfaceSpec {
    /// Resolves the surface from the CLI flags: exactly one of
    /// `--builtin` / `--config`, plus `--param` overrides.
    pub fn resolve(
        builtin: Option<&str>,
        config: Option<&Path>,
        param_flags: &[String],
    ) -> Result<SurfaceSpec, CliError> {
        let mut overrides = BTreeMap::new();
        for raw in param_flags {
            let (k, v) = parse_param_flag(raw)?;
            overrides.insert(k, v);
        }
        match (builtin, config) {
            (Some(_), Some(_)) => Err(CliError::Usage(
                "--builtin and --config are mutually exclusive".into(),
            )),
            (None, None) => Err(CliError::Usage(
                "one of --builtin or --config is required".into(),
            )),
            (Some(name), None) => {
                let id = BuiltinId::from_name(name).ok_or_else(|| {
                    CliError::Usage(format!(
                        "unknown builtin '{name}' (expected one of {})",
                        BuiltinId::ALL
                            .iter()
                            .map(|(n, _)| *n)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ))
                })?;
                Self::from_builtin(id, overrides)
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                Self::from_config(&text, overrides)
            }
        }
    }

    fn from_builtin(
        id: BuiltinId,
        overrides: BTreeMap<String, f64>,
    ) -> Result<SurfaceSpec, CliError> {
        let mut params: BTreeMap<String, f64> = id
            .parameters()
            .iter()
            .map(|(n, v)| (n.to_string(), *v))
            .collect();
        for (k, v) in overrides {
            if !params.contains_key(&k) {
                return Err(CliError::Usage(format!(
                    "builtin '{id}' has no parameter '{k}'"
                )));
            }
            params.insert(k, v);
        }
        Ok(SurfaceSpec {
            name: id.name().to_string(),
            source: Source::Builtin(id),
            params,
        })
    }

    /// Parses the config text (see the module docs for the grammar).
    pub fn from_config(
        text: &str,
        overrides: BTreeMap<String, f64>,
    ) -> Result<SurfaceSpec, CliError> {
        let mut entries: BTreeMap<String, String> = BTreeMap::new();
        let mut param_order: Vec<String> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = match line.find('#') {
                Some(i) => &line[..i],
                None => line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "config line {} is not 'key = value': '{line}'",
                    lineno + 1
                ))
            })?;
            let key = key.trim().to_string();
            if !RESERVED.contains(&key.as_str()) {
                param_order.push(key.clone());
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!("duplicate config key '{key}'")));
            }
        }

        // Every non-reserved key is a numeric parameter, evaluated in
        // file order so later ones can reference earlier ones.
        // Overrides shadow file definitions before evaluation, so
        // derived parameters pick up the overridden values.
        let mut params = overrides;
        for key in &param_order {
            if params.contains_key(key) {
                continue;
            }
            let value = &entries[key];
            let expr = parse_scalar(value, &params).map_err(|err| CliError::Parse {
                what: format!("config parameter '{key}'"),
                err,
            })?;
            let v = expr.as_const().ok_or_else(|| {
                CliError::Usage(format!("config parameter '{key}' must be constant"))
            })?;
            params.insert(key.clone(), v);
        }

        let name = entries
            .get("name")
            .cloned()
            .unwrap_or_else(|| "surface".to_string());
        let kind = entries.get("kind").map(String::as_str);
        let is_builtin = match kind {
            Some("builtin") => true,
            Some("parametric") => false,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "config kind must be 'builtin' or 'parametric', got '{other}'"
                )))
            }
            None => entries.contains_key("builtin"),
        };

        if is_builtin {
            let id_name = entries.get("builtin").ok_or_else(|| {
                CliError::Usage("builtin config requires a 'builtin = ID' line".into())
            })?;
            let id = BuiltinId::from_name(id_name).ok_or_else(|| {
                CliError::Usage(format!("unknown builtin '{id_name}' in config"))
            })?;
            let mut spec = Self::from_builtin(id, params)?;
            spec.name = name;
            return Ok(spec);
        }

        let base_text = entries.get("base").ok_or_else(|| {
            CliError::Usage("parametric config requires a 'base = (...)' line".into())
        })?;
        let ruling_text = entries.get("ruling").ok_or_else(|| {
            CliError::Usage("parametric config requires a 'ruling = (...)' line".into())
        })?;
        let base = parse_vec3(base_text, &params).map_err(|err| CliError::Parse {
            what: "base curve".to_string(),
            err,
        })?;
        let ruling = parse_vec3(ruling_text, &params).map_err(|err| CliError::Parse {
            what: "ruling curve".to_string(),
            err,
        })?;
        let period = const_key(&entries, "period", &params)?;
        let domain = match entries.get("domain") {
            None => None,
            Some(text) => {
                let (lo, hi) = text.split_once(':').ok_or_else(|| {
                    CliError::Usage("config domain must be 'LO : HI'".into())
                })?;
                let parse_bound = |src: &str, side: &str| -> Result<f64, CliError> {
                    let expr = parse_scalar(src.trim(), &params).map_err(|err| {
                        CliError::Parse {
                            what: format!("domain {side}"),
                            err,
                        }
                    })?;
                    expr.as_const().ok_or_else(|| {
                        CliError::Usage(format!("domain {side} must be constant"))
                    })
                };
                Some((parse_bound(lo, "lower bound")?, parse_bound(hi, "upper bound")?))
            }
        };
        Ok(SurfaceSpec {
            name,
            source: Source::Parametric {
                base,
                ruling,
                period,
                domain,
            },
            params,
        })
    }

    /// Builds the ruled surface this definition describes.
    pub fn build(&self) -> Result<RuledSurface<f64>, CliError> {
        match &self.source {
            Source::Builtin(id) => {
                let p = |name: &str| -> f64 { self.params[name] };
                let surf = match id {
                    BuiltinId::Eq52 => catalog::circular_skew(p("c"), p("radius"))?,
                    BuiltinId::Eq53 => catalog::oriented_offset_surface(p("c"))?,
                    BuiltinId::Eq54 => catalog::right_offset_surface(p("c"))?,
                    BuiltinId::Eq55 => catalog::slant_offset_surface(p("c"))?,
                    BuiltinId::Cone => catalog::circular_cone(p("c"))?,
                    BuiltinId::Cylinder => catalog::circular_cylinder()?,
                    BuiltinId::TangentDev => catalog::tangent_developable(p("amp"))?,
                };
                Ok(surf)
            }
            Source::Parametric {
                base,
                ruling,
                period,
                domain,
            } => {
                let base_curve = curve_from_exprs(base.clone());
                let ruling_curve = curve_from_exprs(ruling.clone());
                let apply = |mut curve: ParamCurve<f64>| -> Result<ParamCurve<f64>, CliError> {
                    if let Some(p) = period {
                        curve = curve.with_period(*p)?;
                    } else if let Some((lo, hi)) = domain {
                        curve = curve.with_domain(*lo, *hi);
                    }
                    Ok(curve)
                };
                let base_curve = apply(base_curve)?;
                let ruling_curve = apply(ruling_curve)?;
                check_finite(&base_curve, "base")?;
                check_finite(&ruling_curve, "ruling")?;
                Ok(RuledSurface::new(base_curve, ruling_curve)?)
            }
        }
    }
}

fn curve_from_exprs(exprs: [Expr; 3]) -> ParamCurve<f64> {
    let [x, y, z] = exprs;
    let (vx, vy, vz) = (x.clone(), y.clone(), z.clone());
    let value = move |s: f64| Vec3::new(vx.value(s), vy.value(s), vz.value(s));
    let (dx, dy, dz) = (x.clone(), y.clone(), z.clone());
    let d1 = move |s: f64| Vec3::new(dx.eval(s).d1, dy.eval(s).d1, dz.eval(s).d1);
    let d2 = move |s: f64| Vec3::new(x.eval(s).d2, y.eval(s).d2, z.eval(s).d2);
    ParamCurve::new(value, d1, d2)
}

fn check_finite(curve: &ParamCurve<f64>, name: &'static str) -> Result<(), CliError> {
    for s in curve.probes(64) {
        for v in [curve.value(s), curve.d1(s), curve.d2(s)] {
            for i in 0..3 {
                if !v[i].is_finite() {
                    return Err(CliError::Evaluation { curve: name, s });
                }
            }
        }
    }
    Ok(())
}
