//! Command-line front end: surface definitions in (built-in catalog or
//! config files), classification, integral invariants, offset
//! construction, verification tables, and OBJ meshes out.

mod err;
mod expr;
mod obj;
mod report;
mod spec;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use drall::invariants;
use drall::mannheim::{
    offset_pitch_developable, offset_surface, verify_pitch_relation, verify_projection_areas,
    MannheimPair, OffsetAngle, ReportRow, VERIFY_TOL,
};
use drall::{Dual, GeomError, RuledSurface, Vec3};

use err::CliError;
use expr::parse_scalar;
use obj::{render_obj, ObjSurface};
use report::{fmt_f, write_output, Format, Table};

/// Drall considered zero for the developability verdict.
const DEVELOPABLE_TOL: f64 = 1e-8;

/// Maximum striction-to-base deviation still reported as coincident.
const COINCIDENT_TOL: f64 = 1e-9;

/// Probe count for pointwise surface scans.
const SCAN_PROBES: usize = 100;

/// Minimum quadrature node count accepted on the command line.
const MIN_NODES: usize = 16;

#[derive(Parser)]
#[command(
    name = "drall",
    version,
    about = "Ruled surfaces in Minkowski 3-space: classification, integral \
             invariants, offsets, verification, and OBJ meshes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SurfaceArgs {
    /// Built-in surface (eq52, eq53, eq54, eq55, cone, cylinder, tangent_dev)
    #[arg(long)]
    builtin: Option<String>,

    /// Surface definition file (key = value lines; see README)
    #[arg(long)]
    config: Option<PathBuf>,

    /// Numeric parameter, repeatable (e.g. --param c=0.5)
    #[arg(long = "param", value_name = "NAME=VALUE")]
    param: Vec<String>,
}

impl SurfaceArgs {
    fn resolve(&self) -> Result<spec::SurfaceSpec, CliError> {
        spec::SurfaceSpec::resolve(self.builtin.as_deref(), self.config.as_deref(), &self.param)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the table to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Ruling-direction samples along the parameter
    #[arg(long, default_value_t = 64)]
    s_samples: usize,

    /// Samples along each ruling
    #[arg(long, default_value_t = 9)]
    v_samples: usize,

    /// Lower ruling coordinate
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    v_min: f64,

    /// Upper ruling coordinate
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    v_max: f64,
}

impl GridArgs {
    fn validate(&self) -> Result<(), CliError> {
        if self.s_samples < 2 || self.v_samples < 2 {
            return Err(CliError::Usage(
                "--s-samples and --v-samples must be at least 2".into(),
            ));
        }
        if !(self.v_min < self.v_max) {
            return Err(CliError::Usage("--v-min must be below --v-max".into()));
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a surface: type, developability, striction coincidence
    Classify {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Integral invariants of a closed surface
    Invariants {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Quadrature nodes (at least 16)
        #[arg(long, default_value_t = 4096)]
        nodes: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Construct an offset surface and export base + offset as OBJ
    Offset {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Offset rotation angle (constant expression, e.g. pi/3)
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Offset distance (expression, may depend on s)
        #[arg(long, allow_hyphen_values = true)]
        theta_star: String,
        #[command(flatten)]
        grid: GridArgs,
        /// OBJ output path
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify offset invariant relations on a closed base
    Verify {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Offset rotation angle (constant expression)
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Offset distance (constant expression)
        #[arg(long, allow_hyphen_values = true)]
        theta_star: String,
        /// Quadrature nodes (at least 16)
        #[arg(long, default_value_t = 4096)]
        nodes: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Export a surface mesh with its striction polyline as OBJ
    Mesh {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// OBJ output path
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Classify { surface, output } => cmd_classify(&surface, &output),
        Command::Invariants {
            surface,
            nodes,
            output,
        } => cmd_invariants(&surface, nodes, &output),
        Command::Offset {
            surface,
            theta,
            theta_star,
            grid,
            out,
        } => cmd_offset(&surface, &theta, &theta_star, &grid, &out),
        Command::Verify {
            surface,
            theta,
            theta_star,
            nodes,
            output,
        } => cmd_verify(&surface, &theta, &theta_star, nodes, &output),
        Command::Mesh {
            surface,
            grid,
            out,
        } => cmd_mesh(&surface, &grid, &out),
    }
}

fn check_nodes(nodes: usize) -> Result<(), CliError> {
    if nodes < MIN_NODES {
        return Err(CliError::Usage(format!(
            "--nodes must be at least {MIN_NODES}, got {nodes}"
        )));
    }
    Ok(())
}

fn parse_constant(
    text: &str,
    what: &str,
    params: &BTreeMap<String, f64>,
) -> Result<f64, CliError> {
    let e = parse_scalar(text, params).map_err(|err| CliError::Parse {
        what: what.to_string(),
        err,
    })?;
    e.as_const()
        .ok_or_else(|| CliError::Usage(format!("{what} must be a constant expression")))
}

/// Builds the offset angle from the `--theta` / `--theta-star` texts;
/// `--theta-star` may depend on `s` when `allow_variable` is set.
fn parse_angle(
    theta_text: &str,
    theta_star_text: &str,
    params: &BTreeMap<String, f64>,
    allow_variable: bool,
) -> Result<OffsetAngle<f64>, CliError> {
    let theta = parse_constant(theta_text, "--theta", params)?;
    let star = parse_scalar(theta_star_text, params).map_err(|err| CliError::Parse {
        what: "--theta-star".to_string(),
        err,
    })?;
    match star.as_const() {
        Some(u) => Ok(OffsetAngle::constant(Dual::new(theta, u))),
        None if allow_variable => {
            let value_expr = star.clone();
            let rate_expr = star;
            Ok(OffsetAngle::variable(
                move |s| Dual::new(theta, value_expr.value(s)),
                move |s| Dual::new(0.0, rate_expr.eval(s).d1),
            ))
        }
        None => Err(CliError::Usage(
            "--theta-star must be a constant expression here".into(),
        )),
    }
}

/// Euclidean sine of the angle between two directions, sign-blind.
fn sin_angle(u: Vec3<f64>, v: Vec3<f64>) -> Option<f64> {
    let nu = u.comp_sq().sqrt();
    let nv = v.comp_sq().sqrt();
    if nu < 1e-12 || nv < 1e-12 {
        return None;
    }
    let u = u.scale(1.0 / nu);
    let v = v.scale(1.0 / nv);
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    Some((v - u.scale(dot)).comp_sq().sqrt())
}

/// Max sine angle between the offset's own central normal and the base
/// central tangent over the probe grid (the alignment that
/// characterizes turning-law offsets).
fn alignment_residual(pair: &MannheimPair<f64>) -> Option<f64> {
    let base = pair.base_surface();
    let mut worst: Option<f64> = None;
    for s in base.probes(SCAN_PROBES) {
        let (Ok(own), Ok(fr)) = (pair.offset_surface().frame_at(s), base.frame_at(s)) else {
            continue;
        };
        if let Some(r) = sin_angle(own.h, fr.a) {
            worst = Some(worst.map_or(r, |w: f64| w.max(r)));
        }
    }
    worst
}

fn cmd_classify(surface: &SurfaceArgs, output: &OutputArgs) -> Result<(), CliError> {
    let sp = surface.resolve()?;
    let surf = sp.build()?;
    let mut table = Table::new(vec!["property", "value"]);
    table.push(vec!["name".into(), sp.name.clone()]);

    let type_text = match surf.surface_type() {
        Ok(t) => t.name().to_string(),
        Err(e) => format!("none ({e})"),
    };
    table.push(vec!["type".into(), type_text]);

    match surf.period() {
        Some(p) => {
            table.push(vec!["closed".into(), "yes".into()]);
            table.push(vec!["period".into(), fmt_f(p)]);
        }
        None => table.push(vec!["closed".into(), "no".into()]),
    }

    // Developability: maximum |drall| over the scan, with a fallback
    // verdict for constant-ruling (cylindrical) surfaces where the
    // drall quotient is undefined.
    let probes = surf.probes(SCAN_PROBES);
    let mut max_drall: f64 = 0.0;
    let mut drall_err: Option<GeomError> = None;
    for &s in &probes {
        match surf.drall(s) {
            Ok(d) => max_drall = max_drall.max(d.abs()),
            Err(e) => {
                drall_err = Some(e);
                break;
            }
        }
    }
    match drall_err {
        None => {
            let verdict = if max_drall <= DEVELOPABLE_TOL {
                "developable"
            } else {
                "skew"
            };
            table.push(vec!["ruling family".into(), verdict.into()]);
            table.push(vec!["max |drall|".into(), fmt_f(max_drall)]);
        }
        Some(e) => {
            let constant_ruling = probes.iter().all(|&s| {
                surf.unit_ruling_jet(s)
                    .map(|j| j.d1.comp_sq().sqrt() < 1e-10)
                    .unwrap_or(false)
            });
            if constant_ruling {
                table.push(vec![
                    "ruling family".into(),
                    "developable (constant ruling direction)".into(),
                ]);
            } else {
                table.push(vec!["ruling family".into(), format!("n/a ({e})")]);
            }
            table.push(vec!["max |drall|".into(), "n/a".into()]);
        }
    }

    // Striction coincidence with the base curve.
    let mut max_dev: f64 = 0.0;
    let mut striction_err: Option<GeomError> = None;
    for &s in &probes {
        match surf.striction_point(s) {
            Ok(c) => {
                let d = (c - surf.base().value(s)).comp_sq().sqrt();
                max_dev = max_dev.max(d);
            }
            Err(e) => {
                striction_err = Some(e);
                break;
            }
        }
    }
    match striction_err {
        None => {
            let flag = if max_dev < COINCIDENT_TOL { "yes" } else { "no" };
            table.push(vec!["striction coincides with base".into(), flag.into()]);
            table.push(vec!["max striction deviation".into(), fmt_f(max_dev)]);
        }
        Some(e) => {
            table.push(vec![
                "striction coincides with base".into(),
                format!("n/a ({e})"),
            ]);
        }
    }

    write_output(output.out.as_deref(), &table.render(output.format))
}

fn cmd_invariants(
    surface: &SurfaceArgs,
    nodes: usize,
    output: &OutputArgs,
) -> Result<(), CliError> {
    check_nodes(nodes)?;
    let sp = surface.resolve()?;
    let surf = sp.build()?;
    let inv = invariants::motion_invariants(&surf, nodes)?;

    let mut table = Table::new(vec!["quantity", "component", "real", "dual"]);
    let mut scalar = |name: &str, v: f64| {
        table.push(vec![name.into(), String::new(), fmt_f(v), String::new()]);
    };
    scalar("pitch", inv.pitch);
    scalar("angle of pitch", inv.angle_of_pitch);
    table.push(vec![
        "dual angle of pitch".into(),
        String::new(),
        fmt_f(inv.dual_angle_of_pitch.real),
        fmt_f(inv.dual_angle_of_pitch.dual),
    ]);
    for (i, label) in ["x1", "x2", "x3"].iter().enumerate() {
        table.push(vec![
            "steiner vector".into(),
            (*label).into(),
            fmt_f(inv.steiner.real[i]),
            fmt_f(inv.steiner.dual[i]),
        ]);
    }
    for (i, label) in ["x1", "x2", "x3"].iter().enumerate() {
        table.push(vec![
            "area vector".into(),
            (*label).into(),
            fmt_f(inv.area_vector.real[i]),
            fmt_f(inv.area_vector.dual[i]),
        ]);
    }
    table.push(vec![
        "spherical area".into(),
        String::new(),
        fmt_f(inv.spherical_area.real),
        fmt_f(inv.spherical_area.dual),
    ]);
    table.push(vec![
        "quadrature nodes".into(),
        String::new(),
        nodes.to_string(),
        String::new(),
    ]);
    write_output(output.out.as_deref(), &table.render(output.format))
}

fn striction_polyline(surf: &RuledSurface<f64>, n: usize) -> Option<Vec<Vec3<f64>>> {
    let mut points = Vec::with_capacity(n);
    for s in surf.probes(n) {
        points.push(surf.striction_point(s).ok()?);
    }
    Some(points)
}

fn cmd_offset(
    surface: &SurfaceArgs,
    theta: &str,
    theta_star: &str,
    grid: &GridArgs,
    out: &Path,
) -> Result<(), CliError> {
    grid.validate()?;
    let sp = surface.resolve()?;
    let surf = sp.build()?;
    let angle = parse_angle(theta, theta_star, &sp.params, true)?;
    let pair = MannheimPair::new(surf, angle)?;

    let v_range = (grid.v_min, grid.v_max);
    let base_mesh = pair
        .base_surface()
        .mesh(grid.s_samples, v_range, grid.v_samples)?;
    let offset_mesh = pair
        .offset_surface()
        .mesh(grid.s_samples, v_range, grid.v_samples)?;
    let base_striction = striction_polyline(pair.base_surface(), grid.s_samples);
    let offset_striction = striction_polyline(pair.offset_surface(), grid.s_samples);
    let obj = render_obj(&[
        ObjSurface {
            name: "base",
            mesh: &base_mesh,
            striction: base_striction.as_deref(),
            closed: pair.base_surface().period().is_some(),
        },
        ObjSurface {
            name: "offset",
            mesh: &offset_mesh,
            striction: offset_striction.as_deref(),
            closed: pair.offset_surface().period().is_some(),
        },
    ]);
    std::fs::write(out, obj)?;

    match alignment_residual(&pair) {
        Some(r) => println!(
            "offset central normal vs base central tangent: max sin angle = {}",
            fmt_f(r)
        ),
        None => println!("offset central normal vs base central tangent: n/a"),
    }
    println!("wrote {}", out.display());
    Ok(())
}

/// Converts verification rows to table rows.
fn push_rows(table: &mut Table, rows: &[ReportRow<f64>]) {
    for row in rows {
        table.push(vec![
            row.name.into(),
            if row.enforced { "enforced" } else { "report" }.into(),
            fmt_f(row.lhs.real),
            fmt_f(row.lhs.dual),
            fmt_f(row.rhs.real),
            fmt_f(row.rhs.dual),
            fmt_f(row.residual),
            fmt_f(row.tol),
            if row.pass { "PASS" } else { "FAIL" }.into(),
        ]);
    }
}

fn cmd_verify(
    surface: &SurfaceArgs,
    theta: &str,
    theta_star: &str,
    nodes: usize,
    output: &OutputArgs,
) -> Result<(), CliError> {
    check_nodes(nodes)?;
    let sp = surface.resolve()?;
    let surf = sp.build()?;
    let angle = parse_angle(theta, theta_star, &sp.params, false)?;
    let pair = MannheimPair::new(surf, angle)?;

    let mut rows = Vec::new();
    rows.extend(verify_pitch_relation(&pair, nodes)?.rows);
    rows.extend(verify_projection_areas(&pair, nodes)?.rows);

    // Alignment of the offset's own central normal with the base
    // central tangent: exact for turning-law offsets, reported here for
    // the constant-angle pair.
    if let Some(r) = alignment_residual(&pair) {
        rows.push(ReportRow {
            name: "offset central normal vs base central tangent",
            lhs: Dual::new(r, 0.0),
            rhs: Dual::new(0.0, 0.0),
            residual: r,
            tol: VERIFY_TOL,
            enforced: false,
            pass: r <= VERIFY_TOL,
        });
    }

    // On a developable base, the closed-form offset pitch applies (for
    // the offset translated toward +a); compare it against the direct
    // quadrature on that construction.
    let base = pair.base_surface();
    let developable = base
        .probes(SCAN_PROBES)
        .into_iter()
        .all(|s| base.drall(s).map(|d| d.abs() <= DEVELOPABLE_TOL).unwrap_or(false));
    if developable {
        let cf = offset_pitch_developable(&pair, nodes)?;
        let cmp = offset_surface(base, &pair.offset_angle().with_negated_distance())?;
        let direct = invariants::pitch(&cmp, nodes)?;
        let residual = (cf - direct).abs();
        rows.push(ReportRow {
            name: "developable offset pitch: closed form vs quadrature",
            lhs: Dual::new(cf, 0.0),
            rhs: Dual::new(direct, 0.0),
            residual,
            tol: VERIFY_TOL,
            enforced: true,
            pass: residual <= VERIFY_TOL,
        });
    }

    let mut table = Table::new(vec![
        "relation",
        "mode",
        "lhs real",
        "lhs dual",
        "rhs real",
        "rhs dual",
        "residual",
        "tolerance",
        "status",
    ]);
    push_rows(&mut table, &rows);
    write_output(output.out.as_deref(), &table.render(output.format))?;

    if rows.iter().filter(|r| r.enforced).all(|r| r.pass) {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn cmd_mesh(surface: &SurfaceArgs, grid: &GridArgs, out: &Path) -> Result<(), CliError> {
    grid.validate()?;
    let sp = surface.resolve()?;
    let surf = sp.build()?;
    let mesh = surf.mesh(grid.s_samples, (grid.v_min, grid.v_max), grid.v_samples)?;
    let striction = striction_polyline(&surf, grid.s_samples);
    let obj = render_obj(&[ObjSurface {
        name: &sp.name,
        mesh: &mesh,
        striction: striction.as_deref(),
        closed: surf.period().is_some(),
    }]);
    std::fs::write(out, obj)?;
    println!("wrote {}", out.display());
    Ok(())
}
