//! Command-line front end: `construct`, `verify` and `plot` over named recipes.
//!
//! Exit codes: 0 success, 1 a `--expect`ed verdict did not hold, 2 invalid
//! input, 3 numerical failure. Diagnostics are one line on stderr, starting
//! with the error label.

pub mod export;
pub mod recipe;

use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curve::sampled::DEFAULT_BLEND_DEGREE;
use crate::curve::{interpolate_samples, DiffConfig, Interval, ParamCurve};
use crate::error::{Error, Result};
use crate::frenet::{
    classification_margin, classify, frenet_apparatus, regular_arcs, sigma, ClassificationReport,
    Sample, SphereFit,
};
use crate::geom::Vec3;

use export::Record;
use recipe::{ResolvedParams, Settings};

#[derive(Debug, Parser)]
#[command(
    name = "sabban-helix",
    version,
    about = "Construct and certify helices built from spherical curves"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a constructed curve to CSV, JSON or SVG.
    Construct(ConstructArgs),
    /// Classify a curve and write the report as JSON.
    Verify(VerifyArgs),
    /// Write three orthographic projections as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Recipe {
    Frenet,
    Bertrand,
    Example1,
    SphereCircle,
    KgOde,
}

impl Recipe {
    pub fn name(self) -> &'static str {
        match self {
            Recipe::Frenet => "frenet",
            Recipe::Bertrand => "bertrand",
            Recipe::Example1 => "example1",
            Recipe::SphereCircle => "sphere-circle",
            Recipe::KgOde => "kg-ode",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KgKind {
    Slant,
}

/// Weight exponent `k(s)` of the exponential construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KSpec {
    Zero,
    Theorem1,
    Const(f64),
    Linear(f64),
}

impl FromStr for KSpec {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |v: &str| {
            v.parse::<f64>()
                .map_err(|e| format!("bad number `{v}`: {e}"))
        };
        match s {
            "zero" => Ok(KSpec::Zero),
            "theorem1" => Ok(KSpec::Theorem1),
            _ => match s.split_once('=') {
                Some(("const", v)) => Ok(KSpec::Const(parse(v)?)),
                Some(("linear", v)) => Ok(KSpec::Linear(parse(v)?)),
                _ => Err(format!(
                    "expected zero, theorem1, const=<v> or linear=<v>, got `{s}`"
                )),
            },
        }
    }
}

fn parse_domain(s: &str) -> std::result::Result<Interval, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad upper bound: {e}"))?;
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

fn parse_vec3(s: &str) -> std::result::Result<Vec3, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad component `{v}`: {e}"))
        })
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err(format!("expected x,y,z, got `{s}`")),
    }
}

/// Recipe and parameter bindings shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct JobSpec {
    #[arg(long, value_enum)]
    pub recipe: Option<Recipe>,
    /// Constant geodesic curvature of the generating curve.
    #[arg(long)]
    pub kg_const: Option<f64>,
    /// Geodesic-curvature profile of the generating curve.
    #[arg(long, value_enum)]
    pub kg: Option<KgKind>,
    #[arg(long, default_value_t = 0.2)]
    pub m: f64,
    #[arg(long, default_value_t = 0.0)]
    pub n: f64,
    /// Branch sign of the slant profile.
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    /// zero | theorem1 | const=<v> | linear=<v>
    #[arg(long, default_value = "zero")]
    pub k: KSpec,
    #[arg(long, default_value_t = 0.0)]
    pub b1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// Translation x,y,z.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub a: Option<Vec3>,
    /// Base point of the antiderivatives.
    #[arg(long)]
    pub s0: Option<f64>,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    pub theta: f64,
    /// Euclidean radius of the `sphere-circle` recipe.
    #[arg(long)]
    pub r: Option<f64>,
    /// Parameter interval lo:hi.
    #[arg(long, value_parser = parse_domain, allow_hyphen_values = true)]
    pub domain: Option<Interval>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Quadrature panels per unit length.
    #[arg(long)]
    pub panels: Option<usize>,
    /// Gauss–Legendre nodes per panel (3, 5 or 7).
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Finite-difference step as a fraction of the domain length.
    #[arg(long)]
    pub diff_step: Option<f64>,
    /// Richardson levels.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Frame ODE step.
    #[arg(long)]
    pub ode_step: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub job: JobSpec,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: ExportFormat,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Add kappa, tau and sigma columns; samples then avoid the ends, where
    /// the stencils would leave the domain.
    #[arg(long)]
    pub with_apparatus: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Spherical,
    Slant,
    Cylindrical,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub job: JobSpec,
    /// Sample file with an `s,x,y,z` header, used instead of a recipe.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub expect: Vec<Verdict>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub job: JobSpec,
    /// Tolerance of the classification that decides the sphere overlay.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                2
            } else {
                3
            }
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Plot(a) => cmd_plot(a),
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

fn check_samples(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "--samples must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn records(
    curve: &ParamCurve,
    n: usize,
    with_apparatus: bool,
    cfg: &DiffConfig,
) -> Result<Vec<Record>> {
    let domain = if with_apparatus {
        curve
            .domain()
            .shrink(classification_margin(curve.domain(), cfg)?)?
    } else {
        curve.domain()
    };
    domain
        .linspace(n)
        .into_iter()
        .map(|s| {
            let p = curve.at(s);
            let mut r = Record {
                s,
                x: p.x,
                y: p.y,
                z: p.z,
                kappa: None,
                tau: None,
                sigma: None,
            };
            if with_apparatus {
                let a = frenet_apparatus(curve, s, cfg)?;
                r.kappa = Some(a.kappa);
                r.tau = Some(a.tau);
                r.sigma = Some(sigma(curve, s, cfg)?);
            }
            Ok(r)
        })
        .collect()
}

#[derive(Serialize)]
struct ConstructOutput<'a> {
    params: &'a ResolvedParams,
    records: &'a [Record],
}

fn cmd_construct(args: &ConstructArgs) -> Result<i32> {
    check_samples(args.job.samples)?;
    let settings = Settings::from_job(&args.job)?;
    let built = recipe::build(&args.job, &settings)?;
    let recs = records(
        &built.curve,
        args.job.samples,
        args.with_apparatus,
        &settings.diff,
    )?;
    let text = match args.format {
        ExportFormat::Csv => export::to_csv(&recs, args.with_apparatus),
        ExportFormat::Json => export::to_json(&ConstructOutput {
            params: &built.params,
            records: &recs,
        })?,
        ExportFormat::Svg => {
            let pts: Vec<Vec3> = recs.iter().map(Record::point).collect();
            export::to_svg(&pts, None, built.params.recipe)
        }
    };
    write_output(args.output.as_ref(), &text)?;
    Ok(0)
}

/// Classification of a curve that may contain inflection points.
///
/// The curve is split into regular arcs first. When there is more than one,
/// the longest arc is classified and the split is recorded in the notes.
pub fn analyse(
    curve: &ParamCurve,
    n: usize,
    tol: f64,
    cfg: &DiffConfig,
) -> Result<ClassificationReport> {
    let guard = curve.domain().length() / 80.0;
    let arcs = regular_arcs(curve, 4 * n.max(50), guard, cfg)?;
    if arcs.len() <= 1 {
        return classify(curve, n, tol, cfg);
    }
    let longest = *arcs
        .iter()
        .max_by(|a, b| a.length().total_cmp(&b.length()))
        .expect("at least two arcs");
    let mut report = classify(&curve.restrict(longest)?, n, tol, cfg)?;
    let listed: Vec<String> = arcs
        .iter()
        .map(|a| format!("[{:.6}, {:.6}]", a.lo, a.hi))
        .collect();
    report.notes.push(format!(
        "curvature vanishes or the binormal flips between regular arcs {}; classified the longest, [{:.6}, {:.6}]",
        listed.join(", "),
        longest.lo,
        longest.hi
    ));
    Ok(report)
}

#[derive(Serialize)]
struct VerdictBlock<'a> {
    cylindrical: bool,
    slant: bool,
    spherical: bool,
    expected: &'a [Verdict],
    all_expected_hold: bool,
    torsion_fallback: bool,
    notes: &'a [String],
}

#[derive(Serialize)]
struct SampleBlock<'a> {
    ratio: &'a [Sample],
    sigma: &'a [Sample],
    radius: &'a [Sample],
    residual: &'a [Sample],
}

#[derive(Serialize)]
struct ToleranceBlock<'a> {
    tol: f64,
    sampled_domain: Interval,
    diff: DiffConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    settings: Option<&'a Settings>,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    verdicts: VerdictBlock<'a>,
    samples: SampleBlock<'a>,
    sphere_fit: Option<SphereFit>,
    params: serde_json::Value,
    tolerances: ToleranceBlock<'a>,
}

fn verdict_holds(report: &ClassificationReport, v: Verdict) -> bool {
    match v {
        Verdict::Spherical => report.is_spherical,
        Verdict::Slant => report.is_slant_helix,
        Verdict::Cylindrical => report.is_cylindrical_helix,
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    check_samples(args.job.samples)?;
    check_tol(args.tol)?;
    let settings = Settings::from_job(&args.job)?;
    let (curve, params, settings_used) = match &args.input {
        Some(path) => {
            if args.job.recipe.is_some() {
                return Err(Error::InvalidParameter(
                    "give either --recipe or --input, not both".into(),
                ));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let (s, pts) = export::parse_csv(&text)?;
            let curve = interpolate_samples(&s, &pts, DEFAULT_BLEND_DEGREE)?;
            let params = serde_json::json!({
                "input": path.display().to_string(),
                "rows": s.len(),
                "interpolation": format!("barycentric rational, blending degree {DEFAULT_BLEND_DEGREE}"),
            });
            (curve, params, None)
        }
        None => {
            let built = recipe::build(&args.job, &settings)?;
            let params =
                serde_json::to_value(&built.params).map_err(|e| Error::Io(e.to_string()))?;
            (built.curve, params, Some(&settings))
        }
    };
    let report = analyse(&curve, args.job.samples, args.tol, &settings.diff)?;
    let all_hold = args.expect.iter().all(|&v| verdict_holds(&report, v));
    let out = VerifyReport {
        verdicts: VerdictBlock {
            cylindrical: report.is_cylindrical_helix,
            slant: report.is_slant_helix,
            spherical: report.is_spherical,
            expected: &args.expect,
            all_expected_hold: all_hold,
            torsion_fallback: report.torsion_fallback,
            notes: &report.notes,
        },
        samples: SampleBlock {
            ratio: &report.ratio_samples,
            sigma: &report.sigma_samples,
            radius: &report.radius_samples,
            residual: &report.residual_samples,
        },
        sphere_fit: report.sphere_fit,
        params,
        tolerances: ToleranceBlock {
            tol: report.tolerance_used,
            sampled_domain: report.sampled_domain,
            diff: settings.diff,
            settings: settings_used,
        },
    };
    write_output(args.output.as_ref(), &export::to_json(&out)?)?;
    Ok(if all_hold { 0 } else { 1 })
}

fn cmd_plot(args: &PlotArgs) -> Result<i32> {
    check_samples(args.job.samples)?;
    check_tol(args.tol)?;
    let settings = Settings::from_job(&args.job)?;
    let built = recipe::build(&args.job, &settings)?;
    let recs = records(&built.curve, args.job.samples, false, &settings.diff)?;
    let pts: Vec<Vec3> = recs.iter().map(Record::point).collect();
    let sphere = match analyse(&built.curve, args.job.samples, args.tol, &settings.diff) {
        Ok(r) if r.is_spherical => r.sphere_fit,
        Ok(_) => None,
        Err(e) => {
            eprintln!("warning: no sphere overlay, classification failed: {e}");
            None
        }
    };
    let svg = export::to_svg(&pts, sphere.as_ref(), built.params.recipe);
    write_output(args.output.as_ref(), &svg)?;
    Ok(0)
}
