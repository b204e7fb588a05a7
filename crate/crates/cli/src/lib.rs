//! The `eqloc` command-line driver.
//!
//! [`run`] parses an argument vector, executes one subcommand and writes its
//! output; the binary is a thin wrapper so tests can drive the CLI in-process.
//!
//! Exit codes: `0` success, `1` invalid input (usage, I/O, schema, engine
//! refusal; a JSON error object goes to stderr), `2` internal invariant
//! violation.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eqloc_core::algebra::wire::{to_canonical_json, ComplexWire, SeriesWire};
use eqloc_core::corpus::emit_examples;
use eqloc_core::geometry::{parse_atlas, Geometry};
use eqloc_core::localization::{from_nested_terms, localize, Integrand};
use eqloc_core::oracle::{self, contour_coeff, suptsq_check, Extrapolation, MollifierConfig};
use eqloc_core::reduction::{EngineRegistry, FloatPair, ProfileRegistry, ReductionContext};
use eqloc_core::{AlgebraError, AtlasError, EngineError, FixedPointAtlas, LaurentSeries, OracleError, RootSystemData};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "eqloc", version, about = "Exact quotient integrals from fixed-point data")]
struct Cli {
    /// Output format; `check` defaults to a one-line summary, the rest to JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an atlas.
    Check { atlas: PathBuf },
    /// Print the localized fixed-point sum as a Laurent series.
    Localize {
        atlas: PathBuf,
        /// Extraction order, e.g. `y2,y1`.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        /// Exponent bound per variable (default 6 each).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        through: Option<Vec<i64>>,
    },
    /// Evaluate the quotient integral with a named engine.
    Reduce {
        atlas: PathBuf,
        /// symplectic | hk | hk-p | weyl, or an engine name.
        #[arg(long)]
        mode: String,
        #[arg(long)]
        profile: Option<String>,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        /// Root data file, or a reference name (su2, u2, trivial).
        #[arg(long)]
        roots: Option<String>,
        /// Attach a mollified-limit comparison.
        #[arg(long)]
        oracle: bool,
        #[arg(long = "t", value_delimiter = ',')]
        t_ladder: Option<Vec<f64>>,
        #[arg(long)]
        richardson: bool,
    },
    /// Numeric checks: mollified limit, suptsq decay, contour coefficients.
    Oracle {
        atlas: Option<PathBuf>,
        #[arg(long, default_value = "symplectic")]
        mode: String,
        #[arg(long)]
        profile: Option<String>,
        #[arg(long = "t", value_delimiter = ',')]
        t_ladder: Option<Vec<f64>>,
        #[arg(long)]
        richardson: bool,
        /// `x n`: decay table of the Gaussian-damped Fourier integral.
        #[arg(long, num_args = 2, value_names = ["X", "N"], allow_negative_numbers = true)]
        suptsq: Option<Vec<String>>,
        /// `series.json m`: Cauchy-contour estimate of the y^-m coefficient.
        #[arg(long, num_args = 2, value_names = ["SERIES", "M"], allow_negative_numbers = true)]
        contour: Option<Vec<String>>,
    },
    /// Print root data: a reference name or a file.
    Roots { source: String },
    /// Write the golden example files into a directory.
    Examples { dir: PathBuf },
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            write_error(err, "usage", &e.to_string());
            return EXIT_INVALID;
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| execute(&cli)));
    match result {
        Ok(Ok(text)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INTERNAL;
            }
            EXIT_OK
        }
        Ok(Err(e)) => {
            let (kind, code) = classify(&e);
            write_error(err, kind, &format!("{e:#}"));
            code
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            write_error(err, "internal", &msg);
            EXIT_INTERNAL
        }
    }
}

#[derive(Serialize)]
struct ErrorWire<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

fn write_error(err: &mut dyn Write, kind: &str, message: &str) {
    let body = to_canonical_json(&ErrorWire { error: ErrorBody { kind, message: message.trim_end() } });
    let _ = err.write_all(body.as_bytes());
}

/// Maps an error chain to its JSON `kind` and exit code.
fn classify(e: &anyhow::Error) -> (&'static str, i32) {
    for cause in e.chain() {
        if let Some(engine) = cause.downcast_ref::<EngineError>() {
            return match engine {
                EngineError::Internal(_) => ("internal", EXIT_INTERNAL),
                EngineError::Atlas(AtlasError::Schema(_)) => ("schema", EXIT_INVALID),
                EngineError::Atlas(_) => ("atlas", EXIT_INVALID),
                _ => ("engine", EXIT_INVALID),
            };
        }
        if let Some(o) = cause.downcast_ref::<OracleError>() {
            return match o {
                OracleError::Engine(EngineError::Internal(_)) => ("internal", EXIT_INTERNAL),
                _ => ("oracle", EXIT_INVALID),
            };
        }
        if let Some(a) = cause.downcast_ref::<AtlasError>() {
            return (if matches!(a, AtlasError::Schema(_)) { "schema" } else { "atlas" }, EXIT_INVALID);
        }
        if cause.downcast_ref::<AlgebraError>().is_some() {
            return ("algebra", EXIT_INVALID);
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return ("io", EXIT_INVALID);
        }
        if cause.downcast_ref::<serde_json::Error>().is_some() {
            return ("schema", EXIT_INVALID);
        }
    }
    ("input", EXIT_INVALID)
}

fn execute(cli: &Cli) -> Result<String> {
    let json = cli.format != Some(Format::Table);
    match &cli.command {
        Command::Check { atlas } => check(atlas, cli.format == Some(Format::Json)),
        Command::Localize { atlas, order, through } => localize_cmd(atlas, order.as_deref(), through.as_deref(), json),
        Command::Reduce { atlas, mode, profile, order, roots, oracle, t_ladder, richardson } => {
            let atlas = load_atlas(atlas)?;
            let ctx = ReductionContext {
                profile: ProfileRegistry::default().resolve(profile.as_deref())?,
                order: order.clone(),
                roots: roots.as_deref().map(load_roots).transpose()?,
            };
            let mut report = EngineRegistry::default().reduce(mode, &atlas, &ctx)?;
            if *oracle {
                let cfg = mollifier(t_ladder.as_deref(), *richardson)?;
                let reordered = match &ctx.order {
                    Some(o) => atlas.reordered(o)?,
                    None => atlas,
                };
                report = oracle::attach(report, &reordered, &cfg)?;
            }
            Ok(if json { report.to_json() } else { report.to_table() })
        }
        Command::Oracle { atlas, mode, profile, t_ladder, richardson, suptsq, contour } => {
            let cfg = mollifier(t_ladder.as_deref(), *richardson)?;
            match (atlas, suptsq, contour) {
                (None, Some(args), None) => suptsq_cmd(args, &cfg, json),
                (None, None, Some(args)) => contour_cmd(args, json),
                (Some(path), None, None) => oracle_cmd(path, mode, profile.as_deref(), &cfg, json),
                _ => bail!("oracle takes exactly one of: an atlas, --suptsq x n, --contour series.json m"),
            }
        }
        Command::Roots { source } => {
            let roots = load_roots(source)?;
            Ok(if json {
                to_canonical_json(&roots)
            } else {
                format!("positive roots: {:?}\nweyl order: {}\n", roots.positive_roots, roots.weyl_order)
            })
        }
        Command::Examples { dir } => {
            let paths = emit_examples(dir).with_context(|| format!("writing examples to {}", dir.display()))?;
            let names: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
            Ok(if json { to_canonical_json(&names) } else { names.join("\n") + "\n" })
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_atlas(path: &Path) -> Result<FixedPointAtlas> {
    let atlas = parse_atlas(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    atlas.validate().with_context(|| format!("validating {}", path.display()))?;
    Ok(atlas)
}

fn load_roots(source: &str) -> Result<RootSystemData> {
    if let Some(r) = RootSystemData::reference(source) {
        return Ok(r);
    }
    let path = Path::new(source);
    let roots: RootSystemData =
        serde_json::from_str(&read(path)?).with_context(|| format!("parsing root data {}", path.display()))?;
    if roots.weyl_order == 0 {
        bail!("root data {}: weyl_order must be positive", path.display());
    }
    Ok(roots)
}

fn mollifier(t_ladder: Option<&[f64]>, richardson: bool) -> Result<MollifierConfig> {
    let mut cfg = MollifierConfig::default();
    if let Some(t) = t_ladder {
        cfg.t_ladder = t.to_vec();
    }
    if richardson {
        cfg.extrapolation = Extrapolation::Richardson;
    }
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Serialize)]
struct CheckWire {
    valid: bool,
    fixed_points: usize,
    geometry: Geometry,
    group: &'static str,
    rank: usize,
}

fn check(path: &Path, json: bool) -> Result<String> {
    let atlas = load_atlas(path)?;
    let group = atlas.group.kind.as_str();
    if json {
        return Ok(to_canonical_json(&CheckWire {
            valid: true,
            fixed_points: atlas.fixed_points.len(),
            geometry: atlas.geometry,
            group,
            rank: atlas.rank(),
        }));
    }
    Ok(format!("valid: {} fixed points, {}, {}\n", atlas.fixed_points.len(), atlas.geometry.as_str(), group))
}

#[derive(Serialize)]
struct LocalizedWire {
    through: Vec<i64>,
    series: SeriesWire,
}

fn localize_cmd(path: &Path, order: Option<&[String]>, through: Option<&[i64]>, json: bool) -> Result<String> {
    let mut atlas = load_atlas(path)?;
    if let Some(o) = order {
        atlas = atlas.reordered(o)?;
    }
    let k = atlas.rank();
    let through = through.map(<[i64]>::to_vec).unwrap_or_else(|| vec![6; k]);
    if through.len() != k {
        bail!("--through needs {k} bounds, got {}", through.len());
    }
    let integrand = match atlas.geometry {
        Geometry::Symplectic => Integrand::symplectic_phase().with_eta(),
        Geometry::Hyperkahler => Integrand::hyperkahler_phase().with_eta(),
    };
    let sum = localize(&atlas, &integrand, &through)?;
    if !json {
        return Ok(format!("{}\n", sum.render()));
    }
    let series = LaurentSeries::from_terms(&sum.vars, from_nested_terms(&sum.total));
    Ok(to_canonical_json(&LocalizedWire { through, series: SeriesWire::from_series_standalone(&series) }))
}

fn oracle_cmd(path: &Path, mode: &str, profile: Option<&str>, cfg: &MollifierConfig, json: bool) -> Result<String> {
    if !matches!(mode, "symplectic" | "hk") {
        bail!("oracle --mode must be symplectic or hk, got `{mode}`");
    }
    let atlas = load_atlas(path)?;
    let ctx = ReductionContext::with_profile(ProfileRegistry::default().resolve(profile)?);
    let report = EngineRegistry::default().reduce(mode, &atlas, &ctx)?;
    let cmp = oracle::compare(&report, &atlas, cfg)?;
    if json {
        return Ok(to_canonical_json(&cmp));
    }
    let mut s = format!("{:>12}  {:>22}  {:>22}\n", "t", "re", "im");
    for (t, v) in cmp.t_ladder.iter().zip(&cmp.ladder_values) {
        s.push_str(&format!("{t:>12}  {:>22.15e}  {:>22.15e}\n", v.re, v.im));
    }
    s.push_str(&format!("exact {:.15e} {:+.15e}i\n", cmp.exact_value.re, cmp.exact_value.im));
    s.push_str(&format!("oracle ({}) {:.15e} {:+.15e}i\n", cmp.extrapolation, cmp.oracle_value.re, cmp.oracle_value.im));
    s.push_str(&format!("rel_err {:.3e}\n", cmp.rel_err));
    Ok(s)
}

fn suptsq_cmd(args: &[String], cfg: &MollifierConfig, json: bool) -> Result<String> {
    let x: f64 = args[0].parse().map_err(|_| anyhow!("--suptsq: x must be a number, got `{}`", args[0]))?;
    let n: u32 = args[1].parse().map_err(|_| anyhow!("--suptsq: n must be a natural number, got `{}`", args[1]))?;
    let table = suptsq_check(x, n, cfg)?;
    if json {
        return Ok(to_canonical_json(&table));
    }
    let mut s = format!("x = {x}, n = {n}, C = {:.6e}\n", table.constant);
    s.push_str(&format!("{:>12}  {:>22}  {:>22}\n", "t", "|I(t)|", "envelope"));
    for r in &table.rows {
        s.push_str(&format!("{:>12}  {:>22.15e}  {:>22.15e}\n", r.t, r.abs, r.envelope));
    }
    s.push_str(&format!("within bound: {}\n", table.within_bound));
    Ok(s)
}

#[derive(Serialize)]
struct ContourWire {
    m: i64,
    contour: FloatPair,
    exact: ComplexWire,
    abs_err: f64,
}

fn contour_cmd(args: &[String], json: bool) -> Result<String> {
    let path = Path::new(&args[0]);
    let m: i64 = args[1].parse().map_err(|_| anyhow!("--contour: m must be an integer, got `{}`", args[1]))?;
    let wire: SeriesWire = serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let series = wire.to_standalone_series()?;
    let numeric = contour_coeff(&series, m)?;
    let exact = series.coeff(&[-m])?;
    let (re, im) = exact.to_f64();
    let abs_err = (numeric.0 - re).hypot(numeric.1 - im);
    if json {
        return Ok(to_canonical_json(&ContourWire { m, contour: numeric.into(), exact: (&exact).into(), abs_err }));
    }
    Ok(format!(
        "contour {:.15e} {:+.15e}i\nexact   {exact}\nabs_err {abs_err:.3e}\n",
        numeric.0, numeric.1
    ))
}
