//! Command-line front end: file loading, command dispatch and deterministic
//! report rendering. The `poise` binary is a thin wrapper around [`dispatch`].

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ftasys::{
    annihilating_system, conjecture_batch, generate_grid_system, hermite_conjecture_check, log_lines,
    random_grid_coords, random_unimodular_map, solve_2d, univariate_roots, verify_maximality, write_log,
    AlgebraicSystem, SchemeSource, SolutionSet, SolveOptions, SystemJson, Verdict,
};
use crate::interp::{
    box_basis, fundamental_polynomials, interpolate, is_hermite_poised, is_poised, total_degree_basis, ConditionShape,
    HermiteScheme, KnotSet, KnotSetJson, MonomialBasis,
};
use crate::multipoly::{Polynomial, PolynomialJson};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Poised,
    Interpolate,
    Fundamental,
    HermiteCheck,
    Fta1,
    GenGrid,
    Solve2,
    VerifyMax,
    Annihilate,
    ConjectureBatch,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    /// `x^α` with `α_i < n_i`; `--degrees` lists one `n_i` per variable.
    #[default]
    Box,
    /// Total degree at most `n`; `--degrees` holds the single value `n`.
    Total,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    #[default]
    Total,
    Box,
}

impl From<ShapeArg> for ConditionShape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Total => ConditionShape::TotalOrder,
            ShapeArg::Box => ConditionShape::BoxOrder,
        }
    }
}

fn positive_float(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("must be a positive finite number".into())
    }
}

/// One invocation: a command plus every flag any command may consume.
#[derive(Clone, Debug, Parser)]
#[command(
    name = "poise",
    version,
    about = "Poised knot sets, interpolation and maximal polynomial systems"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Polynomial JSON file.
    #[arg(long)]
    pub poly: Option<PathBuf>,
    /// Knot set JSON file.
    #[arg(long)]
    pub knots: Option<PathBuf>,
    /// System JSON file.
    #[arg(long)]
    pub system: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = BasisKind::Box)]
    pub basis: BasisKind,
    /// Comma-separated degrees, e.g. `2,3`.
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<u32>>,
    #[arg(long, default_value_t = 1e-6, value_parser = positive_float)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Require exact rational solutions and report them without floats.
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Batch size for `conjecture-batch`.
    #[arg(long, default_value_t = 100)]
    pub count: u64,
    /// Data values for `interpolate`, comma-separated rationals in knot order.
    #[arg(long)]
    pub values: Option<String>,
    /// Grid coordinates for `gen-grid`: axes separated by `;`, values by `,`.
    #[arg(long)]
    pub coords: Option<String>,
    /// Compose the generated grid system with a random unimodular affine map.
    #[arg(long)]
    pub affine: bool,
    /// Derivative conditions implied by a multiplicity.
    #[arg(long, value_enum, default_value_t = ShapeArg::Total)]
    pub shape: ShapeArg,
}

impl RunConfig {
    /// Defaults for every flag.
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            poly: None,
            knots: None,
            system: None,
            basis: BasisKind::Box,
            degrees: None,
            tol: 1e-6,
            seed: 0,
            format: Format::Json,
            exact: false,
            out: None,
            count: 100,
            values: None,
            coords: None,
            affine: false,
            shape: ShapeArg::Total,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::parse(format!("{}:{}:{}", path.display(), e.line(), e.column()), e.to_string()))
}

fn in_file(path: &Path, err: Error) -> Error {
    match err {
        Error::Parse { context, message } => Error::parse(format!("{}: {context}", path.display()), message),
        other => other,
    }
}

pub fn load_polynomial_file(path: &Path) -> Result<Polynomial> {
    let json: PolynomialJson = parse_json(path)?;
    Polynomial::from_json(&json).map_err(|e| in_file(path, e))
}

pub fn load_knots_file(path: &Path) -> Result<KnotSet> {
    let json: KnotSetJson = parse_json(path)?;
    KnotSet::from_json(&json).map_err(|e| in_file(path, e))
}

pub fn load_system_file(path: &Path) -> Result<AlgebraicSystem> {
    let json: SystemJson = parse_json(path)?;
    AlgebraicSystem::from_json(&json).map_err(|e| in_file(path, e))
}

/// Exit code and the report for standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: String,
}

/// Runs one command. Exit 0 on success, 1 when the mathematical answer is
/// negative or the problem itself fails, 2 on malformed input.
pub fn dispatch(cfg: &RunConfig) -> Outcome {
    let (exit_code, value) = match run(cfg) {
        Ok((value, positive)) => (if positive { 0 } else { 1 }, value),
        Err(e) => {
            let input = e.is_input_error();
            log::error!("{e}");
            (
                if input { 2 } else { 1 },
                json!({"error": e.to_string(), "kind": if input { "input" } else { "domain" }}),
            )
        }
    };
    let report = match (&value, cfg.format) {
        (Value::String(s), _) => s.clone(),
        (_, Format::Json) => serde_json::to_string_pretty(&value).expect("values serialize") + "\n",
        (_, Format::Text) => render_text(&value),
    };
    Outcome { exit_code, report }
}

fn render_text(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {shown}\n"));
            }
        }
        other => {
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
    out
}

fn missing(flag: &str, cfg: &RunConfig) -> Error {
    Error::parse("arguments", format!("{:?} requires --{flag}", cfg.command))
}

fn require<'a, T>(v: &'a Option<T>, flag: &str, cfg: &RunConfig) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| missing(flag, cfg))
}

fn basis_for(cfg: &RunConfig, nvars: usize) -> Result<MonomialBasis> {
    let degrees = require(&cfg.degrees, "degrees", cfg)?;
    match cfg.basis {
        BasisKind::Box => {
            if degrees.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: degrees.len(),
                });
            }
            box_basis(degrees)
        }
        BasisKind::Total => match degrees.as_slice() {
            [n] => total_degree_basis(*n, nvars),
            _ => Err(Error::InvalidDegrees("--basis total takes a single degree".into())),
        },
    }
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

fn poly_json(p: &Polynomial) -> Value {
    serde_json::to_value(p.to_json()).expect("polynomials serialize")
}

fn system_json(s: &AlgebraicSystem) -> Value {
    serde_json::to_value(s.to_json()).expect("systems serialize")
}

fn solutions_json(set: &SolutionSet, exact: bool) -> Result<Value> {
    if !exact {
        return Ok(set.to_json());
    }
    let points = set.exact_points().ok_or_else(|| Error::Inexact {
        count: set.solutions.iter().filter(|s| s.exact.is_none()).count(),
    })?;
    Ok(json!({
        "nvars": set.nvars,
        "positive_dimensional": set.positive_dimensional,
        "distinct_count": set.distinct_count(),
        "multiplicity_sum": set.multiplicity_sum(),
        "solutions": points.iter().zip(&set.solutions).map(|(p, s)| json!({
            "exact": p.iter().map(format_rational).collect::<Vec<_>>(),
            "multiplicity": s.multiplicity,
        })).collect::<Vec<_>>(),
        "notes": set.notes,
    }))
}

fn solve_options(cfg: &RunConfig) -> SolveOptions {
    SolveOptions {
        tol: cfg.tol,
        seed: cfg.seed,
    }
}

fn solve_any(system: &AlgebraicSystem, cfg: &RunConfig) -> Result<SolutionSet> {
    match system.nvars() {
        1 => univariate_roots(&system.equations()[0]),
        2 => solve_2d(system, &solve_options(cfg)),
        d => Err(Error::UnsupportedDimension {
            nvars: d,
            supported: "1 or 2",
        }),
    }
}

/// The report plus whether the answer is positive.
fn run(cfg: &RunConfig) -> Result<(Value, bool)> {
    match cfg.command {
        Command::Poised => {
            let knots = load_knots_file(require(&cfg.knots, "knots", cfg)?)?;
            let basis = basis_for(cfg, knots.nvars())?;
            let cert = is_poised(&knots, &basis)?;
            Ok((
                json!({"poised": cert.poised, "det": format_rational(&cert.det)}),
                cert.poised,
            ))
        }
        Command::Interpolate => {
            let knots = load_knots_file(require(&cfg.knots, "knots", cfg)?)?;
            let basis = basis_for(cfg, knots.nvars())?;
            let values = match (&cfg.values, &cfg.poly) {
                (Some(v), None) => parse_list(v)?,
                (None, Some(path)) => {
                    let p = load_polynomial_file(path)?;
                    knots.points().map(|x| p.evaluate(x)).collect::<Result<_>>()?
                }
                _ => {
                    return Err(Error::parse(
                        "arguments",
                        "interpolate takes exactly one of --values, --poly",
                    ))
                }
            };
            let p = interpolate(&knots, &values, &basis)?;
            Ok((json!({"interpolant": poly_json(&p), "text": p.to_string()}), true))
        }
        Command::Fundamental => {
            let knots = load_knots_file(require(&cfg.knots, "knots", cfg)?)?;
            let basis = basis_for(cfg, knots.nvars())?;
            let ls = fundamental_polynomials(&knots, &basis)?;
            Ok((
                json!({"fundamental": ls.iter().map(poly_json).collect::<Vec<_>>()}),
                true,
            ))
        }
        Command::HermiteCheck => {
            let degrees = require(&cfg.degrees, "degrees", cfg)?;
            if let Some(path) = &cfg.system {
                let system = load_system_file(path)?;
                let solutions = solve_any(&system, cfg)?;
                let source = SchemeSource::Solved {
                    system,
                    solutions,
                    shape: cfg.shape.into(),
                };
                let record = hermite_conjecture_check(&source, degrees, 0, cfg.seed)?;
                let ok = record.verdict == Verdict::Nonsingular;
                return Ok((serde_json::to_value(&record).expect("records serialize"), ok));
            }
            let knots = load_knots_file(require(&cfg.knots, "knots or --system", cfg)?)?;
            let basis = basis_for(cfg, knots.nvars())?;
            let scheme = HermiteScheme::from_knots(knots, cfg.shape.into());
            let cert = is_hermite_poised(&scheme, &basis)?;
            Ok((
                json!({
                    "poised": cert.poised,
                    "det": format_rational(&cert.det),
                    "conditions": scheme.condition_count(),
                }),
                cert.poised,
            ))
        }
        Command::Fta1 => {
            let p = load_polynomial_file(require(&cfg.poly, "poly", cfg)?)?;
            let set = univariate_roots(&p)?;
            let roots: Vec<Value> = set
                .solutions
                .iter()
                .map(|s| {
                    if s.point[0].im == 0.0 {
                        json!(s.point[0].re)
                    } else {
                        json!({"re": s.point[0].re, "im": s.point[0].im})
                    }
                })
                .collect();
            Ok((
                json!({
                    "degree": p.total_degree(),
                    "roots": roots,
                    "multiplicities": set.solutions.iter().map(|s| s.multiplicity).collect::<Vec<_>>(),
                    "solutions": solutions_json(&set, cfg.exact)?,
                }),
                true,
            ))
        }
        Command::GenGrid => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let coords: Vec<Vec<Rational>> = match &cfg.coords {
                Some(c) => c.split(';').map(parse_list).collect::<Result<_>>()?,
                None => random_grid_coords(require(&cfg.degrees, "degrees or --coords", cfg)?, &mut rng),
            };
            let map = cfg.affine.then(|| random_unimodular_map(coords.len(), true, &mut rng));
            let (system, solutions) = generate_grid_system(&coords, map.as_ref())?;
            if let Some(out) = &cfg.out {
                let text = serde_json::to_string_pretty(&system.to_json()).expect("systems serialize") + "\n";
                std::fs::write(out, text).map_err(|source| Error::Io {
                    path: out.display().to_string(),
                    source,
                })?;
            }
            let mut report = json!({
                "system": system_json(&system),
                "solutions": solutions_json(&solutions, cfg.exact)?,
            });
            if let Some(m) = &map {
                report["affine_map"] = json!({
                    "matrix": m.matrix().to_rows().iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "offset": m.offset().iter().map(format_rational).collect::<Vec<_>>(),
                });
            }
            Ok((report, true))
        }
        Command::Solve2 => {
            let system = load_system_file(require(&cfg.system, "system", cfg)?)?;
            let set = solve_2d(&system, &solve_options(cfg))?;
            Ok((solutions_json(&set, cfg.exact)?, true))
        }
        Command::VerifyMax => {
            let system = load_system_file(require(&cfg.system, "system", cfg)?)?;
            let supplied = match &cfg.knots {
                Some(path) => {
                    let knots = load_knots_file(path)?;
                    Some(SolutionSet::from_exact(
                        knots.nvars(),
                        knots.points().map(<[_]>::to_vec).collect(),
                    ))
                }
                None => None,
            };
            let report = verify_maximality(&system, supplied.as_ref(), &solve_options(cfg))?;
            let ok = report.is_maximal && report.poisedness.verdict() == Some(true);
            let mut value = report.to_json();
            if cfg.exact {
                value["solutions"] = solutions_json(&report.solutions, true)?;
            }
            Ok((value, ok))
        }
        Command::Annihilate => {
            let knots = load_knots_file(require(&cfg.knots, "knots", cfg)?)?;
            let degrees = require(&cfg.degrees, "degrees", cfg)?;
            let system = annihilating_system(&knots, degrees)?;
            Ok((system_json(&system), true))
        }
        Command::ConjectureBatch => {
            let degrees = require(&cfg.degrees, "degrees", cfg)?;
            let records = conjecture_batch(degrees, cfg.count, cfg.seed, cfg.shape.into())?;
            let flagged: Vec<u64> = records.iter().filter(|r| r.flagged).map(|r| r.instance).collect();
            match &cfg.out {
                Some(path) => {
                    write_log(&records, path)?;
                    Ok((
                        json!({
                            "count": records.len(),
                            "log": path.display().to_string(),
                            "flagged": flagged,
                            "nonsingular": records.iter().filter(|r| r.verdict == Verdict::Nonsingular).count(),
                        }),
                        true,
                    ))
                }
                None => Ok((Value::String(log_lines(&records)), true)),
            }
        }
    }
}
