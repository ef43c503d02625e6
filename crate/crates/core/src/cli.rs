//! The `lambda-arc` command line.
//!
//! Exit codes: 0 success, 2 usage, 3 invalid input arc, 4 structural
//! violation, 5 oracle disagreement.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::arc::{parse_arc, validate_simple, ArcFormat, PolygonalArc};
use crate::arc_gen::{derive_seeds, generate_arc, GenConfig, Strategy, RNG_ALGORITHM};
use crate::error::Error;
use crate::geom::{Tolerance, DEFAULT_EPS_ANGLE};
use crate::hull::convex_hull;
use crate::oracle::{brute_force_pairs, compare_with_solver, AgreementReport, OraclePair};
use crate::report::{AnalysisReport, SolutionReport, SolveReport, TiltReport, SCHEMA_VERSION};
use crate::solver::{solve_closed, Analysis};
use crate::svg::{render_scene, render_schematic, Scene};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID_ARC: i32 = 3;
pub const EXIT_STRUCTURAL: i32 = 4;
pub const EXIT_DISAGREEMENT: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "lambda-arc", version, about = "Support-line pairs for simple polygonal arcs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum What {
    Scene,
    Schematic,
}

#[derive(Debug, Args)]
struct Input {
    /// Arc file (JSON or CSV).
    input: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Absolute length tolerance; defaults to 1e-9 times the bounding-box diagonal.
    #[arg(long)]
    eps: Option<f64>,
    /// Angular tolerance in degrees.
    #[arg(long = "eps-angle")]
    eps_angle: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the arc is simple.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Hull, guide path, locales and tilt table.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also solve at these angles (degrees).
        #[arg(long)]
        phi: Vec<f64>,
    },
    /// Support-line pairs at one angle.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        phi: f64,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write <stem>.scene.svg and <stem>.schematic.svg.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Brute-force pairs and agreement with the solver.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        phi: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Draw a scene or a schematic diagram.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long)]
        phi: Vec<f64>,
    },
    /// Generate arcs, solve them and compare with the oracle.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        nodes: usize,
        #[arg(long, value_enum, default_value_t = Strategy::Uncross)]
        strategy: Strategy,
        /// Also check every multiple of this step in [0, 180) and both thresholds.
        #[arg(long = "phi-grid")]
        phi_grid: Option<f64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            Self::Core(e) => match e {
                Error::InvalidArgument(_) | Error::TooLarge { .. } | Error::Generation(_) => EXIT_USAGE,
                Error::Structural(_) => EXIT_STRUCTURAL,
                Error::Parse { .. }
                | Error::InvalidArc(_)
                | Error::DegenerateHull
                | Error::UnsupportedArc(_) => EXIT_INVALID_ARC,
            },
            Self::Io { .. } => EXIT_USAGE,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Validate { input } => validate(&input, out),
        Command::Analyze { input, json, phi } => analyze(&input, json.as_deref(), &phi, out),
        Command::Solve {
            input,
            phi,
            json,
            svg,
        } => solve(&input, phi, json.as_deref(), svg.as_deref(), out),
        Command::Oracle { input, phi, json } => oracle(&input, phi, json.as_deref(), out),
        Command::Render {
            input,
            what,
            svg,
            phi,
        } => render(&input, what, &svg, &phi, out),
        Command::Fuzz {
            count,
            seed,
            nodes,
            strategy,
            phi_grid,
            json,
        } => fuzz(count, seed, nodes, strategy, phi_grid, json.as_deref(), out),
    }
}

fn load(input: &Input) -> CliResult<(PolygonalArc, Tolerance)> {
    let path = &input.input;
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let format = match input.format {
        Some(FormatArg::Json) => ArcFormat::Json,
        Some(FormatArg::Csv) => ArcFormat::Csv,
        None => ArcFormat::from_path(&path.to_string_lossy()),
    };
    let arc = parse_arc(&text, format)?;
    let eps_angle = input.eps_angle.unwrap_or(DEFAULT_EPS_ANGLE);
    let tol = match input.eps {
        Some(eps) => Tolerance::new(eps, eps_angle)?,
        None => Tolerance::new(arc.tolerance().eps_len, eps_angle)?,
    };
    Ok((arc, tol))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

/// Writes JSON to `path` when given, otherwise to `out`.
fn emit(json: &str, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => write_file(p, json),
        None => out.write_all(json.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn stem_with(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn validate(input: &Input, out: &mut dyn Write) -> CliResult<i32> {
    let (arc, tol) = load(input)?;
    let report = validate_simple(&arc, &tol);
    if report.is_ok() {
        let _ = writeln!(out, "ok: {} nodes, simple", arc.len());
        return Ok(EXIT_OK);
    }
    for v in &report.violations {
        let _ = writeln!(out, "{v}");
    }
    Ok(EXIT_INVALID_ARC)
}

fn analyze(input: &Input, json: Option<&Path>, phis: &[f64], out: &mut dyn Write) -> CliResult<i32> {
    let (arc, tol) = load(input)?;
    let report = if arc.is_closed() {
        let pair = solve_closed(&arc, &tol)?;
        AnalysisReport::closed(&arc, &convex_hull(&arc, &tol)?, &pair)
    } else {
        let an = Analysis::new(&arc, tol)?;
        let sols = phis.iter().map(|&p| an.solve(p)).collect::<Result<Vec<_>, _>>()?;
        AnalysisReport::open(&an, &sols)
    };
    emit(&to_json(&report), json, out)?;
    Ok(EXIT_OK)
}

fn solve(
    input: &Input,
    phi: f64,
    json: Option<&Path>,
    svg: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let (arc, tol) = load(input)?;
    let report = if arc.is_closed() {
        if phi != 0.0 {
            return Err(Error::UnsupportedArc("closed arcs are solved at phi = 0 only".into()).into());
        }
        let pair = solve_closed(&arc, &tol)?;
        if let Some(stem) = svg {
            let hull = convex_hull(&arc, &tol)?;
            let scene = Scene::closed(&arc, &hull, &pair);
            write_file(&stem_with(stem, ".scene.svg"), &render_scene(&scene)?)?;
        }
        SolveReport {
            schema: SCHEMA_VERSION,
            tilt_table: None,
            solution: SolutionReport::closed(&pair),
        }
    } else {
        let an = Analysis::new(&arc, tol)?;
        let sol = an.solve(phi)?;
        if let Some(stem) = svg {
            let scene = Scene::from_analysis(&an, &sol.pairs);
            write_file(&stem_with(stem, ".scene.svg"), &render_scene(&scene)?)?;
            write_file(&stem_with(stem, ".schematic.svg"), &render_schematic(&an.schematic, &[phi]))?;
        }
        SolveReport {
            schema: SCHEMA_VERSION,
            tilt_table: Some(TiltReport::from(&an.tilts)),
            solution: SolutionReport::from(&sol),
        }
    };
    emit(&to_json(&report), json, out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct OracleOutput {
    schema: u32,
    phi: f64,
    pairs: Vec<OraclePair>,
    agreement: AgreementReport,
}

fn oracle(input: &Input, phi: f64, json: Option<&Path>, out: &mut dyn Write) -> CliResult<i32> {
    let (arc, tol) = load(input)?;
    let result = brute_force_pairs(&arc, phi, &tol)?;
    let agreement = compare_with_solver(&arc, phi, &tol)?;
    let agree = agreement.agree;
    let output = OracleOutput {
        schema: SCHEMA_VERSION,
        phi,
        pairs: result.pairs,
        agreement,
    };
    emit(&to_json(&output), json, out)?;
    Ok(if agree { EXIT_OK } else { EXIT_DISAGREEMENT })
}

fn render(input: &Input, what: What, stem: &Path, phis: &[f64], out: &mut dyn Write) -> CliResult<i32> {
    let (arc, tol) = load(input)?;
    let path = match what {
        What::Scene => {
            let svg = if arc.is_closed() {
                let pair = solve_closed(&arc, &tol)?;
                render_scene(&Scene::closed(&arc, &convex_hull(&arc, &tol)?, &pair))?
            } else {
                let an = Analysis::new(&arc, tol)?;
                let mut pairs = Vec::new();
                for &p in phis {
                    pairs.extend(an.solve(p)?.pairs);
                }
                render_scene(&Scene::from_analysis(&an, &pairs))?
            };
            let path = stem_with(stem, ".scene.svg");
            write_file(&path, &svg)?;
            path
        }
        What::Schematic => {
            let an = Analysis::new(&arc, tol)?;
            for &p in phis {
                an.solve(p)?;
            }
            let path = stem_with(stem, ".schematic.svg");
            write_file(&path, &render_schematic(&an.schematic, phis))?;
            path
        }
    };
    let _ = writeln!(out, "wrote {}", path.display());
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
struct FuzzCase {
    index: usize,
    seed: u64,
    checks: usize,
    error: Option<String>,
    structural: bool,
    mismatches: Vec<String>,
}

#[derive(Serialize)]
struct FuzzReport {
    schema: u32,
    rng: &'static str,
    seed: u64,
    count: usize,
    nodes: usize,
    strategy: Strategy,
    phi_grid: Option<f64>,
    agree: usize,
    failures: Vec<FuzzCase>,
}

/// Query angles for one arc: 0, the grid, and both thresholds below 180.
pub fn fuzz_angles(an: &Analysis, step: Option<f64>) -> Vec<f64> {
    let mut phis = vec![0.0];
    if let Some(step) = step {
        let mut k = 1.0;
        while k * step < 180.0 {
            phis.push(k * step);
            k += 1.0;
        }
        phis.extend([an.tilts.phi_l, an.tilts.phi_r.abs()].into_iter().filter(|&p| p < 180.0));
    }
    phis
}

fn fuzz_one(index: usize, seed: u64, nodes: usize, strategy: Strategy, step: Option<f64>) -> FuzzCase {
    let mut case = FuzzCase {
        index,
        seed,
        checks: 0,
        error: None,
        structural: false,
        mismatches: Vec::new(),
    };
    let run = || -> Result<(usize, Vec<String>), Error> {
        let arc = generate_arc(&GenConfig::new(seed, nodes, strategy))?;
        let tol = arc.tolerance();
        let an = Analysis::new(&arc, tol)?;
        let mut mismatches = Vec::new();
        let phis = fuzz_angles(&an, step);
        for &phi in &phis {
            let r = compare_with_solver(&arc, phi, &tol)?;
            mismatches.extend(r.mismatches.into_iter().map(|m| format!("phi {phi}: {m}")));
        }
        Ok((phis.len(), mismatches))
    };
    match run() {
        Ok((checks, mismatches)) => {
            case.checks = checks;
            case.mismatches = mismatches;
        }
        Err(e) => {
            case.structural = matches!(e, Error::Structural(_));
            case.error = Some(e.to_string());
        }
    }
    case
}

fn fuzz(
    count: usize,
    seed: u64,
    nodes: usize,
    strategy: Strategy,
    phi_grid: Option<f64>,
    json: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<i32> {
    if nodes < 3 {
        return Err(Error::InvalidArgument("--nodes must be at least 3".into()).into());
    }
    if let Some(step) = phi_grid {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidArgument("--phi-grid must be positive".into()).into());
        }
    }
    let seeds = derive_seeds(seed, count);
    let cases: Vec<FuzzCase> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| fuzz_one(i, s, nodes, strategy, phi_grid))
        .collect();
    let failures: Vec<FuzzCase> = cases
        .into_iter()
        .filter(|c| c.error.is_some() || !c.mismatches.is_empty())
        .collect();
    let agree = count - failures.len();
    let code = if failures.iter().any(|c| c.structural) {
        EXIT_STRUCTURAL
    } else if failures.iter().any(|c| !c.mismatches.is_empty()) {
        EXIT_DISAGREEMENT
    } else if failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_USAGE
    };
    let report = FuzzReport {
        schema: SCHEMA_VERSION,
        rng: RNG_ALGORITHM,
        seed,
        count,
        nodes,
        strategy,
        phi_grid,
        agree,
        failures,
    };
    if let Some(path) = json {
        write_file(path, &to_json(&report))?;
    }
    for f in &report.failures {
        let detail = f.error.clone().unwrap_or_else(|| f.mismatches.join("; "));
        let _ = writeln!(out, "arc {} (seed {}): {detail}", f.index, f.seed);
    }
    let _ = writeln!(out, "{agree}/{count} agree");
    Ok(code)
}
