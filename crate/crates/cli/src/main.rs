//! `homolattice` command-line front end.
//!
//! Exit status is 0 on success, 1 for errors reported by the library and
//! 2 for malformed invocations.

mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use homolattice::arch::{compare_table, ArchReport, ArchSpec, Family};
use homolattice::code::{
    distance_x, distance_z, logical_basis_boundary_strategy, logical_basis_generic, logical_count,
    CodeParameters, DistanceResult, Method, DEFAULT_BUDGET,
};
use homolattice::dual::{check_correspondences, dualize};
use homolattice::homology::{summarize, HomologySummary};
use homolattice::{Strictness, Surface};

const BUDGET_ENV: &str = "HOMOLATTICE_BUDGET";
const DEFAULT_WMAX: usize = 8;

#[derive(Parser)]
#[command(
    name = "homolattice",
    version,
    about = "Surface codes with open and closed boundaries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a surface from a lattice family.
    Build {
        family: FamilyArg,
        /// Holes per row (hole families).
        #[arg(long)]
        h: Option<usize>,
        /// Holes per column; defaults to h.
        #[arg(long)]
        h2: Option<usize>,
        /// Hole size (hole families).
        #[arg(long)]
        t: Option<usize>,
        /// Lattice width (plain, rotated and torus families).
        #[arg(long = "L")]
        l: Option<usize>,
        /// Lattice height; defaults to L.
        #[arg(long = "L2")]
        l2: Option<usize>,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the validation report of a surface.
    Validate {
        input: PathBuf,
        /// Also require no closed edge between open vertices and girth at least 3.
        #[arg(long)]
        strict: bool,
    },
    /// Print n, k and optionally the distances.
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = DistanceMode::None)]
        distance: DistanceMode,
        #[arg(long)]
        budget: Option<usize>,
        /// Weight cap for `--distance brute`.
        #[arg(long, default_value_t = DEFAULT_WMAX)]
        wmax: usize,
        /// Write the report as JSON.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the dual surface.
    Dualize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        correspondence: Option<PathBuf>,
    },
    /// Write a symplectic basis of logical operators.
    Logicals {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = LogicalMethod::Generic)]
        method: LogicalMethod,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimum weight of a Z or X logical operator.
    Distance {
        input: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = SearchMethod::Exact)]
        method: SearchMethod,
        #[arg(long, default_value_t = DEFAULT_WMAX)]
        wmax: usize,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Tabulate architectures listed in a JSON spec file.
    Compare {
        #[arg(long)]
        spec_file: PathBuf,
        /// CSV output; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        distances: bool,
    },
    /// Render a surface with coordinates as SVG.
    ExportSvg {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Draw open edges dotted; otherwise they differ from closed edges only by colour.
        #[arg(long)]
        show_open_dotted: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    PlainSquare,
    RotatedSquare,
    Torus,
    SquareHole,
    DiamondHole,
    MixedDiamondHole,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::PlainSquare => Family::PlainSquare,
            FamilyArg::RotatedSquare => Family::RotatedSquare,
            FamilyArg::Torus => Family::Torus,
            FamilyArg::SquareHole => Family::SquareHole,
            FamilyArg::DiamondHole => Family::DiamondHole,
            FamilyArg::MixedDiamondHole => Family::MixedDiamondHole,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistanceMode {
    Exact,
    Brute,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum LogicalMethod {
    Generic,
    Boundary,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Z,
    X,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMethod {
    Exact,
    Brute,
}

/// A malformed invocation detected after argument parsing.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Build {
            family,
            h,
            h2,
            t,
            l,
            l2,
            output,
        } => {
            let spec = ArchSpec {
                family: family.into(),
                h,
                h2,
                t,
                l,
                l2,
            };
            let s = spec.generate()?;
            emit(output.as_deref(), &s.to_json())
        }
        Command::Validate { input, strict } => {
            let s = read_surface(&input)?;
            let flags = if strict {
                Strictness::ALL
            } else {
                Strictness::NONE
            };
            let report = s.validate(flags);
            if report.is_empty() {
                println!("valid");
                Ok(())
            } else {
                println!("{report}");
                bail!("{} violation(s)", report.violations.len())
            }
        }
        Command::Analyze {
            input,
            distance,
            budget,
            wmax,
            output,
        } => analyze(&input, distance, budget, wmax, output.as_deref()),
        Command::Dualize {
            input,
            output,
            correspondence,
        } => {
            let s = load(&input)?;
            let (d, c) = dualize(&s)?;
            let problems = check_correspondences(&s, &d, &c);
            if !problems.is_empty() {
                bail!("dual correspondences failed: {}", problems.join("; "));
            }
            if let Some(path) = correspondence {
                write(&path, &serde_json::to_string(&c)?)?;
            }
            emit(output.as_deref(), &d.to_json())
        }
        Command::Logicals {
            input,
            method,
            output,
        } => {
            let s = load(&input)?;
            let basis = match method {
                LogicalMethod::Generic => logical_basis_generic(&s)?,
                LogicalMethod::Boundary => logical_basis_boundary_strategy(&s)?,
            };
            eprintln!("k = {}", basis.k());
            emit(output.as_deref(), &serde_json::to_string(&basis)?)
        }
        Command::Distance {
            input,
            side,
            method,
            wmax,
            budget,
        } => {
            let s = load(&input)?;
            let method = match method {
                SearchMethod::Exact => Method::Exact {
                    budget: resolve_budget(budget)?,
                },
                SearchMethod::Brute => Method::BruteForce { w_max: wmax },
            };
            let r = match side {
                SideArg::Z => distance_z(&s, method)?,
                SideArg::X => distance_x(&s, method)?,
            };
            println!("d = {}", r.d);
            println!("method = {}", r.method);
            println!("witness = {:?}", r.witness_edges);
            Ok(())
        }
        Command::Compare {
            spec_file,
            output,
            json,
            distances,
        } => {
            let text = fs::read_to_string(&spec_file)
                .with_context(|| format!("reading {}", spec_file.display()))?;
            let specs: Vec<ArchSpec> = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", spec_file.display()))?;
            let rows = compare_table(&specs, distances);
            if let Some(path) = json {
                write(&path, &serde_json::to_string_pretty(&rows)?)?;
            }
            emit(output.as_deref(), &to_csv(&rows)?)
        }
        Command::ExportSvg {
            input,
            output,
            show_open_dotted,
        } => {
            let s = load(&input)?;
            emit(output.as_deref(), &svg::render(&s, show_open_dotted)?)
        }
    }
}

#[derive(Serialize)]
struct AnalysisReport {
    #[serde(flatten)]
    params: CodeParameters,
    homology: HomologySummary,
    distance_method: Option<&'static str>,
    z_witness: Option<Vec<usize>>,
    x_witness: Option<Vec<usize>>,
}

fn analyze(
    input: &Path,
    mode: DistanceMode,
    budget: Option<usize>,
    wmax: usize,
    output: Option<&Path>,
) -> Result<()> {
    let s = load(input)?;
    let homology = summarize(&s)?;
    let k = logical_count(&s)?;
    let method = match mode {
        DistanceMode::None => None,
        DistanceMode::Exact => Some(Method::Exact {
            budget: resolve_budget(budget)?,
        }),
        DistanceMode::Brute => Some(Method::BruteForce { w_max: wmax }),
    };
    let (mut z, mut x): (Option<DistanceResult>, Option<DistanceResult>) = (None, None);
    if let Some(m) = method.filter(|_| k > 0) {
        z = Some(distance_z(&s, m)?);
        x = Some(distance_x(&s, m)?);
    }
    let dz = z.as_ref().map(|r| r.d);
    let dx = x.as_ref().map(|r| r.d);
    let report = AnalysisReport {
        params: CodeParameters {
            n: homology.non_open_edges,
            k,
            dz,
            dx,
            d: dz.zip(dx).map(|(a, b)| a.min(b)),
        },
        homology,
        distance_method: method.map(|m| m.name()),
        z_witness: z.map(|r| r.witness_edges),
        x_witness: x.map(|r| r.witness_edges),
    };
    let show = |v: Option<usize>| v.map_or("-".to_string(), |d| d.to_string());
    println!("n = {}", report.params.n);
    println!("k = {}", report.params.k);
    println!("d_Z = {}", show(report.params.dz));
    println!("d_X = {}", show(report.params.dx));
    println!("d = {}", show(report.params.d));
    if let Some(path) = output {
        write(path, &serde_json::to_string_pretty(&report)?)?;
    }
    Ok(())
}

/// `--budget` wins over the environment, which wins over the default.
fn resolve_budget(flag: Option<usize>) -> Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            UsageError(format!(
                "{BUDGET_ENV} must be a non-negative integer, got {v:?}"
            ))
            .into()
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    family: &'a str,
    h: Option<usize>,
    h2: Option<usize>,
    t: Option<usize>,
    n: Option<usize>,
    k: Option<usize>,
    dz: Option<usize>,
    dx: Option<usize>,
    d: Option<usize>,
    overhead: Option<&'a str>,
    formula_n: Option<u64>,
    formula_k: Option<u64>,
    formula_d: Option<u64>,
    #[serde(rename = "match")]
    matches: bool,
}

fn to_csv(rows: &[ArchReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        if let Some(e) = &r.error {
            let p = |v: Option<usize>| v.map_or("-".into(), |x| x.to_string());
            eprintln!(
                "{} (h={}, h2={}, t={}): {e}",
                r.family,
                p(r.h),
                p(r.h2),
                p(r.t)
            );
        }
        w.serialize(CsvRow {
            family: &r.family,
            h: r.h,
            h2: r.h2,
            t: r.t,
            n: r.n,
            k: r.k,
            dz: r.dz,
            dx: r.dx,
            d: r.d,
            overhead: r.overhead.as_deref(),
            formula_n: r.formula_n,
            formula_k: r.formula_k,
            formula_d: r.formula_d,
            matches: r.matches,
        })?;
    }
    if rows.is_empty() {
        w.write_record([
            "family",
            "h",
            "h2",
            "t",
            "n",
            "k",
            "dz",
            "dx",
            "d",
            "overhead",
            "formula_n",
            "formula_k",
            "formula_d",
            "match",
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| anyhow!("{e}"))?;
    Ok(String::from_utf8(bytes)?)
}

fn read_surface(path: &Path) -> Result<Surface> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Surface::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Reads a surface and checks the structural conditions every command relies on.
fn load(path: &Path) -> Result<Surface> {
    let s = read_surface(path)?;
    s.ensure_valid(Strictness::NONE)?;
    Ok(s)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `path`, or to stdout when absent.
fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write(p, contents),
        None => {
            let mut text = contents.to_string();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}
