//! Command-line front end. [`run`] never exits the process; `main` does.

mod output;

pub use output::{format_sig, Cell, Table};

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::channel::{polarize_tree, rate_diagnostic, TreeMode};
use crate::curves::{curve_spec, Family};
use crate::error::Error;
use crate::kernel::{build_kernel, descend_binary, KernelMatrix};
use crate::metrics::{
    exact_profile, exponent, exponent_ag, exponent_binary_bound, goppa_profile, paper_profile,
    Profile, DEFAULT_BUDGET,
};
use crate::oesterle::oesterle;
use crate::study;

#[derive(Debug, Parser)]
#[command(
    name = "agpolar",
    version,
    about = "Polarization kernels from algebraic-geometry codes"
)]
struct Cli {
    /// Emit a JSON array of objects instead of CSV.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a curve kernel and write it in the kernel file format.
    Kernel(KernelArgs),
    /// Partial-distance profile of a kernel file.
    Profile(ProfileArgs),
    /// Exponent of a kernel file, or the closed form for (L, g, q).
    Exponent(ExponentArgs),
    /// Oesterlé genus bound for (q, L).
    Oesterle(OesterleArgs),
    /// Erasure-channel polarization tree for a kernel file.
    Polarize(PolarizeArgs),
    /// Parameter studies.
    #[command(subcommand)]
    Study(StudyCommand),
}

#[derive(Debug, Args)]
struct KernelArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    q0: Option<u64>,
    /// Extension degree (Reed-Solomon family only).
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Descend to the binary mL x mL kernel before writing.
    #[arg(long)]
    descend: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Goppa,
    Paper,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    #[arg(long)]
    kernel: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Genus used by the paper method.
    #[arg(long, default_value_t = 0)]
    genus: usize,
}

#[derive(Debug, Args)]
struct ExponentArgs {
    #[arg(long, conflicts_with_all = ["length", "g", "q", "binary"])]
    kernel: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    genus: usize,
    #[arg(long = "L")]
    length: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    /// Binary concatenated bound log2((L-g)!)/(L log2(mL)).
    #[arg(long, requires = "m")]
    binary: bool,
    #[arg(long)]
    m: Option<f64>,
}

#[derive(Debug, Args)]
struct OesterleArgs {
    #[arg(long)]
    q: f64,
    #[arg(long = "L")]
    length: f64,
}

#[derive(Debug, Args)]
struct PolarizeArgs {
    #[arg(long)]
    kernel: PathBuf,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    levels: u32,
    /// Sample this many random paths instead of the full tree.
    #[arg(long)]
    paths: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated β values for the rate diagnostic.
    #[arg(long, value_delimiter = ',')]
    beta: Vec<f64>,
    /// Emit every leaf value instead of summary statistics.
    #[arg(long)]
    dump: bool,
}

#[derive(Debug, Subcommand)]
enum StudyCommand {
    /// E2 over all divisors m of a fixed n.
    Table1 {
        #[arg(long)]
        n: u64,
        /// Use q = 2 for the m = 2 row.
        #[arg(long)]
        literal_q2: bool,
    },
    /// Length where two family curves swap order.
    Crossover {
        #[arg(long)]
        a: Family,
        #[arg(long)]
        b: Family,
        #[arg(long)]
        nlo: f64,
        #[arg(long)]
        nhi: f64,
    },
    /// Sweep at fixed θ (over m) or fixed m (over L).
    Sweep(SweepArgs),
    /// Error-correction bound along the family curves.
    Ecc {
        #[arg(long)]
        rate: f64,
        /// Defaults to all three families.
        #[arg(long)]
        family: Option<Family>,
        #[arg(long, default_value_t = 1e2)]
        nlo: f64,
        #[arg(long, default_value_t = 1e8)]
        nhi: f64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
    /// E2 along the family curves at log-spaced n.
    Family {
        #[arg(long)]
        family: Option<Family>,
        #[arg(long, default_value_t = 1e2)]
        nlo: f64,
        #[arg(long, default_value_t = 1e7)]
        nhi: f64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Fix {
    Theta,
    M,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    fix: Fix,
    /// θ in radians (or `pi/k`), or m.
    #[arg(long, value_parser = parse_real)]
    value: f64,
    /// Explicit comma-separated grid of m (fix theta) or L (fix m).
    #[arg(long, value_delimiter = ',')]
    grid: Vec<f64>,
    #[arg(long)]
    lo: Option<f64>,
    #[arg(long)]
    hi: Option<f64>,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Log-spaced grid between lo and hi.
    #[arg(long)]
    log: bool,
}

fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    if let Some(rest) = t.strip_prefix("pi") {
        let div = match rest.strip_prefix('/') {
            Some(d) => d.parse::<f64>().map_err(|e| e.to_string())?,
            None if rest.is_empty() => 1.0,
            None => return Err(format!("cannot parse '{s}'")),
        };
        return Ok(std::f64::consts::PI / div);
    }
    t.parse::<f64>().map_err(|e| e.to_string())
}

/// Result of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `argv` (including the program name) and runs the command.
/// Exit codes: 0 success, 1 computation error, 2 usage error.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut warnings = String::new();
    match dispatch(cli.command, cli.json, &mut warnings) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: warnings,
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("{warnings}error: {msg}\n"),
        },
        Err(Failure::Compute(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("{warnings}error: {msg}\n"),
        },
    }
}

fn dispatch(cmd: Command, json: bool, warnings: &mut String) -> CliResult<String> {
    match cmd {
        Command::Kernel(a) => cmd_kernel(a, json),
        Command::Profile(a) => cmd_profile(a, json),
        Command::Exponent(a) => cmd_exponent(a, json),
        Command::Oesterle(a) => cmd_oesterle(a, json),
        Command::Polarize(a) => cmd_polarize(a, json),
        Command::Study(s) => cmd_study(s, json, warnings),
    }
}

fn read_kernel(path: &PathBuf) -> CliResult<KernelMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Compute(format!("cannot read {}: {e}", path.display())))?;
    Ok(KernelMatrix::parse_text(&text)?)
}

fn cmd_kernel(a: KernelArgs, json: bool) -> CliResult<String> {
    let spec = match a.family {
        Family::Rational => {
            let m =
                a.m.ok_or_else(|| Failure::Usage("--family rs needs --m".into()))?;
            curve_spec(Family::Rational, 0, m)?
        }
        f => {
            let q0 =
                a.q0.ok_or_else(|| Failure::Usage(format!("--family {f} needs --q0")))?;
            curve_spec(f, q0, 0)?
        }
    };
    let mut k = build_kernel(&spec, &spec.field()?)?;
    if a.descend {
        k = descend_binary(&k);
    }
    let text = k.to_text();
    match a.out {
        Some(path) => {
            fs::write(&path, &text)
                .map_err(|e| Failure::Compute(format!("cannot write {}: {e}", path.display())))?;
            let mut t = Table::new(&["family", "m", "L", "genus", "poly", "out"]);
            t.push(vec![
                spec.family.short_name().into(),
                u64::from(k.ctx().m()).into(),
                k.size().into(),
                k.genus().into(),
                k.ctx().modulus().into(),
                path.display().to_string().into(),
            ]);
            Ok(t.render(json))
        }
        None if json => {
            let rows: Vec<Vec<u32>> = (0..k.size())
                .map(|r| k.row(r).iter().map(|e| e.0).collect())
                .collect();
            let doc = serde_json::json!([{
                "m": k.ctx().m(),
                "L": k.size(),
                "poly": k.ctx().modulus(),
                "rows": rows,
                "poles": k.pole_orders(),
                "genus": k.genus(),
            }]);
            Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
        }
        None => Ok(text),
    }
}

fn compute_profile(
    k: &KernelMatrix,
    method: Method,
    budget: u64,
    genus: usize,
) -> CliResult<Profile> {
    Ok(match method {
        Method::Exact => exact_profile(k, budget),
        Method::Goppa => goppa_profile(k)?,
        Method::Paper => paper_profile(k.size(), genus)?,
    })
}

fn cmd_profile(a: ProfileArgs, json: bool) -> CliResult<String> {
    let k = read_kernel(&a.kernel)?;
    let p = compute_profile(&k, a.method, a.budget, a.genus)?;
    let mut t = Table::new(&["index", "D", "kind"]);
    for (i, (&d, kind)) in p.values.iter().zip(&p.kinds).enumerate() {
        t.push(vec![(i + 1).into(), d.into(), kind.as_str().into()]);
    }
    Ok(t.render(json))
}

fn cmd_exponent(a: ExponentArgs, json: bool) -> CliResult<String> {
    let mut t = Table::new(&["E", "base", "source"]);
    if let Some(path) = &a.kernel {
        let k = read_kernel(path)?;
        let p = compute_profile(&k, a.method, a.budget, a.genus)?;
        let r = exponent::<f64>(&p)?;
        t.push(vec![r.e.into(), r.base.into(), r.source.as_str().into()]);
        return Ok(t.render(json));
    }
    let (Some(l), Some(g)) = (a.length, a.g) else {
        return Err(Failure::Usage("give --kernel, or --L and --g".into()));
    };
    if a.binary {
        let m = a.m.expect("clap enforces --m with --binary");
        let e = exponent_binary_bound(l, g, m)?;
        t.push(vec![e.into(), (m * l).into(), "closed_form".into()]);
    } else {
        let q =
            a.q.ok_or_else(|| Failure::Usage("--q is required without --binary".into()))?;
        let e = exponent_ag(l, g, q)?;
        t.push(vec![e.into(), l.into(), "closed_form".into()]);
    }
    Ok(t.render(json))
}

fn cmd_oesterle(a: OesterleArgs, json: bool) -> CliResult<String> {
    let r = oesterle(a.q, a.length)?;
    let mut t = Table::new(&["ell", "u", "theta", "genus"]);
    t.push(vec![
        r.ell.map(u64::from).into(),
        r.u.into(),
        r.theta.map_or(Cell::Empty, |x| Cell::Fixed(x, 10)),
        Cell::Fixed(r.genus_bound, 4),
    ]);
    Ok(t.render(json))
}

fn cmd_polarize(a: PolarizeArgs, json: bool) -> CliResult<String> {
    let k = read_kernel(&a.kernel)?;
    let mode = match a.paths {
        Some(paths) => TreeMode::SampledPaths { paths },
        None => TreeMode::FullTree,
    };
    let run = polarize_tree(&k, a.eps, a.levels, mode, a.seed)?;
    if a.dump {
        let mut t = Table::new(&["index", "p"]);
        for (i, &p) in run.results.iter().enumerate() {
            t.push(vec![i.into(), p.into()]);
        }
        return Ok(t.render(json));
    }
    let min = run.results.iter().copied().fold(f64::INFINITY, f64::min);
    let max = run
        .results
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let mut t = Table::new(&["quantity", "beta", "value"]);
    t.push(vec!["leaves".into(), Cell::Empty, run.results.len().into()]);
    t.push(vec!["mean".into(), Cell::Empty, run.mean().into()]);
    t.push(vec!["min".into(), Cell::Empty, min.into()]);
    t.push(vec!["max".into(), Cell::Empty, max.into()]);
    t.push(vec![
        "polarized_fraction".into(),
        Cell::Empty,
        run.polarized_fraction(1e-3, 1.0 - 1e-3).into(),
    ]);
    if !a.beta.is_empty() {
        if mode != TreeMode::FullTree {
            return Err(Failure::Usage(
                "--beta needs the full tree (omit --paths)".into(),
            ));
        }
        for (beta, frac) in rate_diagnostic(&run, &a.beta)? {
            t.push(vec!["rate_fraction".into(), beta.into(), frac.into()]);
        }
    }
    Ok(t.render(json))
}

const ROW_HEADERS: [&str; 6] = ["m", "q", "L", "genus", "n", "E2"];

fn row_cells(r: &study::StudyRow) -> Vec<Cell> {
    vec![
        r.m.into(),
        r.q.into(),
        r.length.into(),
        r.genus.into(),
        r.n.into(),
        r.e2.into(),
    ]
}

fn families(f: Option<Family>) -> Vec<Family> {
    f.map_or(Family::ALL.to_vec(), |f| vec![f])
}

fn cmd_study(cmd: StudyCommand, json: bool, warnings: &mut String) -> CliResult<String> {
    match cmd {
        StudyCommand::Table1 { n, literal_q2 } => {
            let table = study::table_fixed_n(n, literal_q2)?;
            if let Some(w) = &table.warning {
                warnings.push_str(&format!("warning: {w}\n"));
            }
            let mut headers = ROW_HEADERS.to_vec();
            headers.push("argmax");
            let mut t = Table::new(&headers);
            for (i, r) in table.rows.iter().enumerate() {
                let mut cells = row_cells(r);
                cells.push(if table.argmax == Some(i) {
                    "argmax".into()
                } else {
                    Cell::Empty
                });
                t.push(cells);
            }
            Ok(t.render(json))
        }
        StudyCommand::Crossover { a, b, nlo, nhi } => {
            let c = study::crossover(a, b, nlo, nhi)?;
            let mut t = Table::new(&["family_a", "family_b", "n_star", "n_lo", "n_hi"]);
            t.push(vec![
                a.short_name().into(),
                b.short_name().into(),
                c.n_star.into(),
                c.bracket.0.into(),
                c.bracket.1.into(),
            ]);
            Ok(t.render(json))
        }
        StudyCommand::Sweep(s) => {
            let grid = if !s.grid.is_empty() {
                s.grid.clone()
            } else {
                let (Some(lo), Some(hi)) = (s.lo, s.hi) else {
                    return Err(Failure::Usage("give --grid or both --lo and --hi".into()));
                };
                if s.log {
                    study::log_grid(lo, hi, s.samples)
                } else {
                    linear_grid(lo, hi, s.samples)
                }
            };
            let rows = match s.fix {
                Fix::Theta => study::sweep_fixed_theta(s.value, &grid)?,
                Fix::M => study::sweep_fixed_m(s.value, &grid)?,
            };
            let mut t = Table::new(&ROW_HEADERS);
            rows.iter().for_each(|r| t.push(row_cells(r)));
            Ok(t.render(json))
        }
        StudyCommand::Ecc {
            rate,
            family,
            nlo,
            nhi,
            samples,
        } => {
            let mut t = Table::new(&["family", "m", "L", "genus", "n", "bound"]);
            for f in families(family) {
                for p in study::ecc_bound(f, rate, nlo, nhi, samples)? {
                    t.push(vec![
                        f.short_name().into(),
                        p.m.into(),
                        p.length.into(),
                        p.genus.into(),
                        p.n.into(),
                        p.bound.into(),
                    ]);
                }
            }
            Ok(t.render(json))
        }
        StudyCommand::Family {
            family,
            nlo,
            nhi,
            samples,
        } => {
            let mut headers = vec!["family"];
            headers.extend(ROW_HEADERS);
            let mut t = Table::new(&headers);
            for f in families(family) {
                for r in study::family_curve(f, nlo, nhi, samples)? {
                    let mut cells = vec![f.short_name().into()];
                    cells.extend(row_cells(&r));
                    t.push(cells);
                }
            }
            Ok(t.render(json))
        }
    }
}

fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}
