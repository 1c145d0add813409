//! `elliptic-bohr`: solve, verify, sweep and trace the elliptic condenser
//! Bohr radius from the command line.
//!
//! Exit codes: 0 success, 2 usage or range error, 3 parameter outside a
//! proved regime, 4 a verification did not hold.

// `!(x > 0.0)` guards are meant to reject NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use elliptic_bohr::coefficients::campaign::COEFFICIENT_FAMILIES;
use elliptic_bohr::coefficients::{run_campaign, CampaignConfig, Family};
use elliptic_bohr::condenser::EllipticCondenser;
use elliptic_bohr::extremal::{optimality_witness, sup_trace, ExtremalFamily, OptimalityWitness};
use elliptic_bohr::radius::{solve_radius, RadiusKind};
use elliptic_bohr::summation::Truncation;
use elliptic_bohr::{Error, Execution};

use output::{fmt_f64, sink, write_csv, write_json};

const EXIT_USAGE: u8 = 2;
const EXIT_REGIME: u8 = 3;
const EXIT_FAILED: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "elliptic-bohr", version, about = "Bohr radius of the elliptic condenser in its Faber basis")]
struct Cli {
    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Run data-parallel loops sequentially.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root of the defining series.
    Solve {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Run the coefficient inequalities on generated positive-real-part series.
    Verify {
        #[arg(long = "R")]
        level: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        /// Comma-separated family names; defaults to every family valid at R.
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        /// Generate real-coefficient series (enables `real_coefficient`).
        #[arg(long)]
        real_coefficients: bool,
    },
    /// Tabulate the defining series on a uniform grid of levels.
    Sweep {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long = "R-lo")]
        lo: f64,
        #[arg(long = "R-hi")]
        hi: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, default_value_t = 1e-15)]
        tol: f64,
    },
    /// Circle maxima of an extremal family and the optimality verdict at R.
    Extremal {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long = "R")]
        level: f64,
        #[arg(long, default_value_t = 4)]
        k_min: u32,
        #[arg(long, default_value_t = 16)]
        k_max: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Level, inverse level and eccentricity of the solved radii and any
    /// extra levels or inverse levels given.
    Geometry {
        #[arg(long = "R", value_delimiter = ',')]
        levels: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        rho: Vec<f64>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Kind {
    Real,
    General,
}

impl From<Kind> for RadiusKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Real => RadiusKind::RealCoefficients,
            Kind::General => RadiusKind::General,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FamilyArg {
    Phi1,
    Phi2,
}

impl From<FamilyArg> for ExtremalFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Phi1 => ExtremalFamily::Phi1,
            FamilyArg::Phi2 => ExtremalFamily::Phi2,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Io(std::io::Error),
    /// Ran to completion but something did not hold.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Regime(_) | Error::Hypothesis(_)) => EXIT_REGIME,
            Failure::Lib(Error::Generator { .. }) | Failure::Verification => EXIT_FAILED,
            Failure::Lib(_) | Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => 1,
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Io(e) => eprintln!("error: {e}"),
                Failure::Verification => eprintln!("verification failed"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

/// Sizes the global pool from `ELLIPTIC_BOHR_THREADS` when set.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("ELLIPTIC_BOHR_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("ELLIPTIC_BOHR_THREADS must be a positive integer, got {raw:?}"))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let out = &mut *sink(cli.output.as_deref())?;
    let result = match &cli.command {
        Command::Solve { kind, tol } => solve(out, cli.format.unwrap_or(Format::Json), *kind, *tol),
        Command::Verify {
            level,
            seed,
            count,
            n_max,
            families,
            real_coefficients,
        } => {
            let mut config = CampaignConfig::new(*level, *count);
            config.seed = *seed;
            config.n_max = *n_max;
            config.real_coefficients = *real_coefficients;
            config.families = families.as_deref().map(parse_families).transpose()?;
            verify(out, cli.format.unwrap_or(Format::Json), &config, exec)
        }
        Command::Sweep { kind, lo, hi, steps, tol } => {
            sweep(out, cli.format.unwrap_or(Format::Csv), (*kind).into(), *lo, *hi, *steps, *tol)
        }
        Command::Extremal {
            family,
            level,
            k_min,
            k_max,
            tol,
        } => extremal(
            out,
            cli.format.unwrap_or(Format::Json),
            (*family).into(),
            *level,
            (*k_min, *k_max),
            *tol,
            exec,
        ),
        Command::Geometry { levels, rho } => geometry(out, cli.format.unwrap_or(Format::Csv), levels, rho),
    };
    out.flush()?;
    result
}

fn parse_families(names: &[String]) -> Result<Vec<Family>, Failure> {
    names
        .iter()
        .map(|n| {
            Family::from_name(n.trim()).ok_or_else(|| {
                let known: Vec<_> = COEFFICIENT_FAMILIES.iter().map(|f| f.name()).collect();
                Failure::Usage(format!("unknown family {n:?}; expected one of {}", known.join(", ")))
            })
        })
        .collect()
}

fn solve(out: &mut dyn Write, format: Format, kind: Kind, tol: f64) -> Outcome {
    if !(tol > 0.0) {
        return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
    }
    let sol = solve_radius(kind.into(), tol)?;
    match format {
        Format::Json => write_json(out, &sol)?,
        Format::Csv => write_csv(
            out,
            &["kind", "value", "bracket_lo", "bracket_hi", "truncation_order", "tail_bound", "residual"],
            &[vec![
                sol.kind.name().to_string(),
                fmt_f64(sol.value),
                fmt_f64(sol.bracket[0]),
                fmt_f64(sol.bracket[1]),
                sol.truncation_order.to_string(),
                fmt_f64(sol.tail_bound),
                fmt_f64(sol.residual),
            ]],
        )?,
    }
    Ok(())
}

fn verify(out: &mut dyn Write, format: Format, config: &CampaignConfig, exec: Execution) -> Outcome {
    if !(0.0 <= config.level && config.level < 1.0) {
        return Err(Failure::Usage(format!("--R must lie in [0, 1), got {}", config.level)));
    }
    let summary = run_campaign(config, exec)?;
    match format {
        Format::Json => write_json(out, &summary)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = summary
                .families
                .iter()
                .map(|(name, f)| {
                    vec![
                        name.to_string(),
                        f.reports.to_string(),
                        f.all_hold.to_string(),
                        f.min_slack.map(fmt_f64).unwrap_or_default(),
                        fmt_f64(f.max_ratio),
                        f.failing_seeds.len().to_string(),
                    ]
                })
                .collect();
            write_csv(
                out,
                &["family", "reports", "all_hold", "min_slack", "max_ratio", "failing"],
                &rows,
            )?
        }
    }
    if summary.all_hold {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(rename = "R")]
    level: f64,
    series: f64,
}

#[derive(Serialize)]
struct Sweep {
    kind: RadiusKind,
    rows: Vec<SweepRow>,
}

fn sweep(out: &mut dyn Write, format: Format, kind: RadiusKind, lo: f64, hi: f64, steps: usize, tol: f64) -> Outcome {
    if !(0.0 <= lo && lo < hi && hi < 1.0) {
        return Err(Failure::Usage(format!("need 0 <= R-lo < R-hi < 1, got [{lo}, {hi}]")));
    }
    if steps < 2 {
        return Err(Failure::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    let rows = (0..steps)
        .map(|i| {
            let level = if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            };
            let s = kind.series(level, tol, Truncation::Adaptive)?;
            Ok(SweepRow { level, series: s.value })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    match format {
        Format::Json => write_json(out, &Sweep { kind, rows })?,
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows.iter().map(|r| vec![fmt_f64(r.level), fmt_f64(r.series)]).collect();
            write_csv(out, &["R", "series"], &cells)?
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ExtremalOutput {
    trace: elliptic_bohr::ExtremalTrace,
    verdict: OptimalityWitness,
}

fn extremal(
    out: &mut dyn Write,
    format: Format,
    family: ExtremalFamily,
    level: f64,
    (k_min, k_max): (u32, u32),
    tol: f64,
    exec: Execution,
) -> Outcome {
    if !(0.0 < level && level < 1.0) {
        return Err(Failure::Usage(format!("--R must lie in (0, 1), got {level}")));
    }
    let trace = sup_trace(family, level, k_min, k_max, exec)?;
    let verdict = optimality_witness(family.kind(), level, tol)?;
    match format {
        Format::Json => write_json(out, &ExtremalOutput { trace, verdict })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = trace
                .steps
                .iter()
                .map(|s| {
                    vec![
                        s.k.to_string(),
                        fmt_f64(s.r_k),
                        fmt_f64(s.re_zk),
                        fmt_f64(s.im_zk),
                        fmt_f64(s.sup_value),
                        fmt_f64(s.metric),
                        fmt_f64(s.alpha_or_beta),
                        fmt_f64(s.bohr_sum_normalized),
                    ]
                })
                .collect();
            write_csv(
                out,
                &["k", "r_k", "re_zk", "im_zk", "sup_value", "metric", "alpha_or_beta", "bohr_sum_normalized"],
                &rows,
            )?;
            // the CSV holds only the trace, the verdict goes to stderr
            eprintln!("{}", output::to_json(&verdict));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct GeometryRow {
    label: String,
    #[serde(rename = "R")]
    level: f64,
    rho: f64,
    eccentricity: f64,
}

#[derive(Serialize)]
struct Geometry {
    rows: Vec<GeometryRow>,
}

fn geometry(out: &mut dyn Write, format: Format, levels: &[f64], rhos: &[f64]) -> Outcome {
    let mut rows = Vec::new();
    let mut push = |label: String, c: EllipticCondenser| {
        rows.push(GeometryRow {
            label,
            level: c.level(),
            rho: c.rho(),
            eccentricity: c.eccentricity(),
        })
    };
    for kind in [RadiusKind::RealCoefficients, RadiusKind::General] {
        let sol = solve_radius(kind, 1e-14)?;
        push(kind.name().to_string(), EllipticCondenser::new(sol.value)?);
    }
    for &r in levels {
        push("level".into(), EllipticCondenser::new(r)?);
    }
    for &rho in rhos {
        push("rho".into(), EllipticCondenser::from_rho(rho)?);
    }
    match format {
        Format::Json => write_json(out, &Geometry { rows })?,
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.label.clone(), fmt_f64(r.level), fmt_f64(r.rho), fmt_f64(r.eccentricity)])
                .collect();
            write_csv(out, &["label", "R", "rho", "eccentricity"], &cells)?
        }
    }
    Ok(())
}
