//! `wprm`: parameters, tables, generator matrices and invariant checks for
//! weighted projective Reed-Muller codes on `P(1,a,b)`.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wprm::bounds::{min_distance_with_cap, min_l_brute, min_l_over_reduction, theorem_distance};
use wprm::evalcode::{build_code, exhaustive_min_distance, DistanceResult, DistanceStatus};
use wprm::lattice::{dimension, in_regularity_set, reduction};
use wprm::plane::PlaneParams;
use wprm::verify::{verify, VerifyConfig};
use wprm::{Error, DEFAULT_SEARCH_CAP};

#[derive(Parser)]
#[command(name = "wprm", version, about = "Weighted projective Reed-Muller codes on P(1,a,b)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, k and the minimum distance of C_d.
    Params {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// One row of parameters per degree 1..=d_max.
    Table {
        #[command(flatten)]
        plane: PlaneArgs,
        d_max: u64,
        #[command(flatten)]
        opts: CommonOpts,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run every invariant check for degrees 1..=d_max.
    Verify {
        #[command(flatten)]
        plane: PlaneArgs,
        d_max: u64,
        #[command(flatten)]
        opts: CommonOpts,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the exhaustive search on C_d above this degree.
        #[arg(long)]
        skip_exhaustive_above: Option<u64>,
    },
    /// Write the generator matrix of C_d in text form.
    Matrix {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Dump red(d) as JSON with the strata R, T, H.
    Reduction {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Compare the closed formulas with the search oracles for one degree.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args)]
struct PlaneArgs {
    /// Field order, a prime power.
    q: u64,
    a: u64,
    b: u64,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    plane: PlaneArgs,
    /// Weighted degree.
    d: u64,
}

#[derive(Args)]
struct CommonOpts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest q^k enumerated by exhaustive searches.
    #[arg(long, env = "WPRM_CAP", default_value_t = DEFAULT_SEARCH_CAP)]
    cap: u64,
    /// Largest accepted d_max for range commands.
    #[arg(long, default_value_t = 10_000)]
    dmax_guard: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

enum Failure {
    /// Invalid input: exit status 2.
    Usage(String),
    /// Failed verification or I/O: exit status 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Params { code, opts } => cmd_params(&code, &opts),
        Command::Table {
            plane,
            d_max,
            opts,
            output,
        } => cmd_table(&plane, d_max, &opts, output),
        Command::Verify {
            plane,
            d_max,
            opts,
            seed,
            skip_exhaustive_above,
        } => cmd_verify(&plane, d_max, &opts, seed, skip_exhaustive_above),
        Command::Matrix { code, output } => cmd_matrix(&code, output),
        Command::Reduction { code } => cmd_reduction(&code),
        Command::Distance { code, opts } => cmd_distance(&code, &opts),
    }
}

fn plane_of(p: &PlaneArgs) -> CliResult<PlaneParams> {
    Ok(PlaneParams::from_order(p.q, p.a, p.b)?)
}

fn check_d(d: u64) -> CliResult {
    if d == 0 {
        return Err(Failure::Usage("the degree must be at least 1".into()));
    }
    if d > wprm::MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(d).into());
    }
    Ok(())
}

fn check_range(d_max: u64, opts: &CommonOpts) -> CliResult {
    check_d(d_max)?;
    if d_max > opts.dmax_guard {
        return Err(Failure::Usage(format!(
            "d_max = {d_max} exceeds --dmax-guard {}",
            opts.dmax_guard
        )));
    }
    Ok(())
}

fn emit(text: &str, output: Option<PathBuf>) -> CliResult {
    match output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

struct Row {
    d: u64,
    n: u64,
    k: u64,
    dist: DistanceResult,
    refined: bool,
}

fn row(plane: &PlaneParams, d: u64, cap: u64) -> CliResult<Row> {
    let theorem = theorem_distance(plane, d)?;
    let dist = min_distance_with_cap(plane, d, cap)?;
    Ok(Row {
        d,
        n: plane.n(),
        k: dimension(plane, d)?,
        refined: theorem.status == DistanceStatus::LowerBound && dist.status == DistanceStatus::Exact,
        dist,
    })
}

fn cmd_params(args: &CodeArgs, opts: &CommonOpts) -> CliResult {
    let plane = plane_of(&args.plane)?;
    check_d(args.d)?;
    let r = row(&plane, args.d, opts.cap)?;
    let regular = in_regularity_set(&plane, args.d);
    let witness = r.dist.witness.as_ref().map(|w| w.to_string());
    let source = if r.refined { "line code" } else { "formula" };
    let text = match opts.format {
        Format::Text => {
            let mut s = format!("n={} k={} dmin={}({})\n", r.n, r.k, r.dist.value, r.dist.status);
            s.push_str(&format!("regular={regular}\nsource={source}\n"));
            if let Some(w) = &witness {
                s.push_str(&format!("witness={w}\n"));
            }
            s
        }
        Format::Csv => format!(
            "q,a,b,d,n,k,dmin,status,regular,witness\n{},{},{},{},{},{},{},{},{},{}\n",
            plane.q(),
            plane.a(),
            plane.b(),
            r.d,
            r.n,
            r.k,
            r.dist.value,
            r.dist.status,
            regular,
            witness.as_deref().unwrap_or("")
        ),
        Format::Json => {
            let v = json!({
                "q": plane.q(), "a": plane.a(), "b": plane.b(), "d": r.d,
                "n": r.n, "k": r.k, "dmin": r.dist.value,
                "status": r.dist.status.as_str(), "regular": regular,
                "source": source, "witness": witness,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    };
    emit(&text, None)
}

fn cmd_table(args: &PlaneArgs, d_max: u64, opts: &CommonOpts, output: Option<PathBuf>) -> CliResult {
    let plane = plane_of(args)?;
    check_range(d_max, opts)?;
    let rows: Vec<Row> = (1..=d_max).map(|d| row(&plane, d, opts.cap)).collect::<CliResult<_>>()?;
    let text = match opts.format {
        Format::Csv => {
            let mut s = String::from("d,n,k,dmin,status\n");
            for r in &rows {
                s.push_str(&format!("{},{},{},{},{}\n", r.d, r.n, r.k, r.dist.value, r.dist.status));
            }
            s
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({"d": r.d, "n": r.n, "k": r.k, "dmin": r.dist.value, "status": r.dist.status.as_str()})
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Text => {
            let mut s = format!("{:>6} {:>6} {:>6} {:>6}  status\n", "d", "n", "k", "dmin");
            for r in &rows {
                s.push_str(&format!(
                    "{:>6} {:>6} {:>6} {:>6}  {}\n",
                    r.d, r.n, r.k, r.dist.value, r.dist.status
                ));
            }
            s
        }
    };
    emit(&text, output)
}

fn cmd_verify(
    args: &PlaneArgs,
    d_max: u64,
    opts: &CommonOpts,
    seed: u64,
    skip_exhaustive_above: Option<u64>,
) -> CliResult {
    let plane = plane_of(args)?;
    check_range(d_max, opts)?;
    let mut cfg = VerifyConfig::new(d_max);
    cfg.cap = opts.cap;
    cfg.seed = seed;
    cfg.skip_exhaustive_above = skip_exhaustive_above;
    let report = verify(&plane, &cfg)?;
    let text = match opts.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("json")),
        Format::Csv => {
            let mut s = String::from("check,passed,failed,skipped\n");
            for c in &report.checks {
                s.push_str(&format!("\"{}\",{},{},{}\n", c.name, c.passed, c.failed, c.skipped));
            }
            s
        }
        Format::Text => format!("{report}\n"),
    };
    emit(&text, None)?;
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Runtime(format!(
            "verification failed: {}",
            report.first_failure().unwrap_or("unknown")
        )))
    }
}

fn cmd_matrix(args: &CodeArgs, output: Option<PathBuf>) -> CliResult {
    let plane = plane_of(&args.plane)?;
    check_d(args.d)?;
    emit(&build_code(&plane, args.d)?.to_text(), output)
}

fn cmd_reduction(args: &CodeArgs) -> CliResult {
    let plane = plane_of(&args.plane)?;
    check_d(args.d)?;
    emit(&format!("{}\n", reduction(&plane, args.d)?.to_json()), None)
}

fn cmd_distance(args: &CodeArgs, opts: &CommonOpts) -> CliResult {
    let plane = plane_of(&args.plane)?;
    let d = args.d;
    check_d(d)?;
    let theorem = theorem_distance(&plane, d)?;
    let brute = min_l_brute(&plane, d)?;
    let closed = match min_l_over_reduction(&plane, d) {
        Ok(v) => Some(v),
        Err(Error::Unsupported | Error::DegreeRegular(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let exhaustive = match exhaustive_min_distance(&build_code(&plane, d)?, opts.cap) {
        Ok(r) => Some(r),
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let fin = min_distance_with_cap(&plane, d, opts.cap)?;
    let text = match opts.format {
        Format::Json => {
            let v = json!({
                "formula": serde_json::to_value(&theorem).expect("json"),
                "min_l_closed_form": closed.map(|v| json!({"value": v.value, "point": v.point})),
                "min_l_brute_force": json!({"value": brute.value, "point": brute.point}),
                "exhaustive": exhaustive.as_ref().map(|r| serde_json::to_value(r).expect("json")),
                "result": serde_json::to_value(&fin).expect("json"),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Text | Format::Csv => {
            let mut s = String::new();
            s.push_str(&format!("formula: {} ({})\n", theorem.value, theorem.status));
            match &closed {
                Some(v) => s.push_str(&format!("min L closed form: {} at {}\n", v.value, v.point)),
                None => s.push_str("min L closed form: n/a\n"),
            }
            s.push_str(&format!("min L brute force: {} at {}\n", brute.value, brute.point));
            match &exhaustive {
                Some(r) => s.push_str(&format!("exhaustive: {}\n", r.value)),
                None => s.push_str("exhaustive: formula-only (q^k exceeds the cap)\n"),
            }
            s.push_str(&format!("result: {} ({})\n", fin.value, fin.status));
            if let Some(w) = &fin.witness {
                s.push_str(&format!("witness: {w}\n"));
            }
            s
        }
    };
    emit(&text, None)
}
