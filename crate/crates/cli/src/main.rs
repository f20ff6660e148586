use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crystalk::crystal::oracle::fixed_rank;
use crystalk::crystal::{canonical_gamma, validate_gamma, GammaDescriptor, ReportOptions, TheoremReport, Theorems};
use crystalk::linalg::{smith_invariants, IntMatrix};
use crystalk::verify::verify;
use crystalk::{Error, Int};

#[derive(Parser)]
#[command(name = "crystalk", version, about = "Cohomology and K-theory of Z^n x| Z/p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every theorem group for the given group.
    Report(Common),
    /// Run the invariant grid and print a pass/fail table.
    Verify(Common),
    /// Print the raw oracle values.
    Oracle(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// The prime p.
    #[arg(long)]
    p: Option<u64>,
    /// Number of cyclotomic blocks; selects the canonical action.
    #[arg(long, conflicts_with = "matrix")]
    k: Option<usize>,
    /// JSON file `{"p": .., "matrix": [[..], ..]}` with the generator action.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Inclusive degree window `a..b`, overriding the defaults.
    #[arg(long, value_parser = parse_degrees, allow_hyphen_values = true)]
    degrees: Option<(i64, i64)>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Evaluate independent cells on all cores.
    #[arg(long)]
    parallel: bool,
    /// Skip the brute-force oracles in reports.
    #[arg(long)]
    no_oracle: bool,
    /// Write stdout output to this file instead.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_degrees(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("bad lower degree: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("bad upper degree: {e}"))?;
    if a > b {
        return Err(format!("empty degree window {a}..{b}"));
    }
    Ok((a, b))
}

#[derive(Deserialize)]
struct MatrixFile {
    p: u64,
    matrix: Vec<Vec<Int>>,
}

enum Failure {
    Verify,
    Validation(String),
    Io(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Validation(_) => 2,
            Failure::Io(_) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

fn descriptor(c: &Common) -> Result<GammaDescriptor, Failure> {
    match (&c.matrix, c.k) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let file: MatrixFile = serde_json::from_str(&text)
                .map_err(|e| Failure::Validation(format!("Shape: {}: {e}", path.display())))?;
            if let Some(p) = c.p {
                if p != file.p {
                    return Err(Error::MismatchedPrime(p, file.p).into());
                }
            }
            let rho = IntMatrix::try_from_int_rows(file.matrix)
                .ok_or_else(|| Failure::Validation("Shape: matrix rows have unequal lengths".into()))?;
            Ok(validate_gamma(file.p, rho)?)
        }
        (None, Some(k)) => {
            let p = c.p.ok_or_else(|| Failure::Validation("--p is required with --k".into()))?;
            Ok(canonical_gamma(p, k)?)
        }
        (None, None) => Err(Failure::Validation("exactly one of --k and --matrix is required".into())),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn run_report(c: &Common) -> Result<String, Failure> {
    let g = descriptor(c)?;
    let opts = ReportOptions { degrees: c.degrees, run_oracles: !c.no_oracle };
    let report = TheoremReport::build(&g, &opts)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(match c.format {
        Format::Text => report.to_text(),
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    })
}

fn run_verify(c: &Common) -> Result<(String, bool), Failure> {
    let g = descriptor(c)?;
    let report = verify(&g, c.parallel).map_err(|e| Failure::Internal(e.to_string()))?;
    let out = match c.format {
        Format::Text => report.to_table(),
        Format::Json => json(&report),
    };
    Ok((out, report.all_passed()))
}

#[derive(Serialize)]
struct OracleOutput {
    p: u64,
    n: usize,
    k: usize,
    canonical: bool,
    rho: Vec<Vec<Int>>,
    r: Vec<u64>,
    r_fixed_rank: Vec<u64>,
    a: Vec<u64>,
    s: Vec<u64>,
    /// `[Ĥ^0, Ĥ^1]` of each exterior power.
    tate: Vec<[String; 2]>,
    coker_snf: Vec<Int>,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn run_oracle(c: &Common) -> Result<String, Failure> {
    let g = descriptor(c)?;
    let th = Theorems::new(&g)?;
    let n = g.n as i64;
    let r_fixed_rank = (0..=g.n).map(|m| fixed_rank(&g, m).map(|x| x as u64)).collect::<Result<Vec<_>, _>>()?;
    let module = g.module();
    let mut tate = Vec::new();
    for j in 0..=g.n {
        let lam = module.exterior_power(j)?;
        tate.push([lam.tate(0)?.to_string(), lam.tate(1)?.to_string()]);
    }
    let out = OracleOutput {
        p: g.p,
        n: g.n,
        k: g.k,
        canonical: g.canonical,
        rho: g.rho.to_rows(),
        r: th.r_values().to_vec(),
        r_fixed_rank,
        a: th.a_values().to_vec(),
        s: (0..=n + 1).map(|m| th.s(m)).collect(),
        tate,
        coker_snf: smith_invariants(&g.rho.sub(&IntMatrix::identity(g.n))),
    };
    if c.format == Format::Json {
        return Ok(json(&out));
    }
    let mut s = String::new();
    let _ = writeln!(s, "p={} n={} k={} canonical={} rho={}", out.p, out.n, out.k, out.canonical, g.rho);
    let _ = writeln!(s, "r: {} | a: {} | s: {}", join(&out.r), join(&out.a), join(&out.s));
    let _ = writeln!(s, "r (fixed rank): {}", join(&out.r_fixed_rank));
    for (j, [t0, t1]) in out.tate.iter().enumerate() {
        let _ = writeln!(s, "tate Lambda^{j}: H^0 = {t0}, H^1 = {t1}");
    }
    let _ = writeln!(s, "coker(rho - I) SNF: {}", join(&out.coker_snf));
    Ok(s)
}

fn emit(out: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, out).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Report(c) => emit(&run_report(&c)?, c.output.as_deref()),
        Command::Oracle(c) => emit(&run_oracle(&c)?, c.output.as_deref()),
        Command::Verify(c) => {
            let (out, ok) = run_verify(&c)?;
            emit(&out, c.output.as_deref())?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verify => eprintln!("verification failed"),
                Failure::Validation(m) | Failure::Io(m) | Failure::Internal(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
