//! Command-line front end: parse a function, analyze it over chosen moduli,
//! run the exhaustive verification suites, search for extremal examples, and
//! emit the coefficient matrices.

use clap::{Parser, Subcommand, ValueEnum};
use moddeg::boolfn::parse_function;
use moddeg::extremal::{self, VerificationReport};
use moddeg::{report, Error};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

// Exit codes: 0 everything passed, 1 a verified claim failed or an internal
// cross-check tripped, 2 usage or parameter errors (clap uses 2 as well),
// 3 a size cap was exceeded, 4 I/O trouble.
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPS: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "moddeg",
    version,
    about = "Exact degrees of Boolean functions over Z and Z_m: analysis, exhaustive verification, extremal constructions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the payload to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json (default), text, or csv (matrices; also their default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree, per-modulus degree and Mahler coefficients, periods,
    /// sensitivity, and ignored variables of one function.
    Analyze {
        /// `n:HEX`, `s:BITSTRING`, `parity(n)`, `nae(n)`, `mod(n,c,m)`, or `exact(n,w)`.
        spec: String,
        /// Moduli to analyze over.
        #[arg(long = "mod", value_name = "M[,M...]", value_delimiter = ',', default_value = "2,3,6")]
        moduli: Vec<u64>,
    },
    /// Run one exhaustive verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        /// Worker threads for the enumeration; reports are identical at any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Observational searches that assert nothing.
    Search {
        #[command(subcommand)]
        what: SearchCmd,
    },
    /// Diophantine index search plus the verified low-degree witness.
    Construct {
        /// Square-free composite modulus.
        #[arg(long = "mod")]
        m: u64,
        /// Auxiliary prime not dividing the modulus.
        #[arg(long)]
        q: u64,
        /// Required approximation quality as a fraction a/b in (0,1).
        #[arg(long, value_parser = parse_eps, default_value = "1/2")]
        eps: (u64, u64),
        /// Largest index to try.
        #[arg(long, default_value_t = 1000)]
        lmax: u64,
        /// Build the witness at this index instead of the first feasible one.
        #[arg(long)]
        l: Option<u64>,
    },
    /// Coefficient matrices: A for the weight-residue indicators mod p, or
    /// the signed binomial square C.
    Matrix {
        /// Prime for the matrix A of size p^t.
        #[arg(long)]
        p: Option<u64>,
        /// Prime power exponent for A.
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Emit the size-N signed binomial matrix C instead.
        #[arg(long, value_name = "N", conflicts_with_all = ["p", "t"])]
        c: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    #[value(name = "pk_bound")]
    PkBound,
    #[value(name = "lowdeg")]
    Lowdeg,
    #[value(name = "pq_bound")]
    PqBound,
    #[value(name = "periodicity")]
    Periodicity,
    #[value(name = "matrices")]
    Matrices,
    #[value(name = "relations")]
    Relations,
    #[value(name = "simon")]
    Simon,
    #[value(name = "mod_degree")]
    ModDegree,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Minimum deg_m over all non-trivial symmetric profiles on n bits.
    MinDegree {
        #[arg(long = "mod")]
        m: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Largest non-trivial symmetric restriction of a truth table.
    Embed {
        /// Function spec, as in `analyze`.
        spec: String,
    },
}

fn parse_eps(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once('/').ok_or("expected a fraction a/b")?;
    let a: u64 = a.trim().parse().map_err(|_| "numerator must be an integer")?;
    let b: u64 = b.trim().parse().map_err(|_| "denominator must be an integer")?;
    if a == 0 || b == 0 || a >= b {
        return Err("eps must satisfy 0 < a/b < 1".into());
    }
    Ok((a, b))
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn lib_exit_code(e: &Error) -> u8 {
    match e {
        Error::CheckFailed(_) => EXIT_VIOLATION,
        Error::CapExceeded { .. } => EXIT_CAPS,
        _ => EXIT_USAGE,
    }
}

fn need<T>(v: Option<T>, flag: &str, suite: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("suite {suite} requires --{flag}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((payload, code)) => {
            if let Err(e) = emit(&cli.out, &payload) {
                eprintln!("i/o error: {e}");
                return ExitCode::from(EXIT_IO);
            }
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(lib_exit_code(&e))
        }
    }
}

fn emit(out: &Option<PathBuf>, payload: &str) -> std::io::Result<()> {
    let mut text = payload.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let fmt = cli.format.unwrap_or(Format::Json);
    match &cli.cmd {
        Cmd::Analyze { spec, moduli } => {
            if moduli.is_empty() {
                return Err(Failure::Usage("--mod needs at least one modulus".into()));
            }
            let v = report::analyze_value(spec, moduli)?;
            let payload = match fmt {
                Format::Json => v.to_string(),
                Format::Text => analyze_text(&v),
                Format::Csv => return Err(Failure::Usage("csv applies to matrix output only".into())),
            };
            Ok((payload, 0))
        }
        Cmd::Verify { suite, p, q, k, t, n, jobs } => {
            let r = dispatch_suite(*suite, *p, *q, *k, *t, *n, *jobs)?;
            let payload = match fmt {
                Format::Json => r.to_json(),
                Format::Text => report_text(&r),
                Format::Csv => return Err(Failure::Usage("csv applies to matrix output only".into())),
            };
            Ok((payload, if r.pass { 0 } else { EXIT_VIOLATION }))
        }
        Cmd::Search { what } => match what {
            SearchCmd::MinDegree { m, n, jobs } => {
                let r = extremal::min_degree_scan(*m, *n, *jobs)?;
                let payload = match fmt {
                    Format::Json => r.to_json(),
                    Format::Text => report_text(&r),
                    Format::Csv => return Err(Failure::Usage("csv applies to matrix output only".into())),
                };
                Ok((payload, 0))
            }
            SearchCmd::Embed { spec } => {
                let f = parse_function(spec)?.to_table()?;
                let e = extremal::embed_symmetric_search(&f)?;
                let v = json!({
                    "input": spec,
                    "kept": e.kept,
                    "assignment": e.assignment.iter().map(|&(i, b)| json!([i, u8::from(b)])).collect::<Vec<_>>(),
                    "profile": e.profile.to_string(),
                });
                let payload = match fmt {
                    Format::Json => v.to_string(),
                    Format::Text => embed_text(&v),
                    Format::Csv => return Err(Failure::Usage("csv applies to matrix output only".into())),
                };
                Ok((payload, 0))
            }
        },
        Cmd::Construct { m, q, eps, lmax, l } => {
            let v = report::construct_value(*m, *q, *eps, *lmax, *l)?;
            let payload = match fmt {
                Format::Json => v.to_string(),
                Format::Text => construct_text(&v),
                Format::Csv => return Err(Failure::Usage("csv applies to matrix output only".into())),
            };
            Ok((payload, 0))
        }
        Cmd::Matrix { p, t, c } => {
            let csv = match (p, c) {
                (Some(p), None) => report::matrix_csv(*p, *t)?,
                (None, Some(size)) => report::c_matrix_csv(*size)?,
                _ => return Err(Failure::Usage("matrix needs either --p [--t] or --c N".into())),
            };
            let payload = match cli.format.unwrap_or(Format::Csv) {
                Format::Csv | Format::Text => csv.trim_end().to_string(),
                Format::Json => csv_to_json(&csv),
            };
            Ok((payload, 0))
        }
    }
}

fn dispatch_suite(
    suite: Suite,
    p: Option<u64>,
    q: Option<u64>,
    k: Option<u32>,
    t: Option<u32>,
    n: Option<usize>,
    jobs: usize,
) -> Result<VerificationReport, Failure> {
    let r = match suite {
        Suite::PkBound => extremal::verify_pk_bound(
            need(p, "p", "pk_bound")?,
            need(k, "k", "pk_bound")?,
            need(n, "n", "pk_bound")?,
            jobs,
        )?,
        Suite::Lowdeg => extremal::verify_lowdeg(
            need(p, "p", "lowdeg")?,
            need(k, "k", "lowdeg")?,
            need(t, "t", "lowdeg")?,
            need(n, "n", "lowdeg")?,
            jobs,
        )?,
        Suite::PqBound => extremal::verify_pq_bound(
            need(p, "p", "pq_bound")?,
            need(q, "q", "pq_bound")?,
            need(n, "n", "pq_bound")?,
            jobs,
        )?,
        Suite::Periodicity => extremal::verify_periodicity(need(n, "n", "periodicity")?, jobs)?,
        Suite::Matrices => extremal::verify_matrices()?,
        Suite::Relations => extremal::verify_relations(
            need(p, "p", "relations")?,
            need(q, "q", "relations")?,
            need(n, "n", "relations")?,
            jobs,
        )?,
        Suite::Simon => extremal::verify_simon(need(n, "n", "simon")?, jobs)?,
        Suite::ModDegree => extremal::verify_mod_degree()?,
    };
    Ok(r)
}

fn report_text(r: &VerificationReport) -> String {
    let witnesses =
        if r.witnesses.is_empty() { "-".to_string() } else { r.witnesses.join(" ") };
    format!(
        "{} {}: examined={} min_observed={} bound={} witnesses={witnesses}",
        r.claim,
        if r.pass { "pass" } else { "FAIL" },
        r.examined,
        r.min_observed,
        r.bound,
    )
}

fn analyze_text(v: &Value) -> String {
    let mut lines = vec![format!(
        "{} ({}, n={}): degree={} sensitivity={} dumb_bits={}",
        v["input"].as_str().unwrap_or("?"),
        v["kind"].as_str().unwrap_or("?"),
        v["n"],
        v["degree"],
        v["sensitivity"],
        list_or_dash(&v["dumb_bits"]),
    )];
    if let Some(mods) = v["mods"].as_array() {
        for e in mods {
            let periods = match e["base_periods"].as_array() {
                None => "-".to_string(),
                Some(ps) => ps
                    .iter()
                    .map(|p| format!("pi_{}={}", p["p"], p["pi"]))
                    .collect::<Vec<_>>()
                    .join(" "),
            };
            lines.push(format!(
                "  m={}: degree={} mahler={} {periods}",
                e["m"],
                e["degree"],
                if e["mahler"].is_null() { "-".to_string() } else { e["mahler"].to_string() },
            ));
        }
    }
    lines.join("\n")
}

fn embed_text(v: &Value) -> String {
    let assignment = match v["assignment"].as_array() {
        Some(a) if !a.is_empty() => a
            .iter()
            .map(|pair| format!("x{}={}", pair[0], pair[1]))
            .collect::<Vec<_>>()
            .join(","),
        _ => "-".to_string(),
    };
    format!("kept={} assignment={assignment} profile={}", v["kept"], v["profile"].as_str().unwrap_or("?"))
}

fn construct_text(v: &Value) -> String {
    let solutions = v["solutions"].as_array().map_or(0, Vec::len);
    let witness = if v["witness"].is_null() {
        "witness=-".to_string()
    } else {
        let w = &v["witness"];
        format!(
            "witness: n={} profile={} degree_bound={} brute_degree={}",
            w["n"],
            w["profile"].as_str().unwrap_or("?"),
            w["degree_bound"],
            w["brute_degree"],
        )
    };
    format!("m={} q={} indices_accepted={solutions} {witness}", v["m"], v["q"])
}

fn list_or_dash(v: &Value) -> String {
    match v.as_array() {
        Some(a) if a.is_empty() => "-".to_string(),
        Some(a) => a.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
        None => "-".to_string(),
    }
}

/// A matrix CSV as JSON: strip the leading comment, parse integer rows.
fn csv_to_json(csv: &str) -> String {
    let rows: Vec<Vec<i64>> = csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split(',').map(|e| e.trim().parse().unwrap_or(0)).collect())
        .collect();
    json!({ "rows": rows }).to_string()
}
