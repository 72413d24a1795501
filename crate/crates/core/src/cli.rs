//! Command-line front end. Exit codes: `0` pass, `1` verification failed,
//! `2` invalid arguments, `3` numerical tolerance failure.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::mocktheta::{
    closed_b, closed_c, closed_parity_b, closed_parity_c, g2_series, g3_series,
};
use crate::partitions::{count_table, list_family, Family, FamilyParams};
use crate::probability::{exact_report, mc_estimate, EventModel, ProbReport, ProbabilityParams};
use crate::qseries::{Monomial, TruncatedSeries};
use crate::verify::{self, Outcome, Target, VerifyConfig, VerifyReport, PIPELINE_TOLERANCE};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "QMOCK_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "qmock",
    version,
    about = "Overpartition identities and the mock theta function g2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run identity suites over a parameter grid.
    Verify(VerifyArgs),
    /// Count (and optionally list) the members of a partition family.
    Enumerate(EnumerateArgs),
    /// Print the coefficients of a closed-form generating function.
    Series(SeriesArgs),
    /// Probabilities of the constraint events.
    Prob(ProbArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// schur, main1, cor1, main2, parity, fqdiff, phi32, prob1, prob2, g2bound or all
    pub target: String,
    /// Restrict the grid to this d (default grid: d in {3, 4, 5, 7}).
    #[arg(long)]
    pub d: Option<u32>,
    /// Restrict to this r (requires --d; default: every valid r).
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, default_value_t = 40)]
    pub order: usize,
    /// Enumeration bound (default depends on the suite).
    #[arg(long)]
    pub n: Option<u32>,
    /// Comma-separated q values for the probability suites.
    #[arg(long, value_delimiter = ',')]
    pub q: Option<Vec<f64>>,
    #[arg(long, default_value_t = crate::probability::DEFAULT_IDENTITY_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, default_value_t = crate::probability::DEFAULT_SERIES_TOLERANCE)]
    pub series_tolerance: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// obar-b, obar-c, obar-e, schur-b, schur-c, schur-e or schur-b-matrix
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub n: u32,
    /// Only count members with exactly this many parts.
    #[arg(long)]
    pub m: Option<usize>,
    /// Also print every member.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Expr {
    #[value(name = "B")]
    #[serde(rename = "B")]
    B,
    #[value(name = "C")]
    #[serde(rename = "C")]
    C,
    #[value(name = "g2")]
    #[serde(rename = "g2")]
    G2,
    #[value(name = "g3")]
    #[serde(rename = "g3")]
    G3,
    #[value(name = "parityB")]
    #[serde(rename = "parityB")]
    ParityB,
    #[value(name = "parityC")]
    #[serde(rename = "parityC")]
    ParityC,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    /// B, C, g2, g3, parityB or parityC; g2 and g3 are taken at (-q^r; q^d).
    #[arg(long, value_enum)]
    pub expr: Expr,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long, default_value_t = 40)]
    pub order: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProbMode {
    Exact,
    Mc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Literal,
    Disjoint,
}

#[derive(Args, Debug)]
pub struct ProbArgs {
    #[arg(value_enum)]
    pub mode: ProbMode,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub q: f64,
    /// Identity pass threshold for the exact mode.
    #[arg(long, default_value_t = crate::probability::DEFAULT_IDENTITY_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, default_value_t = crate::probability::DEFAULT_SERIES_TOLERANCE)]
    pub series_tolerance: f64,
    /// Recurrence boundary index (default: from the series tolerance).
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Largest sampled event index (default: from the tail bound).
    #[arg(long)]
    pub horizon: Option<usize>,
    #[arg(long, value_enum, default_value = "literal")]
    pub model: ModelArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Standard errors allowed between a Monte Carlo estimate and its target.
pub const MC_SIGMA: f64 = 5.0;

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ToleranceNotReached { .. } | Error::ZeroConditioningEvent => EXIT_TOLERANCE,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn emit(out: &OutputArgs, body: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// Renders a JSON scalar the same way in every format.
fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn outcome_label(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "PASS",
        Outcome::Fail => "FAIL",
        Outcome::ToleranceFailure => "TOLERANCE",
    }
}

fn render_verify(rep: &VerifyReport, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(rep),
        Format::Tsv => {
            s.push_str("target\tcase\toutcome\tvalues\n");
            for c in &rep.cases {
                let vals: Vec<String> = c
                    .values
                    .iter()
                    .map(|(k, v)| format!("{k}={}", scalar(v)))
                    .collect();
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}",
                    c.target,
                    c.case,
                    outcome_label(c.outcome),
                    vals.join(";")
                );
            }
        }
        Format::Text => {
            for c in &rep.cases {
                let vals: Vec<String> = c
                    .values
                    .iter()
                    .map(|(k, v)| format!("{k}={}", scalar(v)))
                    .collect();
                let _ = writeln!(
                    s,
                    "{:<9} {:<8} {:<16} {}",
                    outcome_label(c.outcome),
                    c.target.name(),
                    c.case,
                    vals.join(" ")
                );
            }
            let passed = rep.cases.iter().filter(|c| c.pass()).count();
            let _ = writeln!(s, "{passed}/{} cases passed", rep.cases.len());
        }
    }
    s
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32, Failure> {
    let targets: Vec<Target> = if a.target == "all" {
        Target::ALL.to_vec()
    } else {
        vec![a.target.parse::<Target>()?]
    };
    let grid = match (a.d, a.r) {
        (Some(d), Some(r)) => vec![FamilyParams::new(d, r)?],
        (Some(d), None) => {
            let g = FamilyParams::grid(&[d]);
            if g.is_empty() {
                return Err(usage(format!("no valid r for d = {d} (need d >= 3)")));
            }
            g
        }
        (None, Some(_)) => return Err(usage("--r requires --d")),
        (None, None) => VerifyConfig::default().grid,
    };
    let cfg = VerifyConfig {
        grid,
        order: a.order,
        n: a.n,
        qs: a.q.clone(),
        tolerance: a.tolerance,
        series_tolerance: a.series_tolerance,
    };
    let rep = verify::run(&targets, &cfg)?;
    emit(&a.out, &render_verify(&rep, a.out.format))?;
    Ok(rep.exit_code())
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<i32, Failure> {
    let family: Family = a.family.parse()?;
    let p = FamilyParams::new(a.d, a.r)?;
    let table = count_table(family, p, a.n);
    let row = &table[a.n as usize];
    let count: u64 = match a.m {
        Some(m) => row.get(m).copied().unwrap_or(0),
        None => row.iter().sum(),
    };
    let members: Option<Vec<String>> = a.list.then(|| {
        list_family(family, p, a.n)
            .into_iter()
            .filter(|l| a.m.is_none_or(|m| l.len() == m))
            .map(|l| l.to_string())
            .collect()
    });
    let body = match a.out.format {
        Format::Json => {
            let mut v = json!({
                "family": family.name(), "d": a.d, "r": a.r, "n": a.n, "m": a.m, "count": count,
            });
            if let Some(list) = &members {
                v["list"] = json!(list);
            }
            to_json(&v)
        }
        Format::Tsv => {
            let mut s = format!(
                "family\td\tr\tn\tcount\n{}\t{}\t{}\t{}\t{count}\n",
                family.name(),
                a.d,
                a.r,
                a.n
            );
            for l in members.iter().flatten() {
                let _ = writeln!(s, "{l}");
            }
            s
        }
        Format::Text => {
            let mut s = format!("{} {p} n={} count={count}\n", family.name(), a.n);
            for l in members.iter().flatten() {
                let _ = writeln!(s, "{l}");
            }
            s
        }
    };
    emit(&a.out, &body)?;
    Ok(EXIT_PASS)
}

fn series_of(expr: Expr, p: FamilyParams, order: usize) -> crate::Result<TruncatedSeries> {
    let (d, r) = (p.d() as usize, p.r() as usize);
    Ok(match expr {
        Expr::B => closed_b(p, order),
        Expr::C => closed_c(p, order),
        Expr::G2 => g2_series(Monomial::neg(r), d, order)?,
        Expr::G3 => g3_series(Monomial::neg(r), d, order)?,
        Expr::ParityB => closed_parity_b(p, order),
        Expr::ParityC => closed_parity_c(p, order),
    })
}

fn cmd_series(a: &SeriesArgs) -> Result<i32, Failure> {
    let p = FamilyParams::new(a.d, a.r)?;
    let s = series_of(a.expr, p, a.order)?;
    let body = match a.out.format {
        Format::Json => to_json(&json!({ "expr": a.expr, "d": a.d, "r": a.r, "series": s })),
        Format::Tsv => {
            let mut out = String::from("n\tcoeff\n");
            for (i, c) in s.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{i}\t{c}");
            }
            out
        }
        Format::Text => s.coeffs().iter().map(|c| format!("{c}\n")).collect(),
    };
    emit(&a.out, &body)?;
    Ok(EXIT_PASS)
}

fn render_prob(rep: &ProbReport, format: Format) -> String {
    if format == Format::Json {
        return to_json(rep);
    }
    let v = serde_json::to_value(rep).expect("report serializes");
    let mut rows = Vec::new();
    flatten("", &v, &mut rows);
    let sep = if format == Format::Tsv { "\t" } else { " = " };
    let mut s = if format == Format::Tsv {
        String::from("key\tvalue\n")
    } else {
        String::new()
    };
    for (k, v) in rows {
        let _ = writeln!(s, "{k}{sep}{v}");
    }
    s
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn cmd_prob(a: &ProbArgs) -> Result<i32, Failure> {
    let mut p = ProbabilityParams::new(FamilyParams::new(a.d, a.r)?, a.q)?;
    p.identity_tolerance = a.tolerance;
    p.series_tolerance = a.series_tolerance;
    p.recurrence_cutoff = a.cutoff;
    p.mc.samples = a.samples;
    p.mc.seed = a.seed;
    p.mc.horizon = a.horizon;
    p.mc.model = match a.model {
        ModelArg::Literal => EventModel::Literal,
        ModelArg::Disjoint => EventModel::Disjoint,
    };
    let (rep, pass) = match a.mode {
        ProbMode::Exact => {
            let rep = exact_report(&p)?;
            let gap = rep.exact.as_ref().map_or(0.0, |e| e.pipeline_gap);
            let pass = rep.exact_pass(p.identity_tolerance) && gap < PIPELINE_TOLERANCE;
            (rep, pass)
        }
        ProbMode::Mc => {
            if a.samples == 0 {
                return Err(usage("--samples must be positive"));
            }
            let rep = mc_estimate(&p)?;
            let se2 = rep.mc_stderr.unwrap_or(0.0);
            let se1 = rep.mc.as_ref().map_or(0.0, |m| m.mc_stderr_part1);
            let pass = rep.abs_err_part2 <= MC_SIGMA * se2 && rep.abs_err_part1 <= MC_SIGMA * se1;
            (rep, pass)
        }
    };
    emit(&a.out, &render_prob(&rep, a.out.format))?;
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| {
            usage(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))
        })?;
        // a second configuration attempt in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Series(a) => cmd_series(a),
        Command::Prob(a) => cmd_prob(a),
    });
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}
