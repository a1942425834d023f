//! Command-line front end.
//!
//! Exit codes: 0 when every input has an exact root, 1 when at least one
//! input is certified not to, 2 on any usage or input error. Numbers are
//! always printed as decimal strings, including inside JSON.

use std::io::{BufRead, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::bench::{bench_run, summarize, BenchRecord};
use crate::cbrt::cbrt_certify;
use crate::certificate::{BranchOutcome, BranchReport, Certificate, Rejection, Verdict};
use crate::natural::Natural;
use crate::residue::{candidates_for_root, residue_class_of, strip_factors, ResidueClass};
use crate::sqrt::sqrt_certify;
use crate::twin::discriminate_any;

pub const EXIT_EXACT: i32 = 0;
pub const EXIT_NOT_EXACT: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

pub fn as_decimal<S: Serializer>(n: &Natural, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_decimal())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "mod18root", about = "Perfect square and cube certification by mod-18 digit expansion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strip factors of 2 and 3 and classify the core mod 18.
    Classify(InputArgs),
    /// Certify whether each input is a perfect square or cube.
    Root(RootArgs),
    /// Separate twin-prime-product candidates from square candidates.
    Filter(InputArgs),
    /// Seeded benchmark of the square engine against the iteration model.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Decimal values; `-` reads one value per line from stdin.
    #[arg(required = true)]
    pub values: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RootArgs {
    /// Root degree.
    #[arg(long = "root", default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    pub degree: u32,
    /// Print the per-step table of each shown branch.
    #[arg(long)]
    pub trace: bool,
    /// Show branches that failed, not only the one that found the root.
    #[arg(long)]
    pub all_branches: bool,
    /// Include wall-clock timing (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Decimal values; `-` reads one value per line from stdin.
    #[arg(required = true)]
    pub values: Vec<String>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated input sizes in bits.
    #[arg(long, value_delimiter = ',', default_value = "32,64,128,256")]
    pub bits: Vec<u32>,
    /// Inputs per size.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Include per-record wall-clock timing.
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

/// Run the CLI against explicit streams; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Classify(a) => for_each_input(&a.values, stdin, out, err, |n, out| {
            cmd_classify(n, a.format, out)
        }),
        Command::Root(a) => for_each_input(&a.values, stdin, out, err, |n, out| cmd_root(n, &a, out)),
        Command::Filter(a) => for_each_input(&a.values, stdin, out, err, |n, out| {
            cmd_filter(n, a.format, out)
        }),
        Command::Bench(a) => cmd_bench(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

type Outcome = Result<i32, Box<dyn std::error::Error>>;

/// Feed each argument (or each stdin line for `-`) to `handle`, in order,
/// combining exit codes by precedence 2 > 1 > 0.
fn for_each_input<F>(
    values: &[String],
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
    mut handle: F,
) -> Outcome
where
    F: FnMut(&Natural, &mut dyn Write) -> Outcome,
{
    let mut code = EXIT_EXACT;
    let mut one = |text: &str, out: &mut dyn Write, err: &mut dyn Write| -> Result<(), std::io::Error> {
        let c = match Natural::parse_decimal(text) {
            Ok(n) => match handle(&n, out) {
                Ok(c) => c,
                Err(e) => {
                    writeln!(err, "error: {text}: {e}")?;
                    EXIT_INPUT_ERROR
                }
            },
            Err(e) => {
                writeln!(err, "error: {text:?}: {e}")?;
                EXIT_INPUT_ERROR
            }
        };
        code = code.max(c);
        Ok(())
    };
    for v in values {
        if v == "-" {
            let mut line = String::new();
            loop {
                line.clear();
                if stdin.read_line(&mut line)? == 0 {
                    break;
                }
                let text = line.trim();
                if !text.is_empty() {
                    one(text, out, err)?;
                }
            }
        } else {
            one(v, out, err)?;
        }
    }
    Ok(code)
}

fn join_classes(cs: impl IntoIterator<Item = ResidueClass>) -> String {
    let joined = cs.into_iter().map(|c| c.value().to_string()).collect::<Vec<_>>().join(" ");
    if joined.is_empty() {
        "-".to_string()
    } else {
        joined
    }
}

fn classes_json(cs: impl IntoIterator<Item = ResidueClass>) -> Value {
    cs.into_iter().map(|c| c.value()).collect()
}

pub fn cmd_classify(n: &Natural, format: Format, out: &mut dyn Write) -> Outcome {
    let norm = strip_factors(n)?;
    let class = residue_class_of(&norm.core)?;
    let dr = norm.core.digit_root();
    let squares = candidates_for_root(class, 2);
    let cubes = candidates_for_root(class, 3);
    let trivial = norm.core.is_one();
    match format {
        Format::Table => {
            writeln!(out, "input: {n}")?;
            writeln!(out, "k: {}", norm.k)?;
            writeln!(out, "l: {}", norm.l)?;
            writeln!(out, "core: {}", norm.core)?;
            writeln!(out, "dr: {dr}")?;
            writeln!(out, "class: {class}")?;
            writeln!(out, "square_candidates: {}", join_classes(squares.iter()))?;
            writeln!(out, "cube_candidates: {}", join_classes(cubes.iter()))?;
            if trivial {
                writeln!(out, "trivial: core is 1")?;
            }
            writeln!(out)?;
        }
        Format::Json => {
            let v = json!({
                "command": "classify",
                "input": n.to_decimal(),
                "k": norm.k,
                "l": norm.l,
                "core": norm.core.to_decimal(),
                "dr": dr,
                "class": class.value(),
                "square_candidates": classes_json(squares.iter()),
                "cube_candidates": classes_json(cubes.iter()),
                "trivial": trivial,
            });
            writeln!(out, "{v}")?;
        }
    }
    Ok(EXIT_EXACT)
}

pub fn cmd_filter(n: &Natural, format: Format, out: &mut dyn Write) -> Outcome {
    let verdict = discriminate_any(n)?;
    match format {
        Format::Table => writeln!(out, "{n}: {}", verdict.name())?,
        Format::Json => {
            let v = json!({ "command": "filter", "input": n.to_decimal(), "result": verdict });
            writeln!(out, "{v}")?;
        }
    }
    Ok(EXIT_EXACT)
}

pub fn cmd_root(n: &Natural, args: &RootArgs, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let cert = match args.degree {
        2 => sqrt_certify(n)?,
        _ => cbrt_certify(n)?,
    };
    let elapsed = args.timing.then(|| start.elapsed());
    let text = match args.format {
        Format::Table => {
            let mut s = render_root_table(&cert, args.trace, args.all_branches);
            if let Some(t) = elapsed {
                s.push_str(&format!("elapsed_us: {}\n", t.as_micros()));
            }
            s.push('\n');
            s
        }
        Format::Json => {
            let mut v = root_json(&cert, args.trace, args.all_branches);
            if let Some(t) = elapsed {
                v["elapsed_us"] = json!(t.as_micros() as u64);
            }
            format!("{v}\n")
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(if cert.is_exact() { EXIT_EXACT } else { EXIT_NOT_EXACT })
}

fn shown_branches(cert: &Certificate, all: bool) -> impl Iterator<Item = &BranchReport> {
    cert.branches.iter().filter(move |b| all || b.outcome.is_exact())
}

fn outcome_detail(b: &BranchReport, exponent: u32) -> String {
    let modulus = if exponent == 2 { 36 } else { 54 };
    match b.outcome {
        BranchOutcome::Trivial => format!("trivial (core = {}^{exponent})", b.a.value()),
        BranchOutcome::Equal => format!("equal at i={}", b.iterations().unwrap_or(0)),
        BranchOutcome::Fail => format!("fail at i={}", b.iterations().unwrap_or(0)),
        BranchOutcome::Below => format!("below (core < {}^{exponent})", b.a.value()),
        BranchOutcome::Gate { remainder } => format!(
            "gate (core - {}^{exponent} = {remainder} mod {modulus})",
            b.a.value()
        ),
    }
}

/// Human-readable certificate, with the step tables laid out as
/// `i, N_i, DR, b_i, b_i+1, p_i, frac_i, f_i`.
pub fn render_root_table(cert: &Certificate, trace: bool, all_branches: bool) -> String {
    let norm = &cert.normalization;
    let mut s = String::new();
    s.push_str(&format!("input: {}\n", cert.input));
    s.push_str(&format!("degree: {}\n", cert.exponent));
    s.push_str(&format!("verdict: {}\n", cert.verdict_name()));
    if let Some(root) = cert.root() {
        s.push_str(&format!("root: {root}\n"));
    }
    s.push_str(&format!("normalization: k={} l={} core={}\n", norm.k, norm.l, norm.core));
    s.push_str(&format!("class: {} dr={}\n", cert.class, norm.core.digit_root()));
    s.push_str(&format!("candidates: {}\n", join_classes(cert.candidates.iter())));
    if let Verdict::NotExact(reason) = cert.verdict {
        let why = match reason {
            Rejection::Infeasible => "exponent of 2 or 3 not divisible by degree",
            Rejection::ClassExcluded => "class holds no such powers",
            Rejection::BranchesExhausted => "every candidate branch failed",
        };
        s.push_str(&format!("rejected: {why}\n"));
    }
    for b in shown_branches(cert, all_branches) {
        s.push_str(&format!("branch a={}: {}\n", b.a.value(), outcome_detail(b, cert.exponent)));
        if trace && !b.rows.is_empty() {
            s.push_str(&trace_table(&norm.core, b));
        }
    }
    s
}

fn trace_table(core: &Natural, b: &BranchReport) -> String {
    let header = ["i", "N_i", "DR", "b_i", "b_i+1", "p_i", "frac_i", "f_i"];
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut first = vec![String::new(); header.len()];
    first[1] = format!("N={core}");
    first[2] = core.digit_root().to_string();
    rows.push(first);
    let mut b_prev = 0u8;
    for r in &b.rows {
        rows.push(vec![
            r.i.to_string(),
            r.n_i.to_string(),
            r.dr.to_string(),
            b_prev.to_string(),
            r.b_next.to_string(),
            r.p_i.to_string(),
            r.frac_i.to_string(),
            r.f_i.to_string(),
        ]);
        b_prev = r.b_next;
    }
    if let (Some(last), Some(res)) = (b.rows.last(), &b.residual) {
        let mut fin = vec![String::new(); header.len()];
        fin[0] = (last.i + 1).to_string();
        fin[1] = res.to_string();
        fin[3] = b_prev.to_string();
        rows.push(fin);
    }

    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap())
        .collect();
    let line = |cells: &[&str]| {
        let parts: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        format!("{}\n", parts.join("  ").trim_end())
    };
    let mut s = line(&header);
    for r in &rows {
        let cells: Vec<&str> = r.iter().map(String::as_str).collect();
        s.push_str(&line(&cells));
    }
    s
}

/// One JSON object per certificate.
pub fn root_json(cert: &Certificate, trace: bool, all_branches: bool) -> Value {
    let branches: Vec<Value> = shown_branches(cert, all_branches)
        .map(|b| {
            let mut v = json!({
                "a": b.a.value(),
                "outcome": b.outcome.name(),
                "n0": b.n0.as_ref().map(Natural::to_decimal),
                "iterations": b.iterations(),
                "residual": b.residual.as_ref().map(ToString::to_string),
                "root": b.root.as_ref().map(Natural::to_decimal),
            });
            if let BranchOutcome::Gate { remainder } = b.outcome {
                v["gate_remainder"] = json!(remainder);
            }
            if trace {
                let mut b_prev = 0u8;
                let rows: Vec<Value> = b
                    .rows
                    .iter()
                    .map(|r| {
                        let row = json!({
                            "i": r.i,
                            "n_i": r.n_i.to_decimal(),
                            "dr": r.dr,
                            "b_i": b_prev,
                            "b_next": r.b_next,
                            "p_i": r.p_i.to_decimal(),
                            "frac_i": r.frac_i.to_string(),
                            "f_i": r.f_i.to_decimal(),
                        });
                        b_prev = r.b_next;
                        row
                    })
                    .collect();
                v["rows"] = Value::Array(rows);
            }
            v
        })
        .collect();
    let norm = &cert.normalization;
    json!({
        "command": "root",
        "degree": cert.exponent,
        "input": cert.input.to_decimal(),
        "verdict": cert.verdict_name(),
        "root": cert.root().map(Natural::to_decimal),
        "normalization": { "k": norm.k, "l": norm.l, "core": norm.core.to_decimal() },
        "class": cert.class.value(),
        "candidates": classes_json(cert.candidates.iter()),
        "branches": branches,
        "residual": cert.winning_branch().and_then(|b| b.residual.as_ref()).map(ToString::to_string),
        "iterations": cert.total_steps(),
    })
}

#[derive(Serialize)]
struct TimedRecord<'a> {
    #[serde(flatten)]
    record: &'a BenchRecord,
    elapsed_us: u64,
}

fn opt(v: Option<impl ToString>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let records = bench_run(&args.bits, args.count, args.seed)?;
    let summary = summarize(&records);
    match args.format {
        Format::Table => {
            let mut header = "bits  kind    a   measured  predicted  verdict     oracle".to_string();
            if args.timing {
                header.push_str("  elapsed_us");
            }
            writeln!(out, "{header}")?;
            for r in &records {
                let kind = serde_json::to_value(r.kind)?;
                let mut line = format!(
                    "{:>4}  {:<6}  {:>2}  {:>8}  {:>9}  {:<10}  {}",
                    r.n_bits,
                    kind.as_str().unwrap_or_default(),
                    opt(r.a),
                    opt(r.iterations_measured),
                    r.iterations_predicted,
                    r.verdict,
                    if r.oracle_agrees { "ok" } else { "MISMATCH" },
                );
                if args.timing {
                    line.push_str(&format!("  {:>10}", r.elapsed.as_micros()));
                }
                writeln!(out, "{line}")?;
            }
            writeln!(
                out,
                "summary: records={} branches={} mean_abs_deviation={:.4} within_one={} oracle_mismatches={}",
                summary.records,
                summary.branches,
                summary.mean_abs_deviation,
                summary.within_one,
                summary.oracle_mismatches
            )?;
        }
        Format::Json => {
            for r in &records {
                let line = if args.timing {
                    serde_json::to_string(&TimedRecord { record: r, elapsed_us: r.elapsed.as_micros() as u64 })?
                } else {
                    serde_json::to_string(r)?
                };
                writeln!(out, "{line}")?;
            }
            writeln!(out, "{}", json!({ "summary": summary }))?;
        }
    }
    writeln!(err, "bench: {} records in {:.3}s", records.len(), start.elapsed().as_secs_f64())?;
    Ok(if summary.oracle_mismatches == 0 { EXIT_EXACT } else { EXIT_NOT_EXACT })
}
