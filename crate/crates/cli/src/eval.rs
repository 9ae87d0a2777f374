use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chowdeg_core::dot::{forest_to_dot, tree_to_dot};
use chowdeg_core::reduction::{oracle_value, OracleOptions, DEFAULT_ORACLE_CAP};
use chowdeg_core::{integral_value_timed, parse_monomial, Error, LoadedTree, Monomial, RedundancyForest};
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_DISAGREE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Args)]
pub struct EvalArgs {
    /// Input files or literal monomials; stdin when none are given.
    inputs: Vec<String>,
    /// Also compute the value by linear reduction and compare.
    #[arg(long)]
    oracle: bool,
    /// Largest n handed to the oracle.
    #[arg(long, env = "CHOWDEG_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Drop unbalanced terms during reduction.
    #[arg(long)]
    filter_balanced: bool,
    /// One JSON object per line.
    #[arg(long)]
    json: bool,
    /// Write NNNN-tree.dot and NNNN-forest.dot files here.
    #[arg(long, value_name = "DIR")]
    dot: Option<PathBuf>,
}

struct Entry {
    source: String,
    line: usize,
    text: String,
}

#[derive(Serialize)]
struct Timings {
    parse_us: f64,
    filter_us: f64,
    tree_us: f64,
    forest_us: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_us: Option<f64>,
}

#[derive(Serialize)]
struct EvalReport {
    input: String,
    n: usize,
    degree: u64,
    value: serde_json::Number,
    proper: bool,
    classification: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<serde_json::Number>,
    timings: Timings,
}

enum Failure {
    Parse(String),
    Cap(String),
}

fn micros(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e9).round() / 1e3
}

fn number(v: impl ToString) -> serde_json::Number {
    v.to_string().parse().expect("integers are JSON numbers")
}

/// An argument naming no file is taken as a monomial if it looks like one.
fn is_literal(arg: &str) -> bool {
    let t = arg.trim();
    !std::path::Path::new(arg).is_file() && (t.contains('{') || t.starts_with("n="))
}

fn push_lines(out: &mut Vec<Entry>, source: &str, text: &str) {
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(Entry {
            source: source.to_string(),
            line: i + 1,
            text: t.to_string(),
        });
    }
}

fn read_entries(inputs: &[String]) -> Result<Vec<Entry>, String> {
    let mut out = Vec::new();
    if inputs.is_empty() {
        let mut text = String::new();
        for line in io::stdin().lock().lines() {
            text.push_str(&line.map_err(|e| format!("stdin: {e}"))?);
            text.push('\n');
        }
        push_lines(&mut out, "<stdin>", &text);
    } else {
        for (i, arg) in inputs.iter().enumerate() {
            if is_literal(arg) {
                out.push(Entry {
                    source: "<arg>".into(),
                    line: i + 1,
                    text: arg.trim().to_string(),
                });
                continue;
            }
            let text = fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
            push_lines(&mut out, arg, &text);
        }
    }
    Ok(out)
}

fn evaluate(e: &Entry, args: &EvalArgs) -> Result<(Monomial, EvalReport), Failure> {
    let start = Instant::now();
    let m = parse_monomial(&e.text).map_err(|err| Failure::Parse(err.to_string()))?;
    let parse = start.elapsed();
    let (v, times) = integral_value_timed(&m);
    let mut timings = Timings {
        parse_us: micros(parse),
        filter_us: micros(times.filter),
        tree_us: micros(times.tree),
        forest_us: micros(times.forest),
        oracle_us: None,
    };
    let mut oracle = None;
    if args.oracle {
        let start = Instant::now();
        let opts = OracleOptions {
            cap: args.oracle_cap,
            filter_balanced: args.filter_balanced,
        };
        let o = oracle_value(&m, opts).map_err(|err| match err {
            Error::CapExceeded { .. } => Failure::Cap(err.to_string()),
            other => Failure::Parse(other.to_string()),
        })?;
        timings.oracle_us = Some(micros(start.elapsed()));
        oracle = Some(o);
    }
    let report = EvalReport {
        input: m.render(),
        n: m.n(),
        degree: m.degree(),
        value: number(&v.value),
        proper: v.proper,
        classification: v.classification.as_str(),
        oracle: oracle.map(number),
        timings,
    };
    Ok((m, report))
}

fn write_dot(dir: &std::path::Path, index: usize, m: &Monomial) -> io::Result<()> {
    let Ok(t) = LoadedTree::from_monomial(m) else {
        return Ok(());
    };
    let name = m.render();
    fs::write(dir.join(format!("{index:04}-tree.dot")), tree_to_dot(&t, &name))?;
    fs::write(
        dir.join(format!("{index:04}-forest.dot")),
        forest_to_dot(&RedundancyForest::redundancy_forest(&t), &name),
    )
}

fn text_line(r: &EvalReport) -> String {
    let mut s = format!(
        "{}  value={}  classification={}  n={}  degree={}  proper={}",
        r.input, r.value, r.classification, r.n, r.degree, r.proper
    );
    if let Some(o) = &r.oracle {
        s.push_str(&format!("  oracle={o}"));
    }
    s
}

pub fn run(args: EvalArgs) -> ExitCode {
    let entries = match read_entries(&args.inputs) {
        Ok(e) => e,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    if let Some(dir) = &args.dot {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error: {}: {e}", dir.display());
            return ExitCode::from(EXIT_PARSE);
        }
    }
    let results: Vec<_> = entries.par_iter().map(|e| evaluate(e, &args)).collect();

    let (mut parse_failed, mut cap_failed, mut disagreed) = (false, false, false);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (i, (entry, result)) in entries.iter().zip(results).enumerate() {
        let at = format!("{}:{}", entry.source, entry.line);
        match result {
            Err(Failure::Parse(msg)) => {
                parse_failed = true;
                eprintln!("{at}: error: {msg}");
            }
            Err(Failure::Cap(msg)) => {
                cap_failed = true;
                eprintln!("{at}: error: {msg}");
            }
            Ok((m, report)) => {
                if report
                    .oracle
                    .as_ref()
                    .is_some_and(|o| o.to_string() != report.value.to_string())
                {
                    disagreed = true;
                    eprintln!(
                        "{at}: error: oracle {} disagrees with forest value {}",
                        report.oracle.as_ref().unwrap(),
                        report.value
                    );
                }
                let line = if args.json {
                    serde_json::to_string(&report).expect("serializable")
                } else {
                    text_line(&report)
                };
                let _ = writeln!(out, "{line}");
                if let Some(dir) = &args.dot {
                    if let Err(e) = write_dot(dir, i + 1, &m) {
                        eprintln!("{at}: error: writing DOT: {e}");
                        parse_failed = true;
                    }
                }
            }
        }
    }
    if disagreed {
        ExitCode::from(EXIT_DISAGREE)
    } else if cap_failed {
        ExitCode::from(EXIT_CAP)
    } else if parse_failed {
        ExitCode::from(EXIT_PARSE)
    } else {
        ExitCode::SUCCESS
    }
}
