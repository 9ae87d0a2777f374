use std::process::ExitCode;

use chowdeg_core::identity::{check_identity, IdentityInstance};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct IdentityArgs {
    /// Identity variant (1, 2 or 3); all three when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    variant: Option<u8>,
    #[arg(long, default_value_t = 1)]
    r_min: usize,
    #[arg(long, default_value_t = 5)]
    r_max: usize,
    /// Largest part size in the grid.
    #[arg(long, default_value_t = 4)]
    m_max: u64,
    /// A single instance instead of the grid, e.g. `--m 2,2,1`.
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Serialize)]
struct Row {
    variant: u8,
    r: usize,
    m: Vec<u64>,
    lhs: Option<serde_json::Number>,
    rhs: Option<serde_json::Number>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn grid(args: &IdentityArgs) -> Vec<Vec<u64>> {
    if let Some(m) = &args.m {
        return vec![m.clone()];
    }
    let mut out = Vec::new();
    for r in args.r_min.max(1)..=args.r_max {
        let mut m = vec![1u64; r];
        loop {
            out.push(m.clone());
            let Some(i) = m.iter().position(|&x| x < args.m_max) else {
                break;
            };
            m[i] += 1;
            m[..i].fill(1);
        }
    }
    out
}

fn check(variant: u8, m: &[u64]) -> Row {
    let mut row = Row {
        variant,
        r: m.len(),
        m: m.to_vec(),
        lhs: None,
        rhs: None,
        status: "skipped",
        note: None,
    };
    let result = IdentityInstance::new(m.to_vec()).and_then(|inst| check_identity(variant, &inst));
    match result {
        Ok(c) => {
            row.status = if c.holds() { "pass" } else { "fail" };
            row.lhs = Some(c.lhs.to_string().parse().expect("integer"));
            row.rhs = Some(c.rhs.to_string().parse().expect("integer"));
        }
        Err(e) => row.note = Some(e.to_string()),
    }
    row
}

pub fn run(args: IdentityArgs) -> ExitCode {
    let variants: Vec<u8> = args.variant.map_or(vec![1, 2, 3], |v| vec![v]);
    let jobs: Vec<(u8, Vec<u64>)> = grid(&args)
        .into_iter()
        .flat_map(|m| variants.iter().map(move |&v| (v, m.clone())))
        .collect();
    let rows: Vec<Row> = jobs.par_iter().map(|(v, m)| check(*v, m)).collect();
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("serializable")),
        Format::Csv => {
            println!("variant,r,m,lhs,rhs,status,note");
            for r in &rows {
                let m: Vec<String> = r.m.iter().map(u64::to_string).collect();
                let show = |x: &Option<serde_json::Number>| x.as_ref().map_or(String::new(), |n| n.to_string());
                println!(
                    "{},{},{},{},{},{},{}",
                    r.variant,
                    r.r,
                    m.join(" "),
                    show(&r.lhs),
                    show(&r.rhs),
                    r.status,
                    r.note.as_deref().unwrap_or("")
                );
            }
        }
    }
    let failed = rows.iter().filter(|r| r.status == "fail").count();
    if failed > 0 {
        eprintln!("{failed} identity checks failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
