use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use chowdeg_core::dot::{forest_to_dot, tree_to_dot};
use chowdeg_core::{parse_monomial, LoadedTree, RedundancyForest};
use clap::{Args, ValueEnum};

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    ForestDot,
}

#[derive(Args)]
pub struct ExportArgs {
    /// The monomial; `-` reads the first non-comment line of stdin.
    monomial: String,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn input(arg: &str) -> Result<String, String> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| format!("stdin: {e}"))?;
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .ok_or_else(|| "stdin holds no monomial".to_string())
}

pub fn run(args: ExportArgs) -> ExitCode {
    let result = input(&args.monomial).and_then(|text| {
        let m = parse_monomial(&text).map_err(|e| e.to_string())?;
        let t = LoadedTree::from_monomial(&m).map_err(|e| e.to_string())?;
        let name = m.render();
        Ok(match args.format {
            Format::Dot => tree_to_dot(&t, &name),
            Format::ForestDot => forest_to_dot(&RedundancyForest::redundancy_forest(&t), &name),
            Format::Json => serde_json::to_string_pretty(&t).expect("serializable") + "\n",
        })
    });
    let text = match result {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    match &args.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
