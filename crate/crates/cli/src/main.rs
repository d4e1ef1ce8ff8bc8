mod commands;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::Value;

use commands::{AnalyzeFlags, Failure, InfinityMode, Limits, Outcome};
use report::{obj, s};

const DEFAULT_MAX_DEGREE: usize = 64;

#[derive(Parser)]
#[command(name = "curvetower", version, about = "Exact towers, roots and invariants of plane curve germs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Cap on the x-precision a tower level may request for itself.
    #[arg(long, global = true)]
    max_precision: Option<usize>,
    /// Precision doublings allowed per tower level.
    #[arg(long, global = true, default_value_t = 6)]
    max_retries: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tower, approximate roots, Puiseux pairs, zeta function and Milnor number.
    Analyze {
        #[arg(long, required_unless_present = "batch")]
        poly: Option<String>,
        /// File with one polynomial per line, analyzed concurrently.
        #[arg(long, conflicts_with = "poly")]
        batch: Option<PathBuf>,
        #[arg(long)]
        with_table: bool,
        #[arg(long)]
        with_diagram: bool,
    },
    /// Approximate root of degree `index`.
    Roots {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        index: u32,
    },
    /// Intersection multiplicity at the origin through the tower.
    Intersect {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        with: String,
        /// Also compute the order of the resultant and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Equisingularity of a family in t, or of f + t x^m.
    Equising(EquisingArgs),
    /// The curve at infinity: its germ, the line test or the low genus models.
    Infinity {
        #[arg(long)]
        poly: String,
        #[arg(long, conflicts_with = "classify")]
        ams: bool,
        #[arg(long)]
        classify: bool,
    },
    /// Curve with one place at infinity built from a weight sequence.
    Generate {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["family", "deform"])))]
struct EquisingArgs {
    /// Family in x, y and t.
    #[arg(long)]
    family: Option<String>,
    /// Germ f for the family f + t x^m.
    #[arg(long, requires = "m")]
    deform: Option<String>,
    #[arg(long, requires = "deform")]
    m: Option<u64>,
}

/// `-` reads stdin: a JSON report from `generate` or text whose `F:` line
/// or first non-empty line is the polynomial.
fn resolve(text: &str) -> Result<String, Failure> {
    if text != "-" {
        return Ok(text.to_string());
    }
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf).map_err(|e| Failure::parse(format!("reading stdin: {}", e)))?;
    if let Ok(v) = serde_json::from_str::<Value>(&buf) {
        if let Some(f) = v.pointer("/example/F").and_then(Value::as_str) {
            return Ok(f.to_string());
        }
    }
    let lines: Vec<&str> = buf.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if let Some(l) = lines.iter().find_map(|l| l.strip_prefix("F:")) {
        return Ok(l.trim().to_string());
    }
    lines.first().map(|l| l.to_string()).ok_or_else(|| Failure::parse("no polynomial on stdin"))
}

fn max_degree() -> Result<usize, Failure> {
    match std::env::var("CURVETOWER_MAX_DEGREE") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::parse(format!("CURVETOWER_MAX_DEGREE={} is not a number", v))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", report::to_json(v)),
        Format::Text => print!("{}", report::to_text(v)),
    }
}

fn batch(path: &PathBuf, flags: &AnalyzeFlags, lim: &Limits, cli: &Cli) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {}", path.display(), e)))?;
    let inputs: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    let results: Vec<(Value, i32)> = inputs
        .par_iter()
        .map(|p| {
            let start = Instant::now();
            match commands::analyze(p, flags, lim) {
                Ok(mut r) => {
                    if cli.timing {
                        r.set_timing(start.elapsed().as_secs_f64());
                    }
                    (r.to_value(), 0)
                }
                Err(e) => (obj(vec![("input", s(p)), ("error", s(&e.msg)), ("exit_code", s(e.code))]), e.code),
            }
        })
        .collect();
    let code = results.iter().map(|r| r.1).max().unwrap_or(0);
    match cli.format {
        Format::Json => {
            let all = obj(vec![
                ("schema_version", s(report::SCHEMA_VERSION)),
                ("command", s("analyze")),
                ("results", Value::Array(results.into_iter().map(|r| r.0).collect())),
            ]);
            println!("{}", report::to_json(&all));
        }
        Format::Text => {
            for (i, (v, _)) in results.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{}", report::to_text(v));
            }
        }
    }
    Ok(code as u8)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let lim = Limits { max_degree: max_degree()?, max_retries: cli.max_retries, max_precision: cli.max_precision };
    let start = Instant::now();
    let outcome: Outcome = match &cli.cmd {
        Cmd::Analyze { poly, batch: Some(path), with_table, with_diagram } => {
            debug_assert!(poly.is_none());
            let flags = AnalyzeFlags { with_table: *with_table, with_diagram: *with_diagram };
            return batch(path, &flags, &lim, cli);
        }
        Cmd::Analyze { poly, batch: None, with_table, with_diagram } => {
            let flags = AnalyzeFlags { with_table: *with_table, with_diagram: *with_diagram };
            commands::analyze(&resolve(poly.as_deref().unwrap_or("-"))?, &flags, &lim)
        }
        Cmd::Roots { poly, index } => commands::roots(&resolve(poly)?, *index, &lim),
        Cmd::Intersect { poly, with, oracle } => commands::intersect(&resolve(poly)?, with, *oracle, &lim),
        Cmd::Equising(EquisingArgs { family: Some(fam), .. }) => commands::equising_family(&resolve(fam)?, &lim),
        Cmd::Equising(EquisingArgs { deform: Some(f), m: Some(m), .. }) => {
            commands::equising_deform(&resolve(f)?, *m, &lim)
        }
        Cmd::Equising(_) => unreachable!("clap enforces one of --family or --deform with --m"),
        Cmd::Infinity { poly, ams, classify } => {
            let mode = match (ams, classify) {
                (true, _) => InfinityMode::Ams,
                (_, true) => InfinityMode::Classify,
                _ => InfinityMode::Report,
            };
            commands::infinity(&resolve(poly)?, mode, &lim)
        }
        Cmd::Generate { weights } => commands::generate(weights, &lim),
    };
    let mut r = outcome?;
    if cli.timing {
        r.set_timing(start.elapsed().as_secs_f64());
    }
    let v = r.to_value();
    // the bare root keeps text output usable as input to other commands
    match (&cli.cmd, cli.format) {
        (Cmd::Roots { .. }, Format::Text) => println!("{}", v["root"]["H"].as_str().unwrap()),
        _ => emit(&v, cli.format),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code as u8)
        }
    }
}
