//! Command-line front end: parses group specifications, orchestrates the
//! enumeration/analysis/centraliser pipelines, and emits deterministic
//! reports.
//!
//! Exit codes: 0 success, 2 input error, 3 memory budget exhausted with a
//! partial report written.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

pub mod commands;
pub mod report;
pub mod spec;

use commands::{
    cmd_centraliser, cmd_dc, cmd_growth, cmd_series, parse_sequence, CentraliserOutcome, RunConfig,
    DEFAULT_MAX_ORDER, DEFAULT_RADIUS,
};
use gpgrowth::enumeration::DEFAULT_MEMORY_BUDGET;
use gpgrowth::series::{digit_sum_sequence, example_sequence};
use report::{Format, Meta};
use spec::GroupSpecFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gpgrowth",
    version,
    about = "Growth, commutativity and centralisers of graph products of groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Enumeration radius N.
    #[arg(long, global = true)]
    pub radius: Option<u32>,
    /// Maximum recurrence order for series reconstruction.
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
    /// Enumeration memory budget in bytes.
    #[arg(long, global = true)]
    pub memory_budget: Option<u64>,
    /// Worker pool size (results are independent of this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Seed recorded for randomized auxiliary checks (pipelines are
    /// deterministic).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Numeric tolerance override (modulus grouping and c-sequence check).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sphere/ball tables, growth series reconstruction and asymptotics.
    Growth {
        /// Group spec file (JSON).
        #[arg(long)]
        spec: PathBuf,
        /// Also write the enumerated ball as sorted canonical words, one
        /// per line prefixed by distance (the cross-implementation
        /// interchange format).
        #[arg(long)]
        dump_ball: Option<PathBuf>,
    },
    /// Degree-of-commutativity table.
    Dc {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Structural centraliser of a word, with brute-force cross-check.
    Centraliser {
        #[arg(long)]
        spec: PathBuf,
        /// Element in word syntax, e.g. "a^2 b^-3" or "u v".
        #[arg(long)]
        word: String,
    },
    /// Recurrence search and asymptotics for an integer sequence.
    Series {
        /// Sequence file: one integer per line, '#' comments allowed.
        #[arg(long, conflicts_with = "builtin")]
        file: Option<PathBuf>,
        /// Builtin fixture: example-i or digit-sum.
        #[arg(long)]
        builtin: Option<String>,
    },
}

pub struct RunOutput {
    pub rendered: String,
    pub exit_code: i32,
}

fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// Runs a parsed invocation; `Err` strings are input errors (exit 2).
pub fn run(cli: &Cli) -> Result<RunOutput, String> {
    if let Some(t) = cli.threads {
        gpgrowth::configure_threads(t);
    }
    let format: Format = cli.format.into();
    let seed = cli.seed.unwrap_or(0);

    let build_config = |opts: &spec::SpecOptions| RunConfig {
        radius: cli.radius.or(opts.radius).unwrap_or(DEFAULT_RADIUS),
        max_order: cli
            .max_order
            .or(opts.max_order)
            .unwrap_or(DEFAULT_MAX_ORDER),
        memory_budget: cli
            .memory_budget
            .or(opts.memory_budget)
            .unwrap_or(DEFAULT_MEMORY_BUDGET),
        modulus_tolerance: cli.tolerance.or(opts.tolerance).unwrap_or(1e-8),
        c_check_tolerance: cli.tolerance.or(opts.tolerance).unwrap_or(1e-9),
        seed,
    };
    let meta_for = |command: &str, input: String, text: &str, cfg: &RunConfig, radius: bool| Meta {
        command: command.to_string(),
        input,
        digest: digest(text.as_bytes()),
        radius: radius.then_some(cfg.radius),
        max_order: Some(cfg.max_order),
        tolerance: cfg.c_check_tolerance,
        memory_budget: cfg.memory_budget,
        seed,
    };

    match &cli.command {
        Command::Growth { spec, dump_ball } => {
            let text = read_file(spec)?;
            let file = GroupSpecFile::parse(&text).map_err(|e| e.to_string())?;
            let gp = file.build().map_err(|e| e.to_string())?;
            let cfg = build_config(&file.options);
            let meta = meta_for("growth", spec.display().to_string(), &text, &cfg, true);
            let (report, partial) = cmd_growth(&gp, meta, &cfg, dump_ball.as_deref())?;
            Ok(RunOutput {
                rendered: report.render(format),
                exit_code: if partial { 3 } else { 0 },
            })
        }
        Command::Dc { spec } => {
            let text = read_file(spec)?;
            let file = GroupSpecFile::parse(&text).map_err(|e| e.to_string())?;
            let gp = file.build().map_err(|e| e.to_string())?;
            let cfg = build_config(&file.options);
            let meta = meta_for("dc", spec.display().to_string(), &text, &cfg, true);
            let (report, partial) = cmd_dc(&gp, meta, &cfg);
            Ok(RunOutput {
                rendered: report.render(format),
                exit_code: if partial { 3 } else { 0 },
            })
        }
        Command::Centraliser { spec, word } => {
            let text = read_file(spec)?;
            let file = GroupSpecFile::parse(&text).map_err(|e| e.to_string())?;
            let gp = file.build().map_err(|e| e.to_string())?;
            let cfg = build_config(&file.options);
            let meta = meta_for("centraliser", spec.display().to_string(), &text, &cfg, true);
            match cmd_centraliser(&gp, meta, &cfg, word) {
                CentraliserOutcome::Report(report) => Ok(RunOutput {
                    rendered: report.render(format),
                    exit_code: 0,
                }),
                CentraliserOutcome::InputError(e) => Err(e),
                CentraliserOutcome::Budget(e) => Ok(RunOutput {
                    rendered: format!("budget exhausted: {e}\n"),
                    exit_code: 3,
                }),
            }
        }
        Command::Series { file, builtin } => {
            let (input, text, seq) = match (file, builtin) {
                (Some(path), None) => {
                    let text = read_file(path)?;
                    let seq = parse_sequence(&text)?;
                    (path.display().to_string(), text, seq)
                }
                (None, Some(name)) => match name.as_str() {
                    "example-i" => (
                        format!("builtin:{name}"),
                        name.clone(),
                        example_sequence(61),
                    ),
                    "digit-sum" => (
                        format!("builtin:{name}"),
                        name.clone(),
                        digit_sum_sequence(64),
                    ),
                    other => {
                        return Err(format!(
                            "unknown builtin {other:?}; available: example-i, digit-sum"
                        ))
                    }
                },
                _ => return Err("series needs exactly one of --file or --builtin".to_string()),
            };
            let cfg = build_config(&spec::SpecOptions::default());
            let meta = meta_for("series", input, &text, &cfg, false);
            let report = cmd_series(meta, &cfg, &seq);
            Ok(RunOutput {
                rendered: report.render(format),
                exit_code: 0,
            })
        }
    }
}
