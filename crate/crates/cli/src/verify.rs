//! Check-suite runner: `verify run` executes the registered checks and
//! prints a pass/fail ledger, `verify list` and `verify describe <id>`
//! inspect the registry. Exit codes: 0 all pass, 1 failures, 2 configuration
//! error.

use clap::{Parser, Subcommand};
use equigeo::checks::{
    build_context, emit_json, emit_markdown, glob_match, load_descriptors, run_checks,
    CheckStatus, RunConfig,
};
use std::io::Write;
use std::process::ExitCode;

/// Print, tolerating a closed pipe (e.g. `verify run | head`).
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.write_all(b"\n");
}

#[derive(Parser)]
#[command(name = "verify", about = "Run the equivariant-geometry check suite", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks (all, or those matching a glob).
    Run {
        /// Glob over check ids, e.g. "orbit.std.*".
        #[arg(long)]
        filter: Option<String>,
        /// Output format.
        #[arg(long, default_value = "md", value_parser = ["json", "md"])]
        format: String,
        /// Parallel jobs (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Cyclotomic conductor (the built-in scenarios need a multiple of 120).
        #[arg(long, default_value_t = 120)]
        conductor: u32,
        /// Path to a registry JSON overriding the built-in one.
        #[arg(long)]
        registry: Option<std::path::PathBuf>,
    },
    /// List all check ids with anchors.
    List,
    /// Show the full descriptor of one check.
    Describe { id: String },
}

fn config_with_registry(
    conductor: u32,
    registry: &Option<std::path::PathBuf>,
) -> Result<RunConfig, String> {
    let mut config = RunConfig {
        conductor,
        ..RunConfig::default()
    };
    // The environment variable is the only override besides the flag.
    let path = registry
        .clone()
        .or_else(|| std::env::var_os("EQUIGEO_REGISTRY").map(Into::into));
    if let Some(p) = path {
        let text = std::fs::read_to_string(&p)
            .map_err(|e| format!("cannot read registry {}: {e}", p.display()))?;
        config.registry_json = Some(text);
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            filter,
            format,
            jobs,
            conductor,
            registry,
        } => {
            let config = match config_with_registry(conductor, &registry) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let descriptors = match load_descriptors(&config) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            if let Some(f) = &filter {
                if !descriptors.iter().any(|d| glob_match(f, &d.id)) {
                    eprintln!("no check id matches '{f}'");
                    return ExitCode::from(2);
                }
            }
            let ctx = match build_context(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let reports = run_checks(&ctx, &descriptors, filter.as_deref(), jobs);
            match format.as_str() {
                "json" => emit(&emit_json(&reports, config.conductor)),
                _ => emit(&emit_markdown(&reports)),
            }
            if reports.iter().any(|r| r.status == CheckStatus::Fail) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::List => {
            let descriptors = match load_descriptors(&RunConfig::default()) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            for d in &descriptors {
                println!("{:32} [{}] {}", d.id, d.category, d.anchor);
            }
            ExitCode::SUCCESS
        }
        Command::Describe { id } => {
            let descriptors = match load_descriptors(&RunConfig::default()) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            match descriptors.iter().find(|d| d.id == id) {
                Some(d) => {
                    println!("id:       {}", d.id);
                    println!("anchor:   {}", d.anchor);
                    println!("category: {}", d.category);
                    println!("kind:     {}", d.kind);
                    println!("expected: {}", d.expected);
                    println!("params:   {}", d.params);
                    ExitCode::SUCCESS
                }
                None => {
                    eprintln!("unknown id: {id}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
