use anyhow::Context as _;
use clap::{Parser, ValueEnum};
use orbigpd_cli::{parse_scenario, run_command, Command, CommandError, Context, ScenarioError};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

/// Run verification commands against a scenario of finite groups,
/// complexes with group actions, equivariant maps, and coefficient
/// systems.
#[derive(Parser, Debug)]
#[command(name = "orbigpd", version, about)]
struct Args {
    /// Path to the scenario JSON document.
    #[arg(long)]
    scenario: PathBuf,

    /// Command record as inline JSON, or @path to read it from a file.
    #[arg(long)]
    command: String,

    /// Where to write the report (defaults to stdout).
    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Upper bound on group order for subgroup enumeration.
    #[arg(long, default_value_t = orbigpd::DEFAULT_MAX_GROUP_ORDER)]
    max_group_order: usize,

    /// Force the brute-force natural-transformation pipeline for the
    /// bredon command.
    #[arg(long, default_value_t = false)]
    oracle: bool,
}

fn run(args: &Args) -> Result<i32, (i32, anyhow::Error)> {
    let started = Instant::now();
    let text = std::fs::read_to_string(&args.scenario)
        .with_context(|| format!("reading scenario {:?}", args.scenario))
        .map_err(|e| (2, e))?;
    let scenario = parse_scenario(&text, args.max_group_order).map_err(|e| (2, e.into()))?;

    let command_text = if let Some(path) = args.command.strip_prefix('@') {
        std::fs::read_to_string(path)
            .with_context(|| format!("reading command file {path:?}"))
            .map_err(|e| (2, e))?
    } else {
        args.command.clone()
    };
    let command: Command = serde_json::from_str(&command_text)
        .context("parsing the command record")
        .map_err(|e| (2, e))?;

    let context = Context { max_group_order: args.max_group_order, force_oracle: args.oracle };
    let report = match run_command(&scenario, &command, &context) {
        Ok(report) => report,
        Err(CommandError::Input(message)) => return Err((2, anyhow::anyhow!(message))),
        Err(CommandError::Scenario(e @ ScenarioError::UnknownName(..))) => {
            return Err((2, e.into()))
        }
        Err(CommandError::Scenario(e)) => return Err((2, e.into())),
    };

    let rendered = match args.format {
        Format::Human => report.render_human(),
        Format::Machine => report.render_machine(),
    };
    match &args.output {
        Some(path) => std::fs::write(path, rendered)
            .with_context(|| format!("writing report {path:?}"))
            .map_err(|e| (2, e))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes()).map_err(|e| (2, e.into()))?;
        }
    }
    // timing goes to stderr so reports stay byte-identical across runs
    eprintln!("# completed in {:?}", started.elapsed());
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err((code, error)) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code as u8)
        }
    }
}
