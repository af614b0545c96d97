use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fstirap::{parse_config_with_overrides, run_scenario, Error, Scenario};

/// Exit status when `check` finds a failing condition.
const CHECK_FAILED: u8 = 5;

#[derive(Parser)]
#[command(name = "fstirap", version, about = "Two-atom cavity/laser fractional STIRAP simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate one run and write the trace and summary.
    Simulate(RunArgs),
    /// Scan the (z0, d) plane and locate the operating point.
    Sweep(RunArgs),
    /// Scan one parameter around the configured point.
    Robustness(RunArgs),
    /// Report the dark state at `darkstate.time`.
    Darkstate(RunArgs),
    /// Check detuning guard, resonant approximation and adiabaticity.
    Check(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration file.
    #[arg(short, long)]
    config: PathBuf,
    /// Override a config key, e.g. `--set geometry.d="8 um"`. Repeatable.
    #[arg(short, long = "set", value_name = "KEY=VALUE", value_parser = parse_assignment)]
    set: Vec<(String, String)>,
    /// Output directory (`output.dir`).
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// File-name prefix (`output.prefix`).
    #[arg(long)]
    prefix: Option<String>,
}

fn parse_assignment(text: &str) -> Result<(String, String), String> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got `{text}`"))?;
    let k = k.trim();
    if k.is_empty() {
        return Err("empty key".into());
    }
    Ok((k.to_string(), v.trim().to_string()))
}

fn toml_string(s: &str) -> String {
    let escaped: String = s
        .chars()
        .flat_map(|c| match c {
            '"' => vec!['\\', '"'],
            '\\' => vec!['\\', '\\'],
            c => vec![c],
        })
        .collect();
    format!("\"{escaped}\"")
}

fn run(scenario: Scenario, args: RunArgs) -> Result<bool, Error> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut overrides = vec![("scenario".to_string(), toml_string(scenario.name()))];
    overrides.extend(args.set);
    if let Some(dir) = &args.out {
        overrides.push(("output.dir".into(), toml_string(&dir.to_string_lossy())));
    }
    if let Some(prefix) = &args.prefix {
        overrides.push(("output.prefix".into(), toml_string(prefix)));
    }
    let cfg = parse_config_with_overrides(&text, &overrides)?;
    let outcome = run_scenario(&cfg)?;
    println!("{}", outcome.report);
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (scenario, args) = match cli.command {
        Command::Simulate(a) => (Scenario::Simulate, a),
        Command::Sweep(a) => (Scenario::Sweep, a),
        Command::Robustness(a) => (Scenario::Robustness, a),
        Command::Darkstate(a) => (Scenario::DarkState, a),
        Command::Check(a) => (Scenario::Check, a),
    };
    match run(scenario, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
