use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod presets;
mod report;

use commands::CliError;
use config::{ConfigError, ScenarioConfig};

/// Section data, chord maps and reconstruction for planar convex bodies.
#[derive(Parser)]
#[command(name = "sections", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON scenario configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Built-in configuration: disk-in-disk, polygon-inner, radius10, ellipse, rotation
    #[arg(long, global = true, conflicts_with = "config")]
    preset: Option<String>,

    /// Output directory (default out/<command>)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// RNG seed, overrides the config
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Criterion families, numbers or name fragments, comma-separated (selftest)
    #[arg(long, global = true)]
    filter: Option<String>,

    /// Negative control for the distinguishability criterion (selftest)
    #[arg(long, global = true)]
    inject_perturbation: Option<f64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Tabulate a probe of the outer body
    Probe,
    /// Iterate the composed chord map, or the rotation map when configured
    Orbit,
    /// Seed and propagate boundary points from tangent data
    Reconstruct,
    /// Compare the tangent data of two bodies
    Verify,
    /// Decide from cap areas whether the outer body is a disk
    DetectDisk,
    /// Integrate the |y|^(i-2) measure over a polygonal region
    Nu,
    /// Run the acceptance suite
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Probe => "probe",
            Command::Orbit => "orbit",
            Command::Reconstruct => "reconstruct",
            Command::Verify => "verify",
            Command::DetectDisk => "detect-disk",
            Command::Nu => "nu",
            Command::Selftest => "selftest",
        }
    }
}

fn load(cli: &Cli) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg = match (&cli.config, &cli.preset) {
        (Some(p), _) => ScenarioConfig::load(p)?,
        (None, Some(name)) => presets::preset(name)
            .ok_or_else(|| ConfigError(format!("unknown preset '{name}'; known: {}", presets::NAMES.join(", "))))?,
        (None, None) if matches!(cli.command, Command::Selftest) => ScenarioConfig::parse(r#"{"bodies": {}}"#)?,
        (None, None) => return Err(ConfigError("no configuration: pass --config <path> or --preset <name>".into())),
    };
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = load(cli)?;
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.outputs.dir.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(cli.command.name()));
    match cli.command {
        Command::Probe => commands::probe(&cfg, &out),
        Command::Orbit => commands::orbit_cmd(&cfg, &out),
        Command::Reconstruct => commands::reconstruct(&cfg, &out),
        Command::Verify => commands::verify(&cfg, &out),
        Command::DetectDisk => commands::detect(&cfg, &out),
        Command::Nu => commands::nu(&cfg, &out),
        Command::Selftest => commands::selftest(&cfg, cli.filter.clone(), cli.inject_perturbation, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
