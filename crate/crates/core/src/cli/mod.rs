//! Config ingestion, scenario dispatch and CSV emission behind the `impneg`
//! binary.
//!
//! Exit codes: 0 success, 1 computation failure, 2 usage or config error,
//! 3 I/O error.

mod config_file;
mod csv;
mod presets;

pub use config_file::{echo_config, parse_config, parse_config_with, OVERRIDE_ALIASES};
pub use csv::{
    emit_csv, format_value, parse_csv, render_csv, write_csv_file, CsvTable, RunManifest, CONFIG_BEGIN, CONFIG_END,
};
pub use presets::{preset, Preset, PRESETS};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::scenarios::{self, ScenarioKind, SweepEngine};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "impneg",
    version,
    about = "System-bath entanglement negativity of a resonant level"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Grand-canonical equilibrium sweep of N_1..N_M.
    EquilibriumGc(RunArgs),
    /// Canonical (fixed particle number) equilibrium sweep.
    EquilibriumCanonical(RunArgs),
    /// Relaxation of a prepared impurity coupled to a thermal bath.
    Relax(RunArgs),
    /// Voltage-driven junction, time series or sweep at a fixed time.
    Junction(RunArgs),
    /// List the shipped preset configs.
    Presets {
        /// Print the config text of one preset.
        #[arg(long, value_name = "NAME")]
        show: Option<String>,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// TOML config file.
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Shipped preset name (see `impneg presets`).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Output CSV path; stdout if absent and the config names none.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Override a config value, e.g. `--set V=15` or `--set junction.levels=60`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Suppress progress lines on stderr.
    #[arg(long)]
    quiet: bool,
}

/// Runs the CLI with process stdout/stderr and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    // Unlocked handles: progress lines are printed from worker threads.
    run_with_io(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// As [`run`], with explicit sinks for the CSV/listing output and diagnostics.
/// Progress lines always go to the process stderr.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let outcome = match cli.command {
        Command::Presets { show } => list_presets(show.as_deref(), out),
        Command::EquilibriumGc(a) => execute(ScenarioKind::EquilibriumGc, a, out),
        Command::EquilibriumCanonical(a) => execute(ScenarioKind::EquilibriumCanonical, a, out),
        Command::Relax(a) => execute(ScenarioKind::Relaxation, a, out),
        Command::Junction(a) => execute(ScenarioKind::Junction, a, out),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(cause) = source {
                let _ = writeln!(err, "  caused by: {cause}");
                source = cause.source();
            }
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::Config { .. } | Error::InvalidGrid(_) | Error::InvalidParameter { .. } | Error::InvalidCutoff { .. } => {
            EXIT_USAGE
        }
        _ => EXIT_FAILURE,
    }
}

fn list_presets(show: Option<&str>, out: &mut dyn Write) -> crate::Result<()> {
    match show {
        Some(name) => {
            let p = preset(name).ok_or_else(|| unknown_preset(name))?;
            write!(out, "{}", p.text)?;
        }
        None => {
            for p in PRESETS {
                writeln!(out, "{:<6} {}", p.name, p.description())?;
            }
        }
    }
    Ok(())
}

fn unknown_preset(name: &str) -> Error {
    let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
    Error::config(
        "--preset",
        format!("unknown preset `{name}` (available: {})", names.join(", ")),
    )
}

fn execute(kind: ScenarioKind, args: RunArgs, out: &mut dyn Write) -> crate::Result<()> {
    let (text, config_path) = match (&args.config, &args.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::config(path.display().to_string(), format!("cannot read config: {e}")))?;
            (text, Some(path.display().to_string()))
        }
        (None, Some(name)) => {
            let p = preset(name).ok_or_else(|| unknown_preset(name))?;
            (p.text.to_string(), Some(format!("preset:{}", p.name)))
        }
        (None, None) => return Err(Error::config("--config", "either --config or --preset is required")),
    };
    let mut config = parse_config_with(&text, Some(kind), &args.overrides)?;
    if let Some(path) = &args.out {
        config.output = Some(path.display().to_string());
    }

    let started = Instant::now();
    let started_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let (variable, grid) = config.grid();
    let label = variable.name();
    let quiet = args.quiet;
    let report = |index: usize, completed: usize, total: usize| {
        if !quiet {
            eprintln!("[{completed}/{total}] {label} = {}", grid[index]);
        }
    };
    let result = scenarios::run(&config, &SweepEngine::from_env(), Some(&report))?;

    let manifest = RunManifest {
        config_path,
        output_path: config.output.clone(),
        scenario: kind,
        started_unix,
        elapsed_seconds: started.elapsed().as_secs_f64(),
        version: env!("CARGO_PKG_VERSION"),
    };
    match &config.output {
        Some(path) => write_csv_file(&result, Some(&manifest), path.as_ref()),
        None => emit_csv(&result, Some(&manifest), out),
    }
}
