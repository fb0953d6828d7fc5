mod config;
mod output;
mod run;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use config::{ConfigError, Format, Mode, RunConfig};
use output::Table;

/// Undulator radiation with first-order quantum corrections.
#[derive(Debug, Parser)]
#[command(name = "undulator", version)]
struct Args {
    /// Overrides the mode given in the config file.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// JSON run configuration (not needed for `validate`).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Spectrum from the boson-type matrix elements (helical field only).
    #[arg(long)]
    boson: bool,
}

const EXIT_VALIDATION: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn worker_pool() -> Result<rayon::ThreadPool, ConfigError> {
    let threads = match std::env::var("UNDULATOR_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => return Err(ConfigError(format!("UNDULATOR_THREADS must be a positive integer, got {s:?}"))),
        },
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ConfigError(format!("cannot start worker pool: {e}")))
}

fn emit(table: &Table, format: Format, path: Option<&PathBuf>) -> Result<(), ConfigError> {
    let text = table.render(format);
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| ConfigError(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| ConfigError(e.to_string()))
        }
    }
}

fn validate_mode(cfg: Option<&RunConfig>, output: Option<&PathBuf>) -> Result<ExitCode, ConfigError> {
    let checks = validate::run_checks();
    let format = cfg.map(|c| c.format_for(output.map(|p| p.as_path()))).unwrap_or(Format::Csv);
    emit(&validate::table(&checks), format, output)?;
    let failed = checks.iter().filter(|c| !c.passed()).count();
    for c in &checks {
        eprintln!("{} {} max_residual={:.3e} tolerance={:.1e}", if c.passed() { "PASS" } else { "FAIL" }, c.name, c.residual, c.tolerance);
    }
    if failed == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{failed} of {} checks failed", checks.len());
        Ok(ExitCode::from(EXIT_VALIDATION))
    }
}

fn execute(args: Args) -> Result<ExitCode, ConfigError> {
    let cfg = args.config.as_deref().map(RunConfig::load).transpose()?;
    let mode = args
        .mode
        .or(cfg.as_ref().and_then(|c| c.mode))
        .ok_or_else(|| ConfigError("no mode given (use --mode or the config `mode` field)".into()))?;
    let output = args.output.clone().or_else(|| cfg.as_ref().and_then(|c| c.output_path.clone()));

    if mode == Mode::Validate {
        return validate_mode(cfg.as_ref(), output.as_ref());
    }
    let mut cfg = cfg.ok_or_else(|| ConfigError("--config is required for this mode".into()))?;
    cfg.boson |= args.boson;
    cfg.validate(mode)?;
    let format = cfg.format_for(output.as_deref());

    let result = match mode {
        Mode::Spectrum => run::spectrum(&cfg, cfg.boson, &worker_pool()?),
        Mode::Power => run::power(&cfg),
        Mode::Spin => run::spin(&cfg),
        Mode::Validate => unreachable!(),
    };
    let table = result.map_err(|e| ConfigError(format!("rejected parameters: {e}")))?;
    emit(&table, format, output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
