use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dirac_front::experiment::{config_from_json, list_experiments, run, validate_config};

#[derive(Parser)]
#[command(
    name = "dirac-front",
    version,
    about = "Exact free Dirac evolution: carrier-border experiments with deterministic artifacts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config (or a previous run's manifest.json) and
    /// write trace/tent/shell/efsinc/indicator files plus manifest.json.
    Run {
        /// Path to a config JSON file, or `-` for stdin.
        config: PathBuf,
        /// Exit nonzero unless every check passes within tolerance.
        #[arg(long)]
        strict: bool,
        /// Output directory (default: the config's `output_dir`, else `.`).
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// List available experiments with the claim each one verifies.
    List,
    /// Parse and validate a config, reporting every problem at once.
    Validate {
        /// Path to a config JSON file, or `-` for stdin.
        config: PathBuf,
    },
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, strict, out } => {
            let text = match read_input(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            let cfg = match config_from_json(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match run(&cfg, out.as_deref()) {
                Ok(manifest) => {
                    for check in &manifest.checks {
                        println!(
                            "[{}] {}: lhs = {:.6e}, rhs = {:.6e}, margin = {:.3e}",
                            if check.pass { "pass" } else { "FAIL" },
                            check.label,
                            check.lhs,
                            check.rhs,
                            check.margin,
                        );
                    }
                    for note in &manifest.notes {
                        println!("note: {note}");
                    }
                    println!(
                        "{}: {} checks, {} violation(s), worst margin {:.3e}, {:.2}s",
                        manifest.experiment,
                        manifest.checks.len(),
                        manifest.violations,
                        manifest.worst_margin,
                        manifest.wall_clock_seconds,
                    );
                    if strict && !manifest.passed {
                        return ExitCode::from(1);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::List => {
            for (name, claim) in list_experiments() {
                println!("{name:22} {claim}");
            }
            ExitCode::SUCCESS
        }
        Command::Validate { config } => {
            let text = match read_input(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            match validate_config(&text) {
                Ok(cfg) => {
                    println!("ok: {} experiment config is valid", cfg.experiment.name());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
