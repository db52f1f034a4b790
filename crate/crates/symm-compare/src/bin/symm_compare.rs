//! Thin command-line front end over the library: run a scenario config,
//! a directory of configs, or the built-in demonstration. Exit code 0 iff
//! every executed check passes.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use symm_compare::report::export;
use symm_compare::scenario::{
    demo_talenti_config, load_config, run_scenario, ScenarioConfig, ScenarioOutcome,
};

#[derive(Parser)]
#[command(
    name = "symm-compare",
    version,
    about = "Level-set symmetrization comparison runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario config file.
    Run {
        config: PathBuf,
        /// Output directory for reports and profile CSVs.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the resolution list with a single edge length.
        #[arg(long)]
        h: Option<f64>,
        /// Override the ladder size K.
        #[arg(long)]
        ladder: Option<usize>,
    },
    /// Run every .toml config in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run a built-in demonstration scenario.
    Demo {
        /// Currently: `talenti`.
        name: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("one or more checks failed");
            ExitCode::FAILURE
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, symm_compare::Error> {
    match cli.command {
        Command::Run {
            config,
            out,
            h,
            ladder,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(h) = h {
                cfg.resolutions = vec![h];
            }
            if let Some(k) = ladder {
                cfg.ladder = k;
            }
            let outcome = run_scenario(&cfg)?;
            emit(&cfg, &outcome, &out)?;
            Ok(outcome.pass())
        }
        Command::Batch { dir, out } => {
            let mut all_pass = true;
            let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().map(|e| e == "toml").unwrap_or(false))
                .collect();
            paths.sort();
            if paths.is_empty() {
                return Err(symm_compare::Error::ConfigValidation(format!(
                    "no .toml scenario configs found in {}",
                    dir.display()
                )));
            }
            for path in paths {
                let cfg = load_config(&path)?;
                let outcome = run_scenario(&cfg)?;
                emit(&cfg, &outcome, &out)?;
                all_pass &= outcome.pass();
            }
            Ok(all_pass)
        }
        Command::Demo { name, out } => {
            if name != "talenti" {
                return Err(symm_compare::Error::ConfigValidation(format!(
                    "unknown demo {name:?}; available: talenti"
                )));
            }
            let cfg = demo_talenti_config();
            let outcome = run_scenario(&cfg)?;
            emit(&cfg, &outcome, &out)?;
            Ok(outcome.pass())
        }
    }
}

fn emit(
    cfg: &ScenarioConfig,
    outcome: &ScenarioOutcome,
    out: &std::path::Path,
) -> Result<(), symm_compare::Error> {
    for run in &outcome.runs {
        let stem = format!("{}_h{}", cfg.name, run.h);
        let written = export(&run.report, Some(&run.profiles), out, &stem)?;
        for path in written {
            println!("wrote {}", path.display());
        }
        for check in &run.report.checks {
            println!(
                "[{}] {} {}: margin {:+.3e} (tol {:.1e})",
                if check.pass { "pass" } else { "FAIL" },
                stem,
                check.name,
                check.margin,
                check.tolerance
            );
        }
    }
    Ok(())
}
