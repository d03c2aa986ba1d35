use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use scfem::compare::{compare, comparison_svg};
use scfem::config::{preset, RunConfig, PRESET_NAMES};
use scfem::trace::read_trace;
use scfem::{init_threads, CliError, Result};

/// Adaptive multilevel stochastic collocation FEM runs.
#[derive(Parser)]
#[command(name = "scfem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration and write its artifacts.
    Run {
        /// TOML configuration file.
        config: Option<PathBuf>,
        /// Use a built-in preset instead of a file.
        #[arg(long, conflicts_with = "config")]
        preset: Option<String>,
        /// Override `output.dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override `adaptive.tolerance`.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(short, long)]
        quiet: bool,
    },
    /// Compare two trace.csv files of the same problem.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Iterations used for the slope fit.
        #[arg(long, default_value_t = 8)]
        window: usize,
        /// Write a combined convergence plot here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Parse and validate a configuration file.
    ValidateConfig { config: PathBuf },
    /// Print the built-in presets, or write them as `<name>.toml` into a directory.
    EmitPresets {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            config,
            preset: name,
            out,
            tolerance,
            quiet,
        } => {
            let mut cfg = match (config, name) {
                (Some(path), _) => RunConfig::load(&path)?,
                (None, Some(name)) => preset(&name)?,
                (None, None) => {
                    return Err(CliError::Config("give a config file or --preset".into()))
                }
            };
            if let Some(dir) = out {
                cfg.output.dir = dir;
            }
            if let Some(t) = tolerance {
                cfg.adaptive.tolerance = t;
            }
            init_threads()?;
            let report = scfem::run::run(&cfg, !quiet)?;
            if !quiet {
                eprintln!("artifacts in {}", report.out_dir.display());
            }
            report.check_converged()
        }
        Command::Compare { a, b, window, svg } => {
            let (ta, tb) = (read_trace(&a)?, read_trace(&b)?);
            let report = compare(&ta, &tb, window)?;
            if let Some(path) = svg {
                let la = format!("{} ({})", a.display(), ta.meta.mode);
                let lb = format!("{} ({})", b.display(), tb.meta.mode);
                std::fs::write(&path, comparison_svg(&ta, &tb, (&la, &lb)))
                    .map_err(|e| CliError::io(&path, e))?;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serialises")
            );
            Ok(())
        }
        Command::ValidateConfig { config } => {
            let cfg = RunConfig::load(&config)?;
            println!(
                "ok: problem {} ({} parameters)",
                cfg.problem.name,
                cfg.build_problem()?.parameter_dim()
            );
            Ok(())
        }
        Command::EmitPresets { dir } => {
            for name in PRESET_NAMES {
                let text = preset(name)?.to_toml_string();
                match &dir {
                    Some(d) => {
                        std::fs::create_dir_all(d).map_err(|e| CliError::io(d, e))?;
                        let path = d.join(format!("{name}.toml"));
                        std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
                    }
                    None => println!("# {name}\n{text}"),
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
