//! Batch front end: `helecell run` drives one simulation from a JSON config
//! and writes snapshots, diagnostics, and optional SVG renderings;
//! `helecell presets` exposes the bundled experiment configs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use helecell::config::{parse_config, preset, PRESETS};
use helecell::evolution::{build_initial_curve, run, Termination};
use helecell::output::{render_svg, write_diagnostics, write_snapshot};

#[derive(Parser)]
#[command(
    name = "helecell",
    version,
    about = "Hele-Shaw moving-boundary simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation described by a JSON config file.
    Run {
        /// Path to the run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides `output_dir` from the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the master RNG seed from the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Write one SVG rendering per snapshot.
        #[arg(long)]
        emit_svg: bool,
    },
    /// List bundled experiment presets, or print one as JSON.
    Presets {
        /// Preset name to print (omit to list all).
        name: Option<String>,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            config,
            out,
            seed,
            emit_svg,
        } => match run_command(&config, out, seed, emit_svg) {
            Ok(code) => code,
            Err(err) => {
                eprintln!("error: {err}");
                ExitCode::FAILURE
            }
        },
        Command::Presets { name } => presets_command(name.as_deref()),
    }
}

fn run_command(
    config_path: &std::path::Path,
    out: Option<PathBuf>,
    seed: Option<u64>,
    emit_svg: bool,
) -> helecell::Result<ExitCode> {
    let mut cfg = parse_config(config_path)?;
    if let Some(seed) = seed {
        cfg.params.seed = seed;
    }
    if emit_svg {
        cfg.emit_svg = true;
    }
    let out_dir = out.or(cfg.output_dir.clone()).ok_or_else(|| {
        helecell::Error::Validation("no output directory: pass --out or set output_dir".into())
    })?;
    std::fs::create_dir_all(&out_dir).map_err(|source| helecell::Error::Io {
        path: out_dir.display().to_string(),
        source,
    })?;

    let initial = build_initial_curve(&cfg.initial_curve, cfg.n)?;
    let output = run(&cfg.params, initial, cfg.snapshot_interval)?;

    for (k, (t, curve)) in output.snapshots.iter().enumerate() {
        let path = out_dir.join(format!("snapshot_{k:04}.csv"));
        write_snapshot(curve, &path)?;
        if cfg.emit_svg {
            render_svg(curve, &out_dir.join(format!("snapshot_{k:04}.svg")))?;
        }
        println!("snapshot {k:04} at t = {t:.6} -> {}", path.display());
    }
    write_diagnostics(&output.diagnostics, &out_dir.join("diagnostics.csv"))?;

    for warning in &output.summary.warnings {
        eprintln!("warning: {warning}");
    }

    match &output.termination {
        Termination::Completed => {
            println!(
                "completed {} steps; diagnostics in {}",
                output.summary.steps_taken,
                out_dir.join("diagnostics.csv").display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Termination::Aborted { reason, .. } => {
            eprintln!("aborted: {reason} (partial output kept)");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn presets_command(name: Option<&str>) -> ExitCode {
    match name {
        None => {
            for (name, _) in PRESETS {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Some(name) => match preset(name) {
            Some(json) => {
                print!("{json}");
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("unknown preset: {name}");
                ExitCode::FAILURE
            }
        },
    }
}
