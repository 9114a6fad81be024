use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use otw_cli::{parse_checks, resolve_threads, run, CliError, Command, RunConfig, EXIT_USAGE, THREADS_ENV};
use otw_core::export::Format;

/// Exact Terwilliger algebra of the Odd graph O_{m+1}.
#[derive(Parser, Debug)]
#[command(name = "otw", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Odd graph parameter: vertices are m-subsets of a (2m+1)-set.
    #[arg(short = 'm')]
    m: usize,
    /// Worker threads. Falls back to OTW_THREADS, then to all cores.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Build the algebra and print its spectrum.
    Build {
        #[command(flatten)]
        common: Common,
    },
    /// Run exact checks: dims, prop35, centralizer, generation, lemma51, blockdiag, all.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long = "check", value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
    },
    /// Decompose the standard module and print the classification table.
    Decompose {
        #[command(flatten)]
        common: Common,
    },
    /// Decompose and write the block-diagonalization bundle.
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long = "out")]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
    },
}

fn config(cli: Cli) -> Result<RunConfig, CliError> {
    let (command, common) = match &cli.command {
        Sub::Build { common } => (Command::Build, common),
        Sub::Verify { common, .. } => (Command::Verify, common),
        Sub::Decompose { common } => (Command::Decompose, common),
        Sub::Export { common, .. } => (Command::Export, common),
    };
    let mut cfg = RunConfig::new(command, common.m);
    let env = std::env::var(THREADS_ENV).ok();
    cfg.thread_count = resolve_threads(common.threads, env.as_deref())?;
    match cli.command {
        Sub::Verify { checks, .. } => cfg.checks = parse_checks(&checks, cfg.m)?,
        Sub::Export { out, format, .. } => {
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            cfg.format = format.parse::<Format>()?;
        }
        _ => {}
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = config(cli).and_then(|cfg| run(&cfg, &mut std::io::stdout()));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("otw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
