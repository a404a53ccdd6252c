use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use loqc_cli::{execute, parse, render, render_catalog, CliError, Format};

#[derive(Parser)]
#[command(name = "loqc", version = loqc_cli::VERSION, about = "Run linear-optics experiments and write their tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Root seed (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (overrides the config; stdout when neither is set).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Table format.
    #[arg(long, global = true, value_parser = ["csv", "json-lines"])]
    format: Option<String>,
    /// Worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Add the wall time to the footer. Output is then no longer reproducible.
    #[arg(long, global = true)]
    wall_time: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run { config: PathBuf },
    /// Print the experiment catalog, one JSON schema per line.
    List,
}

fn write(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| CliError::config(None, Some("threads"), e.to_string()))?;
    }
    match cli.command {
        Command::List => {
            write(cli.out.as_ref(), &render_catalog())?;
            Ok(0)
        }
        Command::Run { config } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::config(None, None, format!("cannot read {}: {e}", config.display())))?;
            let mut cfg = parse(&text)?;
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            let format = match cli.format {
                Some(f) => f.parse::<Format>().map_err(|e| CliError::config(None, Some("format"), e))?,
                None => cfg.format.unwrap_or(Format::Csv),
            };
            let out_path = cli.out.or(cfg.out.clone());
            let start = Instant::now();
            let out = execute(&cfg)?;
            let elapsed = start.elapsed().as_secs_f64();
            write(out_path.as_ref(), &render(&out, format, cli.wall_time.then_some(elapsed)))?;
            eprintln!("{}: {} rows in {elapsed:.3} s", out.experiment, out.rows.len());
            if let loqc_cli::Status::BudgetExceeded { completed, total } = out.status {
                eprintln!("budget exceeded: ran {completed} of {total} tasks, output is partial");
            }
            Ok(out.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("loqc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
