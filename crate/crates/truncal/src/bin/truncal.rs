use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use truncal::cli::{self, BudgetSpec, SessionConfig};
use truncal::error::{Error, Result};

#[derive(Parser)]
#[command(name = "truncal", version, about = "Exact transseries calculator")]
struct Args {
    /// Monomial below which results are cut off.
    #[arg(long, global = true, env = "TRUNCAL_CUTOFF", default_value = cli::DEFAULT_CUTOFF)]
    cutoff: String,
    /// Maximal exponential height.
    #[arg(long, global = true, default_value_t = 4)]
    height: u32,
    /// Maximal logarithmic depth.
    #[arg(long, global = true, default_value_t = 3)]
    depth: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Read commands from stdin, one per line.
    Repl,
    /// Evaluate one command or expression.
    Eval {
        #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
        expr: String,
    },
    /// Close a generator set and print the result.
    Close {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "")]
        budget: String,
        /// Also write the closed set as a dump.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a generator set is truncation closed.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "")]
        budget: String,
    },
}

fn emit(s: impl std::fmt::Display) {
    let _ = writeln!(io::stdout().lock(), "{s}");
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))
}

fn repl(cfg: &SessionConfig) -> Result<()> {
    let stdin = io::stdin();
    let mut out = io::stdout().lock();
    let mut last = Ok(());
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| Error::Precondition(e.to_string()))?;
        match cli::run_command(cfg, &line) {
            Ok(s) if s.is_empty() => {}
            Ok(s) => {
                let _ = writeln!(out, "{s}");
            }
            Err(e) => {
                let _ = writeln!(out, "error: {e}");
                last = Err(e);
            }
        }
    }
    last
}

fn run(args: Args) -> Result<()> {
    let mut cfg = SessionConfig::new(&args.cutoff, args.height, args.depth)?;
    match args.cmd {
        Cmd::Repl => repl(&cfg),
        Cmd::Eval { expr } => {
            emit(cli::run_command(&cfg, &expr)?);
            Ok(())
        }
        Cmd::Close { input, budget, out } => {
            cfg.budget = budget.parse::<BudgetSpec>()?;
            let e = cli::load_generators(&mut cfg, &read(&input)?)?;
            let closed = cli::close(&cfg, &e)?;
            emit(&closed);
            if let Some(path) = out {
                std::fs::write(&path, cli::dump(closed.generators(), &cfg.cutoff))
                    .map_err(|e| Error::Precondition(format!("{}: {e}", path.display())))?;
            }
            Ok(())
        }
        Cmd::Verify { input, budget } => {
            cfg.budget = budget.parse::<BudgetSpec>()?;
            let e = cli::load_generators(&mut cfg, &read(&input)?)?;
            emit(cli::verify(&cfg, &e)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("truncal: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
