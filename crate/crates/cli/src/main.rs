use std::fs::File;
use std::io::{self, BufReader, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

use artseries::{Exponent, ExponentMonoid, Orientation};
use artseries_cli::config::{parse_exponent, parse_monoid, parse_orientation};
use artseries_cli::{run_batch, run_repl, Emit, Session, SessionConfig};
use clap::Parser;

/// Formal series with rational exponents: evaluate a script or start a REPL.
#[derive(Parser, Debug)]
#[command(name = "artseries", version)]
struct Args {
    /// Script to run; `-` reads statements from stdin. Omit for a REPL.
    script: Option<PathBuf>,

    /// Window bound for `x` and constants [default: 12, or -12 for artinian]
    #[arg(long, value_parser = parse_exponent)]
    window: Option<Exponent>,

    /// Coefficients at most this large count as zero
    #[arg(long, default_value_t = artseries::scalar::default_tolerance())]
    tol: f64,

    #[arg(long, value_parser = parse_orientation, default_value = "noetherian")]
    orientation: Orientation,

    /// Exponent monoid: Q (rationals) or N (natural numbers)
    #[arg(long, value_parser = parse_monoid, default_value = "Q")]
    exponents: ExponentMonoid,

    #[arg(long, default_value = "text")]
    emit: Emit,

    /// Variable count for symmetric series (1 to 4)
    #[arg(long, default_value_t = 3)]
    nvars: usize,

    /// Weight cutoff for symmetric series
    #[arg(long, value_parser = parse_exponent, default_value = "5")]
    cutoff: Exponent,

    /// Modulus bound for pseudointegers
    #[arg(long, default_value_t = 24)]
    modulus: u64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = SessionConfig {
        window: args.window.unwrap_or_else(|| SessionConfig::default_window(args.orientation)),
        orientation: args.orientation,
        tolerance: args.tol,
        monoid: args.exponents,
        emit: args.emit,
        nvars: args.nvars,
        cutoff: args.cutoff,
        modulus: args.modulus,
    };
    if let Err(e) = config.validate().and_then(|()| artseries::scalar::set_tolerance(config.tolerance).map_err(|e| e.to_string())) {
        eprintln!("artseries: {e}");
        return ExitCode::from(2);
    }
    let mut session = Session::new(config);
    let stdout = io::stdout().lock();
    let result = match &args.script {
        Some(path) if path.as_os_str() != "-" => match File::open(path) {
            Ok(file) => run_batch(&mut session, BufReader::new(file), stdout),
            Err(e) => {
                eprintln!("artseries: cannot open {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        Some(_) => run_batch(&mut session, io::stdin().lock(), stdout),
        None => {
            let interactive = io::stdin().is_terminal();
            if let Err(e) = run_repl(&mut session, io::stdin().lock(), stdout, io::stderr(), interactive) {
                eprintln!("artseries: {e}");
                return ExitCode::FAILURE;
            }
            return ExitCode::SUCCESS;
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("artseries: {e}");
            ExitCode::FAILURE
        }
    }
}
