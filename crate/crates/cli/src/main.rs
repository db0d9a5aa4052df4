//! `cheb`: experiment harness for complex Chebyshev polynomials.
//!
//! Exit codes: 0 success, 2 solver failure (diagnostic JSON on stdout),
//! 3 bad configuration, 1 I/O error.

mod commands;
mod config;
mod emit;

use clap::{Parser, Subcommand};
use commands::Failure;
use config::Common;

#[derive(Parser)]
#[command(name = "cheb", version, about = "Complex Chebyshev polynomials, Widom factors, Faber polynomials and zeros")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chebyshev polynomial of one degree (JSON).
    Cheb(Common),
    /// Widom factors for a list of degrees (CSV: degree, widom, rel_error).
    WidomTable(Common),
    /// Faber/Chebyshev coefficient distance along level curves (CSV r, distance + JSON slope).
    FaberCompare(Common),
    /// Zeros of a Chebyshev polynomial (CSV, JSON or SVG scatter).
    Zeros(Common),
    /// Sampled boundary curve (CSV t, re, im).
    CurveDump(Common),
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let result = match cli.command {
        Command::Cheb(c) => commands::cheb(c),
        Command::WidomTable(c) => commands::widom_table(c),
        Command::FaberCompare(c) => commands::faber_compare(c),
        Command::Zeros(c) => commands::zeros(c),
        Command::CurveDump(c) => commands::curve_dump(c),
    };
    let code = match result {
        Ok(()) => 0,
        Err(Failure::Config(msg)) => {
            eprintln!("cheb: configuration error: {msg}");
            3
        }
        Err(Failure::Solver(doc)) => {
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            2
        }
        Err(Failure::Io(msg)) => {
            eprintln!("cheb: {msg}");
            1
        }
    };
    std::process::exit(code);
}
