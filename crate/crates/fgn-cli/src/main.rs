//! `fgn` — fractional-Gaussian-noise projection-coefficient toolkit.
//!
//! Subcommands cover single coefficient rows, full triangles, the
//! property/conjecture verification suites, the h→1 limit constants,
//! ψ-grid exports for plotting, and the solver wall-time comparison.
//!
//! Exit codes: 0 success (all asserted checks hold), 1 a verification
//! counterexample was found, 2 usage error, 3 numerical/domain error.

mod cmds;
mod grid;
mod output;

use std::io::Write as _;

use clap::{Parser, Subcommand};

use cmds::{CliError, Method, Suite};
use output::Format;

#[derive(Parser)]
#[command(
    name = "fgn",
    version,
    about = "fractional Gaussian noise: projection coefficients, verification suites, benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: csv and json carry full double precision, pretty
    /// rounds to 5 decimals like the published tables.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Pretty)]
    format: FormatArg,

    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Pretty,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Pretty => Format::Pretty,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Projection coefficients Gamma[n][k], k = 2..=n, for one order n.
    Coeffs {
        /// Hurst parameter in [0, 1].
        #[arg(long)]
        hurst: f64,
        /// Projection order (number of conditioning increments + 1).
        #[arg(long)]
        n: usize,
        /// Solution method.
        #[arg(long, value_enum, default_value_t = Method::Solve)]
        method: Method,
    },
    /// The full coefficient triangle for n = 2..=n-max.
    Table {
        /// Hurst parameter in [0, 1].
        #[arg(long)]
        hurst: f64,
        /// Largest projection order in the triangle.
        #[arg(long)]
        n_max: usize,
    },
    /// Run property/conjecture verification suites over a Hurst grid.
    Verify {
        /// Which battery to run.
        #[arg(long, value_enum)]
        suite: Suite,
        /// Hurst grid: a single value or start:stop:step (inclusive).
        #[arg(long, default_value = "0.51:0.99:0.01")]
        hurst_grid: String,
        /// Largest projection order / scan length per check.
        #[arg(long, default_value_t = 50)]
        n_max: usize,
    },
    /// The h -> 1 limit constants of Gamma[3][k] and Gamma[4][k].
    Limits,
    /// psi(h, x) on an x grid (tail formula used for x > 1).
    Psi {
        /// Hurst parameter, strictly between 0.5 and 1.
        #[arg(long)]
        hurst: f64,
        /// x grid: a single value or start:stop:step (inclusive).
        #[arg(long, default_value = "0:1:0.01")]
        x_grid: String,
    },
    /// Wall-time comparison of the three solution strategies.
    Bench {
        /// Comma-separated system sizes, e.g. 100,500,1000.
        #[arg(long, default_value = "100,500,1000")]
        n_list: String,
        /// Timed repetitions per (method, n); the median is reported.
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Hurst parameter in [0, 1).
        #[arg(long, default_value_t = 0.7)]
        hurst: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Coeffs { hurst, n, method } => cmds::coeffs(hurst, n, method),
        Command::Table { hurst, n_max } => cmds::table(hurst, n_max),
        Command::Verify { suite, hurst_grid, n_max } => {
            cmds::verify(suite, &hurst_grid, n_max)
        }
        Command::Limits => cmds::limits(),
        Command::Psi { hurst, x_grid } => cmds::psi(hurst, &x_grid),
        Command::Bench { n_list, reps, hurst } => cmds::bench_cmd(&n_list, reps, hurst),
    };

    match result {
        Ok((record, counterexample_found)) => {
            let rendered = record.render(cli.format.into());
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("fgn: cannot write {}: {e}", path.display());
                    std::process::exit(2);
                }
            } else {
                let mut stdout = std::io::stdout();
                stdout.write_all(rendered.as_bytes()).expect("write to stdout");
                stdout.flush().expect("flush stdout");
            }
            std::process::exit(if counterexample_found { 1 } else { 0 });
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("fgn: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("fgn: {msg}");
            std::process::exit(3);
        }
    }
}
