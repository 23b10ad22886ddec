use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use klatlas::run::{EXIT_CONFIG, EXIT_INTERNAL};
use klatlas::{exit_code, run, table, Command, Format, RawConfig};

#[derive(Parser)]
#[command(name = "klatlas", version, about = "Verify Kazhdan-Lusztig atlas charts on G/P for SL_n")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List W^P, the strata Q_P with their affine labels, and the charts.
    Enumerate(Opts),
    /// Run the group-theoretic checks (sampled where they involve chart coordinates).
    VerifyLemmas(Opts),
    /// Compare strata on both sides of each chart at sampled points.
    VerifyTheorem(Opts),
    /// Extract and match divisor equations on each chart.
    Divisors(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    n: usize,
    /// Simple roots of the Levi, e.g. `2` or `1,3`; empty or `none` for B.
    #[arg(long = "J", default_value = "")]
    j: String,
    /// Comma-separated coweight or `minimal`.
    #[arg(long, default_value = "minimal", allow_hyphen_values = true)]
    lambda: String,
    /// `all` or comma-separated one-line permutations w1.
    #[arg(long, default_value = "all")]
    charts: String,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Largest total degree tried when interpolating divisor equations.
    #[arg(long, default_value_t = 4)]
    degree_cap: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Cmd::Enumerate(o) => (Command::Enumerate, o),
        Cmd::VerifyLemmas(o) => (Command::VerifyLemmas, o),
        Cmd::VerifyTheorem(o) => (Command::VerifyTheorem, o),
        Cmd::Divisors(o) => (Command::Divisors, o),
    };
    let raw = RawConfig {
        n: opts.n,
        j: opts.j,
        lambda: opts.lambda,
        charts: opts.charts,
        samples: opts.samples,
        seed: opts.seed,
        degree_cap: opts.degree_cap,
        format: match opts.format {
            FormatArg::Json => Format::Json,
            FormatArg::Table => Format::Table,
        },
    };
    let config = match raw.validate() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("klatlas: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let start = Instant::now();
    let report = match run(command, &config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("klatlas: {e}");
            return ExitCode::from(EXIT_INTERNAL as u8);
        }
    };
    let text = match config.format {
        Format::Json => report.to_json(),
        Format::Table => table::render(&report),
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("klatlas: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INTERNAL as u8);
            }
        }
        None => print!("{text}"),
    }
    eprintln!(
        "klatlas: {} finished in {:.2}s: {} passed, {} failed",
        command.name(),
        start.elapsed().as_secs_f64(),
        report.summary.pass,
        report.summary.fail
    );
    ExitCode::from(exit_code(&report) as u8)
}
