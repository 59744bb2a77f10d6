use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ppz_cli::commands::{self, Exit};
use ppz_cli::record::{RValue, Timing};
use ppz_cli::render;

/// Degree-two tautological relations on moduli of stable curves from
/// shifted r-spin data, in exact arithmetic.
#[derive(Parser)]
#[command(name = "ppz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relations on M_{g,n} at a given r, or with r symbolic
    Relations(RelationsArgs),
    /// Compare the span of the r-spin relations with the classical ones
    VerifyAc(VerifyArgs),
    /// Table of P_m(r, a) for m up to m-max
    PmTable(PmArgs),
    /// Run the acceptance suite
    Selftest(OutputArgs),
}

#[derive(Args)]
struct RelationsArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    n: usize,
    #[arg(long, required_unless_present = "symbolic", conflicts_with = "symbolic")]
    r: Option<u32>,
    /// Treat r as a formal variable and split by powers of r
    #[arg(long)]
    symbolic: bool,
    /// Insertion vector, e.g. `--a 1,0`
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    a: Option<Vec<u32>>,
    /// Print every computed relation instead of a basis of their span
    #[arg(long)]
    raw: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PmArgs {
    #[arg(long)]
    m_max: u32,
    #[arg(long)]
    r: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Same as `--format json`
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings in the output
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn code(exit: Exit) -> ExitCode {
    ExitCode::from(exit as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { code(Exit::Usage) } else { code(Exit::Success) };
        }
    };
    let start = Instant::now();
    let (outcome, output) = match cli.command {
        Command::Relations(a) => {
            let r = if a.symbolic { RValue::Symbolic } else { RValue::Numeric(a.r.unwrap_or_default()) };
            (commands::relations(a.g, a.n, r, a.a, a.raw), a.output)
        }
        Command::VerifyAc(a) => (commands::verify_ac(a.g, a.n, a.r), a.output),
        Command::PmTable(a) => (commands::pm_table(a.m_max, a.r), a.output),
        Command::Selftest(o) => (commands::selftest(o.timing), o),
    };
    match outcome {
        Ok((mut record, exit)) => {
            if output.timing {
                record.timing = Some(Timing { elapsed_us: start.elapsed().as_micros() as u64 });
            }
            if output.json || output.format == Format::Json {
                println!("{}", record.to_json());
            } else {
                println!("{}", render::text(&record));
            }
            code(exit)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            code(e.exit)
        }
    }
}
