use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schwarz_cli::commands::collect_targets;
use schwarz_cli::config::parse_orders;
use schwarz_cli::report::EXIT_INPUT;
use schwarz_cli::{
    cmd_axioms, cmd_continuity, cmd_cs, cmd_metric, cmd_replay, CliError, DimRange, InputFile,
    Report, RunConfig,
};

#[derive(Parser)]
#[command(name = "schwarz", version, about = "Exact Cauchy-Schwarz, metric and continuity checks")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Seed for generated cases.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Number of generated cases (probes per target for `continuity`).
    #[arg(long, global = true, default_value_t = 1000)]
    cases: usize,

    /// Inclusive dimension range for generated vectors, `LO..HI`.
    #[arg(long, global = true, default_value = "0..8")]
    dims: String,

    /// Bound on |numerator| and denominator of generated rationals.
    #[arg(long, global = true, default_value_t = 100)]
    magnitude: i64,

    /// Comma-separated probe orders k (perturbation ε^k).
    #[arg(long, global = true, default_value = "1,2")]
    orders: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Vector-space, inner-product, field and hyperreal laws on generated samples.
    Axioms,
    /// Cauchy-Schwarz certificates and proof replay for vector pairs.
    Cs {
        /// Pair file; pairs are generated when omitted.
        file: Option<PathBuf>,
    },
    /// Same as `cs` with every replay step in the report.
    Replay { file: Option<PathBuf> },
    /// Metric axioms for vector triples.
    Metric {
        /// Triple file; triples are generated when omitted.
        file: Option<PathBuf>,
    },
    /// Infinitesimal continuity probes.
    Continuity {
        /// Probe file.
        file: Option<PathBuf>,
        /// Expression to probe, e.g. "x1 * x2" (needs --arity).
        #[arg(long, requires = "arity")]
        expr: Option<String>,
        #[arg(long)]
        arity: Option<usize>,
        /// Builtin to probe: sum(N), prod2 or dot_fixed(c1, c2, ...). Repeatable.
        #[arg(long)]
        builtin: Vec<String>,
    },
}

fn config(g: &GlobalArgs) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        seed: g.seed,
        cases: g.cases,
        dims: g.dims.parse::<DimRange>()?,
        magnitude: g.magnitude,
        probe_orders: parse_orders(&g.orders)?,
    })
}

fn read(file: Option<&PathBuf>) -> Result<Option<InputFile>, CliError> {
    file.map(|p| InputFile::read(p)).transpose()
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let config = config(&cli.global)?;
    match &cli.command {
        Command::Axioms => cmd_axioms(&config),
        Command::Cs { file } => cmd_cs(&config, read(file.as_ref())?.as_ref(), false),
        Command::Replay { file } => cmd_replay(&config, read(file.as_ref())?.as_ref()),
        Command::Metric { file } => cmd_metric(&config, read(file.as_ref())?.as_ref()),
        Command::Continuity { file, expr, arity, builtin } => {
            let input = read(file.as_ref())?;
            let exprs: Vec<(String, usize)> = match (expr, arity) {
                (Some(e), Some(n)) => vec![(e.clone(), *n)],
                _ => Vec::new(),
            };
            let targets = collect_targets(input.as_ref(), &exprs, builtin)?;
            cmd_continuity(&config, input.map(|i| i.name), &targets)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("schwarz: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let rendered = match cli.global.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_structured(),
    };
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("schwarz: writing {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
