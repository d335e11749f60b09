//! Command-line front end: game ingestion, integral/tensor/payoff
//! computation, equilibrium search, the built-in reference-game analysis,
//! and the axiom checker. Results are emitted as JSON documents with a
//! fixed field order; identical invocations produce byte-identical output.
//!
//! Exit codes: 0 success, 2 parse error, 3 validation error, 4 resource cap.

mod commands;
mod doc;
mod input;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub const DEFAULT_CAP: u64 = 1 << 24;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(String),
    Resource(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) | CliError::Resource(m) => m,
        }
    }
}

/// Values that command-line flags force over the input document.
#[derive(Debug, Clone)]
pub struct Overrides {
    pub grid: Option<u32>,
    pub epsilon: Option<f64>,
    pub mode: Option<String>,
    pub integral: Option<String>,
    pub tensor_tnorm: Option<String>,
    pub seed: Option<u64>,
    pub cap: u64,
}

#[derive(Parser, Debug)]
#[command(
    name = "fuzzygame",
    version,
    about = "Games with possibility-capacity mixed strategies and fuzzy-integral payoffs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: CommonOpts,
}

#[derive(Args, Debug)]
struct CommonOpts {
    /// Input JSON document.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Write the result document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,
    /// Density grid resolution k (levels 0, 1/k, ..., 1).
    #[arg(long, global = true)]
    grid: Option<u32>,
    /// Equilibrium slack; deviations must improve by more than this.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// min or max.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// choquet | sugeno | tnorm:<name>.
    #[arg(long, global = true)]
    integral: Option<String>,
    /// t-norm for the joint density: min | product | lukasiewicz.
    #[arg(long = "tensor-tnorm", global = true)]
    tensor_tnorm: Option<String>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for the profile scan.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate a function against a capacity.
    Integrate,
    /// Tensor product of densities.
    Tensor,
    /// Expected payoffs of a mixed profile.
    Payoff,
    /// Grid search for an epsilon-equilibrium.
    Solve,
    /// Reproduce the built-in 2x2 reference-game analysis.
    PaperExample,
    /// Probe the representation axioms on random capacities.
    Axioms,
}

fn enumeration_cap() -> Result<u64, CliError> {
    match std::env::var("FUZZYGAME_MAX_SUBSETS") {
        Ok(raw) => raw.parse::<u64>().map_err(|_| {
            CliError::Parse(format!("FUZZYGAME_MAX_SUBSETS is not an integer: {raw:?}"))
        }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn read_input(opts: &CommonOpts) -> Result<String, CliError> {
    let path = opts
        .input
        .as_ref()
        .ok_or_else(|| CliError::Parse("this command needs --input FILE".to_string()))?;
    fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("could not read {path:?}: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!(
            "parse error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let ov = Overrides {
        grid: cli.opts.grid,
        epsilon: cli.opts.epsilon,
        mode: cli.opts.mode.clone(),
        integral: cli.opts.integral.clone(),
        tensor_tnorm: cli.opts.tensor_tnorm.clone(),
        seed: cli.opts.seed,
        cap: enumeration_cap()?,
    };
    match cli.command {
        Command::Integrate => commands::cmd_integrate(parse_json(&read_input(&cli.opts)?)?, &ov),
        Command::Tensor => commands::cmd_tensor(parse_json(&read_input(&cli.opts)?)?, &ov),
        Command::Payoff => commands::cmd_payoff(parse_json(&read_input(&cli.opts)?)?, &ov),
        Command::Solve => commands::cmd_solve(parse_json(&read_input(&cli.opts)?)?, &ov),
        Command::PaperExample => commands::cmd_paper_example(&ov),
        Command::Axioms => {
            let spec = match &cli.opts.input {
                Some(_) => parse_json(&read_input(&cli.opts)?)?,
                None => input::AxiomsSpec::default(),
            };
            commands::cmd_axioms(spec, &ov)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("could not configure {threads} threads: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok(document) => {
            if let Some(path) = &cli.opts.output {
                if let Err(e) = fs::write(path, &document) {
                    eprintln!("could not write {path:?}: {e}");
                    return ExitCode::from(3);
                }
            } else {
                print!("{document}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
