use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{ConfigError, Emitted};

#[derive(Parser, Debug)]
#[command(name = "fracwave", version)]
#[command(about = "Fundamental solutions of the space-time fractional wave-diffusion equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Model {
    /// Time order α in [1, 2]
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Space order β in [1, 2]
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub v: f64,
    /// Strength of the initial disturbance
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub mu: f64,
    /// Width of a Gaussian initial disturbance; a Dirac pulse when omitted
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct Grid {
    #[arg(long, allow_hyphen_values = true)]
    pub x_lo: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x_hi: f64,
    #[arg(long, default_value_t = 201)]
    pub n: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// u(x, t) at one point
    Eval {
        #[command(flatten)]
        model: Model,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        out: Output,
    },
    /// u(·, t) on a uniform grid, for each listed time
    Profile {
        #[command(flatten)]
        model: Model,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        out: Output,
    },
    /// Trajectory of the right-hand maximum and its power-law fit
    Peaks {
        #[command(flatten)]
        model: Model,
        /// Track the Dirac-pulse solution instead of a Gaussian (x0 defaults to 0.4)
        #[arg(long, conflicts_with = "x0")]
        delta: bool,
        #[arg(long, value_delimiter = ',')]
        times: Option<Vec<f64>>,
        #[arg(long, default_value_t = 8.0)]
        x_hi: f64,
        #[arg(long, default_value_t = 321)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Zeros of u(·, t) on a grid window, refined by bisection
    Nodes {
        #[command(flatten)]
        model: Model,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        out: Output,
    },
    /// Region of the (α, β) square
    Region {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Run a validation suite
    Validate {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Restrict to these entries
        #[arg(long)]
        only: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
}

impl Command {
    fn output(&self) -> &Output {
        match self {
            Command::Eval { out, .. }
            | Command::Profile { out, .. }
            | Command::Peaks { out, .. }
            | Command::Nodes { out, .. }
            | Command::Region { out, .. }
            | Command::Validate { out, .. } => out,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Profile { .. } => "profile",
            Command::Peaks { .. } => "peaks",
            Command::Nodes { .. } => "nodes",
            Command::Region { .. } => "region",
            Command::Validate { .. } => "validate",
        }
    }
}

fn init_threads() -> Result<(), ConfigError> {
    let Ok(raw) = std::env::var("FRACWAVE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| ConfigError(format!("FRACWAVE_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| ConfigError(e.to_string()))
}

fn sink(out: &Output) -> io::Result<Box<dyn Write>> {
    Ok(match &out.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    init_threads()?;
    let emitted: Emitted = commands::run(&cli.command)?;
    let out = cli.command.output();
    let mut w = sink(out)?;
    match out.format {
        Format::Csv => w.write_all(&emitted.csv)?,
        Format::Json => {
            w.write_all(emitted.json.as_bytes())?;
            w.write_all(b"\n")?;
        }
    }
    w.flush()?;
    Ok(emitted.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let config = e.downcast_ref::<ConfigError>().is_some();
            let record = serde_json::json!({
                "command": cli.command.name(),
                "kind": if config { "config" } else { "numerical" },
                "error": format!("{e:#}"),
            });
            eprintln!("{record}");
            ExitCode::from(if config { 2 } else { 1 })
        }
    }
}
