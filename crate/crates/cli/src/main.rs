//! `cuborder`: rearrange a sparse data cube's dimensions so full cells
//! cluster, and score the result.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cuborder_core::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    Core(CoreError),
    Input(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Input(msg) => f.write_str(msg),
        }
    }
}

impl CliError {
    /// 2 for input/data problems, 3 for numerical failures.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ImageFormat {
    /// Plain-text portable bitmap (P1).
    Ppm,
    /// Scalable vector graphic.
    Svg,
}

#[derive(Args)]
struct InputArgs {
    /// Fact table: CSV with a header row.
    #[arg(long)]
    facts: PathBuf,
    /// Schema document (TOML) naming dimension and measure columns.
    #[arg(long)]
    schema: PathBuf,
    /// Output file path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Parser)]
#[command(
    name = "cuborder",
    version,
    about = "Rearranges sparse data-cube dimensions so full cells cluster, and scores the result"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the arrangement of a cube and report the homogeneity gain.
    Arrange {
        #[command(flatten)]
        io: InputArgs,
        /// Accepted for uniform invocation; the arrangement is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Score a cube's homogeneity, optionally under a saved arrangement.
    Evaluate {
        #[command(flatten)]
        io: InputArgs,
        /// Arrangement document to apply before scoring.
        #[arg(long)]
        arrangement: Option<PathBuf>,
    },
    /// Sample the facts at several rates and tabulate homogeneity vs sparsity.
    Sweep {
        #[command(flatten)]
        io: InputArgs,
        /// Comma-separated sampling rates in (0, 1].
        #[arg(long, value_delimiter = ',', required = true)]
        rates: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render a 2-D occupancy heatmap of two dimensions.
    Render {
        #[command(flatten)]
        io: InputArgs,
        /// Two dimension names: rows,columns.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<String>,
        /// Arrangement document giving the modality order.
        #[arg(long)]
        arrangement: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ImageFormat::Ppm)]
        format: ImageFormat,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Arrange { io, seed: _ } => commands::cmd_arrange(&io.facts, &io.schema, &io.out),
        Command::Evaluate { io, arrangement } => {
            commands::cmd_evaluate(&io.facts, &io.schema, &io.out, arrangement.as_ref())
        }
        Command::Sweep { io, rates, seed } => {
            commands::cmd_sweep(&io.facts, &io.schema, &io.out, &rates, seed)
        }
        Command::Render {
            io,
            dims,
            arrangement,
            format,
        } => commands::cmd_render(
            &io.facts,
            &io.schema,
            &io.out,
            &dims,
            arrangement.as_ref(),
            format,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
