use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};

const INPUT_HELP: &str = "Edge-list file, or a generator spec: path:N cycle:N complete:N \
                          star:N hypercube:D grid:R,C gnp:N,P/Q";

#[derive(Debug, Parser)]
#[command(name = "graphcurv", version, about = "Distance-matrix curvature of finite graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Print the distance matrix.
    Dist(Common),
    /// Solve Dw = n1 and report w, its l1 norm and K = n/|w|_1.
    Curvature {
        #[command(flatten)]
        common: Common,
        /// Exact rational elimination (default).
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        /// Floating-point LU, for graphs too large for exact elimination.
        #[arg(long)]
        float: bool,
    },
    /// Check A <= K <= B exactly on the measure battery.
    Verify(Common),
    /// Solve the zero-sum game with payoff D and compare its value with K.
    Game(Common),
    /// Print the graph as an edge list (or JSON).
    Gen(Common),
    /// Run dist, curvature, verify and game and emit one document.
    Report(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, short, help = INPUT_HELP)]
    pub input: String,
    #[arg(long, short, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for gnp generation and random measures.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random measures in the battery.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "table",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Dist,
    Curvature,
    Verify,
    Game,
    Gen,
    Report,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: String,
    pub command: Command,
    pub format: Format,
    pub seed: u64,
    pub samples: usize,
    pub mode: Mode,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, common, mode) = match cli.command {
            Sub::Dist(c) => (Command::Dist, c, Mode::Exact),
            Sub::Curvature { common, float, .. } => {
                (Command::Curvature, common, if float { Mode::Float } else { Mode::Exact })
            }
            Sub::Verify(c) => (Command::Verify, c, Mode::Exact),
            Sub::Game(c) => (Command::Game, c, Mode::Exact),
            Sub::Gen(c) => (Command::Gen, c, Mode::Exact),
            Sub::Report(c) => (Command::Report, c, Mode::Exact),
        };
        RunConfig {
            input: common.input,
            command,
            format: common.format,
            seed: common.seed,
            samples: common.samples,
            mode,
        }
    }
}
