//! `cswap`: simulate the CSWAP entanglement test, sweep error families,
//! regenerate figure datasets and run the oracle batteries.

mod figures;
mod json;
mod output;
mod run;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cswap_core::circuit::{CircuitOptions, CswapTest, FredkinForm};
use cswap_core::engine::DEFAULT_MAX_QUBITS;
use cswap_core::oracles::ErrorFamily;
use cswap_core::states::PairSpec;
use cswap_core::StateSpec;

#[derive(Debug, Parser)]
#[command(name = "cswap", version, about = "Controlled-SWAP entanglement test simulator")]
struct Cli {
    /// Dense capacity in total qubits (three registers of n).
    #[arg(long, env = "CSWAP_MAX_QUBITS", default_value_t = DEFAULT_MAX_QUBITS, global = true)]
    max_qubits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact control distribution, class totals, C_n and expected trials.
    Run(RunArgs),
    /// Oracle (and optionally simulated) values across an error-family grid.
    Sweep(SweepArgs),
    /// Write fig3.csv through fig9.csv.
    Figures(FiguresArgs),
    /// Oracle-vs-simulator batteries; nonzero exit on any failure.
    Verify(VerifyArgs),
    /// Sample shots and classify them.
    Estimate(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fredkin {
    Native,
    /// CNOT, Toffoli, CNOT per swap.
    Decomposed,
    /// CNOT and Toffoli only.
    DecomposedShort,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Test state, e.g. `ghz:3`, `bell:psi+`, `unbalanced_w:4:0.1`, `general:[1,0,0,0]`.
    #[arg(long, required_unless_present = "test_file", conflicts_with = "test_file")]
    pub test: Option<StateSpec>,
    /// Test state as a JSON spec file.
    #[arg(long)]
    pub test_file: Option<PathBuf>,
    /// Copy state; defaults to the test state.
    #[arg(long, conflicts_with = "copy_file")]
    pub copy: Option<StateSpec>,
    #[arg(long)]
    pub copy_file: Option<PathBuf>,
    /// Shots to sample. `estimate` needs at least one.
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Fredkin::Native)]
    pub fredkin: Fredkin,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Families to sweep (comma separated); all six when absent.
    #[arg(long, value_delimiter = ',')]
    pub family: Vec<ErrorFamily>,
    /// Explicit qubit counts (comma separated); overrides `--n-max`.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Sweep n = 2..=N.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Parameter grid in radians; `pi`, `-pi/4` and similar are accepted.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<sweep::Grid>,
    #[arg(long)]
    pub include_simulation: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// Output directory, created if missing.
    #[arg(long, default_value = "figures")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Grid points per sweep and curve.
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Random states per battery.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `json` writes the report as JSON; anything else prints a table.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub max_qubits: usize,
}

impl Settings {
    pub fn check_capacity(&self, n: usize) -> Result<()> {
        if 3 * n > self.max_qubits {
            bail!(
                "a {n}-qubit test needs {} qubits, above the cap of {} (set CSWAP_MAX_QUBITS to raise it)",
                3 * n,
                self.max_qubits
            );
        }
        Ok(())
    }

    pub fn tester(&self, fredkin: Fredkin) -> CswapTest {
        CswapTest::new(CircuitOptions {
            fredkin: match fredkin {
                Fredkin::Native => FredkinForm::Native,
                Fredkin::Decomposed => FredkinForm::Decomposed { trailing_cnots: true },
                Fredkin::DecomposedShort => FredkinForm::Decomposed { trailing_cnots: false },
            },
            max_qubits: self.max_qubits,
        })
    }
}

impl RunArgs {
    pub fn pair(&self) -> Result<PairSpec> {
        let test = match (&self.test, &self.test_file) {
            (Some(s), _) => s.clone(),
            (None, Some(p)) => json::read_spec_file(p)?,
            (None, None) => bail!("--test or --test-file is required"),
        };
        let copy = match (&self.copy, &self.copy_file) {
            (Some(s), _) => s.clone(),
            (None, Some(p)) => json::read_spec_file(p)?,
            (None, None) => test.clone(),
        };
        PairSpec::new(test, copy).context("test and copy sizes differ")
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    let settings = Settings {
        max_qubits: cli.max_qubits,
    };
    match cli.command {
        Command::Run(a) => run::cmd_run(&settings, &a).map(|_| true),
        Command::Estimate(a) => run::cmd_estimate(&settings, &a).map(|_| true),
        Command::Sweep(a) => sweep::cmd_sweep(&settings, &a).map(|_| true),
        Command::Figures(a) => figures::cmd_figures(&settings, &a).map(|_| true),
        Command::Verify(a) => verify::cmd_verify(&settings, &a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
