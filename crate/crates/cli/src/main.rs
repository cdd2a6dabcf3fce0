use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use qrf_cli::{Format, RunConfig, DEFAULT_SEED};
use qrf_core::group::DEFAULT_DIM_CAP;
use qrf_core::{SymmetryKind, Tolerance};

#[derive(Parser)]
#[command(name = "qrf", version, about = "Weak and strong symmetry, perspectives and charge accessibility")]
struct Cli {
    /// Entrywise/residual comparison tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Threshold below which eigenvalues and residuals count as zero.
    #[arg(long, global = true, default_value_t = 1e-9)]
    rank_tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Largest Hilbert-space dimension a command may build.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Weak,
    Strong,
}

#[derive(Subcommand)]
enum Command {
    /// Z3 on two systems: spectrum, charge observable, sectors, twirl masks.
    ExampleZ3,
    /// Weak vs strong comparison for Z_n on N systems.
    Table1 {
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long, default_value_t = 2)]
        systems: usize,
    },
    /// Eve's and Alice's momentum measurements agree.
    Theorem1 {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Twirl an operator given with its representation.
    Twirl {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        input: PathBuf,
    },
    /// Structure of the *-algebra generated by a list of matrices.
    Algebra {
        #[arg(long)]
        generators: PathBuf,
    },
    /// Whether the total charge is in the collaborative algebra.
    ChargeAccess {
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long, default_value_t = 2)]
        systems: usize,
    },
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cfg = RunConfig {
        tol: Tolerance::new(cli.tol, cli.rank_tol)?,
        seed: cli.seed,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Table => Format::Table,
        },
        dim_cap: cli.dim_cap,
    };
    let out = match cli.command {
        Command::ExampleZ3 => qrf_cli::cmd_example_z3(&cfg)?,
        Command::Table1 { order, systems } => qrf_cli::cmd_table1(&cfg, order, systems)?,
        Command::Theorem1 { inject_fault } => qrf_cli::cmd_theorem1(&cfg, inject_fault)?,
        Command::Twirl { kind, input } => {
            let kind = match kind {
                KindArg::Weak => SymmetryKind::Weak,
                KindArg::Strong => SymmetryKind::Strong,
            };
            qrf_cli::cmd_twirl(&cfg, kind, &read(&input)?)?
        }
        Command::Algebra { generators } => qrf_cli::cmd_algebra(&cfg, &read(&generators)?)?,
        Command::ChargeAccess { order, systems } => qrf_cli::cmd_charge_access(&cfg, order, systems)?,
    };
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{}", out.render(cfg.format).trim_end()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        other => other?,
    }
    Ok(ExitCode::from(out.exit_code() as u8))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
