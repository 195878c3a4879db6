mod commands;
mod error;
mod polyfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "untt",
    version,
    about = "Unified Kyber/Dilithium NTT multiplier simulator"
)]
struct Cli {
    /// Seed for every random choice made by the command.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CoreArgs {
    #[arg(long, value_enum, default_value_t = DesignArg::D1)]
    pub design: DesignArg,
    /// Overrides the design's pipeline depth.
    #[arg(long)]
    pub pipeline_depth: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    /// Output polynomial file.
    #[arg(long)]
    pub out: PathBuf,
    /// Write the simulation report here (`-` for stdout).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply two normal-domain polynomials on the simulated core.
    Polymul {
        #[command(flatten)]
        core: CoreArgs,
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Forward transform (bit-reversed output).
    Ntt {
        #[command(flatten)]
        core: CoreArgs,
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
        input: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Inverse transform (normal-domain output).
    Intt {
        #[command(flatten)]
        core: CoreArgs,
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
        input: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Pointwise product of two transforms.
    Pwm {
        #[command(flatten)]
        core: CoreArgs,
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit twiddle ROM, address ROM and manifest files.
    GenRoms {
        #[command(flatten)]
        core: CoreArgs,
        /// Limit output to one scheme; default is every scheme of the design.
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
        #[arg(long, alias = "outdir")]
        out: PathBuf,
    },
    /// Differential check of the simulated core against the reference oracles.
    Verify {
        #[command(flatten)]
        core: CoreArgs,
        #[arg(long, value_enum)]
        scheme: Option<SchemeArg>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Use X^0 as the second operand instead of random data.
        #[arg(long)]
        delta: bool,
        /// Twiddle ROM image replacing the built-in one (requires --scheme).
        #[arg(long)]
        rom_override: Option<PathBuf>,
    },
    /// Print the latency or BRAM table for all designs.
    Table {
        #[arg(long, value_enum, default_value_t = TableKind::Latency)]
        which: TableKind,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeArg {
    Kyber,
    Dilithium,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignArg {
    D1,
    D2,
    D3,
    StandaloneKyber,
    StandaloneDilithium,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Latency,
    Bram,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Polymul {
            core,
            scheme,
            a,
            b,
            out,
        } => commands::polymul(&core, scheme, &a, &b, &out),
        Command::Ntt {
            core,
            scheme,
            input,
            out,
        } => commands::transform(&core, scheme, &input, &out, unified_ntt::Op::Ntt),
        Command::Intt {
            core,
            scheme,
            input,
            out,
        } => commands::transform(&core, scheme, &input, &out, unified_ntt::Op::Intt),
        Command::Pwm {
            core,
            scheme,
            a,
            b,
            out,
        } => commands::pwm(&core, scheme, &a, &b, &out),
        Command::GenRoms { core, scheme, out } => commands::gen_roms(&core, scheme, &out),
        Command::Verify {
            core,
            scheme,
            trials,
            delta,
            rom_override,
        } => commands::verify(
            &core,
            scheme,
            trials,
            cli.seed,
            delta,
            rom_override.as_deref(),
        ),
        Command::Table { which } => commands::table(which),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("untt: {e}");
            e.exit_code()
        }
    }
}
