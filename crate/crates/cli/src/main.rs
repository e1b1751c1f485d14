use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;
mod reproduce;

use birsym::Error;

#[derive(Parser)]
#[command(name = "birsym", version, about = "Equivariant birational symbol groups: dimensions, classes, Smith forms and Burnside presentations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Seed for the choice of random primes.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Refuse systems whose relation matrix is estimated to need more memory, e.g. 8G or 512M.
    #[arg(long, global = true, default_value = "8G")]
    pub memory_budget: String,
    /// Exact integer elimination instead of agreement of modular ranks.
    #[arg(long, global = true)]
    pub certify: bool,
    /// Print the JSON report instead of the human-readable summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Append JSON report lines to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of B_n(G) (or B_n^-(G)) over Q or F_p.
    Dim(commands::DimArgs),
    /// Evaluate the class of an action and decide whether it vanishes.
    Class(commands::ClassArgs),
    /// Smith normal form of B_n(G) over Z.
    Snf(commands::SnfArgs),
    /// Order of an element of B_n(G) over Z.
    Order(commands::OrderArgs),
    /// Comultiplication of a class along a subgroup, with a vanishing verdict.
    Comult(commands::ComultArgs),
    /// Load a Burnside presentation, evaluate its classes, apply projections.
    Burn(commands::BurnArgs),
    /// Recompute the dimension tables and verdicts and compare with stored expectations.
    ReproducePaper(reproduce::ReproduceArgs),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::GuardExceeded(_) => 3,
        Error::RankDisagreement { .. } => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global().ok();
    }
    let result = match cli.command {
        Command::Dim(a) => commands::dim(&cli.global, &a),
        Command::Class(a) => commands::class(&cli.global, &a),
        Command::Snf(a) => commands::snf(&cli.global, &a),
        Command::Order(a) => commands::order(&cli.global, &a),
        Command::Comult(a) => commands::comult(&cli.global, &a),
        Command::Burn(a) => commands::burn(&cli.global, &a),
        Command::ReproducePaper(a) => reproduce::run(&cli.global, &a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
