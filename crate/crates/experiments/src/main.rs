//! `hardy-lab`: reproducible experiments on finite sections of Toeplitz
//! operators and Fourier multipliers.

mod commands;
mod settings;
mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{
    character_grid::CharacterGridArgs, commutator_decay::CommutatorDecayArgs, hs_bound::HsBoundArgs,
    norm_sweep::NormSweepArgs, plancherel::PlancherelArgs, witness_demo::WitnessDemoArgs,
};

#[derive(Parser, Debug)]
#[command(name = "hardy-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fourier isometry and round trip on random vectors.
    Plancherel(PlancherelArgs),
    /// Classify points (t, γ) by the pair test; writes a JSON summary next to the CSV.
    CharacterGrid(CharacterGridArgs),
    /// Hilbert–Schmidt kernel against the factored operator and the norm bound.
    HsBound(HsBoundArgs),
    /// Toeplitz section norms along a schedule.
    NormSweep(NormSweepArgs),
    /// Modulation and translation witnesses and the 1 − 3ε lower bound.
    WitnessDemo(WitnessDemoArgs),
    /// Singular-value decay of commutators and the analytic-symbol defect.
    CommutatorDecay(CommutatorDecayArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Plancherel(a) => commands::plancherel::run(a),
        Command::CharacterGrid(a) => commands::character_grid::run(a),
        Command::HsBound(a) => commands::hs_bound::run(a),
        Command::NormSweep(a) => commands::norm_sweep::run(a),
        Command::WitnessDemo(a) => commands::witness_demo::run(a),
        Command::CommutatorDecay(a) => commands::commutator_decay::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hardy-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
