//! `pinball`: Bruhat boards, Billey restrictions, Hessenberg fixed points,
//! pinball games, flow-up bases and the bundled figure reproductions.

mod algebra;
mod basis;
mod game;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "pinball", version, about = "Poset pinball on Weyl group Bruhat boards")]
struct Cli {
    /// Emit JSON instead of human-readable tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect and validate poset board files.
    Poset(algebra::PosetCmd),
    /// Weyl group elements, reduced words and Bruhat order.
    Weyl(algebra::WeylCmd),
    /// Restriction of a Schubert class to a fixed point.
    Billey(algebra::BilleyArgs),
    /// Play, enumerate or replay pinball games.
    Pinball(game::PinballCmd),
    /// Fixed points of Peterson, Springer and Hessenberg varieties.
    FixedPoints(algebra::FixedPointArgs),
    /// Build, reduce and verify candidate module bases.
    Basis(basis::BasisCmd),
    /// Kostant-Kumar action on the subregular Springer variety.
    SpringerRep(algebra::SpringerArgs),
    /// Rerun a bundled figure and compare with its table.
    Reproduce(game::ReproduceArgs),
    /// Serve games over HTTP.
    Serve(game::ServeArgs),
}

/// `Ok(false)` means the command ran but its check failed.
type Outcome = anyhow::Result<bool>;

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Poset(c) => c.run(json),
        Command::Weyl(c) => c.run(json),
        Command::Billey(c) => c.run(json),
        Command::Pinball(c) => c.run(json),
        Command::FixedPoints(c) => c.run(json),
        Command::Basis(c) => c.run(json),
        Command::SpringerRep(c) => c.run(json),
        Command::Reproduce(c) => c.run(json),
        Command::Serve(c) => c.run(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if json {
                let body = serde_json::json!({ "error": { "message": format!("{e:#}") } });
                eprintln!("{body}");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(1)
        }
    }
}
