use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use semireg_core::commands::{run_command, CommandOutput, Flags, COMMANDS, EXIT_USAGE};
use semireg_core::session::parse_session;

/// Exact Atiyah classes, Chern characters and semiregularity maps.
///
/// Exit status: 0 on success, 1 when a verdict is FAIL, 2 on usage,
/// parse or input errors. ATK_DEGREE_BOUND overrides the degree bound
/// of the regularity check.
#[derive(Parser, Debug)]
#[command(name = "sr", version, after_help = commands_help())]
struct Cli {
    /// One of the commands listed below
    command: String,
    /// Session file declaring the ring, sequences, homs and derivations
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    seq: Option<String>,
    #[arg(long)]
    hom: Option<String>,
    /// A declared derivation name, or inline as "x: g1, y: g2"
    #[arg(long)]
    derivation: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Monomial ideal generators, comma separated
    #[arg(long)]
    ideal: Option<String>,
    /// Monomial to test for integral dependence
    #[arg(long)]
    test: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    power: Option<i64>,
    /// euler or hypersurface:<f>
    #[arg(long)]
    preset: Option<String>,
    /// Variable order for monomial commands, comma separated
    #[arg(long)]
    vars: Option<String>,
    /// Seed for selftest
    #[arg(long)]
    seed: Option<u64>,
}

fn commands_help() -> String {
    format!("Commands: {}", COMMANDS.join(", "))
}

fn run(cli: Cli) -> CommandOutput {
    let session = match &cli.input {
        None => None,
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    return CommandOutput {
                        text: format!("error: cannot read {}: {e}", path.display()),
                        code: EXIT_USAGE,
                    }
                }
            };
            match parse_session(&text) {
                Ok(s) => Some(s),
                Err(e) => {
                    return CommandOutput {
                        text: format!("error: {}: {e}", path.display()),
                        code: EXIT_USAGE,
                    }
                }
            }
        }
    };
    let flags = Flags {
        seq: cli.seq,
        hom: cli.hom,
        derivation: cli.derivation,
        k: cli.k,
        ideal: cli.ideal,
        test: cli.test,
        power: cli.power,
        preset: cli.preset,
        vars: cli.vars,
        seed: cli.seed,
    };
    run_command(session.as_ref(), &cli.command, &flags)
}

fn main() -> ExitCode {
    let out = run(Cli::parse());
    // a closed pipe downstream is not an error of ours
    let _ = if out.code == EXIT_USAGE {
        writeln!(std::io::stderr(), "{}", out.text)
    } else {
        writeln!(std::io::stdout(), "{}", out.text)
    };
    ExitCode::from(out.code as u8)
}
