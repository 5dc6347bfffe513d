use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use carlitz_cli::{execute, Command};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    Relations,
    CheckInf,
    CheckV,
    EvalCpl,
    EvalLog,
    Verify,
    Act,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Relations => Command::Relations,
            Cmd::CheckInf => Command::CheckInf,
            Cmd::CheckV => Command::CheckV,
            Cmd::EvalCpl => Command::EvalCpl,
            Cmd::EvalLog => Command::EvalLog,
            Cmd::Verify => Command::Verify,
            Cmd::Act => Command::Act,
        }
    }
}

/// Relations, independence criteria and Carlitz polylogarithms on tensor
/// powers of the Carlitz module.
#[derive(Parser)]
#[command(name = "carlitz", version)]
struct Cli {
    command: Cmd,
    /// Job document; stdin when omitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Result document; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    precision: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match &cli.input {
        Some(path) => fs::read_to_string(path),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let input = match input {
        Ok(s) => s,
        Err(e) => {
            eprintln!("carlitz: cannot read job: {e}");
            return ExitCode::from(1);
        }
    };
    let (result, code) = execute(cli.command.into(), &input, cli.seed, cli.precision);
    let mut text = serde_json::to_string_pretty(&result).expect("result serializes");
    text.push('\n');
    let written = match &cli.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("carlitz: cannot write result: {e}");
        return ExitCode::from(1);
    }
    if let Some(err) = &result.error {
        eprintln!("carlitz: {}: {}", err.kind, err.message);
    }
    ExitCode::from(code as u8)
}
