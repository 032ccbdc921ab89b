//! Command-line surface for the distineq toolkit.
//!
//! Every run writes a report document and a manifest under the output root;
//! seeded subcommands reproduce byte-identically from the recorded seed.

mod args;
mod commands;
mod rundir;

use std::path::PathBuf;
use std::process::ExitCode;

use args::Args;
use commands::{dispatch, CliError, Context, USAGE};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.message());
            if matches!(e, CliError::Usage(_)) {
                eprintln!("\n{USAGE}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(argv: &[String]) -> Result<(), CliError> {
    let Some(command) = argv.first() else {
        return Err(CliError::Usage("a subcommand is required".to_string()));
    };
    if command == "--help" || command == "-h" || command == "help" {
        println!("{USAGE}");
        return Ok(());
    }
    let mut args = Args::parse(&argv[1..]).map_err(CliError::Usage)?;
    let ctx = Context {
        out_root: PathBuf::from(args.get("--out").unwrap_or("./runs")),
        json: args.switch("--json"),
        quiet: args.switch("--quiet"),
    };
    dispatch(command, &mut args, &ctx)
}
