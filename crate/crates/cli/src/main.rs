use std::process::ExitCode;

use clap::Parser;

use mgbar_nef_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let out = result.render(cli.format);
    if result.exit == EXIT_USAGE {
        eprint!("{}", result.human);
    }
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None if result.exit == EXIT_USAGE && cli.format != mgbar_nef_cli::Format::Json => {}
        None => print!("{out}"),
    }
    ExitCode::from(result.exit as u8)
}
