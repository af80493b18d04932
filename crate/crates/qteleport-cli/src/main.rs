//! Command-line front end for the teleportation control-loop simulator.

mod args;
mod report;
mod run;

use clap::Parser;
use std::io::Write;

fn main() {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        // Usage errors exit 2; --help and --version exit 0.
        Err(err) => err.exit(),
    };
    let config = match args::validate(cli) {
        Ok(config) => config,
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    };
    match run::execute(&config) {
        Ok((rendered, pass)) => {
            let mut stdout = std::io::stdout();
            stdout.write_all(rendered.as_bytes()).expect("write report");
            stdout.flush().expect("flush report");
            std::process::exit(if pass { 0 } else { 1 });
        }
        Err(err) => {
            eprintln!("internal error: {err}");
            std::process::exit(3);
        }
    }
}
