use std::io::Write;

use clap::Parser;
use urodlab::cli::{configure_threads, run, Cli};

fn main() {
    let cli = Cli::parse();
    configure_threads();
    let outcome = run(&cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.status);
}
