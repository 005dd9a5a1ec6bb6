use clap::Parser;
use quadspec::cli::{execute, exit_code, Cli};

fn main() {
    let cli = Cli::parse();
    let result = execute(&cli);
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    std::process::exit(exit_code(&result));
}
