use clap::Parser;
use smalleig_cli::run::{execute, Args};

fn main() {
    std::process::exit(execute(&Args::parse()));
}
