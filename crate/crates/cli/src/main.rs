//! `plankcap` command-line tool.
//!
//! Exit codes: 0 verified, 2 input error, 3 probe failed or not covered,
//! 4 optimizer did not converge.

mod commands;
mod config;
mod error;
mod svg;

use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = config::Cli::parse();
    let code = match cli.into_config().and_then(|cfg| commands::run(&cfg)) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    };
    std::process::exit(code);
}
