mod args;
mod commands;
mod error;
mod labels;

use clap::{CommandFactory, FromArgMatches};

use crate::args::Cli;

fn init_logging() {
    let filter = std::env::var("LK_LOG").unwrap_or_else(|_| "warn".into());
    env_logger::Builder::new().parse_filters(&filter).format_timestamp(None).init();
}

fn init_threads() {
    if let Some(n) = std::env::var("LK_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not limit threads: {e}");
        }
    }
}

fn main() {
    init_logging();
    init_threads();
    let matches = match Cli::command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(2);
        }
    };
    let sub = matches.subcommand().map(|(_, m)| m.clone()).expect("a subcommand is required");
    if let Err(e) = commands::run(cli.command, &sub) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
