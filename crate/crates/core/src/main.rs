use std::io::Write;

use clap::Parser;
use sgknot::cli::{run, JobConfig};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cfg = JobConfig::parse();
    match run(&cfg) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            std::process::exit(out.status);
        }
        Err(e) => {
            eprintln!("sgknot: {}", e);
            std::process::exit(e.exit_code());
        }
    }
}
