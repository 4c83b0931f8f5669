//! Runs every acceptance criterion and prints one line per criterion.
//!
//! Set `PLATSURF_ORBIT_CACHE` to reuse an orbit file between runs.

use std::path::PathBuf;
use std::process::ExitCode;

use platsurf_cli::verify::run_all;

fn main() -> ExitCode {
    let cache = std::env::var_os("PLATSURF_ORBIT_CACHE").map(PathBuf::from);
    let outcomes = run_all(cache.as_deref(), |o| println!("{}", o.line()));
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
