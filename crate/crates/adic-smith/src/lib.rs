//! Input documents, reports and command dispatch for the `adic-smith`
//! command-line tool.

pub mod commands;
pub mod doc;
pub mod report;
pub mod typed;

pub use commands::{run, CliError, Command, Engine, Options};
pub use doc::{Document, InputError};
pub use report::{Certificate, Report, Row};

/// Builds the global thread pool, capped by `ADIC_SMITH_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("ADIC_SMITH_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
