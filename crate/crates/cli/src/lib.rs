//! Command-line front end and benchmark harness for `hskern`.

pub mod bench;
pub mod commands;

pub use commands::{configure_threads, run, Cli};
