//! Std companion to `ddc-core`: wall-clock and thread-pool runtimes, file
//! formats, run configuration, benchmarks and the `ddc` command-line tool.

pub mod bench;
pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod run;
pub mod runtime;

pub use error::{Error, Result};
pub use runtime::{MonotonicClock, RayonExecutor};
