//! Declarative scenario runner: parses a JSON scenario, builds the objects it
//! names, runs the requested checks and emits a deterministic report.

pub mod build;
pub mod catalog;
pub mod run;
pub mod scenario;

pub use run::{run, run_text, CheckResult, Report, RunOptions, Status, Summary};
pub use scenario::{parse, InputError, Overrides, Scenario};
