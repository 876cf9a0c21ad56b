//! Command-line front end: input parsing, single checks, named suites and
//! the `C_{4s}(1,s,2s)` family explorer, all producing [`SuiteReport`]s.

pub mod check;
pub mod config;
pub mod input;
pub mod report;
pub mod suites;

pub use check::{run_check, verify_only, CheckKind};
pub use config::{RunConfig, DEFAULT_SEED};
pub use input::{parse_input, Input};
pub use report::{CertificateFile, InstanceRecord, Status, SuiteReport};
pub use suites::{explore_family, run_suite, SUITES};

/// DOT text for an input graph, laid out on a circle.
pub fn export_dot(desc: &str) -> anyhow::Result<String> {
    let input = parse_input(desc)?;
    Ok(input.graph()?.to_dot("G"))
}
