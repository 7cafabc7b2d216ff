//! Verification harness: loads Hecke symmetries, runs check suites across
//! degrees and writes deterministic JSON reports.

pub mod config;
pub mod error;
pub mod report;
pub mod suite;
pub mod symfile;
pub mod tools;

pub use config::{resolve, Check, CheckConfig, FieldChoice, SymmetrySource};
pub use error::{HResult, HarnessError};
pub use report::{emit_report, CheckReport, Status};
pub use suite::run_suite;
pub use symfile::{load_symmetry, save_symmetry};

/// Exit code for a run that produced a report.
pub fn exit_code(report: &CheckReport) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

/// Exit code for input and I/O errors.
pub const EXIT_INPUT: i32 = 2;
