//! Command-line orchestration: run configuration, input documents, fixtures, the
//! seeded suites and report merging.

pub mod cli;
mod commands;
mod config;
mod fixtures;
mod input;
mod suites;

pub use commands::{
    canonical_reps, cmd_check, cmd_level_build, cmd_parabolic_demo, cmd_report, cmd_suite, cmd_validate,
    merge_reports, read_report, CheckKind, Outcome, Summary, SummaryRow, EXIT_FAIL, EXIT_PARSE, EXIT_PASS,
};
pub use config::RunConfig;
pub use fixtures::{compatible_fixture, corrupted_fixture, fixture_dir, generate, resolve, write_all};
pub use input::{validate_document, Document};
pub use suites::{run_suite, SuiteOptions, FACTORIZATION_LEVEL_DIM, FUNCTORIALITY_TOL, SUITES};
