//! Enumeration, sampling, verification batteries and the command-line front end.

pub mod cli;
pub mod enumerate;
pub mod sample;
pub mod verify;

pub use cli::{run, Cli, Command, Outcome, Report};
pub use enumerate::{all_segments, enumerate_by_dims, enumerate_multisegments, Filter, ENUMERATION_LIMIT};
pub use sample::{random_balanced, random_ladder, random_multisegment, random_regular, random_segment};
pub use verify::{run_suite, CaseResult, SuiteParams, SuiteReport, SUITES};
