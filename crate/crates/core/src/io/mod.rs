//! File formats, the built-in fixture corpus and the job runner used by the
//! `tightembed` binary.

mod fixtures;
mod formats;
mod job;

pub use fixtures::{fixtures, Fixture, FixtureData};
pub use formats::*;
pub use job::{load_input, run, Command, ExitStatus, Inputs, Job, JobError, JobOutput, Options, OutputFormat, FIXTURE_DIR_ENV};
