//! Campaign drivers behind the `lcx` binary.

pub mod calibration;
pub mod campaign;
pub mod error;
pub mod fixture_suite;
pub mod commands;

pub use campaign::{run_campaign, run_lemma, Budgets, CampaignConfig, CampaignReport, Lemma, Status, Table};
pub use error::{CliError, ExitCode};
