//! Experiment runners, report emission and the command-line front end.

pub mod bounds;
pub mod config;
pub mod experiments;
pub mod models;
pub mod report;

pub use config::ExperimentConfig;
pub use experiments::{defaults_for, run, Experiment, EXPERIMENTS};
pub use report::{Report, Row, Status};
