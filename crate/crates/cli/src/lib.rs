//! Command-line surface over `utree-core` and the degree-verification harness.

pub mod commands;
pub mod verify;

pub use commands::{run, Cli, Outcome, Output};
pub use verify::{cmd_verify_encode, VerificationReport, VerifyError, VerifyOptions};
