//! Command line front end: job configuration, construction dispatch, the
//! four subcommands and the reproduction suite.

pub mod commands;
pub mod config;
pub mod families;
pub mod suite;

use config::InvalidConfig;

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

/// Exit code for a failed job: guards give 2, a search that finds nothing
/// or an internal inconsistency counts as refuted, everything else is an
/// invalid configuration.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<InvalidConfig>().is_some() {
        return EXIT_INVALID;
    }
    match err.downcast_ref::<sumrank_lab::Error>() {
        Some(sumrank_lab::Error::GuardExceeded { .. }) => EXIT_GUARD,
        Some(sumrank_lab::Error::SearchExhausted(_))
        | Some(sumrank_lab::Error::Inconsistent(_)) => EXIT_REFUTED,
        _ => EXIT_INVALID,
    }
}
