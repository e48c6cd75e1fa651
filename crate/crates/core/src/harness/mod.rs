//! Seed-reproducible Monte Carlo experiments over the protocols.
//!
//! All randomness is owned here. Trial `t` of a run with master seed `s`
//! draws from ChaCha8 stream `t` of key `s` ([`trial_stream`]), so results
//! do not depend on scheduling, batching or thread count.

mod stats;
mod streams;
mod sweep;
mod trials;

pub use stats::{fit_line, wilson_interval, LinearFit, TrialStats, TrialTally};
pub use streams::{derive_seed, trial_stream};
pub use sweep::{scaling_sweep, SweepRow, SweepTemplate};
pub use trials::{run_trial, run_trial_batch, run_trials, ArraySource, Experiment, TrialOutcome};

/// Confidence level used for every interval the harness reports.
pub const DEFAULT_CONFIDENCE: f64 = 0.95;
