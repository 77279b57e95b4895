//! Reproducible Monte Carlo verification.
//!
//! Trial `i` of a run seeded with `s` draws from its own ChaCha stream keyed
//! by `(s, i)`, so results do not depend on scheduling or worker count.
//! Aggregation (failure counts, minimum margins with the earliest trial on
//! ties) is order independent.

mod check;
mod record;
mod sampler;
mod suite;

pub use check::{evaluate, identity_residual, Check, Evaluation, CONJ3_MAX_POINTS};
pub use record::{
    counterexample_path, decode_bits, encode_bits, read_counterexamples, replay, write_counterexamples,
    write_report, TrialRecord,
};
pub use sampler::{
    sample, trial_rng, Configuration, SamplerKind, MAX_ATTEMPTS, MAX_SAMPLE_POINTS, MIN_SEPARATION,
};
pub use suite::{
    named_suite, run_suite, run_trial, MinMargin, RunOptions, SuiteOutcome, SuiteSpec, SummaryReport,
    NEAR_DEGENERATE_SEVERITY, SUITE_NAMES,
};
