//! Runs every named suite briefly and prints the smallest margins.
//!
//! `cargo run --release --example monte_carlo -- 100000` for a longer run.

use atiyah_lab::harness::{named_suite, run_suite, RunOptions, SUITE_NAMES};

fn main() -> atiyah_lab::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let opts = RunOptions { trials, seed: 2024, ..RunOptions::default() };
    for name in SUITE_NAMES {
        let out = run_suite(&named_suite(name, None)?, &opts)?;
        let r = &out.report;
        let mins: Vec<String> =
            r.min_margins.iter().map(|(c, m)| format!("{c}={:.3e}@{}", m.value, m.trial)).collect();
        println!(
            "{name:<26} failures {:>3}  grazing {:>6}  {:>6} ms  {}",
            r.failures,
            r.grazing,
            r.wall_ms,
            mins.join(" ")
        );
    }
    Ok(())
}
