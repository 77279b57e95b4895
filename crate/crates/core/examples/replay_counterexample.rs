//! Forces failures with a negative tolerance, writes them as JSONL, reads
//! them back and replays each configuration from its bit patterns.

use atiyah_lab::harness::{
    counterexample_path, named_suite, read_counterexamples, replay, run_suite, write_counterexamples, RunOptions,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = named_suite("conj2-convex-quad", None)?;
    let opts = RunOptions { trials: 50, seed: 7, tolerance: Some(-1.0), max_records: 5, ..RunOptions::default() };
    let out = run_suite(&spec, &opts)?;
    println!("{} failing margins, {} trials kept", out.report.failures, out.counterexamples.len());

    let dir = std::env::temp_dir().join(format!("atiyah-lab-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = counterexample_path(&dir.join("run.json"));
    write_counterexamples(&path, &out.counterexamples)?;
    for record in read_counterexamples(&path)? {
        let again = replay(&record)?;
        let same = again == record.margins;
        println!("trial {:>3}: margins {:?}  bit-identical on replay: {same}", record.trial, record.margins);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
