use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check::{evaluate, Check, Evaluation};
use super::record::TrialRecord;
use super::sampler::{sample, SamplerKind};
use crate::error::{Error, Result};

/// Named suites accepted by [`named_suite`].
pub const SUITE_NAMES: &[&str] = &[
    "conj1",
    "conj2",
    "conj3",
    "conj4",
    "conj5",
    "conj6",
    "conj2-convex-quad",
    "conj2-coplanar",
    "conj3-cyclic-quad",
    "conj4-interior-quad",
    "technical-f",
    "isosceles",
    "identities",
    "identities-coplanar",
    "identities-convex-quad",
    "identities-interior-quad",
    "identities-cyclic-quad",
    "ngon",
    "collinear",
    "near-degenerate",
];

/// Severity used by the `near-degenerate` suite.
pub const NEAR_DEGENERATE_SEVERITY: f64 = 1e3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSpec {
    pub name: String,
    pub sampler: SamplerKind,
    pub checks: Vec<Check>,
}

impl SuiteSpec {
    pub fn new(name: impl Into<String>, sampler: SamplerKind, checks: Vec<Check>) -> Result<Self> {
        sampler.validate()?;
        if checks.is_empty() {
            return Err(Error::invalid("a suite needs at least one check"));
        }
        for c in &checks {
            c.supports(&sampler)?;
        }
        Ok(SuiteSpec { name: name.into(), sampler, checks })
    }
}

/// Suite by name; `n` overrides the point count where the sampler has one.
pub fn named_suite(name: &str, n: Option<usize>) -> Result<SuiteSpec> {
    use Check::*;
    use SamplerKind::*;
    let n_or = |default: usize| n.unwrap_or(default);
    let fixed_four = || match n {
        Some(v) if v != 4 => Err(Error::invalid(format!("suite {name} is defined for four points, got --n {v}"))),
        _ => Ok(()),
    };
    let (sampler, checks) = match name {
        "conj1" => (General3d { n: n_or(5) }, vec![Conj1]),
        "conj2" => (General3d { n: n_or(4) }, vec![Conj1, Conj2]),
        "conj3" => (General3d { n: n_or(4) }, vec![Conj3]),
        "conj4" => (General3d { n: n_or(4) }, vec![Conj4]),
        "conj5" => (General3d { n: n_or(4) }, vec![Conj5]),
        "conj6" => (General3d { n: n_or(4) }, vec![Conj6]),
        "conj2-convex-quad" => (fixed_four().map(|_| ConvexQuad)?, vec![Conj2, Conj2Formula, Conj4]),
        "conj2-coplanar" => (Coplanar { n: n_or(4) }, vec![Conj2, CoplanarReality]),
        "conj3-cyclic-quad" => (fixed_four().map(|_| CyclicQuad)?, vec![Conj3, Conj6]),
        "conj4-interior-quad" => (fixed_four().map(|_| InteriorPointQuad)?, vec![Conj4, Conj2]),
        "technical-f" => {
            if n.is_some() {
                return Err(Error::invalid("suite technical-f samples angles and takes no --n"));
            }
            (TechnicalRegion, vec![TechnicalF])
        }
        "isosceles" => (fixed_four().map(|_| IsoscelesTetra)?, vec![IsoscelesBound, IsoscelesEquality]),
        "identities" => (General3d { n: n_or(4) }, vec![Identities]),
        "identities-coplanar" => (Coplanar { n: n_or(4) }, vec![Identities, CoplanarReality]),
        "identities-convex-quad" => (fixed_four().map(|_| ConvexQuad)?, vec![Identities]),
        "identities-interior-quad" => (fixed_four().map(|_| InteriorPointQuad)?, vec![Identities]),
        "identities-cyclic-quad" => (fixed_four().map(|_| CyclicQuad)?, vec![Identities, CoplanarReality]),
        "ngon" => (Ngon { n: n_or(7) }, vec![Conj2, Identities, CoplanarReality]),
        "collinear" => (Collinear { n: n_or(5) }, vec![Conj2, Identities]),
        "near-degenerate" => {
            (NearDegenerate { n: n_or(4), severity: NEAR_DEGENERATE_SEVERITY }, vec![Conj1, Conj2])
        }
        _ => {
            return Err(Error::invalid(format!("unknown suite {name:?}; known suites: {}", SUITE_NAMES.join(", "))))
        }
    };
    SuiteSpec::new(name, sampler, checks)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; 0 uses one per available core.
    pub workers: usize,
    /// Replaces every default tolerance.
    pub tolerance: Option<f64>,
    /// Failing trials kept as records (those with the smallest indices).
    pub max_records: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { trials: 1000, seed: 0, workers: 0, tolerance: None, max_records: 10_000 }
    }
}

impl RunOptions {
    pub fn tolerance_for(&self, check: Check) -> f64 {
        self.tolerance.unwrap_or_else(|| check.default_tolerance())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinMargin {
    pub value: f64,
    pub trial: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub trials: u64,
    pub seed: u64,
    /// Margins below `-tolerance` (NaN counts as a failure).
    pub failures: u64,
    /// Passing margins below `10 * tolerance`.
    pub grazing: u64,
    pub min_margins: BTreeMap<Check, MinMargin>,
    pub wall_ms: u64,
    pub sampler: SamplerKind,
    pub tolerances: BTreeMap<Check, f64>,
    pub counterexamples_kept: usize,
}

impl SummaryReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// The report with its timing field zeroed, for comparisons.
    pub fn without_timing(&self) -> SummaryReport {
        SummaryReport { wall_ms: 0, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub report: SummaryReport,
    /// Failing trials in increasing trial order.
    pub counterexamples: Vec<TrialRecord>,
}

struct Aggregate {
    mins: Vec<Option<MinMargin>>,
    failures: u64,
    grazing: u64,
    records: Vec<TrialRecord>,
    error: Option<(u64, Error)>,
}

impl Aggregate {
    fn new(checks: usize) -> Self {
        Aggregate { mins: vec![None; checks], failures: 0, grazing: 0, records: Vec::new(), error: None }
    }

    fn merge(mut self, other: Aggregate, max_records: usize) -> Self {
        for (a, b) in self.mins.iter_mut().zip(other.mins) {
            *a = lower(*a, b);
        }
        self.failures += other.failures;
        self.grazing += other.grazing;
        self.records.extend(other.records);
        self.records.sort_by_key(|r| r.trial);
        self.records.truncate(max_records);
        self.error = match (self.error, other.error) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Smaller margin wins; ties go to the earlier trial.
fn lower(a: Option<MinMargin>, b: Option<MinMargin>) -> Option<MinMargin> {
    match (a, b) {
        (Some(x), Some(y)) => {
            Some(if (y.value, y.trial).partial_cmp(&(x.value, x.trial)) == Some(std::cmp::Ordering::Less) { y } else { x })
        }
        (x, y) => x.or(y),
    }
}

/// Evaluates one trial of `spec`.
pub fn run_trial(spec: &SuiteSpec, seed: u64, trial: u64) -> Result<(super::sampler::Configuration, Evaluation)> {
    let wrap = |e: Error| Error::Trial { trial, source: Box::new(e) };
    let config = sample(&spec.sampler, seed, trial).map_err(wrap)?;
    let eval = evaluate(&spec.sampler, &config, &spec.checks).map_err(wrap)?;
    Ok((config, eval))
}

pub fn run_suite(spec: &SuiteSpec, opts: &RunOptions) -> Result<SuiteOutcome> {
    let start = Instant::now();
    let tolerances: Vec<f64> = spec.checks.iter().map(|&c| opts.tolerance_for(c)).collect();
    let k = spec.checks.len();
    let fold_trial = |mut acc: Aggregate, trial: u64| {
        match run_trial(spec, opts.seed, trial) {
            Ok((config, eval)) => {
                let mut failed = false;
                for (i, &(_, m)) in eval.margins.iter().enumerate() {
                    let tol = tolerances[i];
                    if !m.is_nan() {
                        acc.mins[i] = lower(acc.mins[i], Some(MinMargin { value: m, trial }));
                    }
                    if !(m >= -tol) {
                        acc.failures += 1;
                        failed = true;
                    } else if m < 10.0 * tol {
                        acc.grazing += 1;
                    }
                }
                if failed && acc.records.len() < opts.max_records {
                    acc.records.push(TrialRecord::new(spec, opts.seed, trial, &config, &eval, &tolerances));
                }
            }
            Err(e) => {
                if acc.error.as_ref().is_none_or(|(t, _)| trial < *t) {
                    acc.error = Some((trial, e));
                }
            }
        }
        acc
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let agg = pool.install(|| {
        (0..opts.trials)
            .into_par_iter()
            .fold(|| Aggregate::new(k), fold_trial)
            .reduce(|| Aggregate::new(k), |a, b| a.merge(b, opts.max_records))
    });
    if let Some((_, e)) = agg.error {
        return Err(e);
    }
    let report = SummaryReport {
        suite: spec.name.clone(),
        checks: spec.checks.clone(),
        trials: opts.trials,
        seed: opts.seed,
        failures: agg.failures,
        grazing: agg.grazing,
        min_margins: spec.checks.iter().zip(agg.mins).filter_map(|(&c, m)| m.map(|m| (c, m))).collect(),
        wall_ms: start.elapsed().as_millis() as u64,
        sampler: spec.sampler,
        tolerances: spec.checks.iter().copied().zip(tolerances).collect(),
        counterexamples_kept: agg.records.len(),
    };
    Ok(SuiteOutcome { report, counterexamples: agg.records })
}
