use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::check::{evaluate, Check, Evaluation};
use super::sampler::{Configuration, SamplerKind};
use super::suite::{SuiteSpec, SummaryReport};
use crate::error::{Error, Result};
use crate::geom::Point3;

/// One evaluated trial. Coordinates are stored twice: as decimals for
/// reading and as the hexadecimal IEEE-754 bit patterns that
/// [`TrialRecord::configuration`] decodes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub suite: String,
    pub trial: u64,
    pub seed: u64,
    pub sampler: SamplerKind,
    pub points: Option<Vec<[f64; 3]>>,
    pub points_bits: Option<Vec<[String; 3]>>,
    pub angles: Option<[f64; 5]>,
    pub angles_bits: Option<[String; 5]>,
    pub d_re: Option<f64>,
    pub d_im: Option<f64>,
    pub margins: BTreeMap<Check, f64>,
    pub passed: BTreeMap<Check, bool>,
}

pub fn encode_bits(v: f64) -> String {
    format!("{:016x}", v.to_bits())
}

pub fn decode_bits(s: &str) -> Result<f64> {
    u64::from_str_radix(s, 16)
        .map(f64::from_bits)
        .map_err(|e| Error::invalid(format!("bad float bit pattern {s:?}: {e}")))
}

impl TrialRecord {
    pub fn new(
        spec: &SuiteSpec,
        seed: u64,
        trial: u64,
        config: &Configuration,
        eval: &Evaluation,
        tolerances: &[f64],
    ) -> Self {
        let (points, points_bits, angles, angles_bits) = match config {
            Configuration::Points(p) => (
                Some(p.iter().map(|q| q.to_array()).collect()),
                Some(p.iter().map(|q| q.to_array().map(encode_bits)).collect()),
                None,
                None,
            ),
            Configuration::Angles(a) => (None, None, Some(*a), Some(a.map(encode_bits))),
        };
        TrialRecord {
            suite: spec.name.clone(),
            trial,
            seed,
            sampler: spec.sampler,
            points,
            points_bits,
            angles,
            angles_bits,
            d_re: eval.d.map(|d| d.re),
            d_im: eval.d.map(|d| d.im),
            margins: eval.margins.iter().copied().collect(),
            passed: eval.margins.iter().zip(tolerances).map(|(&(c, m), &tol)| (c, m >= -tol)).collect(),
        }
    }

    /// The bit-exact configuration.
    pub fn configuration(&self) -> Result<Configuration> {
        if let Some(bits) = &self.points_bits {
            let pts = bits
                .iter()
                .map(|[x, y, z]| Ok(Point3::new(decode_bits(x)?, decode_bits(y)?, decode_bits(z)?)))
                .collect::<Result<_>>()?;
            return Ok(Configuration::Points(pts));
        }
        if let Some(bits) = &self.angles_bits {
            let mut a = [0.0; 5];
            for (slot, s) in a.iter_mut().zip(bits) {
                *slot = decode_bits(s)?;
            }
            return Ok(Configuration::Angles(a));
        }
        Err(Error::invalid(format!("record for trial {} has no configuration", self.trial)))
    }

    pub fn checks(&self) -> Vec<Check> {
        self.margins.keys().copied().collect()
    }
}

/// Re-evaluates a stored configuration; returns the recomputed margins.
pub fn replay(record: &TrialRecord) -> Result<BTreeMap<Check, f64>> {
    let eval = evaluate(&record.sampler, &record.configuration()?, &record.checks())?;
    Ok(eval.margins.into_iter().collect())
}

/// `<out without extension>.counterexamples.jsonl`.
pub fn counterexample_path(report_path: &Path) -> PathBuf {
    report_path.with_extension("counterexamples.jsonl")
}

pub fn write_report(path: &Path, report: &SummaryReport) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, report).map_err(|e| Error::io(path, e.into()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

pub fn write_counterexamples(path: &Path, records: &[TrialRecord]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for r in records {
        serde_json::to_writer(&mut w, r).map_err(|e| Error::io(path, e.into()))?;
        writeln!(w).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_counterexamples(path: &Path) -> Result<Vec<TrialRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: format!("line {}, column {}: {e}", i + 1, e.column()),
        })?;
        out.push(record);
    }
    Ok(out)
}
