//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use atiyah_lab::consts::constants;
use atiyah_lab::fourpoint::{
    crelle_angles_coplanar, crelle_sides, crelle_triangle, crelle_volume_residual, en_av_term, en_real_part,
    en_real_part_angles, isosceles_volume_bound,
};
use atiyah_lab::geom::{cayley_menger_vsq, d3};
use atiyah_lab::harness::{
    named_suite, read_counterexamples, replay, run_suite, sample, trial_rng, write_counterexamples, Check,
    Configuration, RunOptions, SamplerKind,
};
use atiyah_lab::ngon::{
    cot_product_bounds, cot_product_ln, log_dn_over_n2, ngon_closed_form, ngon_points, vandermonde_coeff_check,
    verify_dn_exceeds_one, verify_integral_identities,
};
use atiyah_lab::{atiyah_determinant, FourPointMetrics, Point3};
use num_complex::Complex64;
use rand::Rng;

const SEED: u64 = 20_240_601;

const C1_REL_TOL: f64 = 1e-8;
const C2_N_MAX: usize = 1_000_000;
const C3_N: usize = 100_000;
const C3_TOL: f64 = 1e-3;
const L_PRINTED: f64 = 0.07970479;
const C4_N_MAX: usize = 10_000;
const C5_MAIN: f64 = 0.5258998951;
const C5_TOL: f64 = 1e-8;
const C6_SAMPLES: u64 = 100;
const C6_N_MAX: usize = 12;
const C6_TOL: f64 = 1e-8;
const C7_TRIALS: u64 = 10_000;
const C7_EN_TOL: f64 = 1e-8;
const C7_ANGLE_TOL: f64 = 1e-9;
const C8_TRIALS: u64 = 10_000;
const C8_CRELLE_TOL: f64 = 1e-8;
const C8_PTOLEMY_TOL: f64 = 1e-9;
const C8_ANGLES_TOL: f64 = 1e-8;
const C9_QUAD_TRIALS: u64 = 100_000;
const C9_TECHNICAL_TRIALS: u64 = 1_000_000;
const C9_ISOSCELES_TRIALS: u64 = 1_000;
const C9_MARGIN_TOL: f64 = 1e-9;
const C9_CONJ3_REL_TOL: f64 = 1e-8;
const C10_GENERAL_TRIALS: u64 = 100_000;
const C10_CONJ3_TRIALS: u64 = 10_000;
const C10_TETRA_TRIALS: u64 = 1_000_000;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn quad(c: &Configuration) -> [Point3; 4] {
    c.points().expect("points").to_vec().try_into().expect("four points")
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0_f64;
    for n in 3..=24 {
        let direct = atiyah_determinant(&ngon_points(n).unwrap()).unwrap().abs();
        let closed = ngon_closed_form(n).unwrap();
        worst = worst.max((direct - closed).abs() / closed);
    }
    ensure(worst <= C1_REL_TOL, format!("max rel err {worst:e}"))?;
    Ok(format!("n = 3..24, max rel err {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let r = verify_dn_exceeds_one(C2_N_MAX).unwrap();
    ensure(r.passed(), format!("{:?}", r.counterexamples.first()))?;
    let min_direct = r.direct.iter().map(|d| d.direct).fold(f64::INFINITY, f64::min);
    ensure(min_direct > 1.0, "direct D_n <= 1")?;
    let (n, b) = r.min_bound.unwrap();
    ensure(b > 0.0, "bound not positive")?;
    Ok(format!("min direct D_n {min_direct:.6}, min log bound {b:.4} at n = {n}, {} closed-form samples", r.samples.len()))
}

fn criterion_3() -> Outcome {
    let v = log_dn_over_n2(C3_N).unwrap();
    let l = constants().l;
    ensure((v - L_PRINTED).abs() <= C3_TOL, format!("{v} vs {L_PRINTED}"))?;
    ensure(v < l, "value above the limit")?;
    Ok(format!("ln D_n / n^2 = {v:.10} at n = {C3_N}, L - value = {:.2e}", l - v))
}

fn criterion_4() -> Outcome {
    let mut tightest = f64::INFINITY;
    for n in 3..=C4_N_MAX {
        let b = cot_product_bounds(n).unwrap();
        let v = cot_product_ln(n);
        ensure(b.contains_ln(v), format!("n = {n}: {v} outside [{}, {}]", b.lower_ln, b.upper_ln))?;
        tightest = tightest.min((v - b.lower_ln).min(b.upper_ln - v));
    }
    Ok(format!("n = 3..{C4_N_MAX}, smallest log gap {tightest:.3e}"))
}

fn criterion_5() -> Outcome {
    let r = verify_integral_identities().unwrap();
    ensure((r.main.value - C5_MAIN).abs() <= C5_TOL, format!("integral {}", r.main.value))?;
    ensure(r.max_abs_err() <= C5_TOL, format!("max err {:e}", r.max_abs_err()))?;
    Ok(format!(
        "integral {:.12}, errors main {:.1e} sec {:.1e} xsec {:.1e}",
        r.main.value, r.main.abs_err, r.sec.abs_err, r.xsec.abs_err
    ))
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0_f64;
    for i in 0..C6_SAMPLES {
        let mut rng = trial_rng(SEED, i);
        let a = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..2.0 * PI));
        let n = rng.random_range(1..=C6_N_MAX);
        worst = worst.max(vandermonde_coeff_check(a, n).unwrap());
    }
    ensure(worst <= C6_TOL, format!("max rel err {worst:e}"))?;
    Ok(format!("{C6_SAMPLES} samples, max rel err {worst:.2e}"))
}

fn criterion_7() -> Outcome {
    let (mut en_worst, mut angle_worst) = (0.0_f64, 0.0_f64);
    for kind in [SamplerKind::General3d { n: 4 }, SamplerKind::Coplanar { n: 4 }] {
        for i in 0..C7_TRIALS {
            let pts = quad(&sample(&kind, SEED, i).unwrap());
            let m = FourPointMetrics::from_points(&pts).unwrap();
            let d = atiyah_determinant(&pts).unwrap().value;
            let via_det = 64.0 * d.re * m.product();
            let poly = en_real_part(&m, cayley_menger_vsq(&m).unwrap());
            en_worst = en_worst.max((poly - via_det).abs() / via_det.abs());
            let (dist, ang) = (en_av_term(&m), en_real_part_angles(&m).unwrap());
            angle_worst = angle_worst.max((dist - ang).abs() / dist.abs().max(ang.abs()));
        }
    }
    ensure(en_worst <= C7_EN_TOL, format!("polynomial vs determinant {en_worst:e}"))?;
    ensure(angle_worst <= C7_ANGLE_TOL, format!("angle vs distance form {angle_worst:e}"))?;
    Ok(format!("polynomial vs 64 Re(D) prod r {en_worst:.2e}, angle form {angle_worst:.2e}"))
}

fn criterion_8() -> Outcome {
    let mut crelle = 0.0_f64;
    for i in 0..C8_TRIALS {
        let pts = quad(&sample(&SamplerKind::General3d { n: 4 }, SEED, i).unwrap());
        crelle = crelle.max(crelle_volume_residual(&pts).unwrap());
    }
    let mut ptolemy = 0.0_f64;
    for i in 0..C8_TRIALS {
        let m = FourPointMetrics::from_points(&quad(&sample(&SamplerKind::CyclicQuad, SEED, i).unwrap())).unwrap();
        let s = crelle_sides(&m);
        let scale = s.iter().copied().fold(0.0, f64::max);
        ptolemy = ptolemy.max(d3(s[0], s[1], s[2]).abs() / scale.powi(3));
    }
    let mut angles = 0.0_f64;
    let mut skipped = 0;
    for kind in [SamplerKind::ConvexQuad, SamplerKind::InteriorPointQuad] {
        for i in 0..C8_TRIALS {
            let pts = quad(&sample(&kind, SEED, i).unwrap());
            let tri = crelle_triangle(&FourPointMetrics::from_points(&pts).unwrap());
            let Some(mut want) = tri.angles else {
                skipped += 1;
                continue;
            };
            let mut got = crelle_angles_coplanar(&pts).unwrap().angles;
            got.sort_by(f64::total_cmp);
            want.sort_by(f64::total_cmp);
            for (g, w) in got.iter().zip(want) {
                angles = angles.max((g - w).abs());
            }
        }
    }
    ensure(crelle <= C8_CRELLE_TOL, format!("S = 6VR residual {crelle:e}"))?;
    ensure(ptolemy <= C8_PTOLEMY_TOL, format!("Ptolemy defect {ptolemy:e}"))?;
    ensure(angles <= C8_ANGLES_TOL, format!("angle multiset {angles:e}"))?;
    Ok(format!(
        "S = 6VR {crelle:.2e}, Ptolemy {ptolemy:.2e}, angle multisets {angles:.2e} ({skipped} concyclic skipped)"
    ))
}

fn suite_min(name: &str, n: Option<usize>, trials: u64, check: Check) -> Result<f64, String> {
    let spec = named_suite(name, n).map_err(|e| e.to_string())?;
    let opts = RunOptions { trials, seed: SEED, ..Default::default() };
    let out = run_suite(&spec, &opts).map_err(|e| e.to_string())?;
    Ok(out.report.min_margins[&check].value)
}

fn criterion_9() -> Outcome {
    let conj2 = suite_min("conj2-convex-quad", None, C9_QUAD_TRIALS, Check::Conj2)?;
    ensure(conj2 >= -C9_MARGIN_TOL, format!("convex conj2 {conj2:e}"))?;
    let conj3 = suite_min("conj3-cyclic-quad", None, C9_QUAD_TRIALS, Check::Conj3)?;
    ensure(conj3 >= -C9_CONJ3_REL_TOL, format!("cyclic conj3 {conj3:e}"))?;
    let tech = suite_min("technical-f", None, C9_TECHNICAL_TRIALS, Check::TechnicalF)?;
    ensure(tech >= -C9_MARGIN_TOL, format!("technical f - 3 = {tech:e}"))?;
    let mut iso = 0.0_f64;
    for i in 0..C9_ISOSCELES_TRIALS {
        let m = FourPointMetrics::from_points(&quad(&sample(&SamplerKind::IsoscelesTetra, SEED, i).unwrap())).unwrap();
        let b = isosceles_volume_bound(&m).unwrap();
        ensure(b.is_isosceles, "sampler produced a non-isosceles tetrahedron")?;
        iso = iso.max(b.margin.abs());
    }
    ensure(iso <= C9_MARGIN_TOL, format!("isosceles |margin| {iso:e}"))?;
    Ok(format!(
        "min margins: convex conj2 {conj2:.2e}, cyclic conj3 {conj3:.2e}, technical {tech:.2e}; isosceles max |margin| {iso:.1e}"
    ))
}

fn criterion_10() -> Outcome {
    let mut min_d = f64::INFINITY;
    let mut min_conj2 = f64::INFINITY;
    for n in 3..=8 {
        let spec = named_suite("conj2", Some(n)).unwrap();
        let out = run_suite(&spec, &RunOptions { trials: C10_GENERAL_TRIALS, seed: SEED, ..Default::default() })
            .map_err(|e| e.to_string())?;
        ensure(out.report.passed(), format!("conj1/conj2 failures at n = {n}: {}", out.report.failures))?;
        min_d = min_d.min(out.report.min_margins[&Check::Conj1].value + 1e-12);
        min_conj2 = min_conj2.min(out.report.min_margins[&Check::Conj2].value);
    }
    let mut min_conj3 = f64::INFINITY;
    for n in [4, 5] {
        min_conj3 = min_conj3.min(suite_min("conj3", Some(n), C10_CONJ3_TRIALS, Check::Conj3)?);
    }
    ensure(min_conj3 >= -Check::Conj3.default_tolerance(), format!("conj3 {min_conj3:e}"))?;
    let conj4 = suite_min("conj4", None, C10_TETRA_TRIALS, Check::Conj4)?;
    let conj5 = suite_min("conj5", None, C10_TETRA_TRIALS, Check::Conj5)?;
    let conj6 = suite_min("conj6", None, C10_TETRA_TRIALS, Check::Conj6)?;
    for (name, v, check) in [("conj4", conj4, Check::Conj4), ("conj5", conj5, Check::Conj5), ("conj6", conj6, Check::Conj6)]
    {
        ensure(v >= -check.default_tolerance(), format!("{name} {v:e}"))?;
    }
    Ok(format!(
        "min |D| {min_d:.3}, min |D| - 1 {min_conj2:.2e}, conj3 {min_conj3:.2e}, conj4 {conj4:.2e}, conj5 {conj5:.2e}, conj6 {conj6:.2e}"
    ))
}

fn strip_timing(json: &[u8]) -> String {
    String::from_utf8_lossy(json).lines().filter(|l| !l.contains("\"wall_ms\"")).collect::<Vec<_>>().join("\n")
}

fn criterion_11() -> Outcome {
    let spec = named_suite("conj5", None).unwrap();
    let run = |workers| {
        run_suite(&spec, &RunOptions { trials: 20_000, seed: SEED, workers, ..Default::default() })
            .unwrap()
            .report
            .without_timing()
    };
    ensure(run(1) == run(4), "serial and parallel reports differ")?;

    let dir = tempfile::tempdir().unwrap();
    let forced = RunOptions { trials: 50, seed: SEED, workers: 2, tolerance: Some(-1e6), ..Default::default() };
    for name in ["conj2", "technical-f"] {
        let out = run_suite(&named_suite(name, None).unwrap(), &forced).unwrap();
        let path = dir.path().join(format!("{name}.jsonl"));
        write_counterexamples(&path, &out.counterexamples).unwrap();
        let back = read_counterexamples(&path).unwrap();
        ensure(back == out.counterexamples, "records differ after round trip")?;
        for r in &back {
            let original = sample(&r.sampler, SEED, r.trial).unwrap();
            let bits = |c: &Configuration| match c {
                Configuration::Points(p) => p.iter().flat_map(|q| q.to_array()).map(f64::to_bits).collect::<Vec<_>>(),
                Configuration::Angles(a) => a.iter().map(|v| v.to_bits()).collect(),
            };
            ensure(bits(&r.configuration().unwrap()) == bits(&original), "configuration bits differ")?;
            ensure(replay(r).unwrap() == r.margins, "replayed margins differ")?;
        }
    }

    let exe = env!("CARGO_BIN_EXE_atiyah-lab");
    let pts = dir.path().join("tri.json");
    std::fs::write(&pts, r#"{"points": [[0,0,0],[1,0,0],[0.5,0.8660254037844386,0]]}"#).unwrap();
    let quad = dir.path().join("sq.csv");
    std::fs::write(&quad, "x,y,z\n0,0,0\n1,0,0\n1,1,0\n0,1,0\n").unwrap();
    let pts = pts.to_str().unwrap();
    let quad = quad.to_str().unwrap();
    let commands: [&[&str]; 5] = [
        &["det", "--in", pts],
        &["ngon", "--n", "9", "--direct", "--bounds"],
        &["four", "--in", quad],
        &["constants"],
        &["verify", "--suite", "conj4", "--trials", "3000", "--seed", "5"],
    ];
    for args in commands {
        let run = || Command::new(exe).args(args).env("ATIYAH_LAB_WORKERS", "2").output().unwrap();
        let (a, b) = (run(), run());
        ensure(a.status.success(), format!("{args:?} exited with {}", a.status))?;
        ensure(strip_timing(&a.stdout) == strip_timing(&b.stdout), format!("{args:?} output differs"))?;
    }
    Ok("serial = parallel, counterexamples bit-exact, CLI output repeatable".into())
}

fn main() {
    let criteria: [(u32, fn() -> Outcome, Duration); 11] = [
        (1, criterion_1, Duration::from_secs(10)),
        (2, criterion_2, Duration::from_secs(5)),
        (3, criterion_3, Duration::from_secs(1)),
        (4, criterion_4, Duration::from_secs(30)),
        (5, criterion_5, Duration::from_secs(1)),
        (6, criterion_6, Duration::from_secs(1)),
        (7, criterion_7, Duration::from_secs(60)),
        (8, criterion_8, Duration::from_secs(60)),
        (9, criterion_9, Duration::from_secs(600)),
        (10, criterion_10, Duration::from_secs(1800)),
        (11, criterion_11, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (id, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {id:>2} PASS ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id:>2} FAIL ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
