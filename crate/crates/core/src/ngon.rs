//! Regular n-gons: the closed form for `|D|`, its growth rate and the
//! lemmas that bound it.
//!
//! `D_n` grows like `exp(0.08 n^2)` and overflows `f64` near `n = 95`, so
//! every closed-form quantity is evaluated as a logarithm.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::consts::constants;
use crate::det::atiyah_determinant;
use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::poly::from_roots;
use crate::quad::{tanh_sinh, Side};

/// Largest n for which the determinant is also evaluated directly.
pub const DIRECT_CAP: usize = 24;

/// Up to this n the bound sweep also evaluates the closed form itself.
const CLOSED_FORM_SWEEP: usize = 2000;

/// Vertices `(cos u_k, sin u_k, 0)`, `u_k = 2 pi k / n`, `k = 1..=n`.
pub fn ngon_points(n: usize) -> Result<Vec<Point3>> {
    if n < 2 {
        return Err(Error::invalid(format!("an n-gon needs n >= 2, got {n}")));
    }
    Ok((1..=n)
        .map(|k| {
            let u = 2.0 * PI * k as f64 / n as f64;
            Point3::new(u.cos(), u.sin(), 0.0)
        })
        .collect())
}

fn ln_cot(x: f64) -> f64 {
    x.cos().ln() - x.sin().ln()
}

/// `ln |D_n| = (n/2) ln n + n(1-n)/2 ln 2 + sum_{1<=k<=n/2} (n-2k) ln cot(pi k / 2n)`.
///
/// At `n = 2` the product is `cot(pi/4)^0` and the value is exactly `ln 1`.
pub fn ngon_closed_form_ln(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid(format!("closed form needs n >= 2, got {n}")));
    }
    let nf = n as f64;
    Ok(0.5 * nf * nf.ln() + 0.5 * nf * (1.0 - nf) * LN_2 + nf * cot_product_ln(n))
}

/// `|D_n|`; `+inf` once it leaves the `f64` range.
pub fn ngon_closed_form(n: usize) -> Result<f64> {
    ngon_closed_form_ln(n).map(f64::exp)
}

/// `ln prod_{1<=k<=n/2} cot(pi k / 2n)^(1 - 2k/n)`.
pub fn cot_product_ln(n: usize) -> f64 {
    let nf = n as f64;
    (1..=n / 2)
        .map(|k| {
            let kf = k as f64;
            (1.0 - 2.0 * kf / nf) * ln_cot(PI * kf / (2.0 * nf))
        })
        .sum()
}

/// Sandwich bounds on the cotangent product, in log space:
/// `B n - (1 - 1/n) ln n - (1 - ln(pi/2)) <= ln prod <= B n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CotProductBounds {
    pub n: usize,
    pub lower_ln: f64,
    pub upper_ln: f64,
}

impl CotProductBounds {
    pub fn lower(&self) -> f64 {
        self.lower_ln.exp()
    }

    pub fn upper(&self) -> f64 {
        self.upper_ln.exp()
    }

    pub fn contains_ln(&self, value_ln: f64) -> bool {
        self.lower_ln <= value_ln && value_ln <= self.upper_ln
    }
}

pub fn cot_product_bounds(n: usize) -> Result<CotProductBounds> {
    if n < 3 {
        return Err(Error::invalid(format!("bounds need n >= 3, got {n}")));
    }
    let nf = n as f64;
    let b = constants().b;
    Ok(CotProductBounds {
        n,
        lower_ln: b * nf - (1.0 - 1.0 / nf) * nf.ln() - (1.0 - FRAC_PI_2.ln()),
        upper_ln: b * nf,
    })
}

pub fn log_dn_over_n2(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::invalid(format!("ln D_n / n^2 needs n >= 3, got {n}")));
    }
    let nf = n as f64;
    Ok(ngon_closed_form_ln(n)? / (nf * nf))
}

/// `prod cot(pi k / 2n)^((n - 2k)/n^2)`, which tends to `exp(B)`.
pub fn cot_product_root(n: usize) -> f64 {
    (cot_product_ln(n) / n as f64).exp()
}

/// Lower bound on `ln D_n / n`: `0.0797 n - (1/2 - 1/n) ln n - 0.2019`.
pub fn dn_log_lower_bound(n: usize) -> f64 {
    let nf = n as f64;
    0.0797 * nf - (0.5 - 1.0 / nf) * nf.ln() - 0.2019
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectCheck {
    pub n: usize,
    pub direct: f64,
    pub closed_form: f64,
    pub rel_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSample {
    pub n: usize,
    pub ln_dn_over_n: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DnReport {
    pub n_max: usize,
    pub direct: Vec<DirectCheck>,
    /// Smallest value of the lower-bound expression over `25..=n_max`.
    pub min_bound: Option<(usize, f64)>,
    /// Closed-form evaluations cross-checked against the bound.
    pub samples: Vec<BoundSample>,
    pub counterexamples: Vec<String>,
}

impl DnReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// `D_n > 1` for `3 <= n <= n_max`: directly up to [`DIRECT_CAP`] (with a
/// `1e-8` relative match against the closed form), then through the
/// positivity of [`dn_log_lower_bound`].
pub fn verify_dn_exceeds_one(n_max: usize) -> Result<DnReport> {
    if n_max < 3 {
        return Err(Error::invalid(format!("n_max must be at least 3, got {n_max}")));
    }
    let mut report = DnReport { n_max, ..Default::default() };
    for n in 3..=n_max.min(DIRECT_CAP) {
        let direct = atiyah_determinant(&ngon_points(n)?)?.abs();
        let closed_form = ngon_closed_form(n)?;
        let rel_err = (direct - closed_form).abs() / closed_form;
        if !(direct > 1.0) {
            report.counterexamples.push(format!("n = {n}: direct |D| = {direct}"));
        }
        if !(rel_err <= 1e-8) {
            report.counterexamples.push(format!("n = {n}: direct {direct} vs closed form {closed_form}"));
        }
        report.direct.push(DirectCheck { n, direct, closed_form, rel_err });
    }
    for n in DIRECT_CAP + 1..=n_max {
        let bound = dn_log_lower_bound(n);
        if report.min_bound.is_none_or(|(_, b)| bound < b) {
            report.min_bound = Some((n, bound));
        }
        if !(bound > 0.0) {
            report.counterexamples.push(format!("n = {n}: lower bound {bound} is not positive"));
        }
        if n <= CLOSED_FORM_SWEEP || is_power_of_ten(n) {
            let ln_dn_over_n = ngon_closed_form_ln(n)? / n as f64;
            if ln_dn_over_n < bound - 1e-12 * n as f64 {
                report
                    .counterexamples
                    .push(format!("n = {n}: ln D_n / n = {ln_dn_over_n} is below the bound {bound}"));
            }
            report.samples.push(BoundSample { n, ln_dn_over_n, bound });
        }
    }
    Ok(report)
}

fn is_power_of_ten(mut n: usize) -> bool {
    while n >= 10 && n % 10 == 0 {
        n /= 10;
    }
    n == 1
}

/// Expands `h(z) = prod_{k=1}^{n} (z - a^k) = z^n - sum b_k z^k` and returns
/// the largest relative deviation of the `b_k` from
/// `a^(n-k) prod_{l != k} (a^n - a^l) / prod_{l != k} (a^k - a^l)`.
pub fn vandermonde_coeff_check(a: Complex64, n: usize) -> Result<f64> {
    if !(1..=20).contains(&n) {
        return Err(Error::invalid(format!("n must lie in 1..=20, got {n}")));
    }
    if !(a.norm() > 1e-8) || !a.is_finite() {
        return Err(Error::invalid(format!("a = {a} must be nonzero and finite")));
    }
    let powers: Vec<Complex64> = (0..=n).map(|k| a.powu(k as u32)).collect();
    if let Some(k) = (1..n).find(|&k| (powers[k] - 1.0).norm() <= 1e-8) {
        return Err(Error::invalid(format!("a^{k} = 1 within tolerance")));
    }
    let coeffs = from_roots(&powers[1..=n]);
    let mut worst = 0.0_f64;
    for k in 0..n {
        let expanded = -coeffs[k];
        let mut num = powers[n - k];
        let mut den = Complex64::new(1.0, 0.0);
        for l in (0..n).filter(|&l| l != k) {
            num *= powers[n] - powers[l];
            den *= powers[k] - powers[l];
        }
        let formula = num / den;
        let scale = expanded.norm().max(formula.norm()).max(f64::MIN_POSITIVE);
        worst = worst.max((formula - expanded).norm() / scale);
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralCheck {
    pub value: f64,
    pub expected: f64,
    pub abs_err: f64,
}

impl IntegralCheck {
    fn new(value: f64, expected: f64) -> Self {
        IntegralCheck { value, expected, abs_err: (value - expected).abs() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralReport {
    /// `int_0^{pi/4} (pi/4 - x) ln cot x dx` against `7 zeta(3) / 16`.
    pub main: IntegralCheck,
    /// `int_0^{pi/2} x csc x dx` against `2G`.
    pub sec: IntegralCheck,
    /// `int_0^{pi/2} x^2 csc x dx` against `2 pi G - 7/2 zeta(3)`.
    pub xsec: IntegralCheck,
}

impl IntegralReport {
    pub fn max_abs_err(&self) -> f64 {
        self.main.abs_err.max(self.sec.abs_err).max(self.xsec.abs_err)
    }
}

/// `f(x) = (pi/4 - x) ln cot x`.
pub fn cot_log_weight(x: f64) -> f64 {
    (FRAC_PI_4 - x) * ln_cot(x)
}

pub fn verify_integral_identities() -> Result<IntegralReport> {
    const TOL: f64 = 1e-13;
    let c = constants();
    let main = tanh_sinh(
        |_, side, off| match side {
            Side::Left => (FRAC_PI_4 - off) * ln_cot(off),
            // cot(pi/4 - e) = (1 + tan e) / (1 - tan e)
            Side::Right => {
                let t = off.tan();
                off * (t.ln_1p() - (-t).ln_1p())
            }
        },
        0.0,
        FRAC_PI_4,
        TOL,
    )?;
    let sec = tanh_sinh(
        |x, side, off| match side {
            Side::Left => off / off.sin(),
            Side::Right => x / x.sin(),
        },
        0.0,
        FRAC_PI_2,
        TOL,
    )?;
    let xsec = tanh_sinh(
        |x, side, off| match side {
            Side::Left => off * off / off.sin(),
            Side::Right => x * x / x.sin(),
        },
        0.0,
        FRAC_PI_2,
        TOL,
    )?;
    Ok(IntegralReport {
        main: IntegralCheck::new(main.value, 7.0 * c.zeta3 / 16.0),
        sec: IntegralCheck::new(sec.value, 2.0 * c.catalan),
        xsec: IntegralCheck::new(xsec.value, 2.0 * PI * c.catalan - 3.5 * c.zeta3),
    })
}

/// Checks that [`cot_log_weight`] is strictly decreasing on `grid` evenly
/// spaced points of `[1e-6, pi/4 - 1e-6]`.
pub fn check_f_decreasing(grid: usize) -> bool {
    if grid < 2 {
        return true;
    }
    let (lo, hi) = (1e-6, FRAC_PI_4 - 1e-6);
    let step = (hi - lo) / (grid - 1) as f64;
    let values: Vec<f64> = (0..grid).map(|i| cot_log_weight(lo + step * i as f64)).collect();
    values.windows(2).all(|w| w[1] < w[0])
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn points_on_unit_circle() {
        let sq = ngon_points(4).unwrap();
        let expected = [(0.0, 1.0), (-1.0, 0.0), (0.0, -1.0), (1.0, 0.0)];
        for (p, (x, y)) in sq.iter().zip(expected) {
            assert!((p.x - x).abs() < 1e-15 && (p.y - y).abs() < 1e-15 && p.z == 0.0);
        }
        let tri = ngon_points(3).unwrap();
        assert!(((tri[0] - tri[1]).norm() - 3f64.sqrt()).abs() < 1e-15);
        for n in 2..40 {
            assert!(ngon_points(n).unwrap().iter().all(|p| (p.norm() - 1.0).abs() < 1e-15));
        }
        assert!(ngon_points(1).is_err());
    }

    #[test]
    fn closed_form_small_n() {
        assert!((ngon_closed_form(3).unwrap() - 1.125).abs() < 1e-14);
        let square = (3.0 + 2.0 * 2f64.sqrt()) / 4.0;
        assert!((ngon_closed_form(4).unwrap() - square).abs() < 1e-14);
        // n = 2 reduces to the empty-exponent product and two points give D = 1
        assert!((ngon_closed_form(2).unwrap() - 1.0).abs() < 1e-15);
        let direct = atiyah_determinant(&ngon_points(2).unwrap()).unwrap();
        assert!((direct.abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_direct() {
        for n in 3..=12 {
            let direct = atiyah_determinant(&ngon_points(n).unwrap()).unwrap().abs();
            let closed = ngon_closed_form(n).unwrap();
            assert!((direct - closed).abs() <= 1e-8 * closed, "n = {n}: {direct} vs {closed}");
        }
    }

    #[test]
    fn bounds_contain_product() {
        for n in [3, 10, 100, 1000] {
            let b = cot_product_bounds(n).unwrap();
            let p = cot_product_ln(n);
            assert!(b.contains_ln(p), "n = {n}: {} <= {p} <= {}", b.lower_ln, b.upper_ln);
            assert!(b.lower() <= p.exp() && p.exp() <= b.upper());
        }
        let gap = |n: usize| {
            let b = cot_product_bounds(n).unwrap();
            (b.upper() - b.lower()) / b.upper()
        };
        // the log gap is (1 - 1/n) ln n + 1 - ln(pi/2), far below n
        assert!(gap(1000) < 1.0);
        let b = cot_product_bounds(1000).unwrap();
        let log_gap = b.upper_ln - b.lower_ln;
        assert!((log_gap - (0.999 * 1000f64.ln() + 1.0 - FRAC_PI_2.ln())).abs() < 1e-9);
        assert!(cot_product_bounds(2).is_err());
    }

    #[test]
    fn log_over_n2_values() {
        assert!((log_dn_over_n2(3).unwrap() - 1.125f64.ln() / 9.0).abs() < 1e-15);
        assert!((log_dn_over_n2(3).unwrap() - (9.0f64 / 8.0).ln() / 9.0).abs() < 1e-15);
        let l = constants().l;
        // distance to the limit measured from the closed form: 3.45e-4 at n = 1000
        assert!((log_dn_over_n2(1000).unwrap() - l).abs() < 0.005);
        let (a, b, c) = (log_dn_over_n2(10).unwrap(), log_dn_over_n2(100).unwrap(), log_dn_over_n2(1000).unwrap());
        assert!(a < b && b < c && c < l);
    }

    #[test]
    fn cot_product_root_approaches_exp_b() {
        let target = constants().b.exp();
        let gap = |n: usize| target - cot_product_root(n);
        // observed gap at n = 1e4: 8.1e-4
        assert!(gap(10_000) > 0.0 && gap(10_000) <= 1e-3);
        assert!(gap(100_000) < gap(10_000));
    }

    #[test]
    fn dn_exceeds_one_small() {
        let r = verify_dn_exceeds_one(30).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert_eq!(r.direct.len(), 22);
        assert!((r.direct[0].direct - 1.125).abs() < 1e-14);
        let n19 = r.direct.iter().find(|d| d.n == 19).unwrap();
        assert!(n19.direct > 1.0 && n19.rel_err < 1e-8);
        assert!(r.min_bound.unwrap().1 > 0.0);
        assert!(verify_dn_exceeds_one(2).is_err());
        assert!(dn_log_lower_bound(1000) > 0.0);
    }

    #[test]
    fn vandermonde_examples() {
        assert!(vandermonde_coeff_check(Complex64::new(2.0, 0.0), 3).unwrap() <= 1e-10);
        let a = Complex64::from_polar(1.1, PI / 7.0);
        assert!(vandermonde_coeff_check(a, 5).unwrap() <= 1e-9);
        let root = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!(vandermonde_coeff_check(root, 5).is_err());
        assert!(vandermonde_coeff_check(Complex64::new(0.0, 0.0), 3).is_err());
        assert!(vandermonde_coeff_check(Complex64::new(2.0, 0.0), 21).is_err());
    }

    #[test]
    fn vandermonde_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let n = rng.random_range(1..=12);
            let a = Complex64::from_polar(rng.random_range(0.6..1.6), rng.random_range(0.0..2.0 * PI));
            if (1..n).any(|k| (a.powu(k as u32) - 1.0).norm() < 0.05) {
                continue;
            }
            assert!(vandermonde_coeff_check(a, n).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn integrals() {
        let r = verify_integral_identities().unwrap();
        assert!(r.max_abs_err() <= 1e-8, "{r:?}");
        assert!((r.main.value - 0.525_899_895_1).abs() < 1e-10);
        assert!((r.sec.value - 1.831_931_188_3).abs() < 1e-10);
        assert!((r.xsec.value - 1.547_982_402_2).abs() < 1e-10);
    }

    #[test]
    fn f_decreasing() {
        assert!(check_f_decreasing(1000));
        assert!(cot_log_weight(1e-6) > 10.0);
        assert!(cot_log_weight(FRAC_PI_4 - 1e-6) < 1e-11);
        assert!(cot_log_weight(PI / 8.0) > cot_log_weight(PI / 6.0));
    }
}
