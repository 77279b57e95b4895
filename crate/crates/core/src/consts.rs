//! Apery's constant, Catalan's constant and the limits built from them,
//! computed once from rapidly converging central-binomial series.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub zeta3: f64,
    /// `7 zeta(3) / (2 pi^2)`.
    pub b: f64,
    /// `7 zeta(3) / (2 pi^2) - ln 2 / 2`.
    pub l: f64,
    pub catalan: f64,
}

/// Terms of `sum 1 / (k^p C(2k, k))`-type series shrink like `4^-k`; this
/// many terms is far past double precision.
const SERIES_TERMS: u32 = 40;

/// `zeta(3) = 5/2 sum_{k>=1} (-1)^(k+1) / (k^3 C(2k,k))`.
pub fn zeta3() -> f64 {
    let mut central = 1.0; // C(2k, k)
    let mut sum = 0.0;
    for k in 1..=SERIES_TERMS {
        let kf = k as f64;
        central *= (2.0 * kf - 1.0) * 2.0 / kf;
        let term = 1.0 / (kf * kf * kf * central);
        sum += if k % 2 == 1 { term } else { -term };
    }
    2.5 * sum
}

/// `G = pi/8 ln(2 + sqrt 3) + 3/8 sum_{k>=0} 1 / ((2k+1)^2 C(2k,k))`.
pub fn catalan() -> f64 {
    let mut central = 1.0;
    let mut sum = 1.0;
    for k in 1..=SERIES_TERMS {
        let kf = k as f64;
        central *= (2.0 * kf - 1.0) * 2.0 / kf;
        let odd = 2.0 * kf + 1.0;
        sum += 1.0 / (odd * odd * central);
    }
    PI / 8.0 * (2.0 + 3f64.sqrt()).ln() + 3.0 / 8.0 * sum
}

pub fn constants() -> &'static Constants {
    static CELL: OnceLock<Constants> = OnceLock::new();
    CELL.get_or_init(|| {
        let zeta3 = zeta3();
        let b = 7.0 * zeta3 / (2.0 * PI * PI);
        Constants { zeta3, b, l: b - LN_2 / 2.0, catalan: catalan() }
    })
}
