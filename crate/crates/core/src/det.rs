//! The Atiyah determinant of a configuration of distinct points.
//!
//! Row `i` of the matrix holds the coefficients of the binary form
//! `f_i(t1, t2) = prod_{k != i} (z_ik t1 - w_ik t2)`, where `(z_ik, w_ik)`
//! is the spinor pair of the direction from `x_i` to `x_k` (reversed via
//! [`reverse_pair`] for `i > k`). The determinant does not depend on the
//! phase chosen for each pair.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{check_distinct, delta, Point3, TriangleSides};
use crate::linalg::complex_determinant;
use crate::poly::mul_linear;
use crate::spinor::{hopf_pair, reverse_pair, SpinorPair};

pub const MAX_POINTS: usize = 64;

/// Coefficients of a binary form of degree `n - 1`: `coeffs[j]` multiplies
/// `t1^j t2^(n-1-j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryFormCoeffs {
    pub coeffs: Vec<Complex64>,
}

impl BinaryFormCoeffs {
    pub fn eval(&self, t1: Complex64, t2: Complex64) -> Complex64 {
        // homogeneous Horner in t1 with t2 powers folded in
        let n = self.coeffs.len();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut t2_pow = Complex64::new(1.0, 0.0);
        for j in (0..n).rev() {
            acc += self.coeffs[j] * t1.powu(j as u32) * t2_pow;
            t2_pow *= t2;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtiyahResult {
    pub value: Complex64,
    /// `min |u_ii| / max |u_ii|` of the LU factor; small values flag
    /// ill-conditioned configurations.
    pub cond_hint: f64,
    pub n: usize,
}

impl AtiyahResult {
    pub fn abs(&self) -> f64 {
        self.value.norm()
    }
}

/// Spinor pairs for every ordered pair `(i, k)`, `i != k`.
#[derive(Clone, Debug)]
pub struct PairTable {
    n: usize,
    pairs: Vec<SpinorPair>,
}

impl PairTable {
    pub fn from_points(pts: &[Point3]) -> Result<Self> {
        let n = pts.len();
        let zero = SpinorPair::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let mut table = PairTable { n, pairs: vec![zero; n * n] };
        for i in 0..n {
            for k in i + 1..n {
                let p = hopf_pair(pts[i], pts[k])
                    .map_err(|_| Error::CoincidentPoints { i, j: k, distance: 0.0 })?;
                table.set(i, k, p);
            }
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, k: usize) -> SpinorPair {
        self.pairs[i * self.n + k]
    }

    /// Sets the pair for `(i, k)`, `i < k`, and its reversal for `(k, i)`.
    pub fn set(&mut self, i: usize, k: usize, p: SpinorPair) {
        assert!(i < k && k < self.n, "pair ({i}, {k}) must satisfy i < k < n");
        self.pairs[i * self.n + k] = p;
        self.pairs[k * self.n + i] = reverse_pair(p);
    }
}

/// Coefficients of `f_i`, multiplying factors in increasing `k`.
pub fn host_polynomial(i: usize, pairs: &PairTable) -> BinaryFormCoeffs {
    let mut coeffs = Vec::with_capacity(pairs.len());
    coeffs.push(Complex64::new(1.0, 0.0));
    for k in (0..pairs.len()).filter(|&k| k != i) {
        let p = pairs.get(i, k);
        // z t1 - w t2: constant (pure t2) part -w, t1 part z
        mul_linear(&mut coeffs, -p.w, p.z);
    }
    BinaryFormCoeffs { coeffs }
}

pub fn determinant_from_pairs(pairs: &PairTable) -> AtiyahResult {
    let n = pairs.len();
    let mut mat = Vec::with_capacity(n * n);
    for i in 0..n {
        mat.extend(host_polynomial(i, pairs).coeffs);
    }
    let (value, cond_hint) = complex_determinant(mat, n);
    AtiyahResult { value, cond_hint, n }
}

pub fn atiyah_determinant(pts: &[Point3]) -> Result<AtiyahResult> {
    if pts.len() < 2 || pts.len() > MAX_POINTS {
        return Err(Error::invalid(format!(
            "need between 2 and {MAX_POINTS} points, got {}",
            pts.len()
        )));
    }
    check_distinct(pts)?;
    Ok(determinant_from_pairs(&PairTable::from_points(pts)?))
}

/// Three-point closed form `1 + delta(ABC) / 4`.
pub fn atiyah_determinant_three(a: Point3, b: Point3, c: Point3) -> Result<Complex64> {
    check_distinct(&[a, b, c])?;
    let t = TriangleSides::from_points(a, b, c)?;
    Ok(Complex64::new(1.0 + delta(&t).max(0.0) / 4.0, 0.0))
}
