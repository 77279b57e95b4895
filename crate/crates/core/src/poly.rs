//! Coefficient arithmetic for products of linear factors.

use num_complex::Complex64;

/// Multiplies `coeffs` (lowest degree first) by `(a + b t)` in place,
/// growing the vector by one.
pub fn mul_linear(coeffs: &mut Vec<Complex64>, a: Complex64, b: Complex64) {
    coeffs.push(Complex64::new(0.0, 0.0));
    for j in (0..coeffs.len()).rev() {
        let lower = if j > 0 { coeffs[j - 1] } else { Complex64::new(0.0, 0.0) };
        coeffs[j] = coeffs[j] * a + lower * b;
    }
}

/// Coefficients, lowest degree first, of `prod_k (z - roots[k])`.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = Vec::with_capacity(roots.len() + 1);
    c.push(Complex64::new(1.0, 0.0));
    for &r in roots {
        mul_linear(&mut c, -r, Complex64::new(1.0, 0.0));
    }
    c
}

/// Horner evaluation, lowest degree first.
pub fn eval(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
}
