//! Small dense determinants by LU factorization with partial pivoting.

use num_complex::Complex64;

/// Determinant of a row-major `n x n` complex matrix, consumed in place.
///
/// Returns the determinant together with a reciprocal-condition hint
/// `min |u_ii| / max |u_ii|` taken from the diagonal of the U factor
/// (0 when the matrix is numerically singular).
pub fn complex_determinant(mut a: Vec<Complex64>, n: usize) -> (Complex64, f64) {
    assert_eq!(a.len(), n * n, "matrix storage does not match dimension");
    let mut det = Complex64::new(1.0, 0.0);
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot = 0.0_f64;

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[col * n + col].norm();
        for row in col + 1..n {
            let mag = a[row * n + col].norm();
            if mag > pivot_mag {
                pivot_row = row;
                pivot_mag = mag;
            }
        }
        min_pivot = min_pivot.min(pivot_mag);
        max_pivot = max_pivot.max(pivot_mag);
        if pivot_mag == 0.0 {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        let pivot = a[col * n + col];
        det *= pivot;
        let inv = pivot.inv();
        for row in col + 1..n {
            let factor = a[row * n + col] * inv;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col + 1..n {
                let upper = a[col * n + k];
                a[row * n + k] -= factor * upper;
            }
        }
    }
    let rcond = if max_pivot > 0.0 { min_pivot / max_pivot } else { 0.0 };
    (det, rcond)
}

/// Determinant of a row-major `n x n` real matrix.
pub fn real_determinant(mut a: Vec<f64>, n: usize) -> f64 {
    assert_eq!(a.len(), n * n, "matrix storage does not match dimension");
    let mut det = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&x, &y| a[x * n + col].abs().total_cmp(&a[y * n + col].abs()))
            .unwrap_or(col);
        let pivot = a[pivot_row * n + col];
        if pivot == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        det *= pivot;
        for row in col + 1..n {
            let factor = a[row * n + col] / pivot;
            for k in col + 1..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
        }
    }
    det
}
