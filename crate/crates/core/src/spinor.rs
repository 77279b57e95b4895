//! Unit spinor pairs attached to ordered pairs of points.
//!
//! For `x_i != x_j` the pair `(z, w)` satisfies `|z|^2 + |w|^2 = 1` and
//!
//! ```text
//! z / w = ((xj - xi).x + i (xj - xi).y) / (|xj - xi| - (xj - xi).z)
//! ```
//!
//! i.e. the inverse stereographic image of the unit direction from `x_i`
//! to `x_j`. The residual phase is fixed by taking `w` real and
//! non-negative; the direction `+e3`, where the denominator vanishes, maps
//! to `(1, 0)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinorPair {
    pub z: Complex64,
    pub w: Complex64,
}

impl SpinorPair {
    pub fn new(z: Complex64, w: Complex64) -> Self {
        SpinorPair { z, w }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z.norm_sqr() + self.w.norm_sqr()
    }

    /// The same pair multiplied by a scalar (a unit phase for gauge changes).
    pub fn scaled(&self, lambda: Complex64) -> Self {
        SpinorPair { z: lambda * self.z, w: lambda * self.w }
    }
}

pub fn hopf_pair(xi: Point3, xj: Point3) -> Result<SpinorPair> {
    let d = xj - xi;
    let r = d.norm();
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::CoincidentPoints { i: 0, j: 1, distance: r });
    }
    let planar = d.x.hypot(d.y);
    // r - dz without cancellation when the direction is close to +e3
    let den = if d.z <= 0.0 { r - d.z } else { planar * (planar / (r + d.z)) };
    if den == 0.0 {
        return Ok(SpinorPair::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let scale = planar.hypot(den);
    Ok(SpinorPair::new(
        Complex64::new(d.x / scale, d.y / scale),
        Complex64::new(den / scale, 0.0),
    ))
}

/// The pair used for `i > j`: `(-conj(w), conj(z))` of the pair for `(j, i)`.
pub fn reverse_pair(p: SpinorPair) -> SpinorPair {
    SpinorPair::new(-p.w.conj(), p.z.conj())
}
