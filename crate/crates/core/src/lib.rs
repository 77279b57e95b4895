//! Atiyah's determinant for configurations of distinct points in `R^3`.
//!
//! Each ordered pair of points gets a unit spinor pair from the direction
//! between them ([`spinor`]); point `i` gets the binary form whose roots are
//! the directions to all other points; `D` is the normalized determinant of
//! the coefficient matrix ([`det`]). Around that core:
//!
//! * [`ngon`]: the closed form for regular polygons, its `e^{L n^2}`
//!   growth, the sandwich bounds and the integral identities behind them.
//! * [`fourpoint`]: the distance polynomial for `Re(64 D prod r)`, the
//!   Crelle triangle and the margins of the four-point inequalities.
//! * [`harness`]: seeded samplers and parallel Monte Carlo suites with
//!   bit-exact counterexample records.
//! * [`cli`]: the `atiyah-lab` command.
//!
//! ```
//! use atiyah_lab::{atiyah_determinant, Point3};
//!
//! let h = 3f64.sqrt() / 2.0;
//! let tri = [Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 0.0, 0.0), Point3::new(0.5, h, 0.0)];
//! let d = atiyah_determinant(&tri).unwrap();
//! assert!((d.abs() - 1.125).abs() < 1e-12);
//! ```

pub mod cli;
pub mod consts;
pub mod det;
pub mod error;
pub mod fourpoint;
pub mod geom;
pub mod harness;
pub mod linalg;
pub mod ngon;
pub mod poly;
pub mod quad;
pub mod spinor;

pub use det::{atiyah_determinant, AtiyahResult};
pub use error::{Error, Result};
pub use geom::{FourPointMetrics, Point3, TriangleSides};
pub use spinor::{hopf_pair, reverse_pair, SpinorPair};
