use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{check_distinct, classify_quadrilateral, delta, Point3, QuadShape, Similitude, TriangleSides};
use crate::ngon::ngon_points;

/// Minimum pairwise separation of sampled points.
pub const MIN_SEPARATION: f64 = 1e-3;
/// Rejection attempts per trial before giving up.
pub const MAX_ATTEMPTS: usize = 1000;
/// Largest configuration any sampler produces.
pub const MAX_SAMPLE_POINTS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplerKind {
    /// i.i.d. uniform points in the unit ball.
    General3d { n: usize },
    /// Uniform points in a unit disk lying in a random plane.
    Coplanar { n: usize },
    /// Four points on a random ellipse in cyclic order.
    ConvexQuad,
    /// Four points on a circle in cyclic order.
    CyclicQuad,
    /// A triangle plus one point strictly inside it, at a random position.
    InteriorPointQuad,
    Collinear { n: usize },
    /// Regular n-gon under a random similitude.
    Ngon { n: usize },
    /// `general3d` with points 0 and 1 pulled to `MIN_SEPARATION / severity`.
    NearDegenerate { n: usize, severity: f64 },
    /// Five angles in the region where the trigonometric sum is claimed to be at least 3.
    TechnicalRegion,
    /// Alternate vertices of a random box: opposite edges are equal.
    IsoscelesTetra,
}

impl SamplerKind {
    /// Number of points produced, `None` for angle samplers.
    pub fn point_count(&self) -> Option<usize> {
        match *self {
            SamplerKind::General3d { n }
            | SamplerKind::Coplanar { n }
            | SamplerKind::Collinear { n }
            | SamplerKind::Ngon { n }
            | SamplerKind::NearDegenerate { n, .. } => Some(n),
            SamplerKind::ConvexQuad
            | SamplerKind::CyclicQuad
            | SamplerKind::InteriorPointQuad
            | SamplerKind::IsoscelesTetra => Some(4),
            SamplerKind::TechnicalRegion => None,
        }
    }

    /// All sampled points lie in one plane.
    pub fn is_coplanar(&self) -> bool {
        matches!(
            self,
            SamplerKind::Coplanar { .. }
                | SamplerKind::ConvexQuad
                | SamplerKind::CyclicQuad
                | SamplerKind::InteriorPointQuad
                | SamplerKind::Collinear { .. }
                | SamplerKind::Ngon { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.point_count() {
            if !(2..=MAX_SAMPLE_POINTS).contains(&n) {
                return Err(Error::invalid(format!("sampler needs 2 <= n <= {MAX_SAMPLE_POINTS}, got {n}")));
            }
        }
        if let SamplerKind::NearDegenerate { severity, .. } = *self {
            if !(severity.is_finite() && severity >= 1.0) {
                return Err(Error::invalid(format!("severity must be a finite number >= 1, got {severity}")));
            }
        }
        Ok(())
    }

    fn label(&self) -> String {
        serde_json::to_string(self).unwrap_or_else(|_| format!("{self:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Configuration {
    Points(Vec<Point3>),
    /// `(u, w, x, y, z)`.
    Angles([f64; 5]),
}

impl Configuration {
    pub fn points(&self) -> Option<&[Point3]> {
        match self {
            Configuration::Points(p) => Some(p),
            Configuration::Angles(_) => None,
        }
    }
}

/// Independent stream for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Deterministic configuration for trial `index` of a run seeded with `seed`.
pub fn sample(kind: &SamplerKind, seed: u64, index: u64) -> Result<Configuration> {
    kind.validate()?;
    let rng = &mut trial_rng(seed, index);
    let config = match *kind {
        SamplerKind::General3d { n } => Configuration::Points(retry(kind, rng, |r| general(r, n))?),
        SamplerKind::Coplanar { n } => Configuration::Points(retry(kind, rng, |r| coplanar(r, n))?),
        SamplerKind::ConvexQuad => Configuration::Points(retry(kind, rng, convex_quad)?),
        SamplerKind::CyclicQuad => Configuration::Points(retry(kind, rng, cyclic_quad)?),
        SamplerKind::InteriorPointQuad => Configuration::Points(retry(kind, rng, interior_point_quad)?),
        SamplerKind::Collinear { n } => Configuration::Points(retry(kind, rng, |r| collinear(r, n))?),
        SamplerKind::Ngon { n } => {
            let s = Similitude::random(rng, false);
            Configuration::Points(ngon_points(n)?.into_iter().map(|p| s.apply(p)).collect())
        }
        SamplerKind::NearDegenerate { n, severity } => {
            Configuration::Points(retry(kind, rng, |r| near_degenerate(r, n, severity))?)
        }
        SamplerKind::TechnicalRegion => Configuration::Angles(technical_region(rng)),
        SamplerKind::IsoscelesTetra => Configuration::Points(isosceles(rng)),
    };
    Ok(config)
}

fn retry<T>(kind: &SamplerKind, rng: &mut ChaCha8Rng, mut f: impl FnMut(&mut ChaCha8Rng) -> Option<T>) -> Result<T> {
    for _ in 0..MAX_ATTEMPTS {
        if let Some(v) = f(rng) {
            return Ok(v);
        }
    }
    Err(Error::SamplerExhausted { kind: kind.label(), attempts: MAX_ATTEMPTS })
}

fn separated(pts: &[Point3]) -> bool {
    pts.iter()
        .enumerate()
        .all(|(i, &p)| pts[i + 1..].iter().all(|&q| (p - q).norm() >= MIN_SEPARATION))
}

fn in_unit_ball(rng: &mut ChaCha8Rng) -> Point3 {
    loop {
        let p = Point3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if p.dot(p) <= 1.0 {
            return p;
        }
    }
}

fn in_unit_disk(rng: &mut ChaCha8Rng) -> [f64; 2] {
    loop {
        let (x, y): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if x * x + y * y <= 1.0 {
            return [x, y];
        }
    }
}

fn unit_vector(rng: &mut ChaCha8Rng) -> Point3 {
    loop {
        let p = in_unit_ball(rng);
        let r = p.norm();
        if r > 1e-3 {
            return (1.0 / r) * p;
        }
    }
}

/// Planar points placed in a random plane through the origin.
fn embed(rng: &mut ChaCha8Rng, planar: &[[f64; 2]]) -> Vec<Point3> {
    let rot = Similitude::random_rotation(rng);
    planar.iter().map(|&[x, y]| rot.apply(Point3::new(x, y, 0.0))).collect()
}

fn exponential(rng: &mut ChaCha8Rng) -> f64 {
    -(1.0 - rng.random::<f64>()).ln()
}

fn sorted_angles(rng: &mut ChaCha8Rng) -> [f64; 4] {
    let mut t: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.0..2.0 * PI));
    t.sort_by(f64::total_cmp);
    t
}

fn general(rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<Point3>> {
    let pts: Vec<Point3> = (0..n).map(|_| in_unit_ball(rng)).collect();
    separated(&pts).then_some(pts)
}

fn coplanar(rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<Point3>> {
    let planar: Vec<[f64; 2]> = (0..n).map(|_| in_unit_disk(rng)).collect();
    let pts = embed(rng, &planar);
    separated(&pts).then_some(pts)
}

fn convex_quad(rng: &mut ChaCha8Rng) -> Option<Vec<Point3>> {
    let t = sorted_angles(rng);
    // R(a) diag(1, s) R(b) with s >= 0.1 keeps the condition number <= 10
    let (a, b, s) = (rng.random_range(0.0..PI), rng.random_range(0.0..PI), rng.random_range(0.1..1.0));
    let (ca, sa, cb, sb) = (a.cos(), a.sin(), b.cos(), b.sin());
    let planar: Vec<[f64; 2]> = t
        .iter()
        .map(|&th| {
            let (x, y) = (cb * th.cos() - sb * th.sin(), sb * th.cos() + cb * th.sin());
            let y = s * y;
            [ca * x - sa * y, sa * x + ca * y]
        })
        .collect();
    let pts = embed(rng, &planar);
    let quad: [Point3; 4] = pts.clone().try_into().ok()?;
    (separated(&pts) && classify_quadrilateral(&quad).ok()? == QuadShape::Convex).then_some(pts)
}

fn cyclic_quad(rng: &mut ChaCha8Rng) -> Option<Vec<Point3>> {
    let planar: Vec<[f64; 2]> = sorted_angles(rng).iter().map(|t| [t.cos(), t.sin()]).collect();
    let pts = embed(rng, &planar);
    separated(&pts).then_some(pts)
}

fn interior_point_quad(rng: &mut ChaCha8Rng) -> Option<Vec<Point3>> {
    let tri: [[f64; 2]; 3] = std::array::from_fn(|_| in_unit_disk(rng));
    let side = |i: usize, j: usize| (tri[i][0] - tri[j][0]).hypot(tri[i][1] - tri[j][1]);
    let sides = TriangleSides::new(side(1, 2), side(0, 2), side(0, 1)).ok()?;
    if delta(&sides) < 1e-3 {
        return None;
    }
    let e: [f64; 3] = std::array::from_fn(|_| exponential(rng));
    let total: f64 = e.iter().sum();
    let w = e.map(|v| v / total);
    if w.iter().any(|&v| v < 1e-3) {
        return None;
    }
    let inner = [0, 1].map(|k| w[0] * tri[0][k] + w[1] * tri[1][k] + w[2] * tri[2][k]);
    let mut planar = tri.to_vec();
    planar.insert(rng.random_range(0..4), inner);
    let pts = embed(rng, &planar);
    let quad: [Point3; 4] = pts.clone().try_into().ok()?;
    let reflex = matches!(classify_quadrilateral(&quad).ok()?, QuadShape::Reflex { .. });
    (separated(&pts) && reflex).then_some(pts)
}

fn collinear(rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<Point3>> {
    let dir = unit_vector(rng);
    let base = 0.5 * in_unit_ball(rng);
    let mut t: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    t.sort_by(f64::total_cmp);
    let pts: Vec<Point3> = t.iter().map(|&s| base + s * dir).collect();
    separated(&pts).then_some(pts)
}

fn near_degenerate(rng: &mut ChaCha8Rng, n: usize, severity: f64) -> Option<Vec<Point3>> {
    let mut pts = general(rng, n)?;
    let gap = pts[1] - pts[0];
    pts[1] = pts[0] + (MIN_SEPARATION / severity / gap.norm()) * gap;
    check_distinct(&pts).ok().map(|_| pts)
}

fn technical_region(rng: &mut ChaCha8Rng) -> [f64; 5] {
    // uniform on the simplex u + x + y + z <= pi via normalized exponentials
    let e: [f64; 5] = std::array::from_fn(|_| exponential(rng));
    let total: f64 = e.iter().sum();
    let [u, x, y, z] = [0, 1, 2, 3].map(|k| PI * e[k] / total);
    let w_max = z.min(PI - x).min(2.0 * PI - u - x - y - z);
    let w = rng.random_range(0.0..=w_max);
    [u, w, x, y, z]
}

fn isosceles(rng: &mut ChaCha8Rng) -> Vec<Point3> {
    let [p, q, r] = [0; 3].map(|_| rng.random_range(0.3..1.0));
    let center = Point3::new(p / 2.0, q / 2.0, r / 2.0);
    let rot = Similitude::random_rotation(rng);
    [Point3::new(0.0, 0.0, 0.0), Point3::new(p, q, 0.0), Point3::new(p, 0.0, r), Point3::new(0.0, q, r)]
        .iter()
        .map(|&v| rot.apply(v - center))
        .collect()
}
