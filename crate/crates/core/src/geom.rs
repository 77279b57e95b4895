//! Euclidean primitives: points, triangle quantities, tetrahedron volume,
//! similitudes and planar quadrilateral classification.
//!
//! Tolerances are scale-relative: a homogeneous quantity of degree `k` is
//! treated as zero when its magnitude is at most `ZERO_TOL * scale^k`, where
//! `scale` is the largest pairwise distance involved.

use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::real_determinant;

/// Relative tolerance for "is this homogeneous quantity zero".
pub const ZERO_TOL: f64 = 1e-9;

/// Minimum pairwise distance, relative to the largest one, for points to
/// count as distinct.
pub const SEPARATION_FLOOR: f64 = 1e-9;

/// A point (or vector) of R^3. Serialized as `[x, y, z]`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn dot(self, other: Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Point3) -> Point3 {
        Point3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(c: [f64; 3]) -> Self {
        Point3::new(c[0], c[1], c[2])
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        p.to_array()
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Point3> for f64 {
    type Output = Point3;
    fn mul(self, p: Point3) -> Point3 {
        Point3::new(self * p.x, self * p.y, self * p.z)
    }
}

pub fn distance(p: Point3, q: Point3) -> f64 {
    (p - q).norm()
}

/// `(a+b-c)(a+c-b)(b+c-a)`; positive exactly for nondegenerate side triples.
///
/// Arguments are sorted first so the result does not depend on their order.
pub fn d3(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(f64::total_cmp);
    let [a, b, c] = s;
    (a + b - c) * (a + c - b) * (b + c - a)
}

/// Largest pairwise distance of a point set (0 for fewer than two points).
pub fn max_pairwise_distance(pts: &[Point3]) -> f64 {
    let mut m = 0.0_f64;
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            m = m.max(distance(p, q));
        }
    }
    m
}

/// Fails with [`Error::CoincidentPoints`] unless every pairwise distance is
/// at least `SEPARATION_FLOOR` times the largest one.
pub fn check_distinct(pts: &[Point3]) -> Result<()> {
    if let Some(bad) = pts.iter().position(|p| !p.is_finite()) {
        return Err(Error::invalid(format!("point {bad} has a non-finite coordinate")));
    }
    let floor = SEPARATION_FLOOR * max_pairwise_distance(pts);
    for (i, &p) in pts.iter().enumerate() {
        for (j, &q) in pts.iter().enumerate().skip(i + 1) {
            let d = distance(p, q);
            if d <= floor || d == 0.0 {
                return Err(Error::CoincidentPoints { i, j, distance: d });
            }
        }
    }
    Ok(())
}

/// Side lengths of a (possibly degenerate) triangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleSides {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TriangleSides {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("side {name} = {v} is not a positive finite length")));
            }
        }
        Ok(TriangleSides { a, b, c })
    }

    pub fn from_points(p: Point3, q: Point3, r: Point3) -> Result<Self> {
        // side a is opposite p
        Self::new(distance(q, r), distance(p, r), distance(p, q))
    }

    fn scale(&self) -> f64 {
        self.a.max(self.b).max(self.c)
    }

    pub fn d3(&self) -> f64 {
        d3(self.a, self.b, self.c)
    }

    /// `(a + b - c) / c` for the sides sorted so that `c` is largest: how far
    /// the longest side is from the sum of the other two.
    pub fn defect(&self) -> f64 {
        let mut s = [self.a, self.b, self.c];
        s.sort_by(f64::total_cmp);
        (s[0] + s[1] - s[2]) / s[2]
    }

    /// Zero area within tolerance (the collinear limit).
    pub fn is_degenerate(&self) -> bool {
        self.defect().abs() <= ZERO_TOL
    }

    /// The triangle inequalities hold, up to tolerance.
    pub fn is_realizable(&self) -> bool {
        self.d3() >= -ZERO_TOL * self.scale().powi(3)
    }

    /// Area from Heron's formula `16 S^2 = d3(a,b,c)(a+b+c)`, clamped at 0.
    pub fn area(&self) -> f64 {
        let perimeter = self.a + self.b + self.c;
        (self.d3().max(0.0) * perimeter).sqrt() / 4.0
    }
}

/// `d3(a,b,c) / (2abc)`, which equals `cos A + cos B + cos C - 1` and the
/// ratio of inradius to circumradius.
pub fn delta(t: &TriangleSides) -> f64 {
    t.d3() / (2.0 * t.a * t.b * t.c)
}

/// Angles opposite `a`, `b`, `c`, in radians.
///
/// Each angle is `atan2(4S, b^2 + c^2 - a^2)` with `4S` from Heron's
/// formula, so degenerate triangles give the limiting angles `(0, 0, pi)`.
pub fn triangle_angles(t: &TriangleSides) -> Result<(f64, f64, f64)> {
    if !t.is_realizable() {
        return Err(Error::invalid(format!(
            "sides ({}, {}, {}) violate the triangle inequality",
            t.a, t.b, t.c
        )));
    }
    let four_area = (t.d3().max(0.0) * (t.a + t.b + t.c)).sqrt();
    let (a2, b2, c2) = (t.a * t.a, t.b * t.b, t.c * t.c);
    Ok((
        four_area.atan2(b2 + c2 - a2),
        four_area.atan2(a2 + c2 - b2),
        four_area.atan2(a2 + b2 - c2),
    ))
}

/// Circumradius `abc / 4S` and inradius `2S / (a+b+c)`.
pub fn circum_in_radii(t: &TriangleSides) -> Result<(f64, f64)> {
    if t.is_degenerate() || !t.is_realizable() {
        return Err(Error::Degenerate(format!(
            "triangle ({}, {}, {}) has no circumcircle",
            t.a, t.b, t.c
        )));
    }
    let s = t.area();
    Ok((t.a * t.b * t.c / (4.0 * s), 2.0 * s / (t.a + t.b + t.c)))
}

/// Pairwise distances of four points, indexed 0..4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourPointMetrics {
    r: [[f64; 4]; 4],
}

impl FourPointMetrics {
    pub fn from_points(pts: &[Point3; 4]) -> Result<Self> {
        check_distinct(pts)?;
        let mut r = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                r[i][j] = distance(pts[i], pts[j]);
            }
        }
        Ok(FourPointMetrics { r })
    }

    /// Builds metrics from the six distances `[r01, r02, r03, r12, r13, r23]`,
    /// rejecting tables that no tetrahedron in R^3 realizes.
    pub fn from_distances(d: [f64; 6]) -> Result<Self> {
        if let Some(v) = d.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::invalid(format!("distance {v} is not positive and finite")));
        }
        let mut r = [[0.0; 4]; 4];
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                r[i][j] = d[k];
                r[j][i] = d[k];
                k += 1;
            }
        }
        let m = FourPointMetrics { r };
        for l in 0..4 {
            if !m.face(l).is_realizable() {
                return Err(Error::NonRealizable { value: m.face(l).d3() });
            }
        }
        cayley_menger_vsq(&m)?;
        Ok(m)
    }

    /// Distance between points `i` and `j` (0-based).
    pub fn r(&self, i: usize, j: usize) -> f64 {
        self.r[i][j]
    }

    pub fn scale(&self) -> f64 {
        self.r.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// Product of the six pairwise distances.
    pub fn product(&self) -> f64 {
        let mut p = 1.0;
        for i in 0..4 {
            for j in i + 1..4 {
                p *= self.r[i][j];
            }
        }
        p
    }

    /// The face opposite vertex `l`, with side `a` opposite its lowest
    /// remaining index.
    pub fn face(&self, l: usize) -> TriangleSides {
        let [i, j, k] = others(l);
        TriangleSides { a: self.r[j][k], b: self.r[i][k], c: self.r[i][j] }
    }

    /// The metrics seen after relabeling point `i` as `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let mut r = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                r[i][j] = self.r[perm[i]][perm[j]];
            }
        }
        FourPointMetrics { r }
    }
}

/// The three indices of `{0,1,2,3}` other than `l`, in increasing order.
pub fn others(l: usize) -> [usize; 3] {
    match l {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        3 => [0, 1, 2],
        _ => panic!("vertex index {l} out of range"),
    }
}

/// Squared volume of the tetrahedron with the given edge lengths, from the
/// Cayley-Menger determinant `288 V^2 = det(CM)`.
///
/// Values within `ZERO_TOL * scale^6` below zero are clamped to 0.
pub fn cayley_menger_vsq(m: &FourPointMetrics) -> Result<f64> {
    let mut cm = vec![0.0; 25];
    for i in 0..5 {
        for j in 0..5 {
            cm[i * 5 + j] = match (i, j) {
                (0, 0) => 0.0,
                (0, _) | (_, 0) => 1.0,
                _ => m.r(i - 1, j - 1).powi(2),
            };
        }
    }
    let det = real_determinant(cm, 5);
    if det < 0.0 {
        if det < -ZERO_TOL * m.scale().powi(6) {
            return Err(Error::NonRealizable { value: det });
        }
        return Ok(0.0);
    }
    Ok(det / 288.0)
}

/// A map `p -> scale * rotation * p + translation` with `rotation`
/// orthogonal (possibly orientation reversing).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Similitude {
    scale: f64,
    rotation: [[f64; 3]; 3],
    translation: Point3,
}

impl Similitude {
    pub fn new(scale: f64, rotation: [[f64; 3]; 3], translation: Point3) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::invalid(format!("similitude scale {scale} must be positive")));
        }
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| rotation[k][i] * rotation[k][j]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                if (dot - expected).abs() > 1e-12 {
                    return Err(Error::invalid("rotation part is not orthogonal"));
                }
            }
        }
        Ok(Similitude { scale, rotation, translation })
    }

    pub fn identity() -> Self {
        Similitude {
            scale: 1.0,
            rotation: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            translation: Point3::ORIGIN,
        }
    }

    pub fn scaling(scale: f64) -> Result<Self> {
        Self::new(scale, Self::identity().rotation, Point3::ORIGIN)
    }

    /// Rotation matrix of the unit quaternion `(w, x, y, z)` (normalized here).
    pub fn rotation_from_quaternion(q: [f64; 4]) -> [[f64; 3]; 3] {
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        let [w, x, y, z] = q.map(|v| v / n);
        [
            [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
            [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
            [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
        ]
    }

    /// Reflection through the plane with the given normal through the origin.
    pub fn reflection(normal: Point3) -> Result<Self> {
        let n = normal.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::invalid("reflection normal must be a nonzero vector"));
        }
        let u = (1.0 / n) * normal;
        let u = u.to_array();
        let mut rot = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                rot[i][j] = if i == j { 1.0 } else { 0.0 } - 2.0 * u[i] * u[j];
            }
        }
        // Householder matrices are orthogonal up to rounding only.
        Ok(Similitude { scale: 1.0, rotation: rot, translation: Point3::ORIGIN })
    }

    /// Random similitude: Haar rotation, log-uniform scale in `[0.1, 10]`,
    /// translation in `[-10, 10]^3`, composed with a reflection when
    /// `reverse_orientation` is set.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, reverse_orientation: bool) -> Self {
        let mut rotation = Self::random_rotation(rng).rotation;
        if reverse_orientation {
            for row in &mut rotation {
                row[2] = -row[2];
            }
        }
        let scale = 10f64.powf(rng.random_range(-1.0..1.0));
        let translation = Point3::new(
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
        );
        Similitude { scale, rotation, translation }
    }

    /// Haar-random rotation about the origin, no scaling or translation.
    pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let q = loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let n2: f64 = q.iter().map(|v| v * v).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                break q;
            }
        };
        Similitude { scale: 1.0, rotation: Self::rotation_from_quaternion(q), translation: Point3::ORIGIN }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// +1 for orientation preserving, -1 for reversing.
    pub fn orientation(&self) -> i8 {
        let m: Vec<f64> = self.rotation.iter().flatten().copied().collect();
        if real_determinant(m, 3) > 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        let v = p.to_array();
        let rot = |row: &[f64; 3]| row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
        Point3::new(
            self.scale * rot(&self.rotation[0]) + self.translation.x,
            self.scale * rot(&self.rotation[1]) + self.translation.y,
            self.scale * rot(&self.rotation[2]) + self.translation.z,
        )
    }
}

pub fn apply_similitude(s: &Similitude, pts: &[Point3]) -> Vec<Point3> {
    pts.iter().map(|&p| s.apply(p)).collect()
}

/// Shape of a four-point configuration taken in the cyclic order 0,1,2,3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadShape {
    /// Coplanar, and the cycle 0-1-2-3 bounds a convex quadrilateral.
    Convex,
    /// Coplanar, with point `interior` inside the triangle of the others.
    Reflex { interior: usize },
    /// Coplanar in convex position, but the cycle 0-1-2-3 crosses itself.
    SelfIntersecting,
    NonCoplanar,
    /// Coplanar with three of the points collinear.
    Degenerate,
}

/// Coplanar points of `pts` expressed in an orthonormal frame of their plane.
pub(crate) fn planar_coordinates(pts: &[Point3; 4]) -> [[f64; 2]; 4] {
    // normal of the largest-area triangle
    let mut normal = Point3::ORIGIN;
    for l in 0..4 {
        let [i, j, k] = others(l);
        let n = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        if n.norm() > normal.norm() {
            normal = n;
        }
    }
    let normal = (1.0 / normal.norm()) * normal;
    let helper = if normal.x.abs() < 0.9 { Point3::new(1.0, 0.0, 0.0) } else { Point3::new(0.0, 1.0, 0.0) };
    let e1 = normal.cross(helper);
    let e1 = (1.0 / e1.norm()) * e1;
    let e2 = normal.cross(e1);
    pts.map(|p| {
        let v = p - pts[0];
        [v.dot(e1), v.dot(e2)]
    })
}

fn cross2(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

pub fn classify_quadrilateral(pts: &[Point3; 4]) -> Result<QuadShape> {
    check_distinct(pts)?;
    let scale = max_pairwise_distance(pts);
    let triple = (pts[1] - pts[0]).dot((pts[2] - pts[0]).cross(pts[3] - pts[0]));
    if triple.abs() > ZERO_TOL * scale.powi(3) {
        return Ok(QuadShape::NonCoplanar);
    }
    let q = planar_coordinates(pts);
    let tol = ZERO_TOL * scale * scale;
    let turns: [f64; 4] = std::array::from_fn(|i| cross2(q[i], q[(i + 1) % 4], q[(i + 2) % 4]));
    if turns.iter().any(|t| t.abs() <= tol) {
        return Ok(QuadShape::Degenerate);
    }
    if turns.iter().all(|&t| t > 0.0) || turns.iter().all(|&t| t < 0.0) {
        return Ok(QuadShape::Convex);
    }
    for l in 0..4 {
        let [i, j, k] = others(l);
        let s1 = cross2(q[i], q[j], q[l]);
        let s2 = cross2(q[j], q[k], q[l]);
        let s3 = cross2(q[k], q[i], q[l]);
        if (s1 > 0.0 && s2 > 0.0 && s3 > 0.0) || (s1 < 0.0 && s2 < 0.0 && s3 < 0.0) {
            return Ok(QuadShape::Reflex { interior: l });
        }
    }
    Ok(QuadShape::SelfIntersecting)
}
