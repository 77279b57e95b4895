//! Four-point toolkit: the distance polynomial for `Re(64 D prod r)`, the
//! Crelle triangle, the face-angle table and the margins of every
//! inequality studied for quadrilaterals and tetrahedra.
//!
//! Points are indexed `0..4`. `alpha[i][j]` is the angle at `x_i` in the
//! face that omits `x_j`. Face triangles may be flat (collinear points),
//! in which case their angles are the limits `0, 0, pi`.
//!
//! Every margin is returned signed (`lhs - rhs`) and never clamped.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::det::atiyah_determinant;
use crate::error::{Error, Result};
use crate::geom::{
    cayley_menger_vsq, classify_quadrilateral, d3, delta, max_pairwise_distance, others, triangle_angles, FourPointMetrics, Point3,
    QuadShape, TriangleSides, ZERO_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleTable {
    /// Angle at vertex `i` of the face opposite vertex `j`; the diagonal is 0.
    pub alpha: [[f64; 4]; 4],
}

impl AngleTable {
    /// `sum_{i != l} cos alpha[l][i]`: cosines of the three face angles at `x_l`.
    pub fn vertex_cos_sum(&self, l: usize) -> f64 {
        others(l).iter().map(|&i| self.alpha[l][i].cos()).sum()
    }

    /// `sum_{i != l} cos alpha[i][l]`: cosines of the angles of the face opposite `x_l`.
    pub fn face_cos_sum(&self, l: usize) -> f64 {
        others(l).iter().map(|&i| self.alpha[i][l].cos()).sum()
    }
}

pub fn angle_table(m: &FourPointMetrics) -> Result<AngleTable> {
    let mut alpha = [[0.0; 4]; 4];
    for j in 0..4 {
        let [p, q, s] = others(j);
        let (a, b, c) = triangle_angles(&m.face(j))
            .map_err(|e| Error::Degenerate(format!("face opposite vertex {j}: {e}")))?;
        alpha[p][j] = a;
        alpha[q][j] = b;
        alpha[s][j] = c;
    }
    Ok(AngleTable { alpha })
}

/// All 24 permutations of `{0, 1, 2, 3}`.
fn permutations() -> impl Iterator<Item = [usize; 4]> {
    (0..4).flat_map(|a| {
        (0..4).flat_map(move |b| {
            (0..4).flat_map(move |c| (0..4).map(move |d| [a, b, c, d]))
        })
    })
    .filter(|p| {
        let mut seen = [false; 4];
        p.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    })
}

/// `r14 ((r24 + r34)^2 - r23^2) d3(r12, r13, r23)` in 1-based labels.
fn av_summand(m: &FourPointMetrics) -> f64 {
    let r = |i, j| m.r(i, j);
    r(0, 3) * ((r(1, 3) + r(2, 3)).powi(2) - r(1, 2).powi(2)) * d3(r(0, 1), r(0, 2), r(1, 2))
}

/// `12 av(...)`: the symmetrized term of the distance polynomial, averaged
/// literally over the 24 relabelings.
pub fn en_av_term(m: &FourPointMetrics) -> f64 {
    let sum: f64 = permutations().map(|p| av_summand(&m.permuted(p))).sum();
    12.0 * sum / 24.0
}

/// Side lengths `(r12 r34, r13 r24, r14 r23)` of the Crelle triangle.
pub fn crelle_sides(m: &FourPointMetrics) -> [f64; 3] {
    [m.r(0, 1) * m.r(2, 3), m.r(0, 2) * m.r(1, 3), m.r(0, 3) * m.r(1, 2)]
}

/// `64 prod r - 4 d3(crelle sides) + 12 av(...) + 288 V^2`, the real part
/// of `64 D prod r`.
pub fn en_real_part(m: &FourPointMetrics, vsq: f64) -> f64 {
    let [a, b, c] = crelle_sides(m);
    64.0 * m.product() - 4.0 * d3(a, b, c) + en_av_term(m) + 288.0 * vsq
}

/// Left-hand side of the angle inequality:
/// `sum_l (3 + vertex_cos_sum(l)) (face_cos_sum(l) - 1)`.
pub fn formula_lhs(t: &AngleTable) -> f64 {
    (0..4).map(|l| (3.0 + t.vertex_cos_sum(l)) * (t.face_cos_sum(l) - 1.0)).sum()
}

/// The `12 av(...)` term written through the face angles:
/// `4 (prod r) sum_l (3 + vertex_cos_sum(l)) (face_cos_sum(l) - 1)`.
pub fn en_real_part_angles(m: &FourPointMetrics) -> Result<f64> {
    Ok(4.0 * m.product() * formula_lhs(&angle_table(m)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrelleTriangle {
    pub sides: [f64; 3],
    /// Angles opposite each side; `None` when the triangle is degenerate.
    pub angles: Option<[f64; 3]>,
    pub delta: f64,
    pub degenerate: bool,
    pub area: f64,
}

pub fn crelle_triangle(m: &FourPointMetrics) -> CrelleTriangle {
    let sides = crelle_sides(m);
    // products of positive distances are positive
    let t = TriangleSides { a: sides[0], b: sides[1], c: sides[2] };
    let degenerate = t.is_degenerate();
    let angles = if degenerate { None } else { triangle_angles(&t).ok().map(|(a, b, c)| [a, b, c]) };
    CrelleTriangle {
        sides,
        angles,
        delta: if degenerate { 0.0 } else { delta(&t) },
        degenerate,
        area: t.area(),
    }
}

/// Circumradius of a non-degenerate tetrahedron.
pub fn tetra_circumradius(pts: &[Point3; 4]) -> Result<f64> {
    let (a, b, c) = (pts[1] - pts[0], pts[2] - pts[0], pts[3] - pts[0]);
    let triple = a.dot(b.cross(c));
    let scale = max_pairwise_distance(pts);
    if triple.abs() <= ZERO_TOL * scale.powi(3) {
        return Err(Error::Degenerate("coplanar points have no circumsphere".into()));
    }
    let center = (1.0 / (2.0 * triple)) * (a.dot(a) * b.cross(c) + b.dot(b) * c.cross(a) + c.dot(c) * a.cross(b));
    Ok(center.norm())
}

/// Relative residual of `S = 6 V R`, with `S` the Crelle triangle area, `V`
/// the volume and `R` the circumradius.
pub fn crelle_volume_residual(pts: &[Point3; 4]) -> Result<f64> {
    let m = FourPointMetrics::from_points(pts)?;
    let radius = tetra_circumradius(pts)?;
    let (a, b, c) = (pts[1] - pts[0], pts[2] - pts[0], pts[3] - pts[0]);
    let six_v = a.dot(b.cross(c)).abs();
    let s = crelle_triangle(&m).area;
    Ok((s - six_v * radius).abs() / s)
}

/// Which case of the coplanar angle formulas applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoplanarCase {
    Convex,
    InteriorPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoplanarCrelleAngles {
    pub case: CoplanarCase,
    /// `labels[i]` is the original index of the point used as `x_i`.
    pub labels: [usize; 4],
    pub angles: [f64; 3],
}

/// Crelle angles of coplanar points from face angles alone.
///
/// Convex `x0 x1 x2 x3` with `alpha[0][2] + alpha[2][0] <= pi` gives
/// `alpha[1][2] - alpha[2][1]`, `alpha[1][0] - alpha[0][1]`,
/// `alpha[0][2] + alpha[2][0]`; otherwise the labels are first rotated by
/// one. With `x3` inside triangle `x0 x1 x2` the angles are
/// `alpha[i][j] + alpha[j][i]` over the pairs of `{0, 1, 2}`; the interior
/// point is relabeled to `x3` first.
pub fn crelle_angles_coplanar(pts: &[Point3; 4]) -> Result<CoplanarCrelleAngles> {
    let shape = classify_quadrilateral(pts)?;
    let base = FourPointMetrics::from_points(pts)?;
    match shape {
        QuadShape::Convex => {
            let mut labels = [0, 1, 2, 3];
            let mut t = angle_table(&base)?;
            if t.alpha[0][2] + t.alpha[2][0] > PI {
                labels = [1, 2, 3, 0];
                t = angle_table(&base.permuted(labels))?;
            }
            let a = t.alpha;
            Ok(CoplanarCrelleAngles {
                case: CoplanarCase::Convex,
                labels,
                angles: [a[1][2] - a[2][1], a[1][0] - a[0][1], a[0][2] + a[2][0]],
            })
        }
        QuadShape::Reflex { interior } => {
            let mut labels = [0, 1, 2, 3];
            labels.swap(interior, 3);
            let a = angle_table(&base.permuted(labels))?.alpha;
            Ok(CoplanarCrelleAngles {
                case: CoplanarCase::InteriorPoint,
                labels,
                angles: [a[0][1] + a[1][0], a[0][2] + a[2][0], a[1][2] + a[2][1]],
            })
        }
        other => Err(Error::invalid(format!(
            "coplanar Crelle angles need a convex quadrilateral or an interior point, got {other:?}"
        ))),
    }
}

/// Relative difference between `d3(crelle sides)` and
/// `2 (cos A + cos B + cos C - 1) prod r`; `None` for a degenerate Crelle
/// triangle, where both sides vanish.
pub fn assoc_identity_check(m: &FourPointMetrics) -> Option<f64> {
    let crelle = crelle_triangle(m);
    let angles = crelle.angles?;
    let [a, b, c] = crelle.sides;
    let lhs = d3(a, b, c);
    let rhs = 2.0 * (angles.iter().map(|x| x.cos()).sum::<f64>() - 1.0) * m.product();
    Some((lhs - rhs).abs() / lhs.abs().max(rhs.abs()))
}

/// `delta` of the four faces, indexed by the omitted vertex.
pub fn face_deltas(m: &FourPointMetrics) -> [f64; 4] {
    std::array::from_fn(|l| delta(&m.face(l)))
}

/// Angle inequality margin: `formula_lhs - 2 delta(Crelle)`. For coplanar
/// points its sign decides `|D| >= 1`.
pub fn conj2_margin_formula(m: &FourPointMetrics) -> Result<f64> {
    Ok(formula_lhs(&angle_table(m)?) - 2.0 * crelle_triangle(m).delta)
}

/// `sum of face deltas - delta(Crelle)`.
pub fn conj4_margin(m: &FourPointMetrics) -> f64 {
    face_deltas(m).iter().sum::<f64>() - crelle_triangle(m).delta
}

/// `formula_lhs - 2 (sum of face deltas)`.
pub fn conj5_margin(m: &FourPointMetrics) -> Result<f64> {
    Ok(formula_lhs(&angle_table(m)?) - 2.0 * face_deltas(m).iter().sum::<f64>())
}

/// Five-angle trigonometric sum; at least 3 on the region described by
/// [`in_technical_domain`].
pub fn technical_f(u: f64, w: f64, x: f64, y: f64, z: f64) -> f64 {
    u.cos() + w.cos() + x.cos() + y.cos() + z.cos() - (u + y + z).cos() - (x + y + z).cos()
        + (-w + y + z).cos()
        + (u + w).cos()
        + (x + y).cos()
        - (u + y).cos()
        - (w + x).cos()
        + (u + x + y + z).cos()
        - (-w + z).cos()
        - (u + w + x + y).cos()
}

/// `u, w, x, y, z >= 0`, `w <= z`, `x + w <= pi`, `u + w + x + y + z <= 2 pi`,
/// `u + x + y + z <= pi`, `u + y + z <= pi`, each up to `tol`.
pub fn in_technical_domain(v: [f64; 5], tol: f64) -> bool {
    let [u, w, x, y, z] = v;
    v.iter().all(|&a| a >= -tol)
        && w <= z + tol
        && x + w <= PI + tol
        && u + w + x + y + z <= 2.0 * PI + tol
        && u + x + y + z <= PI + tol
        && u + y + z <= PI + tol
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IneqTwo {
    /// `3 + cos a + cos b + cos(a + b) - 2`.
    pub margin: f64,
    /// `|1 + cos a + cos b + cos(a+b) - 4 cos(a/2) cos(b/2) cos((a+b)/2)|`.
    pub identity_residual: f64,
}

pub fn ineq_two_margin(alpha: f64, beta: f64) -> Result<IneqTwo> {
    const TOL: f64 = 1e-12;
    if !(alpha >= -TOL && beta >= -TOL && alpha + beta <= PI + TOL) {
        return Err(Error::invalid(format!("need a, b >= 0 and a + b <= pi, got ({alpha}, {beta})")));
    }
    let sum = alpha.cos() + beta.cos() + (alpha + beta).cos();
    let product = 4.0 * (alpha / 2.0).cos() * (beta / 2.0).cos() * ((alpha + beta) / 2.0).cos();
    Ok(IneqTwo { margin: 3.0 + sum - 2.0, identity_residual: (1.0 + sum - product).abs() })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityMargin {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl InequalityMargin {
    fn new(lhs: f64, rhs: f64) -> Self {
        InequalityMargin { lhs, rhs, margin: lhs - rhs }
    }

    /// `margin / |lhs|`.
    pub fn relative(&self) -> f64 {
        self.margin / self.lhs.abs().max(f64::MIN_POSITIVE)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conj3Margin {
    /// `|D prod (2 r)|^2` against `prod_faces (d3 + 8abc)`.
    pub inequality: InequalityMargin,
    /// Largest relative residual of `8abc D(face) = d3 + 8abc` over the faces.
    pub face_identity_residual: f64,
}

/// The `n = 4` case of the `|D|^(n-2) >= prod |D(drop i)|` inequality in
/// its polynomial form.
pub fn conj3_n4_margin(pts: &[Point3; 4]) -> Result<Conj3Margin> {
    let m = FourPointMetrics::from_points(pts)?;
    let d = atiyah_determinant(pts)?.abs();
    let two_r: f64 = 64.0 * m.product();
    let lhs = (d * two_r).powi(2);
    let mut rhs = 1.0;
    let mut residual = 0.0_f64;
    for l in 0..4 {
        let [i, j, k] = others(l);
        let face = m.face(l);
        let abc8 = 8.0 * face.a * face.b * face.c;
        let poly = face.d3() + abc8;
        rhs *= poly;
        let face_det = atiyah_determinant(&[pts[i], pts[j], pts[k]])?.abs();
        residual = residual.max((abc8 * face_det - poly).abs() / poly);
    }
    Ok(Conj3Margin { inequality: InequalityMargin::new(lhs, rhs), face_identity_residual: residual })
}

/// `(16 + sum_l (3 + vertex_cos_sum(l)) delta_l - 2 delta(Crelle))^2`
/// against `prod_l (delta_l + 4)`.
pub fn conj6_margin(m: &FourPointMetrics) -> Result<InequalityMargin> {
    let t = angle_table(m)?;
    let deltas = face_deltas(m);
    let weighted: f64 = (0..4).map(|l| (3.0 + t.vertex_cos_sum(l)) * deltas[l]).sum();
    let lhs = (16.0 + weighted - 2.0 * crelle_triangle(m).delta).powi(2);
    let rhs = deltas.iter().map(|d| d + 4.0).product();
    Ok(InequalityMargin::new(lhs, rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InscribedAB {
    /// `A_l = 1 + vertex_cos_sum(l)`.
    pub a: [f64; 4],
    /// `B_l = delta` of the face opposite `x_l`.
    pub b: [f64; 4],
    /// Interior angle of the quadrilateral at each vertex.
    pub interior: [f64; 4],
}

impl InscribedAB {
    /// Largest violation of `A0 + A2 = A1 + A3 = B0 + B2 + 4 = B1 + B3 + 4`,
    /// `A_l - B_l = 2 + 2 cos(interior_l)` and `A_l >= B_l >= 0`.
    pub fn identity_residual(&self) -> f64 {
        let (a, b) = (self.a, self.b);
        let s = a[0] + a[2];
        let mut worst = [a[1] + a[3], b[0] + b[2] + 4.0, b[1] + b[3] + 4.0]
            .iter()
            .map(|v| (v - s).abs())
            .fold(0.0, f64::max);
        for l in 0..4 {
            worst = worst.max((a[l] - b[l] - 2.0 - 2.0 * self.interior[l].cos()).abs());
            worst = worst.max(b[l] - a[l]).max(-b[l]);
        }
        worst
    }

    /// `(16 + sum (2 + A_l) B_l)^2 - prod (B_l + 4)`.
    pub fn reduced_margin(&self) -> f64 {
        let s: f64 = (0..4).map(|l| (2.0 + self.a[l]) * self.b[l]).sum();
        (16.0 + s).powi(2) - self.b.iter().map(|v| v + 4.0).product::<f64>()
    }
}

/// `A_l`, `B_l` for four concyclic points in convex position, cyclic order
/// `0, 1, 2, 3`.
pub fn inscribed_ab(m: &FourPointMetrics) -> Result<InscribedAB> {
    let sides = crelle_sides(m);
    let defect = TriangleSides { a: sides[0], b: sides[1], c: sides[2] }.defect();
    if defect.abs() > ZERO_TOL {
        return Err(Error::invalid(format!("points are not concyclic (Ptolemy defect {defect:e})")));
    }
    // in cyclic order the diagonal product is the sum of the other two
    if sides[1] < sides[0].max(sides[2]) * (1.0 - 1e-9) {
        return Err(Error::invalid("points are concyclic but not in convex cyclic order 0-1-2-3"));
    }
    let t = angle_table(m)?;
    let interior = std::array::from_fn(|l| {
        let (prev, next) = ((l + 3) % 4, (l + 1) % 4);
        let corner = TriangleSides { a: m.r(prev, next), b: m.r(l, next), c: m.r(l, prev) };
        triangle_angles(&corner).map(|(at_l, _, _)| at_l).unwrap_or(f64::NAN)
    });
    Ok(InscribedAB {
        a: std::array::from_fn(|l| 1.0 + t.vertex_cos_sum(l)),
        b: face_deltas(m),
        interior,
    })
}

/// `8 + 2(x + y) + x^2 + y^2 - (4 + (x + y)/2)^2 / 2`.
pub fn fin_margin(x: f64, y: f64) -> f64 {
    8.0 + 2.0 * (x + y) + x * x + y * y - 0.5 * (4.0 + (x + y) / 2.0).powi(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoscelesBound {
    /// `4 d3(crelle sides) - 288 V^2`.
    pub margin: f64,
    pub is_isosceles: bool,
}

pub fn isosceles_volume_bound(m: &FourPointMetrics) -> Result<IsoscelesBound> {
    let [a, b, c] = crelle_sides(m);
    let margin = 4.0 * d3(a, b, c) - 288.0 * cayley_menger_vsq(m)?;
    let tol = ZERO_TOL * m.scale();
    let is_isosceles = (m.r(0, 1) - m.r(2, 3)).abs() <= tol
        && (m.r(0, 2) - m.r(1, 3)).abs() <= tol
        && (m.r(0, 3) - m.r(1, 2)).abs() <= tol;
    Ok(IsoscelesBound { margin, is_isosceles })
}

/// Every four-point diagnostic for one configuration. Fields that only make
/// sense for coplanar (or concyclic) input are `None` otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourPointReport {
    pub points: [Point3; 4],
    /// `[r01, r02, r03, r12, r13, r23]`.
    pub distances: [f64; 6],
    pub shape: QuadShape,
    pub volume_sq: f64,
    pub d_re: f64,
    pub d_im: f64,
    pub abs_d: f64,
    pub en_real_part: f64,
    pub en_av_term_distances: f64,
    pub en_av_term_angles: f64,
    /// `64 Re(D) prod r` from the determinant, for comparison.
    pub det_real_part: f64,
    pub crelle: CrelleTriangle,
    pub crelle_coplanar: Option<CoplanarCrelleAngles>,
    pub assoc_rel_err: Option<f64>,
    pub face_deltas: [f64; 4],
    pub conj2_formula_margin: f64,
    pub conj4_margin: f64,
    pub conj5_margin: f64,
    pub conj3: Conj3Margin,
    pub conj6: InequalityMargin,
    pub isosceles: IsoscelesBound,
    pub inscribed: Option<InscribedAB>,
}

pub fn four_point_report(pts: &[Point3; 4]) -> Result<FourPointReport> {
    let m = FourPointMetrics::from_points(pts)?;
    let shape = classify_quadrilateral(pts)?;
    let vsq = cayley_menger_vsq(&m)?;
    let d = atiyah_determinant(pts)?;
    let coplanar = !matches!(shape, QuadShape::NonCoplanar);
    let crelle = crelle_triangle(&m);
    let inscribed = if shape == QuadShape::Convex && crelle.degenerate { inscribed_ab(&m).ok() } else { None };
    Ok(FourPointReport {
        points: *pts,
        distances: [m.r(0, 1), m.r(0, 2), m.r(0, 3), m.r(1, 2), m.r(1, 3), m.r(2, 3)],
        shape,
        volume_sq: vsq,
        d_re: d.value.re,
        d_im: d.value.im,
        abs_d: d.abs(),
        en_real_part: en_real_part(&m, vsq),
        en_av_term_distances: en_av_term(&m),
        en_av_term_angles: en_real_part_angles(&m)?,
        det_real_part: 64.0 * d.value.re * m.product(),
        crelle,
        crelle_coplanar: if coplanar { crelle_angles_coplanar(pts).ok() } else { None },
        assoc_rel_err: assoc_identity_check(&m),
        face_deltas: face_deltas(&m),
        conj2_formula_margin: conj2_margin_formula(&m)?,
        conj4_margin: conj4_margin(&m),
        conj5_margin: conj5_margin(&m)?,
        conj3: conj3_n4_margin(pts)?,
        conj6: conj6_margin(&m)?,
        isosceles: isosceles_volume_bound(&m)?,
        inscribed,
    })
}
