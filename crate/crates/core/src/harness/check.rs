use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::sampler::{Configuration, SamplerKind};
use crate::det::{atiyah_determinant, atiyah_determinant_three};
use crate::error::{Error, Result};
use crate::fourpoint::{
    conj2_margin_formula, conj4_margin, conj5_margin, conj6_margin, crelle_angles_coplanar,
    crelle_sides, crelle_triangle, crelle_volume_residual, en_av_term, en_real_part, en_real_part_angles,
    inscribed_ab, isosceles_volume_bound, technical_f,
};
use crate::geom::{cayley_menger_vsq, classify_quadrilateral, d3, FourPointMetrics, Point3, QuadShape};
use crate::ngon::ngon_closed_form;

/// Largest `n` accepted by the `n - 2` power product check.
pub const CONJ3_MAX_POINTS: usize = 8;

/// A per-trial check. Every margin is dimensionless and passes when
/// `margin >= -tolerance`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `|D| - 1e-12`.
    Conj1,
    /// `|D| - 1`.
    Conj2,
    /// `(|D|^(n-2) - prod_i |D(drop i)|) / |D|^(n-2)`.
    Conj3,
    /// Sum of face deltas minus the Crelle delta.
    Conj4,
    /// Angle sum minus twice the face deltas.
    Conj5,
    /// `(lhs - rhs) / lhs` of the squared face-delta inequality.
    Conj6,
    /// Angle sum minus twice the Crelle delta.
    Conj2Formula,
    /// Trigonometric sum minus 3.
    TechnicalF,
    /// `(4 d3(crelle) - 288 V^2) / scale^6`.
    IsoscelesBound,
    /// `-|4 d3(crelle) - 288 V^2| / scale^6`.
    IsoscelesEquality,
    /// Minus the largest relative residual among the identities that apply.
    Identities,
    /// `-|Im D| / |D|`.
    CoplanarReality,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Conj1,
        Check::Conj2,
        Check::Conj3,
        Check::Conj4,
        Check::Conj5,
        Check::Conj6,
        Check::Conj2Formula,
        Check::TechnicalF,
        Check::IsoscelesBound,
        Check::IsoscelesEquality,
        Check::Identities,
        Check::CoplanarReality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Conj1 => "conj1",
            Check::Conj2 => "conj2",
            Check::Conj3 => "conj3",
            Check::Conj4 => "conj4",
            Check::Conj5 => "conj5",
            Check::Conj6 => "conj6",
            Check::Conj2Formula => "conj2_formula",
            Check::TechnicalF => "technical_f",
            Check::IsoscelesBound => "isosceles_bound",
            Check::IsoscelesEquality => "isosceles_equality",
            Check::Identities => "identities",
            Check::CoplanarReality => "coplanar_reality",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Check::Conj1 => 0.0,
            Check::Conj3 | Check::Conj6 | Check::Identities => 1e-8,
            _ => 1e-9,
        }
    }

    fn needs_determinant(self) -> bool {
        matches!(self, Check::Conj1 | Check::Conj2 | Check::Conj3 | Check::Identities | Check::CoplanarReality)
    }

    /// Whether this check can run on configurations drawn from `kind`.
    pub fn supports(self, kind: &SamplerKind) -> Result<()> {
        let n = kind.point_count();
        let ok = match self {
            Check::TechnicalF => n.is_none(),
            Check::Conj3 => n.is_some_and(|n| (3..=CONJ3_MAX_POINTS).contains(&n)),
            Check::Conj4 | Check::Conj5 | Check::Conj6 | Check::Conj2Formula => n == Some(4),
            Check::IsoscelesBound | Check::IsoscelesEquality => n == Some(4),
            Check::CoplanarReality => kind.is_coplanar(),
            Check::Conj1 | Check::Conj2 | Check::Identities => n.is_some(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("check {self} does not apply to sampler {kind:?}")))
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown check {s:?}")))
    }
}

/// Determinant (when computed) and one margin per requested check.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub d: Option<Complex64>,
    pub margins: Vec<(Check, f64)>,
}

pub fn evaluate(kind: &SamplerKind, config: &Configuration, checks: &[Check]) -> Result<Evaluation> {
    let pts = match config {
        Configuration::Angles(v) => {
            let margins = checks
                .iter()
                .map(|&c| match c {
                    Check::TechnicalF => Ok((c, technical_f(v[0], v[1], v[2], v[3], v[4]) - 3.0)),
                    _ => Err(Error::invalid(format!("check {c} needs points, got angles"))),
                })
                .collect::<Result<_>>()?;
            return Ok(Evaluation { d: None, margins });
        }
        Configuration::Points(p) => p.as_slice(),
    };
    let d = if checks.iter().any(|c| c.needs_determinant()) { Some(atiyah_determinant(pts)?.value) } else { None };
    let quad: Option<[Point3; 4]> = pts.try_into().ok();
    let four = || quad.ok_or_else(|| Error::invalid("check needs exactly four points"));
    let metrics = || FourPointMetrics::from_points(&four()?);
    let mut margins = Vec::with_capacity(checks.len());
    for &check in checks {
        let abs_d = d.map(|d| d.norm()).unwrap_or(f64::NAN);
        let margin = match check {
            Check::Conj1 => abs_d - 1e-12,
            Check::Conj2 => abs_d - 1.0,
            Check::Conj3 => {
                let lhs = abs_d.powi(pts.len() as i32 - 2);
                let mut rhs = 1.0;
                for i in 0..pts.len() {
                    let rest: Vec<Point3> =
                        pts.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &p)| p).collect();
                    rhs *= atiyah_determinant(&rest)?.abs();
                }
                (lhs - rhs) / lhs
            }
            Check::Conj4 => conj4_margin(&metrics()?),
            Check::Conj5 => conj5_margin(&metrics()?)?,
            Check::Conj6 => conj6_margin(&metrics()?)?.relative(),
            Check::Conj2Formula => conj2_margin_formula(&metrics()?)?,
            Check::TechnicalF => return Err(Error::invalid("technical_f needs an angle configuration")),
            Check::IsoscelesBound | Check::IsoscelesEquality => {
                let m = metrics()?;
                let b = isosceles_volume_bound(&m)?.margin / m.scale().powi(6);
                if check == Check::IsoscelesBound {
                    b
                } else {
                    -b.abs()
                }
            }
            Check::Identities => -identity_residual(kind, pts, d.unwrap_or_default())?,
            Check::CoplanarReality => -d.unwrap_or_default().im.abs() / abs_d,
        };
        margins.push((check, margin));
    }
    Ok(Evaluation { d, margins })
}

/// Largest relative residual over the identities relevant to `pts`.
///
/// Three points: the closed form `1 + delta/4`. Four points: the distance
/// polynomial against `64 Re(D) prod r`, its angle form, the associated
/// Crelle identity and `S = 6VR`; for coplanar input also the angle
/// formulas for the Crelle triangle, and for concyclic input Ptolemy and
/// the inscribed `A_l`, `B_l` identities. Regular polygons compare with the
/// closed form, collinear points with `D = 1`.
pub fn identity_residual(kind: &SamplerKind, pts: &[Point3], d: Complex64) -> Result<f64> {
    let mut worst = 0.0_f64;
    match *kind {
        SamplerKind::Ngon { n } => {
            let closed = ngon_closed_form(n)?;
            worst = worst.max((d.norm() - closed).abs() / closed);
        }
        SamplerKind::Collinear { .. } => worst = worst.max((d - 1.0).norm()),
        _ => {}
    }
    if let [a, b, c] = *pts {
        let closed = atiyah_determinant_three(a, b, c)?;
        worst = worst.max((d - closed).norm() / closed.norm());
    }
    let Ok(quad) = <[Point3; 4]>::try_from(pts) else {
        return Ok(worst);
    };
    let m = FourPointMetrics::from_points(&quad)?;
    let scale = 64.0 * m.product();
    let poly = en_real_part(&m, cayley_menger_vsq(&m)?);
    worst = worst.max((poly - scale * d.re).abs() / scale);
    worst = worst.max((en_av_term(&m) - en_real_part_angles(&m)?).abs() / scale);
    let crelle = crelle_triangle(&m);
    if let Some(angles) = crelle.angles {
        // measured on the delta scale
        let [a, b, c] = crelle.sides;
        let rhs = 2.0 * (angles.iter().map(|x| x.cos()).sum::<f64>() - 1.0) * m.product();
        worst = worst.max((d3(a, b, c) - rhs).abs() / (2.0 * m.product()));
    }
    let shape = classify_quadrilateral(&quad)?;
    match shape {
        QuadShape::NonCoplanar => worst = worst.max(crelle_volume_residual(&quad)?),
        QuadShape::Convex | QuadShape::Reflex { .. } if !crelle.degenerate => {
            let mut got = crelle_angles_coplanar(&quad)?.angles;
            let mut want = crelle.angles.ok_or_else(|| Error::Degenerate("Crelle triangle".into()))?;
            got.sort_by(f64::total_cmp);
            want.sort_by(f64::total_cmp);
            for (g, w) in got.iter().zip(want) {
                worst = worst.max((g - w).abs());
            }
        }
        _ => {}
    }
    if *kind == SamplerKind::CyclicQuad {
        let sides = crelle_sides(&m);
        let ptolemy = d3(sides[0], sides[1], sides[2]).abs() / sides[1].powi(3);
        worst = worst.max(ptolemy).max(inscribed_ab(&m)?.identity_residual());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
        assert!("conj7".parse::<Check>().is_err());
    }

    #[test]
    fn support_rules() {
        let g4 = SamplerKind::General3d { n: 4 };
        assert!(Check::Conj4.supports(&g4).is_ok());
        assert!(Check::Conj4.supports(&SamplerKind::General3d { n: 5 }).is_err());
        assert!(Check::Conj3.supports(&SamplerKind::General3d { n: 9 }).is_err());
        assert!(Check::TechnicalF.supports(&g4).is_err());
        assert!(Check::CoplanarReality.supports(&g4).is_err());
        assert!(Check::CoplanarReality.supports(&SamplerKind::CyclicQuad).is_ok());
    }

    #[test]
    fn ngon_evaluation_matches_closed_form() {
        let kind = SamplerKind::Ngon { n: 7 };
        let config = super::super::sampler::sample(&kind, 0, 0).unwrap();
        let e = evaluate(&kind, &config, &[Check::Conj2, Check::Identities]).unwrap();
        let closed = ngon_closed_form(7).unwrap();
        assert!((e.margins[0].1 - (closed - 1.0)).abs() < 1e-9 * closed);
        assert!(e.margins[1].1 > -1e-10);
    }
}
