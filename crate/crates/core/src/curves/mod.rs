//! Affine rational points and pole-order graded function bases for the
//! projective line, the Hermitian curve `y^q0 + y = x^(q0+1)` and the Suzuki
//! curve `y^q - y = x^q0 (x^q - x)`, each with the one-point divisor at
//! infinity.

mod semigroup;

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use semigroup::{semigroup_gap_count, semigroup_nongaps, NumericalSemigroup};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement, MAX_DEGREE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Projective line; evaluation codes are Reed-Solomon codes.
    Rational,
    Hermitian,
    Suzuki,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Rational, Family::Hermitian, Family::Suzuki];

    /// The Oesterlé angle at which the family meets the genus bound with equality.
    pub fn anchor_theta(self) -> f64 {
        match self {
            Family::Rational => PI / 2.0,
            Family::Hermitian => PI / 3.0,
            Family::Suzuki => PI / 4.0,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Family::Rational => "rs",
            Family::Hermitian => "hermitian",
            Family::Suzuki => "suzuki",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rs" | "rational" | "reed-solomon" => Ok(Family::Rational),
            "hermitian" | "h" => Ok(Family::Hermitian),
            "suzuki" | "s" => Ok(Family::Suzuki),
            other => Err(Error::InvalidCurve(format!("unknown family '{other}'"))),
        }
    }
}

/// Parameters of one curve family member over GF(q).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub family: Family,
    /// Unused (0) for the rational family.
    pub q0: u64,
    /// Extension degree, q = 2^m.
    pub m: u32,
    pub q: u64,
    /// Number of affine rational points.
    pub points: u64,
    pub genus: u64,
    /// Generators of the Weierstrass semigroup at infinity.
    pub generators: Vec<u64>,
}

impl CurveSpec {
    pub fn semigroup(&self) -> NumericalSemigroup {
        NumericalSemigroup::new(&self.generators).expect("family generators have gcd 1")
    }

    pub fn field(&self) -> Result<FieldCtx> {
        FieldCtx::new(self.m)
    }
}

/// Fill in the derived parameters of a family member.
///
/// `q0` is ignored for the rational family and `m_for_rational` is ignored
/// for the others.
pub fn curve_spec(family: Family, q0: u64, m_for_rational: u32) -> Result<CurveSpec> {
    let q0_exp = || -> Result<u32> {
        if q0 < 2 || !q0.is_power_of_two() {
            return Err(Error::InvalidCurve(format!(
                "q0 = {q0} is not a power of two >= 2"
            )));
        }
        Ok(q0.trailing_zeros())
    };
    let spec = match family {
        Family::Rational => {
            let m = m_for_rational;
            if !(1..=MAX_DEGREE).contains(&m) {
                return Err(Error::DegreeOutOfRange(m));
            }
            let q = 1u64 << m;
            CurveSpec {
                family,
                q0: 0,
                m,
                q,
                points: q,
                genus: 0,
                generators: vec![1],
            }
        }
        Family::Hermitian => {
            let m = 2 * q0_exp()?;
            if m > MAX_DEGREE {
                return Err(Error::DegreeOutOfRange(m));
            }
            CurveSpec {
                family,
                q0,
                m,
                q: q0 * q0,
                points: q0 * q0 * q0,
                genus: q0 * (q0 - 1) / 2,
                generators: vec![q0, q0 + 1],
            }
        }
        Family::Suzuki => {
            let m = 2 * q0_exp()? + 1;
            if m > MAX_DEGREE {
                return Err(Error::DegreeOutOfRange(m));
            }
            let q = 2 * q0 * q0;
            CurveSpec {
                family,
                q0,
                m,
                q,
                points: q * q,
                genus: q0 * (q - 1),
                generators: vec![q, q + q0, q + 2 * q0, q + 2 * q0 + 1],
            }
        }
    };
    Ok(spec)
}

/// An affine rational point; `y` is absent on the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: FieldElement,
    pub y: Option<FieldElement>,
}

impl Point {
    pub fn coords(&self) -> Vec<FieldElement> {
        std::iter::once(self.x).chain(self.y).collect()
    }
}

/// A monomial in the coordinate functions with its pole order at infinity.
///
/// Exponents are `(k)` for `x^k`, `(i, j)` for `x^i y^j`, and `(a, b, c, d)`
/// for `x^a y^b z^c w^d` on the Suzuki curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub pole_order: u64,
}

impl Monomial {
    /// Exponent-wise product; pole orders add.
    pub fn product(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            pole_order: self.pole_order + other.pole_order,
        }
    }
}

/// Pole order of an exponent tuple for the given family.
pub fn pole_order_of(spec: &CurveSpec, exponents: &[u32]) -> u64 {
    let weights: Vec<u64> = match spec.family {
        Family::Rational => vec![1],
        Family::Hermitian => vec![spec.q0, spec.q0 + 1],
        Family::Suzuki => spec.generators.clone(),
    };
    weights
        .iter()
        .zip(exponents)
        .map(|(w, &e)| w * u64::from(e))
        .sum()
}

fn ensure_field(spec: &CurveSpec, ctx: &FieldCtx) -> Result<()> {
    if ctx.size() != spec.q {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// All affine rational points, sorted by (x, y) integer value.
pub fn enumerate_points(spec: &CurveSpec, ctx: &FieldCtx) -> Result<Vec<Point>> {
    ensure_field(spec, ctx)?;
    let points: Vec<Point> = match spec.family {
        Family::Rational => ctx.elements().map(|x| Point { x, y: None }).collect(),
        Family::Hermitian => {
            // Bucket y by y^q0 + y so the (x, y) scan costs O(q) instead of O(q^2).
            let mut fibres: HashMap<FieldElement, Vec<FieldElement>> = HashMap::new();
            for y in ctx.elements() {
                let lhs = ctx.add(ctx.pow(y, spec.q0), y);
                fibres.entry(lhs).or_default().push(y);
            }
            let mut pts = Vec::with_capacity(spec.points as usize);
            for x in ctx.elements() {
                let rhs = ctx.pow(x, spec.q0 + 1);
                if let Some(ys) = fibres.get(&rhs) {
                    pts.extend(ys.iter().map(|&y| Point { x, y: Some(y) }));
                }
            }
            pts
        }
        Family::Suzuki => {
            let mut pts = Vec::with_capacity(spec.points as usize);
            for x in ctx.elements() {
                for y in ctx.elements() {
                    let lhs = ctx.add(ctx.pow(y, spec.q), y);
                    let rhs = ctx.mul(ctx.pow(x, spec.q0), ctx.add(ctx.pow(x, spec.q), x));
                    if lhs != rhs {
                        return Err(Error::Construction(format!(
                            "Suzuki identity fails at ({x}, {y})"
                        )));
                    }
                    pts.push(Point { x, y: Some(y) });
                }
            }
            pts
        }
    };
    if points.len() as u64 != spec.points {
        return Err(Error::Construction(format!(
            "found {} points, expected {}",
            points.len(),
            spec.points
        )));
    }
    Ok(points)
}

/// The chosen basis monomial for a pole order, if the order is a nongap.
///
/// Suzuki ties are broken by the lexicographically smallest `(d, c, b, a)`.
pub fn representative(spec: &CurveSpec, pole: u64) -> Option<Monomial> {
    let exponents = match spec.family {
        Family::Rational => vec![pole as u32],
        Family::Hermitian => {
            let q0 = spec.q0;
            let j = (0..q0).find(|&j| {
                let used = j * (q0 + 1);
                used <= pole && (pole - used).is_multiple_of(q0)
            })?;
            let i = (pole - j * (q0 + 1)) / q0;
            vec![i as u32, j as u32]
        }
        Family::Suzuki => {
            let g = &spec.generators;
            let mut found = None;
            'search: for d in 0..=pole / g[3] {
                let r3 = pole - d * g[3];
                for c in 0..=r3 / g[2] {
                    let r2 = r3 - c * g[2];
                    for b in 0..=r2 / g[1] {
                        let r1 = r2 - b * g[1];
                        if r1.is_multiple_of(g[0]) {
                            found = Some(vec![(r1 / g[0]) as u32, b as u32, c as u32, d as u32]);
                            break 'search;
                        }
                    }
                }
            }
            found?
        }
    };
    Some(Monomial {
        exponents,
        pole_order: pole,
    })
}

/// One monomial for each of the `count` smallest nongaps, ascending.
pub fn function_basis(spec: &CurveSpec, count: usize) -> Result<Vec<Monomial>> {
    if count == 0 {
        return Err(Error::Empty("function_basis needs count >= 1"));
    }
    spec.semigroup()
        .nongaps(count)
        .into_iter()
        .map(|p| {
            representative(spec, p)
                .ok_or_else(|| Error::Construction(format!("no monomial of pole order {p}")))
        })
        .collect()
}

/// Coordinate functions at one point: `[x]`, `[x, y]` or `[x, y, z, w]`.
pub fn coordinate_values(spec: &CurveSpec, p: &Point, ctx: &FieldCtx) -> Vec<FieldElement> {
    match spec.family {
        Family::Rational => vec![p.x],
        Family::Hermitian => vec![p.x, p.y.unwrap_or_default()],
        Family::Suzuki => {
            let x = p.x;
            let y = p.y.unwrap_or_default();
            let t = 2 * spec.q0;
            let z = ctx.add(ctx.pow(x, t + 1), ctx.pow(y, t));
            let w = ctx.add(ctx.mul(x, ctx.pow(y, t)), ctx.pow(z, t));
            vec![x, y, z, w]
        }
    }
}

fn monomial_at(mono: &Monomial, coords: &[FieldElement], ctx: &FieldCtx) -> FieldElement {
    coords
        .iter()
        .zip(&mono.exponents)
        .fold(FieldElement::ONE, |acc, (&c, &e)| {
            ctx.mul(acc, ctx.pow(c, u64::from(e)))
        })
}

/// Value of a monomial at a point.
pub fn evaluate(mono: &Monomial, p: &Point, spec: &CurveSpec, ctx: &FieldCtx) -> FieldElement {
    monomial_at(mono, &coordinate_values(spec, p, ctx), ctx)
}

/// Evaluation vector of `mono` over all `points`.
pub(crate) fn evaluate_all(
    mono: &Monomial,
    coords: &[Vec<FieldElement>],
    ctx: &FieldCtx,
) -> Vec<FieldElement> {
    coords.iter().map(|c| monomial_at(mono, c, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: u32) -> FieldElement {
        FieldElement(v)
    }

    #[test]
    fn spec_parameters() {
        let h = curve_spec(Family::Hermitian, 2, 0).unwrap();
        assert_eq!((h.q, h.points, h.genus), (4, 8, 1));
        assert_eq!(h.generators, vec![2, 3]);
        let s = curve_spec(Family::Suzuki, 2, 0).unwrap();
        assert_eq!((s.q, s.points, s.genus), (8, 64, 14));
        assert_eq!(s.generators, vec![8, 10, 12, 13]);
        let r = curve_spec(Family::Rational, 0, 2).unwrap();
        assert_eq!((r.q, r.points, r.genus), (4, 4, 0));
        assert!(curve_spec(Family::Hermitian, 3, 0).is_err());
        assert!(curve_spec(Family::Suzuki, 1, 0).is_err());
    }

    #[test]
    fn gap_count_is_genus() {
        for q0 in [2u64, 4, 8] {
            let h = curve_spec(Family::Hermitian, q0, 0).unwrap();
            assert_eq!(semigroup_gap_count(&h.generators).unwrap(), h.genus);
        }
        for q0 in [2u64, 4] {
            let s = curve_spec(Family::Suzuki, q0, 0).unwrap();
            assert_eq!(semigroup_gap_count(&s.generators).unwrap(), s.genus);
        }
        for m in 1..=4 {
            let r = curve_spec(Family::Rational, 0, m).unwrap();
            assert_eq!(semigroup_gap_count(&r.generators).unwrap(), 0);
        }
    }

    #[test]
    fn nongaps_past_2g_are_shifted_indices() {
        let specs = [
            curve_spec(Family::Hermitian, 4, 0).unwrap(),
            curve_spec(Family::Suzuki, 2, 0).unwrap(),
            curve_spec(Family::Rational, 0, 3).unwrap(),
        ];
        for spec in specs {
            let g = spec.genus;
            let ng = spec.semigroup().nongaps((4 * g + 10) as usize);
            for (idx, &v) in ng.iter().enumerate() {
                if v >= 2 * g {
                    assert_eq!(v, idx as u64 + 1 + g - 1);
                }
            }
        }
    }

    #[test]
    fn hermitian_points() {
        let spec = curve_spec(Family::Hermitian, 2, 0).unwrap();
        let ctx = spec.field().unwrap();
        let pts = enumerate_points(&spec, &ctx).unwrap();
        assert_eq!(pts.len(), 8);
        let over_zero: Vec<_> = pts.iter().filter(|p| p.x == fe(0)).collect();
        assert_eq!(over_zero.len(), 2);
        assert_eq!(over_zero[0].y, Some(fe(0)));
        assert_eq!(over_zero[1].y, Some(fe(1)));
        let mut sorted = pts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, pts);
        for p in &pts {
            let y = p.y.unwrap();
            assert_eq!(ctx.add(ctx.pow(y, 2), y), ctx.pow(p.x, 3));
        }
    }

    #[test]
    fn hermitian_q0_4_and_suzuki_counts() {
        let h = curve_spec(Family::Hermitian, 4, 0).unwrap();
        assert_eq!(enumerate_points(&h, &h.field().unwrap()).unwrap().len(), 64);
        let s = curve_spec(Family::Suzuki, 2, 0).unwrap();
        assert_eq!(enumerate_points(&s, &s.field().unwrap()).unwrap().len(), 64);
        let r = curve_spec(Family::Rational, 0, 3).unwrap();
        assert_eq!(enumerate_points(&r, &r.field().unwrap()).unwrap().len(), 8);
    }

    #[test]
    fn wrong_field_rejected() {
        let h = curve_spec(Family::Hermitian, 2, 0).unwrap();
        assert_eq!(
            enumerate_points(&h, &FieldCtx::new(3).unwrap()),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn hermitian_basis() {
        let spec = curve_spec(Family::Hermitian, 2, 0).unwrap();
        let basis = function_basis(&spec, 8).unwrap();
        let poles: Vec<u64> = basis.iter().map(|m| m.pole_order).collect();
        assert_eq!(poles, vec![0, 2, 3, 4, 5, 6, 7, 8]);
        let exps: Vec<Vec<u32>> = basis.iter().map(|m| m.exponents.clone()).collect();
        assert_eq!(
            exps,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![3, 0],
                vec![2, 1],
                vec![4, 0]
            ]
        );
    }

    #[test]
    fn suzuki_representatives() {
        let spec = curve_spec(Family::Suzuki, 2, 0).unwrap();
        // 21 = 8 + 13 is the only representation
        assert_eq!(
            representative(&spec, 21).unwrap().exponents,
            vec![1, 0, 0, 1]
        );
        // 20 = 10 + 10 = 8 + 12: smallest (d, c, b, a) is (0, 0, 2, 0)
        assert_eq!(
            representative(&spec, 20).unwrap().exponents,
            vec![0, 2, 0, 0]
        );
        assert!(representative(&spec, 9).is_none());
        for m in function_basis(&spec, 40).unwrap() {
            assert_eq!(pole_order_of(&spec, &m.exponents), m.pole_order);
        }
    }

    #[test]
    fn rational_basis() {
        let spec = curve_spec(Family::Rational, 0, 3).unwrap();
        let basis = function_basis(&spec, 3).unwrap();
        assert_eq!(
            basis.iter().map(|m| m.exponents[0]).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert!(function_basis(&spec, 0).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let h = curve_spec(Family::Hermitian, 2, 0).unwrap();
        let hctx = h.field().unwrap();
        let p = Point {
            x: fe(0),
            y: Some(fe(1)),
        };
        let y = Monomial {
            exponents: vec![0, 1],
            pole_order: 3,
        };
        assert_eq!(evaluate(&y, &p, &h, &hctx), fe(1));
        let one = Monomial {
            exponents: vec![0, 0],
            pole_order: 0,
        };
        assert_eq!(evaluate(&one, &p, &h, &hctx), fe(1));

        let s = curve_spec(Family::Suzuki, 2, 0).unwrap();
        let sctx = s.field().unwrap();
        let p = Point {
            x: fe(1),
            y: Some(fe(1)),
        };
        let c = coordinate_values(&s, &p, &sctx);
        assert_eq!(c[2], fe(0));
        assert_eq!(c[3], fe(1));
        let w = Monomial {
            exponents: vec![0, 0, 0, 1],
            pole_order: 13,
        };
        assert_eq!(evaluate(&w, &p, &s, &sctx), fe(1));
    }

    #[test]
    fn pole_orders_add_under_product() {
        let spec = curve_spec(Family::Suzuki, 2, 0).unwrap();
        let basis = function_basis(&spec, 12).unwrap();
        for a in &basis {
            for b in &basis {
                let p = a.product(b);
                assert_eq!(pole_order_of(&spec, &p.exponents), p.pole_order);
            }
        }
    }
}
