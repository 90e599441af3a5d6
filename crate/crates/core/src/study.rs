//! Parameter sweeps over (m, L) with genus taken from the Oesterlé bound and
//! E₂ from the binary concatenated bound.

use serde::Serialize;

use crate::curves::Family;
use crate::error::{Error, Result};
use crate::metrics::exponent_binary_bound;
use crate::oesterle::{length_for_theta, oesterle, oesterle_for_degree};

/// Bracket on m when inverting n = m·L(m).
const M_RANGE: (f64, f64) = (0.01, 120.0);
/// Relative width at which [`crossover`] stops.
pub const CROSSOVER_RTOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StudyRow {
    pub m: f64,
    pub q: f64,
    #[serde(rename = "L")]
    pub length: f64,
    pub genus: f64,
    pub n: f64,
    #[serde(rename = "E2")]
    pub e2: f64,
}

impl StudyRow {
    /// Row at (m, L) with q = 2^m.
    pub fn at(m: f64, length: f64) -> Result<Self> {
        let genus = oesterle_for_degree(m, length)?.genus_bound;
        Self::with_genus(m, m.exp2(), length, genus)
    }

    fn with_genus(m: f64, q: f64, length: f64, genus: f64) -> Result<Self> {
        Ok(StudyRow {
            m,
            q,
            length,
            genus,
            n: m * length,
            e2: exponent_binary_bound(length, genus, m)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub rows: Vec<StudyRow>,
    /// Index into `rows` of the largest E₂.
    pub argmax: Option<usize>,
    pub warning: Option<String>,
}

/// One row per divisor m ≥ 2 of n with n/m ≥ 2. With `literal_small_q` the
/// m = 2 row uses q = 2 instead of 4; its E₂ is NaN when the bound gives g ≥ L.
pub fn table_fixed_n(n: u64, literal_small_q: bool) -> Result<Table> {
    if n < 4 {
        return Err(Error::Domain(format!("n = {n} must be at least 4")));
    }
    let mut rows = Vec::new();
    let mut warning = None;
    for m in (2..=n / 2).filter(|m| n.is_multiple_of(*m)) {
        let length = (n / m) as f64;
        let m = m as f64;
        let row = if literal_small_q && m == 2.0 {
            let genus = oesterle(2.0, length)?.genus_bound;
            if genus >= length {
                warning = Some(format!(
                    "q = 2 gives genus bound {genus} >= L at m = 2; E2 undefined"
                ));
                StudyRow {
                    m,
                    q: 2.0,
                    length,
                    genus,
                    n: m * length,
                    e2: f64::NAN,
                }
            } else {
                StudyRow::with_genus(m, 2.0, length, genus)?
            }
        } else {
            StudyRow::at(m, length)?
        };
        rows.push(row);
    }
    let argmax = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.e2.is_nan())
        .max_by(|a, b| a.1.e2.total_cmp(&b.1.e2))
        .map(|(i, _)| i);
    if rows.is_empty() {
        warning = Some(format!("n = {n} has no divisor m >= 2 with n/m >= 2"));
    }
    Ok(Table {
        rows,
        argmax,
        warning,
    })
}

pub fn sweep_fixed_theta(theta: f64, m_grid: &[f64]) -> Result<Vec<StudyRow>> {
    m_grid
        .iter()
        .map(|&m| StudyRow::at(m, length_for_theta(m, theta)?))
        .collect()
}

pub fn sweep_fixed_m(m: f64, length_grid: &[f64]) -> Result<Vec<StudyRow>> {
    length_grid.iter().map(|&l| StudyRow::at(m, l)).collect()
}

/// Row on the curve through θ at total binary length n, with m real.
pub fn point_at_n(theta: f64, n: f64) -> Result<StudyRow> {
    let total = |m: f64| length_for_theta(m, theta).map(|l| m * l);
    let (mut lo, mut hi) = M_RANGE;
    if !(total(lo)? <= n && n <= total(hi)?) {
        return Err(Error::Domain(format!(
            "n = {n} outside the invertible range"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid)? < n {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let m = 0.5 * (lo + hi);
    StudyRow::at(m, length_for_theta(m, theta)?)
}

/// `count` log-spaced values from lo to hi inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi / lo).ln() / (count - 1) as f64;
            (0..count)
                .map(|k| {
                    if k + 1 == count {
                        hi
                    } else {
                        lo * (step * k as f64).exp()
                    }
                })
                .collect()
        }
    }
}

pub fn family_curve(family: Family, n_lo: f64, n_hi: f64, samples: usize) -> Result<Vec<StudyRow>> {
    if !(n_lo >= 8.0) || !(n_hi >= n_lo) {
        return Err(Error::Domain(format!(
            "need 8 <= n_lo <= n_hi, got [{n_lo}, {n_hi}]"
        )));
    }
    log_grid(n_lo, n_hi, samples)
        .into_iter()
        .map(|n| point_at_n(family.anchor_theta(), n))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossoverResult {
    pub family_a: Family,
    pub family_b: Family,
    pub n_star: f64,
    pub bracket: (f64, f64),
}

/// Bisection in log n on the sign of E₂ᵃ(n) − E₂ᵇ(n).
pub fn crossover(a: Family, b: Family, n_lo: f64, n_hi: f64) -> Result<CrossoverResult> {
    let diff = |n: f64| -> Result<f64> {
        Ok(point_at_n(a.anchor_theta(), n)?.e2 - point_at_n(b.anchor_theta(), n)?.e2)
    };
    let (mut lo, mut hi) = (n_lo, n_hi);
    let d_lo = diff(lo)?;
    let d_hi = diff(hi)?;
    if !(d_lo * d_hi < 0.0) {
        return Err(Error::NoSignChange { lo, hi });
    }
    while hi / lo - 1.0 > CROSSOVER_RTOL {
        let mid = (lo * hi).sqrt();
        if d_lo * diff(mid)? < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(CrossoverResult {
        family_a: a,
        family_b: b,
        n_star: (lo * hi).sqrt(),
        bracket: (lo, hi),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EccPoint {
    pub m: f64,
    #[serde(rename = "L")]
    pub length: f64,
    pub genus: f64,
    pub n: f64,
    pub bound: f64,
}

/// ((m−1)/m)·R₂ + (L−g+1)/(mL).
pub fn ecc_bound_at(m: f64, length: f64, genus: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate < 1.0) || !(m > 0.0) || !(length > 0.0) {
        return Err(Error::Domain(format!(
            "need 0 < R2 < 1, m > 0, L > 0; got R2 = {rate}, m = {m}, L = {length}"
        )));
    }
    Ok((m - 1.0) / m * rate + (length - genus + 1.0) / (m * length))
}

pub fn ecc_bound(
    family: Family,
    rate: f64,
    n_lo: f64,
    n_hi: f64,
    samples: usize,
) -> Result<Vec<EccPoint>> {
    family_curve(family, n_lo, n_hi, samples)?
        .into_iter()
        .map(|r| {
            Ok(EccPoint {
                m: r.m,
                length: r.length,
                genus: r.genus,
                n: r.n,
                bound: ecc_bound_at(r.m, r.length, r.genus, rate)?,
            })
        })
        .collect()
}
