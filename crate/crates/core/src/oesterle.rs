//! Oesterlé lower bound on the genus of a curve over GF(q) with L rational
//! points, and its inverse along a fixed angle θ.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::{lit, snap_tol, Real};

const MAX_BISECTIONS: usize = 200;
const THETA_TOL: f64 = 1e-12;

/// `ell`, `u` and `theta` are `None` when L ≤ √q; the genus bound is then 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OesterleResult<T> {
    pub ell: Option<u32>,
    pub u: Option<T>,
    pub theta: Option<T>,
    pub genus_bound: T,
}

impl<T: Real> OesterleResult<T> {
    fn trivial() -> Self {
        OesterleResult {
            ell: None,
            u: None,
            theta: None,
            genus_bound: T::zero(),
        }
    }
}

/// cos((ℓ+1)θ/2) + u cos((ℓ−1)θ/2)
fn theta_equation<T: Real>(ell: T, u: T, theta: T) -> T {
    let half = lit::<T>(0.5);
    ((ell + T::one()) * theta * half).cos() + u * ((ell - T::one()) * theta * half).cos()
}

fn snap_integer<T: Real>(x: T) -> T {
    let r = x.round();
    if (x - r).abs() <= snap_tol::<T>() * r.abs().max(T::one()) {
        r
    } else {
        x
    }
}

pub fn oesterle<T: Real>(q: T, length: T) -> Result<OesterleResult<T>> {
    if !(q > T::one()) || !(length > T::one()) {
        return Err(Error::Domain(format!(
            "need q > 1 and L > 1, got q = {q}, L = {length}"
        )));
    }
    let s = q.sqrt();
    // √q^ℓ < L ≤ √q^(ℓ+1)
    let r = snap_integer(length.ln() / s.ln());
    let ell_t = (r - T::one()).ceil();
    if ell_t < T::one() {
        return Ok(OesterleResult::trivial());
    }
    let ell = ell_t
        .to_u32()
        .ok_or_else(|| Error::Domain(format!("ℓ = {ell_t} too large")))?;

    let s_ell = s.powf(ell_t);
    let mut u = (s_ell * s - length) / (length * s - s_ell);
    if u.abs() < snap_tol() {
        u = T::zero();
    }
    if u < T::zero() || u >= T::one() {
        return Err(Error::Domain(format!("u = {u} outside [0, 1)")));
    }

    let theta = if ell == 1 {
        (-u).acos()
    } else if u == T::zero() {
        T::PI() / (ell_t + T::one())
    } else {
        solve_theta(ell_t, u)?
    };
    let genus_bound = if ell == 1 {
        // Numerator vanishes identically on this branch.
        T::zero()
    } else {
        let sc = s * theta.cos();
        let g = ((length - T::one()) * sc + q - length) / (q + T::one() - lit::<T>(2.0) * sc);
        g.max(T::zero())
    };
    Ok(OesterleResult {
        ell: Some(ell),
        u: Some(u),
        theta: Some(theta),
        genus_bound,
    })
}

/// Bisection for θ ∈ [π/(ℓ+1), π/ℓ].
fn solve_theta<T: Real>(ell: T, u: T) -> Result<T> {
    let mut lo = T::PI() / (ell + T::one());
    let mut hi = T::PI() / ell;
    let f_lo = theta_equation(ell, u, lo);
    let f_hi = theta_equation(ell, u, hi);
    if f_lo * f_hi > T::zero() {
        return Err(Error::NoSignChange {
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    let tol = lit::<T>(THETA_TOL).max(T::epsilon() * lit(4.0));
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * lit(0.5);
        if f_lo * theta_equation(ell, u, mid) <= T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) * lit(0.5))
}

/// Oesterlé bound over GF(2^m) that stays finite for very large m: when
/// L ≤ 2^(m/2) the answer is the trivial one without forming q.
pub fn oesterle_for_degree<T: Real>(m: T, length: T) -> Result<OesterleResult<T>> {
    if !(m > T::zero()) || !(length > T::one()) {
        return Err(Error::Domain(format!(
            "need m > 0 and L > 1, got m = {m}, L = {length}"
        )));
    }
    if length.log2() <= m * lit(0.5) {
        return Ok(OesterleResult::trivial());
    }
    oesterle(lit::<T>(2.0).powf(m), length)
}

/// Length L(m; θ) with the half-open convention θ ∈ [π/(ℓ+1), π/ℓ).
pub fn length_for_theta<T: Real>(m: T, theta: T) -> Result<T> {
    if !(m > T::zero()) || !(theta > T::zero()) || theta > T::FRAC_PI_2() + snap_tol() {
        return Err(Error::Domain(format!(
            "need m > 0 and 0 < θ ≤ π/2, got m = {m}, θ = {theta}"
        )));
    }
    let r = T::PI() / theta;
    let rr = r.round();
    let ell = if (r - rr).abs() <= snap_tol::<T>() * rr {
        rr - T::one()
    } else {
        r.floor()
    };
    let half = lit::<T>(0.5);
    let mut u = -((ell + T::one()) * theta * half).cos() / ((ell - T::one()) * theta * half).cos();
    if u.abs() < snap_tol() {
        u = T::zero();
    }
    if u < T::zero() || u >= T::one() {
        return Err(Error::Domain(format!(
            "θ = {theta} gives u = {u} outside [0, 1)"
        )));
    }
    let s = lit::<T>(2.0).powf(m * half);
    let s_ell = s.powf(ell);
    Ok((s_ell * s - u * s_ell) / (u * s + T::one()))
}
