//! Log-factorials and the closed-form exponent expressions.

use crate::error::{Error, Result};
use crate::num::{lit, Real};

/// Largest integer argument summed term by term in [`log2_factorial`].
pub const EXACT_FACTORIAL_LIMIT: f64 = 1e7;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of |Γ(x)| by the Lanczos approximation (g = 7, n = 9),
/// with reflection below 1/2.
pub fn ln_gamma<T: Real>(x: T) -> T {
    let half = lit::<T>(0.5);
    if x < half {
        let pi = T::PI();
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut series = lit::<T>(LANCZOS[0]);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        series = series + lit::<T>(c) / (x + lit(k as f64));
    }
    let t = x + lit::<T>(LANCZOS_G) + half;
    lit::<T>(0.5) * (T::TAU()).ln() + (x + half) * t.ln() - t + series.ln()
}

/// log2 Γ(x + 1). Integer arguments up to 10^7 are summed exactly
/// (compensated), everything else goes through [`ln_gamma`].
pub fn log2_factorial<T: Real>(x: T) -> T {
    if x.fract() == T::zero() && x >= T::zero() && x <= lit(EXACT_FACTORIAL_LIMIT) {
        let n = x.to_u64().expect("bounded integer");
        let (mut sum, mut comp) = (T::zero(), T::zero());
        for i in 2..=n {
            let term = lit::<T>(i as f64).log2();
            let t = sum + term;
            comp = comp
                + if sum.abs() >= term.abs() {
                    (sum - t) + term
                } else {
                    (term - t) + sum
                };
            sum = t;
        }
        sum + comp
    } else {
        ln_gamma(x + T::one()) / T::LN_2()
    }
}

/// Stirling: x log2 x − x / ln 2 + ½ log2(2πx).
pub fn stirling_log2_factorial<T: Real>(x: T) -> T {
    x * x.log2() - x / T::LN_2() + lit::<T>(0.5) * (T::TAU() * x).log2()
}

/// E(G_L) = log2((L−g)!) / (L log2 L); the base q cancels.
pub fn exponent_ag<T: Real>(length: T, genus: T, q: T) -> Result<T> {
    if !(q > T::one()) {
        return Err(Error::Domain(format!("q = {q} must exceed 1")));
    }
    if !(length > T::one()) || !(length - genus > T::zero()) || genus < T::zero() {
        return Err(Error::Domain(format!(
            "need L > 1 and 0 <= g < L, got L = {length}, g = {genus}"
        )));
    }
    Ok(log2_factorial(length - genus) / (length * length.log2()))
}

/// Binary concatenated bound log2((L−g)!) / (L log2(mL)).
pub fn exponent_binary_bound<T: Real>(length: T, genus: T, m: T) -> Result<T> {
    if !(length > T::zero()) || !(length - genus > T::zero()) || genus < T::zero() {
        return Err(Error::Domain(format!(
            "need L > 0 and 0 <= g < L, got L = {length}, g = {genus}"
        )));
    }
    if !(m > T::zero()) || !(m * length > T::one()) {
        return Err(Error::Domain(format!(
            "need mL > 1, got m = {m}, L = {length}"
        )));
    }
    Ok(log2_factorial(length - genus) / (length * (m * length).log2()))
}

/// a(q, θ) = (q + 2 − 3√q cos θ) / (q + 1 − 2√q cos θ).
pub fn asymptotic_a<T: Real>(q: T, theta: T) -> Result<T> {
    if !(q > T::one()) || !(theta > T::zero() && theta < T::PI()) {
        return Err(Error::Domain(format!(
            "need q > 1 and 0 < θ < π, got q = {q}, θ = {theta}"
        )));
    }
    let sc = q.sqrt() * theta.cos();
    let den = q + T::one() - lit::<T>(2.0) * sc;
    if den <= T::zero() {
        return Err(Error::Domain("non-positive denominator".into()));
    }
    Ok((q + lit(2.0) - lit::<T>(3.0) * sc) / den)
}
