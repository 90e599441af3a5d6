//! Partial-distance profiles and kernel exponents.

mod enumerate;
mod special;

pub use special::{
    asymptotic_a, exponent_ag, exponent_binary_bound, ln_gamma, log2_factorial,
    stirling_log2_factorial, EXACT_FACTORIAL_LIMIT,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::KernelMatrix;
use crate::num::Real;

/// Default cap on the number of span elements enumerated per row.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    Exact,
    LowerBound,
}

impl DistanceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceKind::Exact => "exact",
            DistanceKind::LowerBound => "lower_bound",
        }
    }
}

/// Where a profile (and any exponent derived from it) came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSource {
    Exact,
    Goppa,
    Paper,
    ClosedForm,
}

impl ProfileSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileSource::Exact => "exact",
            ProfileSource::Goppa => "goppa",
            ProfileSource::Paper => "paper",
            ProfileSource::ClosedForm => "closed_form",
        }
    }
}

/// Partial distances D_1..D_L, each tagged exact or lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub values: Vec<usize>,
    pub kinds: Vec<DistanceKind>,
    pub source: ProfileSource,
}

impl Profile {
    pub fn new(
        values: Vec<usize>,
        kinds: Vec<DistanceKind>,
        source: ProfileSource,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("profile"));
        }
        if values.len() != kinds.len() {
            return Err(Error::Dimension(format!(
                "{} values but {} kinds",
                values.len(),
                kinds.len()
            )));
        }
        let len = values.len();
        if let Some(&d) = values.iter().find(|&&d| d == 0 || d > len) {
            return Err(Error::Domain(format!(
                "partial distance {d} outside 1..={len}"
            )));
        }
        Ok(Profile {
            values,
            kinds,
            source,
        })
    }

    fn bounds(values: Vec<usize>, source: ProfileSource) -> Result<Self> {
        let kinds = vec![DistanceKind::LowerBound; values.len()];
        Self::new(values, kinds, source)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.kinds.iter().all(|&k| k == DistanceKind::Exact)
    }

    /// Values sorted in descending order.
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut v = self.values.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentReport<T> {
    pub e: T,
    pub base: usize,
    pub source: ProfileSource,
}

/// Least nested AG profile: L−g, L−g−1, .., 1 followed by g ones.
pub fn paper_profile(length: usize, genus: usize) -> Result<Profile> {
    if genus >= length {
        return Err(Error::Domain(format!(
            "genus {genus} must be below L = {length}"
        )));
    }
    let values = (0..length)
        .map(|i| (length - genus).saturating_sub(i).max(1))
        .collect();
    Profile::bounds(values, ProfileSource::Paper)
}

/// D_i = max(1, L − pole_orders[i]).
pub fn goppa_profile(k: &KernelMatrix) -> Result<Profile> {
    let poles = k
        .pole_orders()
        .ok_or_else(|| Error::Domain("kernel has no pole orders".into()))?;
    Profile::bounds(goppa_values(k.size(), poles), ProfileSource::Goppa)
}

fn goppa_values(length: usize, poles: &[u64]) -> Vec<usize> {
    poles
        .iter()
        .map(|&p| (length as u64).saturating_sub(p).max(1) as usize)
        .collect()
}

/// Exact partial distances where the span below row i has at most `budget`
/// elements; the Goppa bound (or 1 without pole orders) elsewhere.
pub fn exact_profile(k: &KernelMatrix, budget: u64) -> Profile {
    let ctx = k.ctx();
    let n = k.size();
    let q = ctx.size();
    let fallback = match k.pole_orders() {
        Some(p) => goppa_values(n, p),
        None => vec![1; n],
    };
    let mut values = Vec::with_capacity(n);
    let mut kinds = Vec::with_capacity(n);
    for (i, &bound) in fallback.iter().enumerate() {
        let tail = (n - 1 - i) as u32;
        let within = q.checked_pow(tail).is_some_and(|s| s <= budget);
        if within {
            let rows: Vec<_> = (i + 1..n).map(|r| k.row(r)).collect();
            values.push(enumerate::coset_min_weight(ctx, k.row(i), &rows, 1));
            kinds.push(DistanceKind::Exact);
        } else {
            values.push(bound);
            kinds.push(DistanceKind::LowerBound);
        }
    }
    Profile::new(values, kinds, ProfileSource::Exact)
        .expect("invertible kernel has distances in 1..=L")
}

/// Each entry repeated `m` times; all entries become lower bounds.
pub fn concat_profile(p: &Profile, m: usize) -> Result<Profile> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let values = p
        .values
        .iter()
        .flat_map(|&d| std::iter::repeat_n(d, m))
        .collect();
    Profile::bounds(values, p.source)
}

/// E = (1/L) Σ log_L D_i.
pub fn exponent<T: Real>(p: &Profile) -> Result<ExponentReport<T>> {
    if p.is_empty() {
        return Err(Error::Empty("profile"));
    }
    let base = p.len();
    let e = if base == 1 {
        T::zero()
    } else {
        let sum = p.values.iter().fold(T::zero(), |acc, &d| {
            acc + T::from_usize(d).expect("small").log2()
        });
        let l = T::from_usize(base).expect("small");
        sum / (l * l.log2())
    };
    Ok(ExponentReport {
        e,
        base,
        source: p.source,
    })
}
