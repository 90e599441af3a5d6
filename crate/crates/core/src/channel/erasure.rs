use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::kernel::KernelMatrix;
use crate::num::Real;

/// Largest kernel size for which erasure patterns are enumerated.
pub const MAX_ERASURE_LENGTH: usize = 24;

/// p_i(ε) = Σ_k counts[i][k] ε^k (1−ε)^(L−k), where counts[i][k] is the
/// number of k-subsets of erased positions that leave u_i undetermined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasurePolynomials {
    counts: Vec<Vec<u64>>,
}

impl ErasurePolynomials {
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn eval<T: Real>(&self, eps: T) -> Vec<T> {
        let n = self.counts.len();
        let ok = T::one() - eps;
        // powers[k] = ε^k (1−ε)^(n−k)
        let powers: Vec<T> = (0..=n)
            .map(|k| eps.powi(k as i32) * ok.powi((n - k) as i32))
            .collect();
        self.counts
            .iter()
            .map(|row| {
                row.iter().zip(&powers).fold(T::zero(), |acc, (&c, &p)| {
                    acc + T::from_u64(c).expect("count") * p
                })
            })
            .collect()
    }
}

/// Echelon basis keyed by trailing (highest-index) nonzero coordinate.
#[derive(Clone)]
struct TrailingEchelon {
    rows: Vec<Option<Vec<u32>>>,
}

impl TrailingEchelon {
    fn new(n: usize) -> Self {
        TrailingEchelon {
            rows: vec![None; n],
        }
    }

    fn insert(&mut self, ctx: &FieldCtx, mut v: Vec<u32>) {
        for c in (0..v.len()).rev() {
            if v[c] == 0 {
                continue;
            }
            match &self.rows[c] {
                Some(b) => {
                    let f = FieldElement(v[c]);
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x ^= ctx.mul(f, FieldElement(y)).0;
                    }
                }
                None => {
                    let inv = ctx.inv(FieldElement(v[c])).expect("nonzero");
                    for x in v.iter_mut() {
                        *x = ctx.mul(inv, FieldElement(*x)).0;
                    }
                    self.rows[c] = Some(v);
                    return;
                }
            }
        }
    }
}

/// Counts undetermined patterns for every index by a depth-first walk over
/// positions, sharing the echelon state between patterns with a common prefix.
pub fn erasure_counts(g: &KernelMatrix) -> Result<ErasurePolynomials> {
    let n = g.size();
    if n > MAX_ERASURE_LENGTH {
        return Err(Error::Guard(format!(
            "L = {n} exceeds {MAX_ERASURE_LENGTH} for erasure-pattern enumeration"
        )));
    }
    let columns: Vec<Vec<u32>> = (0..n)
        .map(|c| g.matrix().column(c).into_iter().map(|e| e.0).collect())
        .collect();
    let mut counts = vec![vec![0u64; n + 1]; n];
    walk(
        g.ctx(),
        &columns,
        0,
        0,
        TrailingEchelon::new(n),
        &mut counts,
    );
    Ok(ErasurePolynomials { counts })
}

fn walk(
    ctx: &FieldCtx,
    columns: &[Vec<u32>],
    pos: usize,
    erased: usize,
    ech: TrailingEchelon,
    counts: &mut [Vec<u64>],
) {
    let n = columns.len();
    if pos == n {
        for (i, row) in ech.rows.iter().enumerate() {
            if row.is_none() {
                counts[i][erased] += 1;
            }
        }
        return;
    }
    if ech.rows.iter().all(Option::is_some) {
        // Full rank already: every completion determines everything.
        return;
    }
    let mut kept = ech.clone();
    kept.insert(ctx, columns[pos].clone());
    walk(ctx, columns, pos + 1, erased, kept, counts);
    walk(ctx, columns, pos + 1, erased + 1, ech, counts);
}

/// One polarization step of a q-ary erasure channel with parameter `eps`.
pub fn erasure_step<T: Real>(g: &KernelMatrix, eps: T) -> Result<Vec<T>> {
    if !(eps >= T::zero() && eps <= T::one()) {
        return Err(Error::Domain(format!(
            "erasure probability {eps} outside [0, 1]"
        )));
    }
    Ok(erasure_counts(g)?.eval(eps))
}
