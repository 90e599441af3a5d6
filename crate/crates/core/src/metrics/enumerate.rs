//! Exhaustive coset minimum-weight search.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::gf::{FieldCtx, FieldElement};

/// Spans at least this large are split over the top digit in parallel.
const PARALLEL_THRESHOLD: u128 = 1 << 14;

/// Precomputed row multiples: `steps[t-1]` is (2^t − 1)·g, which is the XOR
/// delta between coefficients a and a+1 when a has t−1 trailing one bits.
struct Digit {
    steps: Vec<Vec<u32>>,
}

impl Digit {
    fn new(ctx: &FieldCtx, row: &[FieldElement]) -> Self {
        let steps = (1..=ctx.m())
            .map(|t| {
                let c = FieldElement((1u32 << t) - 1);
                row.iter().map(|&g| ctx.mul(c, g).0).collect()
            })
            .collect();
        Digit { steps }
    }
}

#[inline]
fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

#[inline]
fn xor_into(v: &mut [u32], d: &[u32]) {
    for (x, y) in v.iter_mut().zip(d) {
        *x ^= y;
    }
}

/// Odometer over all coefficient vectors of `digits`, starting from `start`.
/// Stops once the running minimum reaches `floor` or `shared` drops to it.
fn odometer(
    q: u32,
    start: Vec<u32>,
    digits: &[Digit],
    floor: usize,
    shared: &AtomicUsize,
) -> usize {
    let mut cur = start;
    let mut best = weight(&cur);
    let mut coeff = vec![0u32; digits.len()];
    let top = q.trailing_zeros() as usize;
    let mut counter: u32 = 0;
    'outer: loop {
        if best <= floor {
            break;
        }
        let mut j = 0;
        while j < digits.len() && coeff[j] == q - 1 {
            xor_into(&mut cur, &digits[j].steps[top - 1]);
            coeff[j] = 0;
            j += 1;
        }
        if j == digits.len() {
            break 'outer;
        }
        let t = coeff[j].trailing_ones() as usize + 1;
        xor_into(&mut cur, &digits[j].steps[t - 1]);
        coeff[j] += 1;
        best = best.min(weight(&cur));
        counter = counter.wrapping_add(1);
        if counter.is_multiple_of(4096) {
            let global = shared.fetch_min(best, Ordering::Relaxed).min(best);
            if global <= floor {
                break;
            }
        }
    }
    shared.fetch_min(best, Ordering::Relaxed);
    best
}

/// Minimum Hamming weight of `target + span(rows)`, ignoring values below
/// `floor` (the search stops as soon as `floor` is reached).
pub(crate) fn coset_min_weight(
    ctx: &FieldCtx,
    target: &[FieldElement],
    rows: &[&[FieldElement]],
    floor: usize,
) -> usize {
    let start: Vec<u32> = target.iter().map(|e| e.0).collect();
    if rows.is_empty() {
        return weight(&start);
    }
    let q = ctx.size() as u32;
    let digits: Vec<Digit> = rows.iter().map(|r| Digit::new(ctx, r)).collect();
    let shared = AtomicUsize::new(usize::MAX);
    let total = (q as u128)
        .checked_pow(rows.len() as u32)
        .unwrap_or(u128::MAX);
    if total < PARALLEL_THRESHOLD || rows.len() == 1 {
        return odometer(q, start, &digits, floor, &shared);
    }
    // Fix the last coefficient per task and enumerate the rest.
    let inner = &digits[..digits.len() - 1];
    let last_row = rows[rows.len() - 1];
    (0..q)
        .into_par_iter()
        .map(|c| {
            let c = FieldElement(c);
            let begin: Vec<u32> = start
                .iter()
                .zip(last_row)
                .map(|(&s, &g)| s ^ ctx.mul(c, g).0)
                .collect();
            odometer(q, begin, inner, floor, &shared)
        })
        .min()
        .expect("q >= 2")
        .min(shared.load(Ordering::Relaxed))
}
