use rand::RngExt;
use rand_pcg::Pcg64;
use rayon::prelude::*;
use serde::Serialize;

use super::erasure::{erasure_counts, ErasurePolynomials};
use crate::error::{Error, Result};
use crate::kernel::KernelMatrix;
use crate::num::{lit, Real};

/// Largest L^n evaluated in full-tree mode.
pub const MAX_TREE_LEAVES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeMode {
    FullTree,
    SampledPaths { paths: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolarizationRun<T> {
    #[serde(skip)]
    pub kernel: KernelMatrix,
    pub eps: T,
    pub levels: u32,
    pub mode: TreeMode,
    pub seed: u64,
    /// Leaf erasure probabilities; canonical index order in full-tree mode
    /// (B_1 most significant), path order otherwise.
    pub results: Vec<T>,
}

impl<T: Real> PolarizationRun<T> {
    pub fn mean(&self) -> T {
        let sum = self.results.iter().fold(T::zero(), |a, &b| a + b);
        sum / T::from_usize(self.results.len()).expect("nonempty")
    }

    /// Fraction of leaves with erasure probability outside (lo, hi).
    pub fn polarized_fraction(&self, lo: T, hi: T) -> T {
        let hits = self.results.iter().filter(|&&p| p <= lo || p >= hi).count();
        T::from_usize(hits).expect("count") / T::from_usize(self.results.len()).expect("nonempty")
    }
}

pub fn polarize_tree<T: Real>(
    g: &KernelMatrix,
    eps: T,
    levels: u32,
    mode: TreeMode,
    seed: u64,
) -> Result<PolarizationRun<T>> {
    if !(eps >= T::zero() && eps <= T::one()) {
        return Err(Error::Domain(format!(
            "erasure probability {eps} outside [0, 1]"
        )));
    }
    let poly = erasure_counts(g)?;
    let results = match mode {
        TreeMode::FullTree => full_tree(&poly, eps, levels)?,
        TreeMode::SampledPaths { paths } => sampled(&poly, eps, levels, paths, seed),
    };
    Ok(PolarizationRun {
        kernel: g.clone(),
        eps,
        levels,
        mode,
        seed,
        results,
    })
}

fn full_tree<T: Real>(poly: &ErasurePolynomials, eps: T, levels: u32) -> Result<Vec<T>> {
    let n = poly.len() as u64;
    let leaves = n.checked_pow(levels).filter(|&c| c <= MAX_TREE_LEAVES);
    if leaves.is_none() {
        return Err(Error::Guard(format!(
            "L^n = {n}^{levels} exceeds {MAX_TREE_LEAVES} leaves"
        )));
    }
    let mut level = vec![eps];
    for _ in 0..levels {
        level = level.par_iter().flat_map_iter(|&p| poly.eval(p)).collect();
    }
    Ok(level)
}

/// One leaf per path; path `k` uses the PCG stream (seed, k).
fn sampled<T: Real>(
    poly: &ErasurePolynomials,
    eps: T,
    levels: u32,
    paths: usize,
    seed: u64,
) -> Vec<T> {
    let n = poly.len();
    (0..paths)
        .into_par_iter()
        .map(|k| {
            let mut rng = Pcg64::new(u128::from(seed), k as u128);
            (0..levels).fold(eps, |p, _| poly.eval(p)[rng.random_range(0..n)])
        })
        .collect()
}

/// For each β, the fraction of leaves with erasure probability below
/// 2^(−L^(nβ)).
pub fn rate_diagnostic<T: Real>(run: &PolarizationRun<T>, betas: &[T]) -> Result<Vec<(T, T)>> {
    if run.mode != TreeMode::FullTree {
        return Err(Error::Domain(
            "rate diagnostic needs a full-tree run".into(),
        ));
    }
    let base = T::from_usize(run.kernel.size()).expect("small");
    let count = T::from_usize(run.results.len()).expect("nonempty");
    let n = T::from_u32(run.levels).expect("small");
    Ok(betas
        .iter()
        .map(|&beta| {
            let threshold = lit::<T>(2.0).powf(-base.powf(n * beta));
            let hits = run.results.iter().filter(|&&p| p < threshold).count();
            (beta, T::from_usize(hits).expect("count") / count)
        })
        .collect())
}
