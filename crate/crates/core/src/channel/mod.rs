//! Discrete memoryless channels, their synthesized subchannels, and exact
//! polarization of erasure channels.

mod erasure;
mod tree;

pub use erasure::{erasure_counts, erasure_step, ErasurePolynomials, MAX_ERASURE_LENGTH};
pub use tree::{polarize_tree, rate_diagnostic, PolarizationRun, TreeMode, MAX_TREE_LEAVES};

use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::kernel::KernelMatrix;
use crate::num::{lit, Real};

/// Largest outputs^L · q^L accepted by [`subchannel`].
pub const SUBCHANNEL_GUARD: f64 = 1e8;

/// Transition matrix W(y|x) with uniform input over `q` symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct Dmc<T> {
    q: usize,
    outputs: usize,
    probs: Vec<Vec<T>>,
}

impl<T: Real> Dmc<T> {
    pub fn new(probs: Vec<Vec<T>>) -> Result<Self> {
        let q = probs.len();
        if q < 2 {
            return Err(Error::Domain("a channel needs at least two inputs".into()));
        }
        let outputs = probs[0].len();
        if outputs == 0 || probs.iter().any(|r| r.len() != outputs) {
            return Err(Error::Dimension("ragged or empty transition matrix".into()));
        }
        let tol = lit::<T>(1e-12).max(T::epsilon() * lit(4.0 * outputs as f64));
        for row in &probs {
            if row.iter().any(|&p| !(p >= T::zero())) {
                return Err(Error::Domain("negative transition probability".into()));
            }
            let sum = row.iter().fold(T::zero(), |a, &b| a + b);
            if (sum - T::one()).abs() > tol {
                return Err(Error::Domain(format!("row sums to {sum}, not 1")));
            }
        }
        Ok(Dmc { q, outputs, probs })
    }

    /// q-ary erasure channel; output `q` is the erasure symbol.
    pub fn erasure(q: usize, eps: T) -> Result<Self> {
        check_probability(eps)?;
        let probs = (0..q)
            .map(|x| {
                let mut row = vec![T::zero(); q + 1];
                row[x] = T::one() - eps;
                row[q] = eps;
                row
            })
            .collect();
        Self::new(probs)
    }

    pub fn bsc(p: T) -> Result<Self> {
        check_probability(p)?;
        Self::new(vec![vec![T::one() - p, p], vec![p, T::one() - p]])
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn prob(&self, x: usize, y: usize) -> T {
        self.probs[x][y]
    }

    pub fn probs(&self) -> &[Vec<T>] {
        &self.probs
    }

    /// Symmetric capacity in q-ary units.
    pub fn capacity(&self) -> T {
        let q = T::from_usize(self.q).expect("small");
        let mut total = T::zero();
        for y in 0..self.outputs {
            let mean = self.probs.iter().fold(T::zero(), |a, r| a + r[y]) / q;
            for row in &self.probs {
                let w = row[y];
                if w > T::zero() {
                    total = total + w * (w / mean).ln();
                }
            }
        }
        total / (q * q.ln())
    }

    /// Z(W) = 1/(q(q−1)) Σ_{x≠x'} Σ_y √(W(y|x) W(y|x')).
    pub fn bhattacharyya(&self) -> T {
        let mut total = T::zero();
        for a in 0..self.q {
            for b in 0..self.q {
                if a == b {
                    continue;
                }
                for y in 0..self.outputs {
                    total = total + (self.probs[a][y] * self.probs[b][y]).sqrt();
                }
            }
        }
        let q = T::from_usize(self.q).expect("small");
        total / (q * (q - T::one()))
    }
}

fn check_probability<T: Real>(p: T) -> Result<()> {
    if p >= T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("probability {p} outside [0, 1]")))
    }
}

/// Erasure parameter of a q-ary erasure channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErasureState<T> {
    pub eps: T,
    pub q: usize,
}

impl<T: Real> ErasureState<T> {
    pub fn new(eps: T, q: usize) -> Result<Self> {
        check_probability(eps)?;
        Ok(ErasureState { eps, q })
    }

    pub fn to_dmc(&self) -> Result<Dmc<T>> {
        Dmc::erasure(self.q, self.eps)
    }
}

/// A square invertible linear map over a finite alphabet {0..q}.
pub trait LinearKernel {
    fn size(&self) -> usize;
    fn alphabet(&self) -> usize;
    /// x = u G.
    fn encode_symbols(&self, u: &[usize]) -> Vec<usize>;
}

impl LinearKernel for KernelMatrix {
    fn size(&self) -> usize {
        KernelMatrix::size(self)
    }

    fn alphabet(&self) -> usize {
        self.ctx().size() as usize
    }

    fn encode_symbols(&self, u: &[usize]) -> Vec<usize> {
        let u: Vec<FieldElement> = u.iter().map(|&s| FieldElement(s as u32)).collect();
        self.encode(&u).into_iter().map(|e| e.0 as usize).collect()
    }
}

/// Kernel over the prime field GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeKernel {
    p: usize,
    rows: Vec<Vec<usize>>,
}

impl PrimeKernel {
    pub fn new(p: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if p < 2 || (2..p).any(|d| d * d <= p && p.is_multiple_of(d)) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("prime kernel must be square".into()));
        }
        if rows.iter().flatten().any(|&v| v >= p) {
            return Err(Error::Domain(format!("entry out of range for GF({p})")));
        }
        let k = PrimeKernel { p, rows };
        if k.rank() != n {
            return Err(Error::Singular);
        }
        Ok(k)
    }

    fn inv(&self, a: usize) -> usize {
        (1..self.p)
            .find(|&b| a * b % self.p == 1)
            .expect("nonzero in a field")
    }

    fn rank(&self) -> usize {
        let p = self.p;
        let mut a = self.rows.clone();
        let n = a.len();
        let mut rank = 0;
        for c in 0..n {
            let Some(r) = (rank..n).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, r);
            let inv = self.inv(a[rank][c]);
            let pivot = a[rank].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != rank && row[c] != 0 {
                    let f = row[c] * inv % p;
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + p * p - f * y) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl LinearKernel for PrimeKernel {
    fn size(&self) -> usize {
        self.rows.len()
    }

    fn alphabet(&self) -> usize {
        self.p
    }

    fn encode_symbols(&self, u: &[usize]) -> Vec<usize> {
        let n = self.rows.len();
        (0..n)
            .map(|j| {
                u.iter()
                    .zip(&self.rows)
                    .map(|(&ui, r)| ui * r[j])
                    .sum::<usize>()
                    % self.p
            })
            .collect()
    }
}

/// Exact W^(i): input u_i, output (y_0..y_{L−1}, u_0..u_{i−1}), averaging
/// over u_{i+1}..u_{L−1}. Output index is `y + outputs^L · prefix` with both
/// parts little-endian.
pub fn subchannel<T: Real, K: LinearKernel>(w: &Dmc<T>, g: &K, i: usize) -> Result<Dmc<T>> {
    let n = g.size();
    let q = g.alphabet();
    if q != w.q() {
        return Err(Error::Dimension(format!(
            "kernel alphabet {q} vs channel inputs {}",
            w.q()
        )));
    }
    if i >= n {
        return Err(Error::Dimension(format!(
            "index {i} out of range for L = {n}"
        )));
    }
    let work = (w.outputs() as f64).powi(n as i32) * (q as f64).powi(n as i32);
    if work > SUBCHANNEL_GUARD {
        return Err(Error::Guard(format!(
            "outputs^L * q^L = {work:.3e} exceeds {SUBCHANNEL_GUARD:.0e}"
        )));
    }
    let ys = w.outputs().pow(n as u32);
    let prefixes = q.pow(i as u32);
    let scale = T::one() / T::from_usize(q).expect("small").powi(n as i32 - 1);
    let mut probs = vec![vec![T::zero(); ys * prefixes]; q];

    let mut u = vec![0usize; n];
    for _ in 0..q.pow(n as u32) {
        let x = g.encode_symbols(&u);
        let prefix = u[..i].iter().rev().fold(0, |acc, &s| acc * q + s);
        let row = &mut probs[u[i]];
        let mut y = vec![0usize; n];
        for y_index in 0..ys {
            let p = x
                .iter()
                .zip(&y)
                .fold(T::one(), |acc, (&xj, &yj)| acc * w.prob(xj, yj));
            row[y_index + ys * prefix] = row[y_index + ys * prefix] + p * scale;
            increment(&mut y, w.outputs());
        }
        increment(&mut u, q);
    }
    Dmc::new(probs)
}

/// Little-endian odometer step.
fn increment(digits: &mut [usize], radix: usize) {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return;
        }
        *d = 0;
    }
}
