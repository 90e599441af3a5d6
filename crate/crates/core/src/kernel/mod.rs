//! Square invertible kernel matrices built from curve evaluation codes,
//! their binary descent, LUP reduction and the polarization predicates.

mod format;
mod lup;
mod matrix;

pub use lup::{lup_lower, Lup, Permutation};
pub use matrix::{Matrix, RowEchelon};

use crate::curves::{coordinate_values, enumerate_points, evaluate_all, representative, CurveSpec};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};

/// An invertible L x L matrix over GF(2^m).
///
/// When built from a curve, `pole_orders[i]` is the pole order at infinity of
/// the function evaluated in row `i`; rows are sorted by strictly decreasing
/// pole order, so rows `i+1..` span the functions of smaller pole order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelMatrix {
    ctx: FieldCtx,
    matrix: Matrix,
    pole_orders: Vec<u64>,
    genus: u64,
}

impl KernelMatrix {
    /// Wraps a square matrix, checking entries and invertibility.
    pub fn new(ctx: FieldCtx, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::Dimension(format!(
                "kernel must be square and nonempty, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if let Some(&e) = matrix.entries().iter().find(|&&e| !ctx.contains(e)) {
            return Err(Error::ElementOutOfRange {
                value: e.0.into(),
                m: ctx.m(),
            });
        }
        if matrix.rank(&ctx) != matrix.rows() {
            return Err(Error::Singular);
        }
        Ok(KernelMatrix {
            ctx,
            matrix,
            pole_orders: Vec::new(),
            genus: 0,
        })
    }

    pub fn from_values(ctx: FieldCtx, rows: &[&[u32]]) -> Result<Self> {
        Self::new(ctx, Matrix::from_values(rows)?)
    }

    /// Attaches pole orders; they must be strictly decreasing and one per row.
    pub fn with_pole_orders(mut self, poles: Vec<u64>) -> Result<Self> {
        if poles.len() != self.size() {
            return Err(Error::Dimension(format!(
                "{} pole orders for {} rows",
                poles.len(),
                self.size()
            )));
        }
        if poles.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Domain(
                "pole orders must be strictly decreasing".into(),
            ));
        }
        self.pole_orders = poles;
        Ok(self)
    }

    pub fn with_genus(mut self, genus: u64) -> Self {
        self.genus = genus;
        self
    }

    /// Arikan's 2 x 2 kernel [[1, 0], [1, 1]].
    pub fn arikan() -> Self {
        Self::from_values(FieldCtx::new(1).expect("GF(2)"), &[&[1, 0], &[1, 1]])
            .expect("Arikan kernel is invertible")
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        Self::new(ctx, Matrix::identity(n)).expect("identity is invertible")
    }

    #[inline]
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[FieldElement] {
        self.matrix.row(i)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.matrix.get(r, c)
    }

    pub fn pole_orders(&self) -> Option<&[u64]> {
        if self.pole_orders.is_empty() {
            None
        } else {
            Some(&self.pole_orders)
        }
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn is_binary(&self) -> bool {
        self.ctx.m() == 1
    }

    /// Codeword `u G` for a message `u` of length L.
    pub fn encode(&self, u: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.size();
        debug_assert_eq!(u.len(), n);
        let mut x = vec![FieldElement::ZERO; n];
        for (i, &ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (xj, &g) in x.iter_mut().zip(self.row(i)) {
                *xj = self.ctx.add(*xj, self.ctx.mul(ui, g));
            }
        }
        x
    }
}

/// Evaluation kernel of a curve: greedy rank-complete selection over nongaps.
///
/// Nongaps are visited in ascending order and a row is kept only if it
/// increases the rank; for positive genus some evaluation vectors coincide
/// on the affine points (x^4 = x on the Hermitian curve over GF(4)).
pub fn build_kernel(spec: &CurveSpec, ctx: &FieldCtx) -> Result<KernelMatrix> {
    if ctx.size() != spec.q {
        return Err(Error::FieldMismatch);
    }
    let points = enumerate_points(spec, ctx)?;
    let coords: Vec<Vec<FieldElement>> = points
        .iter()
        .map(|p| coordinate_values(spec, p, ctx))
        .collect();
    let n = points.len();
    // L(dP) evaluates onto GF(q)^L once d >= L + 2g - 1.
    let last_useful = n as u64 + 2 * spec.genus + 1;
    let semigroup = spec.semigroup();

    let mut echelon = RowEchelon::new(*ctx, n);
    let mut kept: Vec<(u64, Vec<FieldElement>)> = Vec::with_capacity(n);
    for pole in semigroup.iter() {
        if kept.len() == n {
            break;
        }
        if pole > last_useful {
            return Err(Error::Construction(format!(
                "rank {} < {} after pole order {}",
                kept.len(),
                n,
                last_useful
            )));
        }
        let mono = representative(spec, pole)
            .ok_or_else(|| Error::Construction(format!("no monomial of pole order {pole}")))?;
        let row = evaluate_all(&mono, &coords, ctx);
        if echelon.insert(&row) {
            kept.push((pole, row));
        }
    }
    kept.reverse();
    let (poles, rows): (Vec<u64>, Vec<Vec<FieldElement>>) = kept.into_iter().unzip();
    Ok(KernelMatrix::new(*ctx, Matrix::from_rows(rows)?)?
        .with_pole_orders(poles)?
        .with_genus(spec.genus))
}

/// Concatenation with the (m, m, 1) descent code.
///
/// Source row `g_i` becomes the m binary rows `descend(α^k g_i)`, k = 0..m.
pub fn descend_binary(k: &KernelMatrix) -> KernelMatrix {
    let ctx = k.ctx();
    let m = ctx.m() as usize;
    let n = k.size();
    let alpha = ctx.alpha();
    let mut rows = Vec::with_capacity(m * n);
    for i in 0..n {
        let mut scale = FieldElement::ONE;
        for _ in 0..m {
            let bits: Vec<FieldElement> = k
                .row(i)
                .iter()
                .flat_map(|&e| ctx.descend(ctx.mul(scale, e)))
                .map(|b| FieldElement(u32::from(b)))
                .collect();
            rows.push(bits);
            scale = ctx.mul(scale, alpha);
        }
    }
    let f2 = FieldCtx::new(1).expect("GF(2)");
    let matrix = Matrix::from_rows(rows).expect("rectangular by construction");
    KernelMatrix::new(f2, matrix)
        .expect("descent of an invertible kernel is invertible")
        .with_genus(k.genus())
}

/// Last nonzero row (1-based) of every column; 0 for a zero column.
fn last_nonzero_rows(g: &Matrix) -> Vec<usize> {
    (0..g.cols())
        .map(|c| {
            (0..g.rows())
                .rev()
                .find(|&r| !g.get(r, c).is_zero())
                .map_or(0, |r| r + 1)
        })
        .collect()
}

/// True iff no column permutation of `g` is upper triangular.
pub fn polarizes_prime(g: &KernelMatrix) -> Result<bool> {
    if !g.is_binary() {
        return Err(Error::Domain(
            "polarizes_prime needs a prime field; use polarizes_nonprime".into(),
        ));
    }
    Ok(!column_permutable_to_upper(g.matrix()))
}

/// Hall-type check: column c can sit at position j iff its last nonzero row
/// is at most j, so an ordering exists iff at least j columns qualify for
/// every j.
pub fn column_permutable_to_upper(g: &Matrix) -> bool {
    let last = last_nonzero_rows(g);
    (1..=g.rows()).all(|j| last.iter().filter(|&&r| r <= j).count() >= j)
}

/// For m >= 2: the LUP-reduced lower factor must generate GF(2^m).
pub fn polarizes_nonprime(g: &KernelMatrix) -> Result<bool> {
    if g.is_binary() {
        return Err(Error::Domain(
            "polarizes_nonprime needs m >= 2; use polarizes_prime".into(),
        ));
    }
    let lup = lup_lower(g)?;
    let degree = g.ctx().subfield_degree(lup.lower.matrix().entries())?;
    Ok(degree == g.ctx().m())
}

/// Dispatches to the prime or non-prime predicate.
pub fn polarizes(g: &KernelMatrix) -> Result<bool> {
    if g.is_binary() {
        polarizes_prime(g)
    } else {
        polarizes_nonprime(g)
    }
}
