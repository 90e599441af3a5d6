use super::{KernelMatrix, Matrix};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};

/// A column permutation. `order[j]` is the source column placed at `j` by
/// the forward map `G -> G Π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    order: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            order: (0..n).collect(),
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The matrix P with `(G Π) P = G`, i.e. `P[j][order[j]] = 1`.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.order.len();
        let mut p = Matrix::zeros(n, n);
        for (j, &c) in self.order.iter().enumerate() {
            p.set(j, c, FieldElement::ONE);
        }
        p
    }
}

/// `G = lower · upper · perm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lup {
    pub lower: KernelMatrix,
    pub upper: Matrix,
    pub perm: Permutation,
}

impl Lup {
    pub fn recompose(&self) -> Matrix {
        let ctx = self.lower.ctx();
        self.lower
            .matrix()
            .mul(ctx, &self.upper)
            .and_then(|lu| lu.mul(ctx, &self.perm.to_matrix()))
            .expect("square factors of equal size")
    }
}

/// Column elimination from the right: pivot on the first usable column of
/// each row, then clear the rest of that row with upper-triangular column
/// operations.
pub fn lup_lower(g: &KernelMatrix) -> Result<Lup> {
    let ctx = *g.ctx();
    let n = g.size();
    let mut a = g.matrix().clone();
    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..n {
        let pivot = (i..n)
            .find(|&j| !a.get(i, j).is_zero())
            .ok_or(Error::Singular)?;
        a.swap_cols(i, pivot);
        order.swap(i, pivot);
        let inv = ctx.inv(a.get(i, i))?;
        for k in i + 1..n {
            let f = ctx.mul(a.get(i, k), inv);
            if f.is_zero() {
                continue;
            }
            for r in i..n {
                let v = ctx.add(a.get(r, k), ctx.mul(f, a.get(r, i)));
                a.set(r, k, v);
            }
        }
    }
    let permuted = g.matrix().select_columns(&order);
    let upper = forward_substitute(&ctx, &a, &permuted)?;
    debug_assert!(upper.is_upper_triangular());
    let lower = KernelMatrix::new(ctx, a)?;
    Ok(Lup {
        lower,
        upper,
        perm: Permutation { order },
    })
}

/// Solves `lower · X = rhs` for lower-triangular `lower` with nonzero diagonal.
fn forward_substitute(ctx: &FieldCtx, lower: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    let n = lower.rows();
    let mut x = Matrix::zeros(n, rhs.cols());
    for c in 0..rhs.cols() {
        for i in 0..n {
            let mut acc = rhs.get(i, c);
            for k in 0..i {
                acc = ctx.add(acc, ctx.mul(lower.get(i, k), x.get(k, c)));
            }
            x.set(i, c, ctx.div(acc, lower.get(i, i))?);
        }
    }
    Ok(x)
}
