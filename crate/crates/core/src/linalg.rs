//! Exact dense linear algebra over a [`FieldContext`].
//!
//! Matrices over the subfield `F_{p^e}` are ordinary [`FieldMatrix`] values
//! whose entries happen to lie in the embedded subfield; since the subfield
//! is closed under the field operations, elimination never leaves it.

use crate::field::{Fe, FieldContext};

/// Row-major dense matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(rows: &[Vec<Fe>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        FieldMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// `M · v`.
    pub fn mul_vec(&self, ctx: &FieldContext, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Reduced row echelon form with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FieldMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    /// The nonzero rows of the echelon form.
    pub fn basis_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rank).map(|i| self.matrix.row(i).to_vec()).collect()
    }

    /// Reduces `v` against the echelon rows; the residual is zero iff `v` lies
    /// in the row space.
    pub fn reduce(&self, ctx: &FieldContext, v: &[Fe]) -> Vec<Fe> {
        let mut v = v.to_vec();
        for (i, &pc) in self.pivot_cols.iter().enumerate() {
            let c = v[pc];
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in v.iter_mut().zip(self.matrix.row(i)) {
                *slot = ctx.sub(*slot, ctx.mul(c, r));
            }
        }
        v
    }

    pub fn row_space_contains(&self, ctx: &FieldContext, v: &[Fe]) -> bool {
        self.reduce(ctx, v).iter().all(|x| x.is_zero())
    }
}

/// Gauss-Jordan elimination. Pivots are taken column by column, left to
/// right, using the first nonzero entry at or below the current pivot row.
pub fn rref(ctx: &FieldContext, m: &FieldMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(piv) = (row..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, piv);
        let inv = ctx.inv(a.get(row, col)).expect("pivot is nonzero");
        for j in col..a.cols {
            a.set(row, j, ctx.mul(inv, a.get(row, j)));
        }
        for i in 0..a.rows {
            if i == row {
                continue;
            }
            let f = a.get(i, col);
            if f.is_zero() {
                continue;
            }
            for j in col..a.cols {
                let v = ctx.sub(a.get(i, j), ctx.mul(f, a.get(row, j)));
                a.set(i, j, v);
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    Rref {
        matrix: a,
        rank: row,
        pivot_cols,
    }
}

pub fn rank(ctx: &FieldContext, m: &FieldMatrix) -> usize {
    rref(ctx, m).rank
}

/// Basis of the right kernel `{v : M v = 0}`, one vector per free column in
/// increasing column order. Empty when the kernel is trivial.
pub fn kernel_basis(ctx: &FieldContext, m: &FieldMatrix) -> Vec<Vec<Fe>> {
    let r = rref(ctx, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !r.pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Fe::ZERO; m.cols];
            v[f] = Fe::ONE;
            for (i, &pc) in r.pivot_cols.iter().enumerate() {
                v[pc] = ctx.neg(r.matrix.get(i, f));
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(ctx: &FieldContext, m: &FieldMatrix) -> Option<FieldMatrix> {
    assert_eq!(m.rows, m.cols, "inverse of non-square matrix");
    let n = m.rows;
    let mut aug = FieldMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, n + i, Fe::ONE);
    }
    let r = rref(ctx, &aug);
    if r.rank < n || r.pivot_cols[..n] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    let mut inv = FieldMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.matrix.get(i, n + j));
        }
    }
    Some(inv)
}
