//! Dense LU solver for the small square systems produced by MFS collocation.
//!
//! Partial (row) pivoting is enough at this scale (a few hundred unknowns);
//! the factors are reusable across right-hand sides.

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        DenseMatrix {
            n_rows,
            n_cols,
            entries: vec![0.0; n_rows * n_cols],
        }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut m = DenseMatrix::zeros(n_rows, n_cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n_cols);
            m.entries[i * n_cols..(i + 1) * n_cols].copy_from_slice(row);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n_cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.n_cols + j] = v;
    }

    /// y = A x.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows)
            .map(|i| {
                let row = &self.entries[i * self.n_cols..(i + 1) * self.n_cols];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }
}

/// PA = LU factors with the permutation stored as a row map.
#[derive(Clone, Debug)]
pub struct LuFactors {
    n: usize,
    /// L (unit diagonal, below) and U (on and above) packed together.
    lu: Vec<f64>,
    /// perm[k] = original row index selected as pivot row k.
    perm: Vec<usize>,
}

/// Factors a square matrix with partial pivoting.
///
/// A pivot smaller than 1e-13 times the largest input entry is treated as
/// singular; MFS callers interpret that as ill-placed source points.
pub fn lu_factor(m: &DenseMatrix) -> Result<LuFactors> {
    let n = m.n_rows();
    if m.n_cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.n_cols(),
        });
    }
    let max_entry = m.entries.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let pivot_floor = 1e-13 * max_entry;

    let mut lu = m.entries.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_abs = lu[k * n + k].abs();
        for i in (k + 1)..n {
            let v = lu[i * n + k].abs();
            if v > pivot_abs {
                pivot_abs = v;
                pivot_row = i;
            }
        }
        if pivot_abs < pivot_floor || pivot_abs == 0.0 {
            return Err(Error::SingularMatrix {
                column: k,
                pivot: pivot_abs,
            });
        }
        if pivot_row != k {
            perm.swap(k, pivot_row);
            for j in 0..n {
                lu.swap(k * n + j, pivot_row * n + j);
            }
        }
        let pivot = lu[k * n + k];
        for i in (k + 1)..n {
            let factor = lu[i * n + k] / pivot;
            lu[i * n + k] = factor;
            for j in (k + 1)..n {
                lu[i * n + j] -= factor * lu[k * n + j];
            }
        }
    }
    Ok(LuFactors { n, lu, perm })
}

/// Solves A x = rhs using precomputed factors.
pub fn solve(factors: &LuFactors, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = factors.n;
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rhs.len(),
        });
    }
    // Forward substitution on the permuted rhs (L has unit diagonal).
    let mut x = vec![0.0; n];
    for i in 0..n {
        let row = &factors.lu[i * n..i * n + i];
        let mut s = rhs[factors.perm[i]];
        for (l, &xj) in row.iter().zip(&x) {
            s -= l * xj;
        }
        x[i] = s;
    }
    // Back substitution with U.
    for i in (0..n).rev() {
        let mut s = x[i];
        for (u, &xj) in factors.lu[i * n + i + 1..(i + 1) * n]
            .iter()
            .zip(&x[i + 1..])
        {
            s -= u * xj;
        }
        x[i] = s / factors.lu[i * n + i];
    }
    Ok(x)
}
