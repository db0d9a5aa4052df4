use std::ops::{Index, IndexMut};

use super::real::{Context, Real};
use crate::error::{Error, Result};

/// Dense row-major matrix of extended-precision reals.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Real>,
}

impl Matrix {
    pub fn zeros(ctx: &Context, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix { rows, cols, data: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: &Context, n: usize) -> Self {
        let mut m = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            m[(i, i)] = ctx.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Real>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!("ragged or empty rows ({r} rows)")));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Real] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, x: &[Real]) -> Result<Vec<Real>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix times vector of length {}", self.rows, self.cols, x.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = Real(rug::Float::new(row[0].prec()));
                for (a, b) in row.iter().zip(x) {
                    acc += a * b;
                }
                acc
            })
            .collect())
    }

    pub fn max_abs(&self) -> Real {
        let mut best = self.data[0].abs();
        for v in &self.data[1..] {
            let a = v.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// LU factorization with partial (row) pivoting.
    ///
    /// A pivot whose magnitude drops below `10^(10-P)` times the largest
    /// entry of the input is reported as [`Error::SingularMatrix`].
    pub fn lu(&self, ctx: &Context) -> Result<LuDecomposition> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("LU of non-square {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let scale = self.max_abs();
        let floor = &scale * &ctx.tol(10);
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_pivot: Option<Real> = None;
        let mut max_pivot: Option<Real> = None;

        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].abs();
            for i in k + 1..n {
                let a = lu[(i, k)].abs();
                if a > best {
                    best = a;
                    p = i;
                }
            }
            if scale.is_zero() || best < floor {
                return Err(Error::SingularMatrix { column: k });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)].clone();
            for i in k + 1..n {
                let factor = &lu[(i, k)] / &pivot;
                for j in k + 1..n {
                    let delta = &factor * &lu[(k, j)];
                    lu[(i, j)] -= delta;
                }
                lu[(i, k)] = factor;
            }
            if min_pivot.as_ref().is_none_or(|m| best < *m) {
                min_pivot = Some(best.clone());
            }
            if max_pivot.as_ref().is_none_or(|m| best > *m) {
                max_pivot = Some(best);
            }
        }
        Ok(LuDecomposition {
            lu,
            perm,
            pivot_ratio: max_pivot.unwrap() / min_pivot.unwrap(),
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Real;
    fn index(&self, (i, j): (usize, usize)) -> &Real {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Real {
        &mut self.data[i * self.cols + j]
    }
}

/// `P A = L U` with unit lower-triangular `L` stored below the diagonal.
#[derive(Clone, Debug)]
pub struct LuDecomposition {
    lu: Matrix,
    /// `perm[k]` is the original row that ended up in position `k`.
    perm: Vec<usize>,
    pivot_ratio: Real,
}

impl LuDecomposition {
    pub fn dim(&self) -> usize {
        self.lu.rows
    }

    /// Ratio of the largest to the smallest pivot magnitude, a cheap
    /// conditioning indicator.
    pub fn pivot_ratio(&self) -> &Real {
        &self.pivot_ratio
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[Real]) -> Result<Vec<Real>> {
        let n = self.dim();
        check_len(n, b.len())?;
        let mut y: Vec<Real> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let t = &self.lu[(i, j)] * &y[j];
                y[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = &self.lu[(i, j)] * &y[j];
                y[i] -= t;
            }
            y[i] /= &self.lu[(i, i)];
        }
        Ok(y)
    }

    /// Solves `A^T x = b` with the same factorization.
    pub fn solve_transposed(&self, b: &[Real]) -> Result<Vec<Real>> {
        let n = self.dim();
        check_len(n, b.len())?;
        // A^T = U^T L^T P, so solve U^T z = b, L^T w = z, x = P^T w.
        let mut z: Vec<Real> = b.to_vec();
        for i in 0..n {
            for j in 0..i {
                let t = &self.lu[(j, i)] * &z[j];
                z[i] -= t;
            }
            z[i] /= &self.lu[(i, i)];
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = &self.lu[(j, i)] * &z[j];
                z[i] -= t;
            }
        }
        let mut x = z.clone();
        for (k, &p) in self.perm.iter().enumerate() {
            x[p] = z[k].clone();
        }
        Ok(x)
    }
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if n != len {
        return Err(Error::DimensionMismatch(format!("system of size {n} with right-hand side of length {len}")));
    }
    Ok(())
}

/// Solves `A x = b` by partially pivoted LU.
pub fn lu_solve(ctx: &Context, a: &Matrix, b: &[Real]) -> Result<Vec<Real>> {
    a.lu(ctx)?.solve(b)
}

/// Solves `A^T x = b` reusing the factorization of `A`.
pub fn lu_solve_transposed(ctx: &Context, a: &Matrix, b: &[Real]) -> Result<Vec<Real>> {
    a.lu(ctx)?.solve_transposed(b)
}
