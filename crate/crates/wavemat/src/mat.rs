//! Dense constant matrices over a [`Scalar`] field, with the elimination
//! routines the wavelet algebra needs: general solve/inverse, rank,
//! one-dimensional kernels, and a square-root-free LDL* solver for
//! Hermitian positive definite systems.
//!
//! One code path serves both backends: pivots are selected by magnitude,
//! and zero decisions go through the [`TolerancePolicy`] so elimination is
//! exact on the rational backend.

use crate::error::{Error, Result};
use crate::field::{Scalar, TolerancePolicy};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat<S> {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Mat<S> {
        let mut c = self.clone();
        for v in &mut c.data {
            *v = v.conj();
        }
        c
    }

    /// Hermitian conjugate M* = conj(M)^T.
    pub fn conj_transpose(&self) -> Mat<S> {
        self.transpose().conj()
    }

    pub fn add(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out: Mat<S> = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero_raw() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &S) -> Mat<S> {
        let data = self.data.iter().map(|a| a.clone() * s.clone()).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    /// Max entrywise deviation from another matrix, as f64.
    pub fn max_abs_diff(&self, rhs: &Mat<S>) -> f64 {
        self.sub(rhs).max_abs()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.abs_f64()).fold(0.0, f64::max)
    }

    pub fn is_identity(&self, pol: &TolerancePolicy) -> bool {
        if self.rows != self.cols {
            return false;
        }
        if S::EXACT {
            *self == Self::identity(self.rows)
        } else {
            self.max_abs_diff(&Self::identity(self.rows)) <= pol.residual_eps
        }
    }

    pub fn is_unitary(&self, pol: &TolerancePolicy) -> bool {
        self.rows == self.cols && self.mul(&self.conj_transpose()).is_identity(pol)
    }

    fn pivot_row(&self, col: usize, from: usize, pol: &TolerancePolicy) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for r in from..self.rows {
            let a = &self[(r, col)];
            if pol.is_zero(a) {
                continue;
            }
            let mag = a.abs_f64();
            if best.map_or(true, |(_, m)| mag > m) {
                best = Some((r, mag));
            }
        }
        best.map(|(r, _)| r)
    }

    /// Inverse by Gauss-Jordan elimination with magnitude pivoting.
    pub fn inverse(&self, pol: &TolerancePolicy) -> Result<Mat<S>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Mat<S> = Mat::identity(n);
        for col in 0..n {
            let piv = a.pivot_row(col, col, pol).ok_or(Error::SingularMatrix)?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let d = a[(col, col)].try_inv().ok_or(Error::SingularMatrix)?;
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() * d.clone();
                inv[(col, j)] = inv[(col, j)].clone() * d.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.is_zero_raw() {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - f.clone() * inv[(col, j)].clone();
                }
            }
        }
        Ok(inv)
    }

    /// Determinant by Gaussian elimination with magnitude pivoting;
    /// zero for singular matrices.
    pub fn det(&self, pol: &TolerancePolicy) -> S {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(piv) = a.pivot_row(col, col, pol) else {
                return S::zero();
            };
            if piv != col {
                a.swap_rows(col, piv);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det * p.clone();
            let inv = p.try_inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = a[(r, col)].clone() * inv.clone();
                if f.is_zero_raw() {
                    continue;
                }
                for j in col + 1..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank by column-pivoted elimination with tolerance pivots.
    pub fn rank(&self, pol: &TolerancePolicy) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(piv) = a.pivot_row(col, rank, pol) else {
                continue;
            };
            a.swap_rows(rank, piv);
            let d = a[(rank, col)].try_inv().expect("nonzero pivot");
            for r in rank + 1..a.rows {
                let f = a[(r, col)].clone() * d.clone();
                for j in col..a.cols {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(rank, j)].clone();
                }
            }
            rank += 1;
        }
        rank
    }

    /// A nonzero vector spanning the kernel, for matrices of nullity
    /// exactly one. Errors with `RankDefect` when the nullity differs.
    pub fn kernel_vector(&self, pol: &TolerancePolicy) -> Result<Vec<S>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(piv) = a.pivot_row(col, row, pol) else {
                continue;
            };
            a.swap_rows(row, piv);
            let d = a[(row, col)].try_inv().expect("nonzero pivot");
            for j in 0..n {
                a[(row, j)] = a[(row, j)].clone() * d.clone();
            }
            for r in 0..n {
                if r == row {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.is_zero_raw() {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(row, j)].clone();
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        if pivot_cols.len() != n - 1 {
            return Err(Error::RankDefect);
        }
        let free = (0..n).find(|c| !pivot_cols.contains(c)).unwrap();
        let mut v = vec![S::zero(); n];
        v[free] = S::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[(r, free)].clone();
        }
        Ok(v)
    }

    /// Solve a Hermitian positive definite system by a square-root-free
    /// LDL* factorization, shared across right-hand sides.
    pub fn ldl(&self, pol: &TolerancePolicy) -> Result<LdlFactors<S>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut l: Mat<S> = Mat::identity(n);
        let mut d = vec![S::zero(); n];
        for j in 0..n {
            let mut dj = self[(j, j)].clone();
            for k in 0..j {
                dj = dj - l[(j, k)].clone() * l[(j, k)].conj() * d[k].clone();
            }
            if pol.is_zero(&dj) || !dj.is_positive_real() {
                return Err(Error::NotPositiveDefinite);
            }
            let dj_inv = dj.try_inv().unwrap();
            for i in j + 1..n {
                let mut s = self[(i, j)].clone();
                for k in 0..j {
                    s = s - l[(i, k)].clone() * l[(j, k)].conj() * d[k].clone();
                }
                l[(i, j)] = s * dj_inv.clone();
            }
            d[j] = dj;
        }
        Ok(LdlFactors { l, d })
    }
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Square-root-free factorization A = L D L* of a Hermitian positive
/// definite matrix; L is unit lower triangular, D diagonal real.
pub struct LdlFactors<S> {
    l: Mat<S>,
    d: Vec<S>,
}

impl<S: Scalar> LdlFactors<S> {
    pub fn solve(&self, b: &[S]) -> Vec<S> {
        let n = self.d.len();
        assert_eq!(b.len(), n);
        // Ly = b
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] = y[i].clone() - self.l[(i, k)].clone() * y[k].clone();
            }
        }
        // Dz = y
        for i in 0..n {
            y[i] = y[i].clone() * self.d[i].try_inv().expect("positive pivot");
        }
        // L* x = z
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] = y[i].clone() - self.l[(k, i)].conj() * y[k].clone();
            }
        }
        y
    }

    /// Product of the diagonal pivots, i.e. the determinant.
    pub fn det(&self) -> S {
        self.d
            .iter()
            .fold(S::one(), |acc, d| acc * d.clone())
    }
}
