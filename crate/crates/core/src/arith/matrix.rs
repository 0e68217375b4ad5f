//! Dense row-major matrices.
//!
//! Exact scalars get fraction-free (Bareiss-style) determinant and rank; the
//! complex-float instantiation gets a pivoted LU inverse with a condition
//! estimate for the vessel computations.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use super::scalar::{ExactField, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Column vector.
    pub fn column(v: Vec<T>) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v,
        }
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Kronecker product; block `(i, j)` of the result is `self[i, j] * rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            self[(r / rhs.rows, c / rhs.cols)].clone() * rhs[(r % rhs.rows, c % rhs.cols)].clone()
        })
    }

    /// `v^T M w` for plain vectors.
    pub fn bilinear(&self, v: &[T], w: &[T]) -> Result<T> {
        if v.len() != self.rows || w.len() != self.cols {
            return Err(Error::Shape("bilinear form vector lengths".into()));
        }
        let mut s = T::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let mut row = T::zero();
            for (j, wj) in w.iter().enumerate() {
                row = row + self[(i, j)].clone() * wj.clone();
            }
            s = s + vi.clone() * row;
        }
        Ok(s)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Shape("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn leading_block(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self[(i, j)].clone())
    }

    /// Vertical concatenation of equally wide blocks.
    pub fn vstack(blocks: &[Self]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Self::new(rows, cols, data)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }
}

impl<F: ExactField> Matrix<F> {
    /// Determinant by Bareiss fraction-free elimination with row pivoting.
    pub fn det(&self) -> Result<F> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let mut a = self.to_rows();
        let mut prev = F::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(F::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j].clone() * a[k][k].clone()
                        - a[i][k].clone() * a[k][j].clone())
                        / prev.clone();
                }
                a[i][k] = F::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Rank and a kernel basis, from fraction-free Gauss–Jordan elimination.
    ///
    /// Every returned vector `v` satisfies `M v = 0` exactly and
    /// `rank + kernel.len() == cols`.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<F>>) {
        let (reduced, pivots) = self.fraction_free_reduce();
        let rank = pivots.len();
        let pivot_of_col: Vec<Option<usize>> = (0..self.cols)
            .map(|c| pivots.iter().position(|&pc| pc == c))
            .collect();
        let kernel = (0..self.cols)
            .filter(|&c| pivot_of_col[c].is_none())
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -(reduced[row][free].clone() / reduced[row][pc].clone());
                }
                v
            })
            .collect();
        (rank, kernel)
    }

    pub fn rank(&self) -> usize {
        self.fraction_free_reduce().1.len()
    }

    /// Row-reduces so that each pivot column is zero outside its pivot row.
    /// Row updates are `(pivot * r_i - a_ic * r_p) / previous_pivot`.
    fn fraction_free_reduce(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let piv = a[r][c].clone();
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let factor = row[c].clone();
                for (x, pr) in row.iter_mut().zip(&pivot_row) {
                    *x = (piv.clone() * x.clone() - factor.clone() * pr.clone()) / prev.clone();
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Exact inverse by Gauss–Jordan elimination on `[M | I]`.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                let kernel_dim = n - self.rank();
                return Err(Error::Singular { kernel_dim });
            };
            a.swap(p, c);
            inv.swap(p, c);
            let piv_inv = F::one() / a[c][c].clone();
            for j in 0..n {
                a[c][j] = a[c][j].clone() * piv_inv.clone();
                inv[c][j] = inv[c][j].clone() * piv_inv.clone();
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].clone() - f.clone() * a[c][j].clone();
                    inv[i][j] = inv[i][j].clone() - f.clone() * inv[c][j].clone();
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Leading principal minors of orders `1..=n`.
    ///
    /// With `hermitian` set, the matrix must equal its conjugate transpose,
    /// and every minor is then checked to be exactly real.
    pub fn leading_principal_minors(&self, hermitian: bool) -> Result<Vec<F>> {
        self.require_square()?;
        if hermitian {
            self.check_hermitian()?;
        }
        let minors: Vec<F> = (1..=self.rows)
            .map(|k| self.leading_block(k).det())
            .collect::<Result<_>>()?;
        if hermitian {
            if let Some(k) = minors.iter().position(|m| !m.is_real()) {
                return Err(Error::InvariantViolation(format!(
                    "minor of order {} of a Hermitian matrix is not real",
                    k + 1
                )));
            }
        }
        Ok(minors)
    }

    pub fn check_hermitian(&self) -> Result<()> {
        self.require_square()?;
        for i in 0..self.rows {
            for j in i..self.cols {
                if self[(i, j)] != self[(j, i)].conj() {
                    return Err(Error::SymmetryViolation { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn to_complex(&self) -> Matrix<Complex64> {
        self.map(Scalar::to_complex)
    }
}

impl Matrix<Complex64> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// LU inverse with partial pivoting, returning the inverse and the
    /// 1-norm condition number `‖A‖₁‖A⁻¹‖₁` (infinite when singular).
    pub fn inverse_with_condition(&self) -> Result<(Self, f64)> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        let scale = self.max_abs();
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm()))
                .expect("nonempty pivot range");
            if a[p][c].norm() <= f64::EPSILON * scale * n as f64 || scale == 0.0 {
                return Ok((Self::zeros(n, n), f64::INFINITY));
            }
            a.swap(p, c);
            inv.swap(p, c);
            let piv_inv = a[c][c].inv();
            for j in 0..n {
                a[c][j] *= piv_inv;
                inv[c][j] *= piv_inv;
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a[i][c];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let acj = a[c][j];
                    let icj = inv[c][j];
                    a[i][j] -= f * acj;
                    inv[i][j] -= f * icj;
                }
            }
        }
        let inv = Self::from_rows(inv)?;
        let cond = self.norm1() * inv.norm1();
        Ok((inv, cond))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

// Panicking operator forms, for shapes known to agree.
impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: Self) -> Matrix<T> {
        self.try_add(rhs).expect("matrix shapes agree")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: Self) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix shapes agree")
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix shapes agree")
    }
}
