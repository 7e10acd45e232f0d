//! Dense square and rectangular matrices over a quadratic field.

use alloc::vec::Vec;
use core::ops::Mul;

use crate::error::{Error, Result};
use crate::numberfield::{FieldDescriptor, QuadFieldElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<QuadFieldElem>,
}

impl Matrix {
    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: (0..rows * cols).map(|_| field.zero()).collect(),
        }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: FieldDescriptor, diag: &[QuadFieldElem]) -> Result<Self> {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, x) in diag.iter().enumerate() {
            m.set(
                i,
                i,
                x.lift_to(field).ok_or(Error::FieldMismatch {
                    left: field,
                    right: x.field(),
                })?,
            );
        }
        Ok(m)
    }

    /// Builds a matrix from rows; every row must have the same length and
    /// every entry must lie in `field` (rational entries are lifted).
    pub fn from_rows(field: FieldDescriptor, rows: Vec<Vec<QuadFieldElem>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimMismatch {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            for x in row {
                let lifted = x.lift_to(field).ok_or(Error::FieldMismatch {
                    left: field,
                    right: x.field(),
                })?;
                data.push(lifted);
            }
        }
        Ok(Matrix {
            field,
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &QuadFieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: QuadFieldElem) {
        debug_assert_eq!(x.field(), self.field);
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[QuadFieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<QuadFieldElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QuadFieldElem)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn to_rows(&self) -> Vec<Vec<QuadFieldElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for (i, j, x) in self.entries() {
            t.set(j, i, x.clone());
        }
        t
    }

    pub fn map(&self, f: impl Fn(&QuadFieldElem) -> QuadFieldElem) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| -x)
    }

    pub fn scale(&self, k: &QuadFieldElem) -> Matrix {
        self.map(|x| x * k)
    }

    /// Entrywise Galois conjugate.
    pub fn conjugate(&self) -> Matrix {
        self.map(QuadFieldElem::conjugate)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc + a * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[QuadFieldElem]) -> Result<Vec<QuadFieldElem>> {
        if v.len() != self.cols {
            return Err(Error::DimMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(self.field.zero(), |acc, (a, x)| {
                        acc.checked_add(&a.checked_mul(x)?)
                    })
            })
            .collect()
    }

    pub fn trace(&self) -> QuadFieldElem {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .entries()
                .all(|(i, j, x)| if i == j { x.is_one() } else { x.is_zero() })
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub(crate) fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (i + 1..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Result<QuadFieldElem> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let pivot = m.get(k, k).clone();
            let pivot_inv = pivot.inv()?;
            det = det * &pivot;
            for i in k + 1..n {
                let factor = m.get(i, k) * &pivot_inv;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j) - &(&factor * m.get(k, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a.get(i, k).is_zero())?;
            a.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pivot_inv = a.get(k, k).inv().ok()?;
            for j in 0..n {
                a.set(k, j, a.get(k, j) * &pivot_inv);
                inv.set(k, j, inv.get(k, j) * &pivot_inv);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = a.get(i, k).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(i, j, a.get(i, j) - &(&factor * a.get(k, j)));
                    inv.set(i, j, inv.get(i, j) - &(&factor * inv.get(k, j)));
                }
            }
        }
        Some(inv)
    }

    /// Copy of the matrix in another field, if every entry fits there.
    pub fn lift_to(&self, target: FieldDescriptor) -> Option<Matrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.lift_to(target))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            field: target,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    /// Panics on incompatible shapes or fields; see [`Matrix::checked_mul`].
    fn mul(self, rhs: &Matrix) -> Matrix {
        match self.checked_mul(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{}", e),
        }
    }
}
