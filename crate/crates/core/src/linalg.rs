//! Dense exact-rational matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Row-major dense matrix over [`Rational`].
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Rational>>", into = "Vec<Vec<Rational>>")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            let mut s = Rational::zero();
            for j in 0..self.cols {
                if !self[(i, j)].is_zero() {
                    s += &self[(i, j)] * &y[j];
                }
            }
            acc += &x[i] * s;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| crate::rational::dot(self.row(i), v))
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Row echelon reduction of `[self | rhs]`; returns the solution `X` of
    /// `self * X = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                b.swap_rows(pivot, col);
            }
            let inv = a[(col, col)].recip();
            for j in 0..n {
                a[(col, j)] *= &inv;
            }
            for j in 0..m {
                b[(col, j)] *= &inv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= t;
                }
                for j in 0..m {
                    let t = &f * &b[(col, j)];
                    b[(r, j)] -= t;
                }
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.solve(&Matrix::identity(self.rows))
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for j in col..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= t;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if !rhs[(k, j)].is_zero() {
                        out[(i, j)] += a * &rhs[(k, j)];
                    }
                }
            }
        }
        out
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl TryFrom<Vec<Vec<Rational>>> for Matrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<Rational>> {
    fn from(m: Matrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn det_and_inverse() {
        let m = mat(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(inv, mat(&[&[4, -1], &[-7, 2]]));
        assert_eq!(&m * &inv, Matrix::identity(2));
    }

    #[test]
    fn singular_is_reported() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det(), q(0));
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn pow_of_nilpotent() {
        let n = mat(&[&[0, 1, 3], &[0, 0, 5], &[0, 0, 0]]);
        assert!(!n.pow(2).is_zero());
        assert!(n.pow(3).is_zero());
    }

    proptest! {
        #[test]
        fn solve_recovers_product(entries in proptest::collection::vec(-5i64..=5, 9), rhs in proptest::collection::vec(-5i64..=5, 3)) {
            let a = Matrix::from_rows(entries.chunks(3).map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap();
            prop_assume!(!a.det().is_zero());
            let x: Vec<Rational> = rhs.iter().map(|&v| q(v)).collect();
            let b = Matrix::from_columns(&[a.mul_vec(&x)]).unwrap();
            let sol = a.solve(&b).unwrap();
            prop_assert_eq!(sol.column(0), x);
        }
    }
}
