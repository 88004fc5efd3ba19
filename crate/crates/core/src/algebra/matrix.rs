//! Small dense square matrices over any [`Scalar`].

use std::fmt;


use super::poly::{MultiPoly, Var};
use super::scalar::{rat, Scalar};
use crate::error::{Error, Result};

/// Row-major square matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "expected {dim} columns in every row"
            )));
        }
        Ok(Matrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = T::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a.clone() * rhs.data[k * n + j].clone();
                    let slot = &mut out.data[i * n + j];
                    *slot = slot.clone() + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    /// `A · v` for a column vector.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.dim)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    /// `v · A` for a row vector.
    pub fn apply_left(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..n {
                out[j] = out[j].clone() + vi.clone() * self.data[i * n + j].clone();
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kronecker(&self, rhs: &Self) -> Self {
        let (n, m) = (self.dim, rhs.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a.clone() * rhs.get(k, l).clone());
                    }
                }
            }
        }
        out
    }

    /// Coefficients `[1, c₁, …, c_d]` of `det(y·I − A) = y^d + c₁y^{d−1} + … + c_d`
    /// (Faddeev–LeVerrier; the divisions are by integers only).
    pub fn charpoly_coeffs(&self) -> Vec<T> {
        let d = self.dim;
        let mut coeffs = vec![T::one()];
        let mut m = Self::zeros(d);
        let ident = Self::identity(d);
        for k in 1..=d {
            let shifted = m
                .add(&ident.scale(coeffs.last().expect("nonempty")))
                .expect("same dim");
            m = self.mul(&shifted).expect("same dim");
            let c = -(m.trace() * T::from_rational(&rat(1, k as i64)));
            coeffs.push(c);
        }
        coeffs
    }
}

impl Matrix<MultiPoly> {
    /// Monic characteristic polynomial in the eigen-variable `y`.
    pub fn charpoly(&self, y: &Var) -> MultiPoly {
        let coeffs = self.charpoly_coeffs();
        let d = self.dim;
        let mut rev: Vec<MultiPoly> = coeffs.into_iter().rev().collect();
        rev.truncate(d + 1);
        MultiPoly::from_coeffs_in(y, &rev)
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.dim.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}
