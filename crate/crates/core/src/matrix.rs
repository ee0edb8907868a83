use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Small dense square matrix over a ring. Used for factor products and for
/// minor enumeration; banded objects convert to and from it.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    size: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(size: usize) -> Self {
        Matrix {
            size,
            data: vec![R::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::InvalidParameter("matrix is not square".into()));
            }
            data.extend(row);
        }
        Ok(Matrix { size, data })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.size + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        self.data.chunks(self.size.max(1)).map(<[R]>::to_vec).collect()
    }

    /// Leading `n x n` block.
    pub fn crop(&self, n: usize) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut out.data[i * n + j], R::zero());
                    out.data[i * n + j] = cur + a.clone() * b;
                }
            }
        }
        out
    }

    /// Determinant of the submatrix on the given row and column indices.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<R> {
        if rows.len() != cols.len() {
            return Err(Error::InvalidParameter(
                "minor needs as many rows as columns".into(),
            ));
        }
        for &i in rows.iter().chain(cols) {
            if i >= self.size {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: self.size,
                });
            }
        }
        let sub: Vec<Vec<R>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Ok(R::determinant(&sub))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(Ring::to_json).collect()))
            .collect();
        json!({ "size": self.size, "rows": rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, Rational};

    #[test]
    fn product_and_minor() {
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]).unwrap();
        let i = Matrix::<Rational>::identity(2);
        assert_eq!(a.mul(&i), a);
        assert_eq!(a.minor(&[0, 1], &[0, 1]).unwrap(), int(-2));
        assert_eq!(a.minor(&[1], &[0]).unwrap(), int(3));
        assert!(matches!(
            a.minor(&[0, 2], &[0, 1]),
            Err(Error::IndexOutOfRange { index: 2, dim: 2 })
        ));
    }
}
