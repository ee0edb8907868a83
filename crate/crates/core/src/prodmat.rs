//! Output matrices of production matrices, monic polynomial sequences read
//! off a Hessenberg recurrence, and dual-sequence moment matrices.

use serde_json::{json, Value};

use crate::bidiag::BandedHessenberg;
use crate::error::{Error, Result};
use crate::ring::{Ring, UniPoly};

fn rows_to_json<R: Ring>(size: usize, rows: &[Vec<R>]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| Value::Array(r.iter().map(Ring::to_json).collect()))
        .collect();
    json!({ "size": size, "rows": rows })
}

fn rows_from_json<R: Ring>(value: &Value) -> Result<(usize, Vec<Vec<R>>)> {
    let bad = || Error::Parse("malformed matrix".into());
    let size = value.get("size").and_then(Value::as_u64).ok_or_else(bad)? as usize;
    let rows = value
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(bad)?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(R::from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(bad());
    }
    Ok((size, rows))
}

/// `a_{n,k} = (H^n)_{0,k}` for `0 <= n, k < size`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputMatrix<R> {
    pub size: usize,
    pub rows: Vec<Vec<R>>,
}

impl<R: Ring> OutputMatrix<R> {
    pub fn get(&self, n: usize, k: usize) -> &R {
        &self.rows[n][k]
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.size).all(|n| {
            self.rows[n][n].is_one() && self.rows[n][n + 1..].iter().all(R::is_zero)
        })
    }

    pub fn to_json(&self) -> Value {
        rows_to_json(self.size, &self.rows)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let (size, rows) = rows_from_json(value)?;
        Ok(OutputMatrix { size, rows })
    }
}

/// Rows `0..size` of the output matrix, each obtained from the previous one
/// by a row-vector times matrix product.
pub fn output_matrix<R: Ring>(h: &BandedHessenberg<R>, size: usize) -> Result<OutputMatrix<R>> {
    if h.size < size + 1 {
        return Err(Error::TruncationTooSmall {
            needed: size + 1,
            available: h.size,
        });
    }
    let mut rows: Vec<Vec<R>> = Vec::with_capacity(size);
    if size == 0 {
        return Ok(OutputMatrix { size, rows });
    }
    let mut first = vec![R::zero(); size];
    first[0] = R::one();
    rows.push(first);
    for n in 1..size {
        let prev = &rows[n - 1];
        let mut next = vec![R::zero(); size];
        for (i, a) in prev.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            // row i of H is nonzero in columns i-r ..= i+1
            let lo = i.saturating_sub(h.r);
            let hi = (i + 1).min(size - 1);
            for (k, slot) in next.iter_mut().enumerate().take(hi + 1).skip(lo) {
                let hik = h.get(i, k);
                if hik.is_zero() {
                    continue;
                }
                *slot = std::mem::replace(slot, R::zero()) + a.clone() * &hik;
            }
        }
        rows.push(next);
    }
    Ok(OutputMatrix { size, rows })
}

/// Monic polynomial sequence `P_0 = 1, P_1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySeq<R> {
    pub polys: Vec<UniPoly<R>>,
}

impl<R: Ring> PolySeq<R> {
    pub fn new(polys: Vec<UniPoly<R>>) -> Self {
        PolySeq { polys }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn get(&self, n: usize) -> &UniPoly<R> {
        &self.polys[n]
    }

    fn check_monic(&self, count: usize) -> Result<()> {
        if self.polys.len() < count {
            return Err(Error::TruncationTooSmall {
                needed: count,
                available: self.polys.len(),
            });
        }
        for (n, p) in self.polys.iter().take(count).enumerate() {
            if p.degree() != Some(n) || !p.is_monic() {
                return Err(Error::NotMonic(n));
            }
        }
        Ok(())
    }
}

/// `P_0, ..., P_count` from `x P_n = P_{n+1} + sum_i h_{n,i} P_i`; these are
/// the characteristic polynomials of the leading sections of `h`.
pub fn poly_sequence_from_hessenberg<R: Ring>(
    h: &BandedHessenberg<R>,
    count: usize,
) -> Result<PolySeq<R>> {
    if h.size < count {
        return Err(Error::TruncationTooSmall {
            needed: count,
            available: h.size,
        });
    }
    let mut polys = vec![UniPoly::one()];
    for n in 0..count {
        let mut next = polys[n].shift(1);
        for i in n.saturating_sub(h.r)..=n {
            let c = h.get(n, i);
            if !c.is_zero() {
                next = next - &polys[i].scale(&c);
            }
        }
        polys.push(next);
    }
    Ok(PolySeq { polys })
}

/// Lower triangular matrix with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularMatrix<R> {
    pub size: usize,
    pub rows: Vec<Vec<R>>,
}

impl<R: Ring> TriangularMatrix<R> {
    pub fn new(rows: Vec<Vec<R>>) -> Result<Self> {
        let size = rows.len();
        for (n, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidParameter("matrix is not square".into()));
            }
            if !row[n].is_one() || row[n + 1..].iter().any(|v| !v.is_zero()) {
                return Err(Error::InvalidParameter(format!(
                    "row {n} is not unit lower triangular"
                )));
            }
        }
        Ok(TriangularMatrix { size, rows })
    }

    pub fn get(&self, n: usize, k: usize) -> &R {
        &self.rows[n][k]
    }

    pub fn mul(&self, rhs: &Self) -> Vec<Vec<R>> {
        let n = self.size;
        let mut out = vec![vec![R::zero(); n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate().take(i + 1) {
                let mut acc = R::zero();
                for k in j..=i {
                    let a = &self.rows[i][k];
                    let b = &rhs.rows[k][j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b;
                    }
                }
                *slot = acc;
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        rows_to_json(self.size, &self.rows)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let (_, rows) = rows_from_json(value)?;
        Self::new(rows)
    }
}

/// `b_{n,k}` = coefficient of `x^k` in `P_n`, for `n, k < size`.
pub fn coefficient_matrix<R: Ring>(p: &PolySeq<R>, size: usize) -> Result<TriangularMatrix<R>> {
    p.check_monic(size)?;
    let rows = (0..size)
        .map(|n| (0..size).map(|k| p.get(n).coeff(k)).collect())
        .collect();
    TriangularMatrix::new(rows)
}

/// Moment matrix `a_{n,k} = <u_k, x^n>` of the dual sequence, obtained by
/// inverting the coefficient matrix with forward substitution.
pub fn dual_moment_matrix<R: Ring>(p: &PolySeq<R>, size: usize) -> Result<TriangularMatrix<R>> {
    let b = coefficient_matrix(p, size)?;
    let mut a = vec![vec![R::zero(); size]; size];
    for k in 0..size {
        for (n, v) in invert_column(&b.rows, k, size).into_iter().enumerate() {
            a[n][k] = v;
        }
    }
    TriangularMatrix::new(a)
}

/// Column `col` of the dual moment matrix, `<u_col, x^n>` for `n < size`.
pub fn dual_moment_column<R: Ring>(p: &PolySeq<R>, col: usize, size: usize) -> Result<Vec<R>> {
    p.check_monic(size)?;
    let rows: Vec<Vec<R>> = (0..size)
        .map(|n| (0..=n).map(|k| p.get(n).coeff(k)).collect())
        .collect();
    Ok(invert_column(&rows, col, size))
}

// Column `col` of the inverse of a unit lower triangular matrix given by
// (at least lower-triangular) rows.
fn invert_column<R: Ring>(b: &[Vec<R>], col: usize, size: usize) -> Vec<R> {
    let mut a = vec![R::zero(); size];
    if col >= size {
        return a;
    }
    a[col] = R::one();
    for n in col + 1..size {
        let mut acc = R::zero();
        for i in col..n {
            let (bi, ai) = (&b[n][i], &a[i]);
            if !bi.is_zero() && !ai.is_zero() {
                acc = acc + bi.clone() * ai;
            }
        }
        a[n] = -acc;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::AlphaSpec;
    use crate::bidiag::{hessenberg_product, symmetric_recurrence_matrix};
    use crate::paths::{generalised_sr, jacobi_rogers_generalised, GammaTable};
    use crate::ring::{int, MultiPoly, Rational};
    use num_traits::{One, Zero};

    fn q(v: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn output_matrix_first_rows() {
        let h = hessenberg_product::<MultiPoly>(1, 0, &AlphaSpec::Symbolic, 4).unwrap();
        let a = output_matrix(&h, 3).unwrap();
        assert!(a.get(0, 0).is_one());
        assert!(a.get(0, 1).is_zero() && a.get(0, 2).is_zero());
        assert_eq!(*a.get(1, 0), MultiPoly::var(0));
        assert!(a.get(1, 1).is_one());
        assert!(a.is_lower_unitriangular());
        assert_eq!(
            output_matrix(&h, 4).unwrap_err(),
            Error::TruncationTooSmall { needed: 5, available: 4 }
        );
    }

    #[test]
    fn output_matrix_of_h20_counts_paths() {
        let s = AlphaSpec::Symbolic;
        let h = hessenberg_product::<MultiPoly>(2, 0, &s, 6).unwrap();
        let a = output_matrix(&h, 5).unwrap();
        for n in 0..5 {
            for k in 0..5 {
                let paths: MultiPoly = generalised_sr(2, 0, n, k, &s).unwrap();
                assert_eq!(*a.get(n, k), paths, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn jacobi_rogers_production() {
        for r in 1..=2 {
            let bound = 8;
            let g = GammaTable::from_fn(r, bound, |l, i| MultiPoly::var((l * bound + i) as u32));
            let h = BandedHessenberg::from_fn(r, None, 7, |d, n| Ok(g.get(d, n).unwrap().clone()))
                .unwrap();
            let a = output_matrix(&h, 6).unwrap();
            for n in 0..6 {
                for k in 0..6 {
                    assert_eq!(*a.get(n, k), jacobi_rogers_generalised(n, k, &g).unwrap());
                }
            }
        }
    }

    #[test]
    fn characteristic_polynomials() {
        let h = hessenberg_product::<Rational>(1, 0, &AlphaSpec::ones(8), 3).unwrap();
        let p = poly_sequence_from_hessenberg(&h, 2).unwrap();
        assert_eq!(*p.get(0), q(&[1]));
        assert_eq!(*p.get(1), q(&[-1, 1]));
        assert_eq!(*p.get(2), q(&[1, -3, 1]));

        let hs = symmetric_recurrence_matrix::<MultiPoly>(2, &AlphaSpec::Symbolic, 4).unwrap();
        let ps = poly_sequence_from_hessenberg(&hs, 3).unwrap();
        let expected = UniPoly::new(vec![
            -MultiPoly::var(0),
            MultiPoly::zero(),
            MultiPoly::zero(),
            MultiPoly::one(),
        ]);
        assert_eq!(*ps.get(3), expected);
        assert!(poly_sequence_from_hessenberg(&hs, 5).is_err());
    }

    #[test]
    fn dual_moments_by_hand() {
        let mono = PolySeq::new((0..5).map(UniPoly::<Rational>::monomial).collect());
        let id = dual_moment_matrix(&mono, 5).unwrap();
        for n in 0..5 {
            for k in 0..5 {
                assert_eq!(id.get(n, k).is_one(), n == k);
            }
        }

        let p = PolySeq::new(vec![q(&[1]), q(&[0, 1]), q(&[-1, 0, 1]), q(&[0, -2, 0, 1])]);
        let a = dual_moment_matrix(&p, 4).unwrap();
        let col0: Vec<Rational> = (0..4).map(|n| a.get(n, 0).clone()).collect();
        assert_eq!(col0, [1, 0, 1, 0].map(int));
        assert_eq!(*a.get(3, 1), int(2));
        assert_eq!(dual_moment_column(&p, 1, 4).unwrap()[3], int(2));

        let bad = PolySeq::new(vec![q(&[1]), q(&[0, 2])]);
        assert_eq!(dual_moment_matrix(&bad, 2).unwrap_err(), Error::NotMonic(1));
    }

    #[test]
    fn catalan_moments() {
        let hs = symmetric_recurrence_matrix::<Rational>(1, &AlphaSpec::ones(20), 10).unwrap();
        let p = poly_sequence_from_hessenberg(&hs, 9).unwrap();
        let a = dual_moment_matrix(&p, 9).unwrap();
        let even: Vec<Rational> = (0..5).map(|n| a.get(2 * n, 0).clone()).collect();
        assert_eq!(even, [1, 1, 2, 5, 14].map(int));
    }

    #[test]
    fn duality_and_json() {
        let h = hessenberg_product::<MultiPoly>(2, 1, &AlphaSpec::Symbolic, 6).unwrap();
        let p = poly_sequence_from_hessenberg(&h, 5).unwrap();
        let b = coefficient_matrix(&p, 6).unwrap();
        let a = dual_moment_matrix(&p, 6).unwrap();
        let prod = b.mul(&a);
        for (n, row) in prod.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(v.is_one(), n == k);
                assert!(n == k || v.is_zero());
            }
        }
        assert_eq!(TriangularMatrix::from_json(&a.to_json()).unwrap(), a);
        let out = output_matrix(&h, 5).unwrap();
        assert_eq!(OutputMatrix::from_json(&out.to_json()).unwrap(), out);
    }

    #[test]
    fn output_matrix_is_inverse_of_coefficients() {
        let h = hessenberg_product::<Rational>(3, 2, &AlphaSpec::Appell(3), 8).unwrap();
        let p = poly_sequence_from_hessenberg(&h, 7).unwrap();
        let a = dual_moment_matrix(&p, 7).unwrap();
        let out = output_matrix(&h, 7).unwrap();
        assert_eq!(out.rows, a.rows);
    }

    use proptest::prelude::*;

    fn arb_alpha() -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec((-9i64..10, 1i64..6), 32)
            .prop_map(|v| v.into_iter().map(|(p, d)| Rational::new(p.into(), d.into())).collect())
    }

    proptest! {
        #[test]
        fn coefficients_times_dual_moments_is_identity(
            r in 1usize..=3,
            j in 0usize..=3,
            size in 1usize..=6,
            alpha in arb_alpha(),
        ) {
            let j = j.min(r);
            let spec = AlphaSpec::Explicit(alpha);
            let h = hessenberg_product::<Rational>(r, j, &spec, size).unwrap();
            let p = poly_sequence_from_hessenberg(&h, size).unwrap();
            let b = coefficient_matrix(&p, size).unwrap();
            let a = dual_moment_matrix(&p, size).unwrap();
            for (n, row) in b.mul(&a).iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    prop_assert_eq!(v.is_one(), n == k);
                    prop_assert!(n == k || v.is_zero());
                }
            }
            let out = output_matrix(&h, size - 1).unwrap();
            prop_assert!(out.is_lower_unitriangular());
        }
    }
}
