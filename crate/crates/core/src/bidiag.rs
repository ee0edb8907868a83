//! Bidiagonal factors `L_1, ..., L_r, U` and the banded Hessenberg products
//! `H^(r;j) = L_{j+1} ... L_r U L_1 ... L_j`.
//!
//! The product is computed two ways: by multiplying truncated factors, and
//! from the closed-form sum over strictly decreasing fall positions. Each is
//! the oracle for the other.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::alpha::{AlphaRing, AlphaSpec};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    /// `L_k`, `1 <= k <= r`: unit diagonal, subdiagonal `alpha_{(r+1)i+k}`.
    Lower(usize),
    /// `U`: diagonal `alpha_{(r+1)i}`, unit supradiagonal.
    Upper,
}

/// One truncated bidiagonal factor. `entries` holds the nontrivial band:
/// the subdiagonal (length `size - 1`) for `Lower`, the diagonal (length
/// `size`) for `Upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct BidiagonalFactor<R> {
    pub kind: FactorKind,
    pub r: usize,
    pub size: usize,
    pub entries: Vec<R>,
}

impl<R: Ring> BidiagonalFactor<R> {
    pub fn to_matrix(&self) -> Matrix<R> {
        let n = self.size;
        let mut m = Matrix::zeros(n);
        match self.kind {
            FactorKind::Lower(_) => {
                for i in 0..n {
                    m.set(i, i, R::one());
                }
                for (i, v) in self.entries.iter().enumerate() {
                    m.set(i + 1, i, v.clone());
                }
            }
            FactorKind::Upper => {
                for (i, v) in self.entries.iter().enumerate() {
                    m.set(i, i, v.clone());
                }
                for i in 0..n.saturating_sub(1) {
                    m.set(i, i + 1, R::one());
                }
            }
        }
        m
    }
}

pub(crate) fn check_rj(r: usize, j: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    if j > r {
        return Err(Error::InvalidParameter(format!("j = {j} exceeds r = {r}")));
    }
    Ok(())
}

// Values at indices >= `limit` are replaced by zero for bounded sources.
fn alpha_capped<R: AlphaRing>(alpha: &AlphaSpec, m: i64, limit: usize) -> Result<R> {
    match alpha.bound() {
        Some(_) if m >= limit as i64 => Ok(R::zero()),
        _ => R::alpha(alpha, m),
    }
}

fn make_factor<R: AlphaRing>(
    kind: FactorKind,
    r: usize,
    alpha: &AlphaSpec,
    size: usize,
    limit: usize,
) -> Result<BidiagonalFactor<R>> {
    let step = (r + 1) as i64;
    let entries = match kind {
        FactorKind::Lower(k) => (0..size.saturating_sub(1))
            .map(|i| alpha_capped(alpha, step * i as i64 + k as i64, limit))
            .collect::<Result<Vec<_>>>()?,
        FactorKind::Upper => (0..size)
            .map(|i| alpha_capped(alpha, step * i as i64, limit))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(BidiagonalFactor {
        kind,
        r,
        size,
        entries,
    })
}

/// `(L_1, ..., L_r, U)` truncated to `size x size`.
pub fn build_factors<R: AlphaRing>(
    r: usize,
    alpha: &AlphaSpec,
    size: usize,
) -> Result<Vec<BidiagonalFactor<R>>> {
    check_rj(r, 0)?;
    if size == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    let needed = (r + 1) * size;
    alpha.require(needed)?;
    let mut out = (1..=r)
        .map(|k| make_factor(FactorKind::Lower(k), r, alpha, size, needed))
        .collect::<Result<Vec<_>>>()?;
    out.push(make_factor(FactorKind::Upper, r, alpha, size, needed)?);
    Ok(out)
}

/// Leading `size x size` section of an `(r+2)`-banded unit-lower-Hessenberg
/// matrix, stored band by band. Band `d` (for `-1 <= d <= r`) lists
/// `h_{n+d, n}` for increasing `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedHessenberg<R> {
    pub r: usize,
    /// Component index for `H^(r;j)`; `None` for other banded matrices.
    pub j: Option<usize>,
    pub size: usize,
    bands: Vec<Vec<R>>,
}

impl<R: Ring> BandedHessenberg<R> {
    fn band_len(size: usize, d: i64) -> usize {
        if d < 0 {
            size.saturating_sub(1)
        } else {
            size.saturating_sub(d as usize)
        }
    }

    /// Builds the matrix with unit supradiagonal and `h_{n+d,n} = entry(d, n)`
    /// for `0 <= d <= r`.
    pub fn from_fn(
        r: usize,
        j: Option<usize>,
        size: usize,
        mut entry: impl FnMut(usize, usize) -> Result<R>,
    ) -> Result<Self> {
        let mut bands = Vec::with_capacity(r + 2);
        bands.push(vec![R::one(); Self::band_len(size, -1)]);
        for d in 0..=r {
            let band = (0..Self::band_len(size, d as i64))
                .map(|n| entry(d, n))
                .collect::<Result<Vec<_>>>()?;
            bands.push(band);
        }
        Ok(BandedHessenberg { r, j, size, bands })
    }

    /// Reads the bands of a dense matrix, rejecting anything outside the
    /// Hessenberg profile.
    pub fn from_dense(m: &Matrix<R>, r: usize, j: Option<usize>) -> Result<Self> {
        let size = m.size();
        for row in 0..size {
            for col in 0..size {
                let d = row as i64 - col as i64;
                let v = m.get(row, col);
                if d == -1 && !v.is_one() {
                    return Err(Error::InvalidParameter(format!(
                        "supradiagonal entry ({row},{col}) is not one"
                    )));
                }
                if (d < -1 || d > r as i64) && !v.is_zero() {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({row},{col}) lies outside the band"
                    )));
                }
            }
        }
        Self::from_fn(r, j, size, |d, n| Ok(m.get(n + d, n).clone()))
    }

    /// Band at offset `d`; `d = -1` is the supradiagonal.
    pub fn band(&self, d: i64) -> &[R] {
        &self.bands[(d + 1) as usize]
    }

    /// Entry `h_{row, col}` (zero outside the band).
    pub fn get(&self, row: usize, col: usize) -> R {
        let d = row as i64 - col as i64;
        if d < -1 || d > self.r as i64 || row >= self.size || col >= self.size {
            return R::zero();
        }
        let idx = if d < 0 { row } else { col };
        self.bands[(d + 1) as usize][idx].clone()
    }

    pub fn to_matrix(&self) -> Matrix<R> {
        let mut m = Matrix::zeros(self.size);
        for row in 0..self.size {
            let lo = row.saturating_sub(self.r);
            let hi = (row + 2).min(self.size);
            for col in lo..hi {
                m.set(row, col, self.get(row, col));
            }
        }
        m
    }

    /// Leading `n x n` section.
    pub fn crop(&self, n: usize) -> Self {
        let n = n.min(self.size);
        let bands = self
            .bands
            .iter()
            .enumerate()
            .map(|(i, b)| b[..Self::band_len(n, i as i64 - 1)].to_vec())
            .collect();
        BandedHessenberg {
            r: self.r,
            j: self.j,
            size: n,
            bands,
        }
    }

    /// Checks the structural invariants: unit supradiagonal and band lengths.
    pub fn is_well_formed(&self) -> bool {
        self.bands.len() == self.r + 2
            && self.bands[0].iter().all(R::is_one)
            && self
                .bands
                .iter()
                .enumerate()
                .all(|(i, b)| b.len() == Self::band_len(self.size, i as i64 - 1))
    }

    pub fn to_json(&self) -> Value {
        let mut bands = Map::new();
        for (i, b) in self.bands.iter().enumerate() {
            bands.insert(
                (i as i64 - 1).to_string(),
                Value::Array(b.iter().map(Ring::to_json).collect()),
            );
        }
        serde_json::json!({
            "r": self.r,
            "j": self.j,
            "size": self.size,
            "bands": Value::Object(bands),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed banded matrix".into());
        let r = value.get("r").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let size = value.get("size").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let j = match value.get("j") {
            Some(Value::Null) | None => None,
            Some(v) => Some(v.as_u64().ok_or_else(bad)? as usize),
        };
        let obj = value.get("bands").and_then(Value::as_object).ok_or_else(bad)?;
        let mut parsed = BTreeMap::new();
        for (k, v) in obj {
            let d: i64 = k.parse().map_err(|_| bad())?;
            let arr = v.as_array().ok_or_else(bad)?;
            let entries = arr.iter().map(R::from_json).collect::<Result<Vec<_>>>()?;
            parsed.insert(d, entries);
        }
        let bands: Vec<Vec<R>> = (-1..=r as i64)
            .map(|d| parsed.remove(&d).ok_or_else(bad))
            .collect::<Result<_>>()?;
        let h = BandedHessenberg { r, j, size, bands };
        if !h.is_well_formed() || !parsed.is_empty() {
            return Err(bad());
        }
        Ok(h)
    }
}

/// `H^(r;j)` by multiplying the factors truncated to `size + r + 1` and
/// cropping to `size`.
pub fn hessenberg_product<R: AlphaRing>(
    r: usize,
    j: usize,
    alpha: &AlphaSpec,
    size: usize,
) -> Result<BandedHessenberg<R>> {
    check_rj(r, j)?;
    if size == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    let limit = (r + 1) * size;
    alpha.require(limit)?;
    let big = size + r + 1;
    let lower = |k| make_factor::<R>(FactorKind::Lower(k), r, alpha, big, limit);
    let mut order = Vec::with_capacity(r + 1);
    for k in j + 1..=r {
        order.push(lower(k)?);
    }
    order.push(make_factor(FactorKind::Upper, r, alpha, big, limit)?);
    for k in 1..=j {
        order.push(lower(k)?);
    }
    let product = order
        .iter()
        .map(BidiagonalFactor::to_matrix)
        .reduce(|acc, m| acc.mul(&m))
        .expect("at least one factor");
    BandedHessenberg::from_dense(&product.crop(size), r, Some(j))
}

/// `sum_{r >= t_0 > ... > t_k >= 0} prod_i alpha_{(r+1)(n+i) + t_i + j - r}`,
/// i.e. the entry `h_{n+k, n}` of `H^(r;j)`.
pub fn closed_form_entry<R: AlphaRing>(
    r: usize,
    j: usize,
    n: usize,
    k: usize,
    alpha: &AlphaSpec,
) -> Result<R> {
    if k > r {
        return Ok(R::zero());
    }
    let mut acc = R::zero();
    let mut ts = Vec::with_capacity(k + 1);
    decreasing_sequences(r as i64, k + 1, &mut ts, &mut |ts| {
        let mut term = R::one();
        for (i, &t) in ts.iter().enumerate() {
            let idx = ((r + 1) * (n + i)) as i64 + t + j as i64 - r as i64;
            let a = R::alpha(alpha, idx)?;
            if a.is_zero() {
                return Ok(());
            }
            term = term * &a;
        }
        acc = std::mem::replace(&mut acc, R::zero()) + term;
        Ok(())
    })?;
    Ok(acc)
}

// Visits every strictly decreasing sequence of `len` values in `[0, top]`.
fn decreasing_sequences(
    top: i64,
    len: usize,
    ts: &mut Vec<i64>,
    visit: &mut impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if ts.len() == len {
        return visit(ts);
    }
    let remaining = (len - ts.len()) as i64;
    let upper = ts.last().map_or(top, |&t| t - 1);
    for t in (remaining - 1..=upper).rev() {
        ts.push(t);
        decreasing_sequences(top, len, ts, visit)?;
        ts.pop();
    }
    Ok(())
}

/// `H^(r;j)` from the closed-form entry formula.
pub fn closed_form_entries<R: AlphaRing>(
    r: usize,
    j: usize,
    alpha: &AlphaSpec,
    size: usize,
) -> Result<BandedHessenberg<R>> {
    check_rj(r, j)?;
    if size == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    alpha.require((r + 1) * size)?;
    BandedHessenberg::from_fn(r, Some(j), size, |d, n| {
        closed_form_entry(r, j, n, d, alpha)
    })
}

/// Recurrence matrix of the symmetric sequence itself: unit supradiagonal,
/// `h_{n+r, n} = alpha_n`, zero elsewhere.
pub fn symmetric_recurrence_matrix<R: AlphaRing>(
    r: usize,
    alpha: &AlphaSpec,
    size: usize,
) -> Result<BandedHessenberg<R>> {
    check_rj(r, 0)?;
    BandedHessenberg::from_fn(r, None, size, |d, n| {
        if d == r {
            R::alpha(alpha, n as i64)
        } else {
            Ok(R::zero())
        }
    })
}
