//! Brute-force lattice path enumeration.
//!
//! Partial `r`-Dyck paths use rises `(1, 1)` and `r`-falls `(1, -r)`; a fall
//! landing at height `i` weighs `alpha_i`. Partial `r`-Lukasiewicz paths use
//! steps `(1, s)` with `-r <= s <= 1`; the step `(1, -l)` landing at height
//! `i` weighs `gamma_i^[l]`. Rises always weigh one and every height stays
//! nonnegative.
//!
//! The reference routines are depth-first walks over step choices, kept
//! deliberately direct. For long Dyck paths a height-indexed transfer sum
//! gives the same generating polynomial without visiting each path.

use std::fmt;

use crate::alpha::{AlphaRing, AlphaSpec};
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Rise,
    /// `(1, -r)` in Dyck mode.
    Fall,
    /// `(1, -l)` in Lukasiewicz mode; `Down(0)` is a level step.
    Down(usize),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Rise => write!(f, "R"),
            Step::Fall => write!(f, "F"),
            Step::Down(l) => write!(f, "L({l})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    pub start: (usize, usize),
    pub steps: Vec<Step>,
}

impl LatticePath {
    /// Heights visited, starting height included.
    pub fn heights(&self, r: usize) -> Vec<i64> {
        let mut y = self.start.1 as i64;
        let mut out = vec![y];
        for s in &self.steps {
            y += match s {
                Step::Rise => 1,
                Step::Fall => -(r as i64),
                Step::Down(l) => -(*l as i64),
            };
            out.push(y);
        }
        out
    }

    pub fn step_string(&self) -> String {
        self.steps.iter().map(Step::to_string).collect()
    }
}

/// Whether some partial `r`-Dyck path joins the two points, ignoring the
/// height constraint (which the walk enforces separately).
fn dyck_feasible(r: usize, start: (usize, usize), end: (usize, usize)) -> Option<usize> {
    if end.0 < start.0 {
        return None;
    }
    let len = end.0 - start.0;
    let climb = start.1 as i64 + len as i64 - end.1 as i64;
    if climb < 0 || climb % (r as i64 + 1) != 0 {
        return None;
    }
    let falls = (climb / (r as i64 + 1)) as usize;
    (falls <= len).then_some(len)
}

/// Generating polynomial of partial `r`-Dyck paths from `start` to `end`;
/// the ring zero when there are none.
pub fn dyck_generating_poly<R: AlphaRing>(
    r: usize,
    start: (usize, usize),
    end: (usize, usize),
    alpha: &AlphaSpec,
) -> Result<R> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let Some(len) = dyck_feasible(r, start, end) else {
        return Ok(R::zero());
    };
    let mut total = R::zero();
    dyck_walk(r, start.1, len, end.1, R::one(), alpha, &mut total)?;
    Ok(total)
}

fn dyck_walk<R: AlphaRing>(
    r: usize,
    y: usize,
    left: usize,
    target: usize,
    weight: R,
    alpha: &AlphaSpec,
    total: &mut R,
) -> Result<()> {
    if left == 0 {
        if y == target {
            *total = std::mem::replace(total, R::zero()) + weight;
        }
        return Ok(());
    }
    // still able to reach the target with the remaining steps?
    if y + left < target || y > target + r * left {
        return Ok(());
    }
    if y >= r {
        let a = R::alpha(alpha, (y - r) as i64)?;
        if !a.is_zero() {
            dyck_walk(r, y - r, left - 1, target, weight.clone() * &a, alpha, total)?;
        }
    }
    dyck_walk(r, y + 1, left - 1, target, weight, alpha, total)
}

/// Same value as [`dyck_generating_poly`], accumulated step by step over
/// heights instead of path by path.
pub fn dyck_transfer_poly<R: AlphaRing>(
    r: usize,
    start: (usize, usize),
    end: (usize, usize),
    alpha: &AlphaSpec,
) -> Result<R> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let Some(len) = dyck_feasible(r, start, end) else {
        return Ok(R::zero());
    };
    let top = start.1 + len;
    let mut weights = vec![R::zero(); top + 1];
    weights[start.1] = R::one();
    for left in (0..len).rev() {
        let mut next = vec![R::zero(); top + 1];
        for (y, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            if y < end.1 + r * left {
                next[y + 1] = std::mem::replace(&mut next[y + 1], R::zero()) + w.clone();
            }
            if y >= r && y - r + left >= end.1 {
                let a = R::alpha(alpha, (y - r) as i64)?;
                if !a.is_zero() {
                    next[y - r] = std::mem::replace(&mut next[y - r], R::zero()) + w.clone() * &a;
                }
            }
        }
        weights = next;
    }
    Ok(weights.swap_remove(end.1))
}

/// [`generalised_sr`] through [`dyck_transfer_poly`].
pub fn generalised_sr_transfer<R: AlphaRing>(
    r: usize,
    j: usize,
    n: usize,
    k: usize,
    alpha: &AlphaSpec,
) -> Result<R> {
    let m = r + 1;
    dyck_transfer_poly(r, (0, 0), (m * n + j, m * k + j), alpha)
}

/// Every partial `r`-Dyck path from `start` to `end`, rise-first order.
pub fn list_dyck_paths(r: usize, start: (usize, usize), end: (usize, usize)) -> Vec<LatticePath> {
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    if let Some(len) = dyck_feasible(r, start, end) {
        let mut steps = Vec::with_capacity(len);
        list_walk(r, start.1, len, end.1, &mut steps, &mut |s| {
            out.push(LatticePath {
                start,
                steps: s.to_vec(),
            })
        });
    }
    out
}

fn list_walk(
    r: usize,
    y: usize,
    left: usize,
    target: usize,
    steps: &mut Vec<Step>,
    visit: &mut impl FnMut(&[Step]),
) {
    if left == 0 {
        if y == target {
            visit(steps);
        }
        return;
    }
    if y + left < target || y > target + r * left {
        return;
    }
    steps.push(Step::Rise);
    list_walk(r, y + 1, left - 1, target, steps, visit);
    steps.pop();
    if y >= r {
        steps.push(Step::Fall);
        list_walk(r, y - r, left - 1, target, steps, visit);
        steps.pop();
    }
}

/// `S^(r;j)_{n,k}`: paths from `(0,0)` to `((r+1)n+j, (r+1)k+j)`. Any
/// `j >= 0` is accepted.
pub fn generalised_sr<R: AlphaRing>(
    r: usize,
    j: usize,
    n: usize,
    k: usize,
    alpha: &AlphaSpec,
) -> Result<R> {
    let m = r + 1;
    dyck_generating_poly(r, (0, 0), (m * n + j, m * k + j), alpha)
}

/// `S^(r;j)_{n,0}` for `0 <= j <= r`; with `j = 0` these are the
/// `r`-Stieltjes-Rogers polynomials.
pub fn modified_sr<R: AlphaRing>(r: usize, j: usize, n: usize, alpha: &AlphaSpec) -> Result<R> {
    if j > r {
        return Err(Error::InvalidParameter(format!("j = {j} exceeds r = {r}")));
    }
    generalised_sr(r, j, n, 0, alpha)
}

/// The nested sum
/// `sum_{i_1=0}^{j} sum_{i_2=0}^{i_1+r} ... sum_{i_n=0}^{i_{n-1}+r} alpha_{i_1}...alpha_{i_n}`,
/// one when `n = 0`.
pub fn genetic_sum<R: AlphaRing>(r: usize, n: usize, j: usize, alpha: &AlphaSpec) -> Result<R> {
    if r == 0 || j >= r {
        return Err(Error::InvalidParameter(format!(
            "genetic sums need 0 <= j <= r - 1 (r = {r}, j = {j})"
        )));
    }
    let mut total = R::zero();
    genetic_walk(r, n, j, R::one(), alpha, &mut total)?;
    Ok(total)
}

fn genetic_walk<R: AlphaRing>(
    r: usize,
    left: usize,
    upper: usize,
    weight: R,
    alpha: &AlphaSpec,
    total: &mut R,
) -> Result<()> {
    if left == 0 {
        *total = std::mem::replace(total, R::zero()) + weight;
        return Ok(());
    }
    for i in 0..=upper {
        let a = R::alpha(alpha, i as i64)?;
        if a.is_zero() {
            continue;
        }
        genetic_walk(r, left - 1, i + r, weight.clone() * &a, alpha, total)?;
    }
    Ok(())
}

/// Dense table of Lukasiewicz weights `gamma_i^[l]` for `0 <= l <= r` and
/// heights `i < bound`. Heights past the bound are an error, never zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaTable<R> {
    r: usize,
    bound: usize,
    values: Vec<Vec<R>>,
}

impl<R: Ring> GammaTable<R> {
    /// `values[l][i] = gamma_i^[l]`; every row must have the same length.
    pub fn new(values: Vec<Vec<R>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("empty gamma table".into()));
        }
        let bound = values[0].len();
        if values.iter().any(|row| row.len() != bound) {
            return Err(Error::InvalidParameter("ragged gamma table".into()));
        }
        Ok(GammaTable {
            r: values.len() - 1,
            bound,
            values,
        })
    }

    pub fn from_fn(r: usize, bound: usize, f: impl Fn(usize, usize) -> R) -> Self {
        GammaTable {
            r,
            bound,
            values: (0..=r).map(|l| (0..bound).map(|i| f(l, i)).collect()).collect(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn get(&self, l: usize, height: usize) -> Result<&R> {
        if height >= self.bound {
            return Err(Error::HeightOutOfRange {
                height,
                bound: self.bound,
            });
        }
        Ok(&self.values[l][height])
    }
}

/// Generating polynomial of partial `r`-Lukasiewicz paths from `(0,0)` to
/// `(n,k)`.
pub fn jacobi_rogers_generalised<R: Ring>(n: usize, k: usize, gamma: &GammaTable<R>) -> Result<R> {
    let mut total = R::zero();
    if k > n {
        return Ok(total);
    }
    luk_walk(0, n, k, R::one(), gamma, &mut total)?;
    Ok(total)
}

fn luk_walk<R: Ring>(
    y: usize,
    left: usize,
    target: usize,
    weight: R,
    gamma: &GammaTable<R>,
    total: &mut R,
) -> Result<()> {
    if left == 0 {
        if y == target {
            *total = std::mem::replace(total, R::zero()) + weight;
        }
        return Ok(());
    }
    let r = gamma.r();
    if y + left < target || y > target + r * left {
        return Ok(());
    }
    for l in 0..=r.min(y) {
        let g = gamma.get(l, y - l)?;
        if g.is_zero() {
            continue;
        }
        luk_walk(y - l, left - 1, target, weight.clone() * g, gamma, total)?;
    }
    luk_walk(y + 1, left - 1, target, weight, gamma, total)
}
