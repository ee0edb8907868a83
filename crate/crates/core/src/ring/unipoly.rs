use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial in `x`, coefficients indexed by degree.
/// The zero polynomial has no coefficients; otherwise the last one is
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn term(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        Self::term(R::one(), k)
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Formal derivative in `x`.
    pub fn differentiate(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * &R::from_integer(k as i64))
                .collect(),
        )
    }

    /// `p(x^m)`
    pub fn compose_power(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let deg = self.coeffs.len() - 1;
        let mut coeffs = vec![R::zero(); deg * m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * m] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x + c)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({ "coeffs": self.coeffs.iter().map(Ring::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let arr = value
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("malformed polynomial: {value}")))?;
        let coeffs = arr.iter().map(R::from_json).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

impl UniPoly<Rational> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&(Rational::one() / l)),
            None => a,
        }
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring> Add<&UniPoly<R>> for UniPoly<R> {
    type Output = UniPoly<R>;

    fn add(mut self, rhs: &UniPoly<R>) -> UniPoly<R> {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = std::mem::replace(a, R::zero()) + b;
        }
        UniPoly::new(self.coeffs)
    }
}

impl<R: Ring> Add for UniPoly<R> {
    type Output = UniPoly<R>;

    fn add(self, rhs: UniPoly<R>) -> UniPoly<R> {
        self + &rhs
    }
}

impl<R: Ring> Sub<&UniPoly<R>> for UniPoly<R> {
    type Output = UniPoly<R>;

    fn sub(mut self, rhs: &UniPoly<R>) -> UniPoly<R> {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = std::mem::replace(a, R::zero()) - b;
        }
        UniPoly::new(self.coeffs)
    }
}

impl<R: Ring> Sub for UniPoly<R> {
    type Output = UniPoly<R>;

    fn sub(self, rhs: UniPoly<R>) -> UniPoly<R> {
        self - &rhs
    }
}

impl<R: Ring> Mul<&UniPoly<R>> for &UniPoly<R> {
    type Output = UniPoly<R>;

    fn mul(self, rhs: &UniPoly<R>) -> UniPoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = std::mem::replace(&mut out[i + j], R::zero()) + a.clone() * b;
            }
        }
        UniPoly::new(out)
    }
}

impl<R: Ring> Mul for UniPoly<R> {
    type Output = UniPoly<R>;

    fn mul(self, rhs: UniPoly<R>) -> UniPoly<R> {
        &self * &rhs
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = UniPoly<R>;

    fn neg(self) -> UniPoly<R> {
        UniPoly::new(self.coeffs.into_iter().map(Neg::neg).collect())
    }
}
