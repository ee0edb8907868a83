//! Exact coefficient rings.
//!
//! Two rings are used throughout the crate: [`Rational`] for concrete
//! instances and [`MultiPoly`], the integer polynomial ring in the
//! indeterminates `a0, a1, ...` standing for the alpha sequence. Both
//! implement [`Ring`], so matrices, path sums and polynomial sequences are
//! written once and instantiated over either.

mod multipoly;
mod unipoly;

pub use multipoly::{Monomial, MultiPoly};
pub use unipoly::UniPoly;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_integer(n: i64) -> Self;

    /// Sign test for rationals, coefficientwise test for polynomials.
    fn is_nonnegative(&self) -> bool;

    fn to_json(&self) -> Value;

    fn from_json(value: &Value) -> Result<Self>;

    /// Determinant of a square matrix given by rows. The default is
    /// cofactor expansion along the first row.
    fn determinant(rows: &[Vec<Self>]) -> Self {
        cofactor_determinant(rows)
    }
}

pub(crate) fn cofactor_determinant<R: Ring>(rows: &[Vec<R>]) -> R {
    let n = rows.len();
    match n {
        0 => return R::one(),
        1 => return rows[0][0].clone(),
        2 => {
            return rows[0][0].clone() * &rows[1][1] - rows[0][1].clone() * &rows[1][0];
        }
        _ => {}
    }
    let mut acc = R::zero();
    for c in 0..n {
        if rows[0][c].is_zero() {
            continue;
        }
        let sub: Vec<Vec<R>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = rows[0][c].clone() * &cofactor_determinant(&sub);
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

impl Ring for Rational {
    fn from_integer(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(<Rational as Ring>::from_integer(n.as_i64().unwrap())),
            other => Err(Error::Parse(format!("expected rational string, got {other}"))),
        }
    }

    /// Fraction-free (Bareiss) elimination after clearing row denominators.
    fn determinant(rows: &[Vec<Self>]) -> Self {
        let n = rows.len();
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                scale *= &l;
                row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
            })
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let det = &m[n - 1][n - 1] * BigInt::from(sign);
        Rational::new(det, scale)
    }
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    Rational::from_str(t).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    rat(n, 1)
}

/// Rising factorial `c (c+1) ... (c+n-1)`; one when `n = 0`.
pub fn pochhammer(c: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = c.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Evaluates `p` at the assignment `a_i -> assignment[i]`.
pub fn substitute_alpha(p: &MultiPoly, assignment: &HashMap<u32, Rational>) -> Result<Rational> {
    p.evaluate(|i| assignment.get(&i).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(1, 3), 0), int(1));
        assert_eq!(pochhammer(&rat(1, 3), 2), rat(4, 9));
        assert_eq!(pochhammer(&int(2), 3), int(24));
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("-12").unwrap(), int(-12));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        // canonical zero is 0/1
        let z = parse_rational("0/5").unwrap();
        assert!(z.denom().is_one());
    }

    #[test]
    fn substitution_examples() {
        let a = |i| MultiPoly::var(i);
        let assign: HashMap<u32, Rational> =
            [(0, rat(2, 9)), (1, rat(2, 3)), (2, rat(4, 3))].into_iter().collect();
        assert_eq!(substitute_alpha(&(a(0) + a(1)), &assign).unwrap(), rat(8, 9));
        assert_eq!(substitute_alpha(&MultiPoly::zero(), &assign).unwrap(), int(0));
        let p = a(0) * a(2) + a(0) * a(1);
        assert_eq!(substitute_alpha(&p, &assign).unwrap(), rat(4, 9));
        assert_eq!(
            substitute_alpha(&a(5), &assign),
            Err(Error::MissingAssignment(5))
        );
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = vec![
            vec![rat(1, 2), int(1), int(0), rat(3, 7)],
            vec![int(2), rat(-1, 3), int(5), int(1)],
            vec![int(0), int(4), rat(2, 5), int(-1)],
            vec![int(1), int(0), int(1), int(3)],
        ];
        assert_eq!(
            <Rational as Ring>::determinant(&m),
            cofactor_determinant(&m)
        );
        let singular = vec![vec![int(0), int(1)], vec![int(0), int(2)]];
        assert_eq!(<Rational as Ring>::determinant(&singular), int(0));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::from(0));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn pochhammer_splits(p in -20i64..20, d in 1i64..10, m in 0u32..=20, n in 0u32..=20) {
            let c = rat(p, d);
            let shifted = &c + int(m as i64);
            prop_assert_eq!(pochhammer(&c, m + n), pochhammer(&c, m) * pochhammer(&shifted, n));
        }
    }
}
