//! The coefficient sequence `alpha_0, alpha_1, ...`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{parse_rational, pochhammer, MultiPoly, Rational, Ring};

/// Where the alpha values come from. Negative indices always give zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaSpec {
    /// `alpha_k` is the indeterminate `a_k` of the polynomial ring.
    Symbolic,
    /// A finite list of exact values.
    Explicit(Vec<Rational>),
    /// `alpha_k = (k+1)_r / (r+1)^r`.
    Appell(usize),
}

impl AlphaSpec {
    /// `len` copies of one.
    pub fn ones(len: usize) -> Self {
        AlphaSpec::Explicit(vec![Rational::one(); len])
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, AlphaSpec::Symbolic)
    }

    /// Number of available values, `None` when unbounded.
    pub fn bound(&self) -> Option<usize> {
        match self {
            AlphaSpec::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    /// Fails with `InsufficientAlpha` unless indices `0..needed` exist.
    pub fn require(&self, needed: usize) -> Result<()> {
        match self.bound() {
            Some(available) if available < needed => {
                Err(Error::InsufficientAlpha { needed, available })
            }
            _ => Ok(()),
        }
    }

    pub fn rational(&self, m: i64) -> Result<Rational> {
        if m < 0 {
            return Ok(Rational::zero());
        }
        let k = m as usize;
        match self {
            AlphaSpec::Symbolic => Err(Error::RingMismatch),
            AlphaSpec::Explicit(v) => v.get(k).cloned().ok_or(Error::InsufficientAlpha {
                needed: k + 1,
                available: v.len(),
            }),
            AlphaSpec::Appell(r) => Ok(appell_alpha(*r, k)),
        }
    }

    pub fn symbolic(&self, m: i64) -> Result<MultiPoly> {
        match self {
            AlphaSpec::Symbolic if m < 0 => Ok(MultiPoly::zero()),
            AlphaSpec::Symbolic => Ok(MultiPoly::var(m as u32)),
            _ => Err(Error::RingMismatch),
        }
    }
}

/// `(k+1)(k+2)...(k+r) / (r+1)^r`
pub fn appell_alpha(r: usize, k: usize) -> Rational {
    let num = pochhammer(&<Rational as Ring>::from_integer(k as i64 + 1), r as u32);
    let den = num_traits::pow(<Rational as Ring>::from_integer(r as i64 + 1), r);
    num / den
}

/// A ring in which alpha values can be realised.
pub trait AlphaRing: Ring {
    fn alpha(spec: &AlphaSpec, m: i64) -> Result<Self>;
}

impl AlphaRing for Rational {
    fn alpha(spec: &AlphaSpec, m: i64) -> Result<Self> {
        spec.rational(m)
    }
}

impl AlphaRing for MultiPoly {
    fn alpha(spec: &AlphaSpec, m: i64) -> Result<Self> {
        spec.symbolic(m)
    }
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSpec::Symbolic => write!(f, "symbolic"),
            AlphaSpec::Appell(_) => write!(f, "appell"),
            AlphaSpec::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(crate::ring::format_rational).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Parses `symbolic`, `appell` (needs `r`, supplied via [`AlphaSpec::with_r`])
/// or a comma-separated list of rationals.
impl FromStr for AlphaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "symbolic" => Ok(AlphaSpec::Symbolic),
            "appell" => Ok(AlphaSpec::Appell(0)),
            list => list
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()
                .map(AlphaSpec::Explicit),
        }
    }
}

impl AlphaSpec {
    /// Fixes the order of an `Appell` spec parsed without one.
    pub fn with_r(self, r: usize) -> Self {
        match self {
            AlphaSpec::Appell(_) => AlphaSpec::Appell(r),
            other => other,
        }
    }
}
