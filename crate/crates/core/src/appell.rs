//! The Appell family `alpha_k = (k+1)_r / (r+1)^r`: hypergeometric closed
//! forms, explicit coefficients, the Appell and scaling properties, and the
//! Pochhammer-product moments of the Meijer G densities.

use serde_json::{json, Value};

use crate::alpha::AlphaSpec;
use crate::error::{Error, Result};
use crate::mop::symmetric_sequence;
use crate::ring::{binomial, factorial, format_rational, parse_rational, pochhammer, Rational, UniPoly};
use num_traits::{One, Zero};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn check_r(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    Ok(())
}

fn check_rj(r: usize, j: usize) -> Result<()> {
    check_r(r)?;
    if j > r {
        return Err(Error::InvalidParameter(format!("j = {j} exceeds r = {r}")));
    }
    Ok(())
}

/// Lower parameters `a_i^[k]` of the hypergeometric representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AppellParams {
    pub r: usize,
}

impl AppellParams {
    pub fn new(r: usize) -> Result<Self> {
        check_r(r)?;
        Ok(AppellParams { r })
    }

    /// `a_i^[k]` for `1 <= i <= r+1` and any `k >= 0`; `a_{r+1}^[k] = 1 + n`
    /// where `k = (r+1)n + j`.
    pub fn lower_param(&self, i: usize, k: usize) -> Rational {
        let m = self.r + 1;
        let (n, j) = (k / m, k % m);
        let base = if i == m {
            Rational::one()
        } else if i + j <= self.r {
            Rational::new(((i + j) as i64).into(), (m as i64).into())
        } else {
            Rational::new(((i + j + 1) as i64).into(), (m as i64).into())
        };
        base + q(n as i64)
    }

    /// `i/(r+1) + ceil((k+1-i)/(r+1))` for `1 <= i <= r+1`.
    pub fn residue_param(&self, i: usize, k: usize) -> Rational {
        let m = (self.r + 1) as i64;
        let num = k as i64 + 1 - i as i64;
        let ceil = -(-num).div_euclid(m);
        Rational::new((i as i64).into(), m.into()) + q(ceil)
    }

    /// `(a_1^[k], ..., a_r^[k])`.
    pub fn params(&self, k: usize) -> Vec<Rational> {
        (1..=self.r).map(|i| self.lower_param(i, k)).collect()
    }

    /// `{a_1^[k], ..., a_r^[k], 1 + n} = {a^_1^[k], ..., a^_{r+1}^[k]}` as multisets.
    pub fn multiset_identity_holds(&self, k: usize) -> bool {
        let mut lhs: Vec<Rational> = (1..=self.r + 1).map(|i| self.lower_param(i, k)).collect();
        let mut rhs: Vec<Rational> = (1..=self.r + 1).map(|i| self.residue_param(i, k)).collect();
        lhs.sort();
        rhs.sort();
        lhs == rhs
    }

    /// `prod_i (a_i^[k])_n`.
    pub fn pochhammer_product(&self, k: usize, n: usize) -> Rational {
        self.params(k)
            .iter()
            .map(|a| pochhammer(a, n as u32))
            .fold(Rational::one(), |acc, v| acc * v)
    }
}

/// Coefficient of `x^{(r+1)k+j}` in `P_{(r+1)n+j}`:
/// `(-1)^{n-k} ((r+1)k+j+1)_{(r+1)(n-k)} / ((r+1)^{(r+1)(n-k)} (n-k)!)`.
pub fn explicit_coeff(r: usize, n: usize, k: usize, j: usize) -> Result<Rational> {
    check_rj(r, j)?;
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let m = r + 1;
    let d = n - k;
    let num = pochhammer(&q((m * k + j + 1) as i64), (m * d) as u32);
    let den = num_traits::pow(q(m as i64), m * d) * Rational::from_integer(factorial(d as u32));
    let v = num / den;
    Ok(if d % 2 == 1 { -v } else { v })
}

/// `sum_{k=0}^{n} (-n)_k / prod_i (b_i)_k * z^k / k!`.
pub fn hypergeometric_1fr(n: usize, lower: &[Rational]) -> UniPoly<Rational> {
    let minus_n = q(-(n as i64));
    let coeffs = (0..=n)
        .map(|k| {
            let den = lower
                .iter()
                .map(|b| pochhammer(b, k as u32))
                .fold(Rational::from_integer(factorial(k as u32)), |acc, v| acc * v);
            pochhammer(&minus_n, k as u32) / den
        })
        .collect();
    UniPoly::new(coeffs)
}

/// `P_{(r+1)n+j}` from its terminating `1F_r` representation.
pub fn hypergeometric_poly(r: usize, n: usize, j: usize) -> Result<UniPoly<Rational>> {
    check_rj(r, j)?;
    let m = r + 1;
    let params = AppellParams { r }.params(j);
    let mut pre = pochhammer(&q(j as i64 + 1), (m * n) as u32)
        / (Rational::from_integer(factorial(n as u32)) * num_traits::pow(q(m as i64), m * n));
    if n % 2 == 1 {
        pre = -pre;
    }
    Ok(hypergeometric_1fr(n, &params)
        .scale(&pre)
        .compose_power(m)
        .shift(j))
}

/// `P_{(r+1)n+j}` assembled from [`explicit_coeff`].
pub fn explicit_poly(r: usize, n: usize, j: usize) -> Result<UniPoly<Rational>> {
    check_rj(r, j)?;
    let mut coeffs = vec![Rational::zero(); (r + 1) * n + j + 1];
    for k in 0..=n {
        coeffs[(r + 1) * k + j] = explicit_coeff(r, n, k, j)?;
    }
    Ok(UniPoly::new(coeffs))
}

/// Component `P_n^[j] = (-1)^n prod_i (a_i^[j])_n 1F_r(-n; a^[j]; x)`.
pub fn component_hypergeometric(r: usize, n: usize, j: usize) -> Result<UniPoly<Rational>> {
    check_rj(r, j)?;
    let params = AppellParams { r };
    let mut pre = params.pochhammer_product(j, n);
    if n % 2 == 1 {
        pre = -pre;
    }
    Ok(hypergeometric_1fr(n, &params.params(j)).scale(&pre))
}

/// Scale used by default for the scaling-family check.
pub fn default_scale() -> Rational {
    q(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppellCheckKind {
    Derivative,
    Scaling,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AppellFailure {
    pub kind: AppellCheckKind,
    pub n: usize,
    pub residual: UniPoly<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AppellReport {
    pub r: usize,
    pub max_n: usize,
    pub scale: Rational,
    pub failure: Option<AppellFailure>,
}

impl AppellReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `P'_{n+1} = (n+1) P_n` for `n < max_n`, then that
/// `Q_n(x) = c^{-n} P_n(cx)` satisfies
/// `Q_{n+r+1} = x Q_{n+r} - a C(n+r, r) Q_n` with `a = r! c^{-(r+1)} (r+1)^{-r}`.
pub fn appell_verify(r: usize, max_n: usize, c: &Rational) -> Result<AppellReport> {
    check_r(r)?;
    if c.is_zero() {
        return Err(Error::InvalidParameter("scale must be nonzero".into()));
    }
    let s = symmetric_sequence::<Rational>(r, &AlphaSpec::Appell(r), max_n)?;
    let report = |failure| AppellReport {
        r,
        max_n,
        scale: c.clone(),
        failure,
    };
    for n in 0..max_n {
        let residual = s.polys[n + 1].differentiate() - &s.polys[n].scale(&q(n as i64 + 1));
        if !residual.is_zero() {
            return Ok(report(Some(AppellFailure {
                kind: AppellCheckKind::Derivative,
                n,
                residual,
            })));
        }
    }
    // Q_n(x) = c^{-n} P_n(cx): coefficient of x^e scaled by c^{e-n}
    let scaled: Vec<UniPoly<Rational>> = s
        .polys
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let coeffs = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(e, v)| v * pow_signed(c, e as i64 - n as i64))
                .collect();
            UniPoly::new(coeffs)
        })
        .collect();
    let m = r + 1;
    let a = Rational::from_integer(factorial(r as u32))
        / (num_traits::pow(c.clone(), m) * num_traits::pow(q(m as i64), r));
    for n in 0..(max_n + 1).saturating_sub(m) {
        let coef = &a * Rational::from_integer(binomial((n + r) as u32, r as u32));
        let rhs = scaled[n + r].shift(1) - &scaled[n].scale(&coef);
        let residual = scaled[n + m].clone() - &rhs;
        if !residual.is_zero() {
            return Ok(report(Some(AppellFailure {
                kind: AppellCheckKind::Scaling,
                n,
                residual,
            })));
        }
    }
    Ok(report(None))
}

fn pow_signed(c: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(c.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        Rational::one() / p
    } else {
        p
    }
}

/// Parameter list of a `G^{r,0}_{0,r}` density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeijerParams(pub Vec<Rational>);

impl MeijerParams {
    /// `prod_i (a_i)_n`, the moments of the density normalised to total mass one.
    pub fn moment(&self, n: usize) -> Rational {
        self.0
            .iter()
            .map(|a| pochhammer(a, n as u32))
            .fold(Rational::one(), |acc, v| acc * v)
    }
}

/// Moments of the half-line measure attached to the `j`-th functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppellMoments {
    pub r: usize,
    pub j: usize,
    pub meijer_params: MeijerParams,
    pub moments: Vec<Rational>,
}

impl AppellMoments {
    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "j": self.j,
            "meijer_params": self.meijer_params.0.iter().map(format_rational).collect::<Vec<_>>(),
            "moments": self.moments.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed moment record".into());
        let int = |key: &str| value.get(key).and_then(Value::as_u64).ok_or_else(bad);
        let list = |key: &str| -> Result<Vec<Rational>> {
            value
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|v| v.as_str().ok_or_else(bad).and_then(parse_rational))
                .collect()
        };
        Ok(AppellMoments {
            r: int("r")? as usize,
            j: int("j")? as usize,
            meijer_params: MeijerParams(list("meijer_params")?),
            moments: list("moments")?,
        })
    }
}

/// Moments `prod_i (a_i^[j-1])_n` for `n < count`, `1 <= j <= r`.
pub fn appell_moments(r: usize, j: usize, count: usize) -> Result<AppellMoments> {
    check_r(r)?;
    if j == 0 || j > r {
        return Err(Error::InvalidParameter(format!(
            "moments need 1 <= j <= r (r = {r}, j = {j})"
        )));
    }
    let params = MeijerParams(AppellParams { r }.params(j - 1));
    let moments = (0..count).map(|n| params.moment(n)).collect();
    Ok(AppellMoments {
        r,
        j,
        meijer_params: params,
        moments,
    })
}

/// A component measure: `scale` times the unit-mass G density with `params`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMeasure {
    pub params: MeijerParams,
    pub scale: Rational,
}

impl ComponentMeasure {
    pub fn moment(&self, n: usize) -> Rational {
        &self.scale * self.params.moment(n)
    }
}

/// Measures for the functionals `(v_{j+1}, ..., v_r, x v_1, ..., x v_j)`.
/// Multiplying by `x` raises every parameter by one; the factor
/// `prod_k a_k^[i-1]` restores the mass of `x v_i`.
pub fn component_measures(r: usize, j: usize) -> Result<Vec<ComponentMeasure>> {
    check_rj(r, j)?;
    let p = AppellParams { r };
    let mut out: Vec<ComponentMeasure> = (1..=r - j)
        .map(|i| ComponentMeasure {
            params: MeijerParams(p.params(j + i - 1)),
            scale: Rational::one(),
        })
        .collect();
    out.extend((1..=j).map(|i| ComponentMeasure {
        params: MeijerParams(p.params(r + i)),
        scale: p.pochhammer_product(i - 1, 1),
    }));
    Ok(out)
}

/// `alpha_k` recovered from the upper parameters: the product of
/// `a^_i^[k]` over `i` not congruent to `k` modulo `r+1`.
pub fn alpha_from_params(r: usize, k: usize) -> Rational {
    let p = AppellParams { r };
    (1..=r + 1)
        .filter(|i| i % (r + 1) != k % (r + 1))
        .map(|i| p.residue_param(i, k))
        .fold(Rational::one(), |acc, v| acc * v)
}
