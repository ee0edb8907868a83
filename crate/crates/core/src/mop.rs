//! `(r+1)`-fold symmetric `r`-orthogonal polynomials: construction,
//! decomposition into components, component recurrences and the moment
//! functionals they are orthogonal against.

use std::fmt;

use serde_json::{json, Value};

use crate::alpha::{AlphaRing, AlphaSpec};
use crate::bidiag::{check_rj, closed_form_entry};
use crate::error::{Error, Result};
use crate::paths::generalised_sr;
use crate::prodmat::{dual_moment_column, dual_moment_matrix, PolySeq, TriangularMatrix};
use crate::ring::{Ring, UniPoly};

/// `P_0, ..., P_max` with `P_j = x^j` for `j <= r` and
/// `P_{n+r+1} = x P_{n+r} - alpha_n P_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMops<R> {
    pub r: usize,
    pub alpha: AlphaSpec,
    pub polys: Vec<UniPoly<R>>,
}

impl<R: Ring> SymmetricMops<R> {
    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn to_poly_seq(&self) -> PolySeq<R> {
        PolySeq::new(self.polys.clone())
    }
}

pub fn symmetric_sequence<R: AlphaRing>(
    r: usize,
    alpha: &AlphaSpec,
    max_degree: usize,
) -> Result<SymmetricMops<R>> {
    check_rj(r, 0)?;
    if max_degree > r {
        alpha.require(max_degree - r)?;
    }
    let mut polys: Vec<UniPoly<R>> = (0..=max_degree.min(r)).map(UniPoly::monomial).collect();
    for m in r + 1..=max_degree {
        let n = m - r - 1;
        let a = R::alpha(alpha, n as i64)?;
        let next = polys[m - 1].shift(1) - &polys[n].scale(&a);
        polys.push(next);
    }
    Ok(SymmetricMops {
        r,
        alpha: alpha.clone(),
        polys,
    })
}

/// Component `P_n^[j]` with `P_{(r+1)n+j}(x) = x^j P_n^[j](x^{r+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSeq<R> {
    pub r: usize,
    pub j: usize,
    pub polys: Vec<UniPoly<R>>,
}

impl<R: Ring> ComponentSeq<R> {
    /// `x^j P_n^[j](x^{r+1})`.
    pub fn reconstruct(&self, n: usize) -> UniPoly<R> {
        self.polys[n].compose_power(self.r + 1).shift(self.j)
    }

    pub fn to_poly_seq(&self) -> PolySeq<R> {
        PolySeq::new(self.polys.clone())
    }
}

/// Splits every stored polynomial into its component, failing on any
/// coefficient that breaks the `(r+1)`-fold symmetry.
pub fn decompose<R: Ring>(s: &SymmetricMops<R>) -> Result<Vec<ComponentSeq<R>>> {
    let m = s.r + 1;
    for (n, p) in s.polys.iter().enumerate() {
        for (e, c) in p.coeffs().iter().enumerate() {
            if e % m != n % m && !c.is_zero() {
                return Err(Error::SymmetryViolation { n, m: e });
            }
        }
    }
    Ok((0..=s.r)
        .map(|j| {
            let polys = (j..s.polys.len())
                .step_by(m)
                .map(|deg| {
                    let p = &s.polys[deg];
                    UniPoly::new((0..=deg / m).map(|i| p.coeff(m * i + j)).collect())
                })
                .collect();
            ComponentSeq { r: s.r, j, polys }
        })
        .collect())
}

/// `gamma_n^[k;j]`, the coefficient of `P_{n}^[j]` in the recurrence for
/// `P_{n+k+1}^[j]`.
pub fn component_gamma<R: AlphaRing>(
    r: usize,
    j: usize,
    alpha: &AlphaSpec,
    n: usize,
    k: usize,
) -> Result<R> {
    check_rj(r, j)?;
    closed_form_entry(r, j, n, k, alpha)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceFailure<R> {
    pub n: usize,
    pub j: usize,
    pub residual: UniPoly<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCheck<R> {
    pub checked: usize,
    pub failure: Option<RecurrenceFailure<R>>,
}

impl<R> RecurrenceCheck<R> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `P_{n+1}^[j] = x P_n^[j] - sum_k gamma_{n-k}^[k;j] P_{n-k}^[j]` for
/// every stored `n`, stopping at the first failure.
pub fn verify_component_recurrence<R: AlphaRing>(
    c: &ComponentSeq<R>,
    alpha: &AlphaSpec,
) -> Result<RecurrenceCheck<R>> {
    let mut checked = 0;
    for n in 0..c.polys.len().saturating_sub(1) {
        let mut rhs = c.polys[n].shift(1);
        for k in 0..=c.r.min(n) {
            let g: R = component_gamma(c.r, c.j, alpha, n - k, k)?;
            if !g.is_zero() {
                rhs = rhs - &c.polys[n - k].scale(&g);
            }
        }
        let residual = c.polys[n + 1].clone() - &rhs;
        checked += 1;
        if !residual.is_zero() {
            return Ok(RecurrenceCheck {
                checked,
                failure: Some(RecurrenceFailure { n, j: c.j, residual }),
            });
        }
    }
    Ok(RecurrenceCheck {
        checked,
        failure: None,
    })
}

/// Dual moment matrix of the symmetric sequence together with the outcome of
/// the congruence-zero and path-count checks.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMomentTable<R> {
    pub r: usize,
    pub moments: TriangularMatrix<R>,
    /// `(n, k)` with `n != k mod (r+1)` and a nonzero moment.
    pub zero_violations: Vec<(usize, usize)>,
    /// `(n, k)` at congruent indices whose moment differs from the path sum.
    pub path_mismatches: Vec<(usize, usize)>,
}

impl<R> SymmetricMomentTable<R> {
    pub fn passed(&self) -> bool {
        self.zero_violations.is_empty() && self.path_mismatches.is_empty()
    }
}

/// `<u_k, x^n>` for `n, k < size`, checked against the weighted path counts
/// `<u_{(r+1)k+j}, x^{(r+1)n+j}> = S^(r;j)_{n,k}`.
pub fn dual_moments_symmetric<R: AlphaRing>(
    r: usize,
    alpha: &AlphaSpec,
    size: usize,
) -> Result<SymmetricMomentTable<R>> {
    let s = symmetric_sequence::<R>(r, alpha, size.saturating_sub(1))?;
    let moments = dual_moment_matrix(&s.to_poly_seq(), size)?;
    let m = r + 1;
    let mut zero_violations = Vec::new();
    let mut path_mismatches = Vec::new();
    for row in 0..size {
        for col in 0..=row {
            let v = moments.get(row, col);
            if row % m != col % m {
                if !v.is_zero() {
                    zero_violations.push((row, col));
                }
                continue;
            }
            let j = col % m;
            let expected: R = generalised_sr(r, j, row / m, col / m, alpha)?;
            if *v != expected {
                path_mismatches.push((row, col));
            }
        }
    }
    Ok(SymmetricMomentTable {
        r,
        moments,
        zero_violations,
        path_mismatches,
    })
}

/// A linear functional known through its first moments `<u, x^n>`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentFunctional<R> {
    pub moments: Vec<R>,
}

impl<R: Ring> MomentFunctional<R> {
    pub fn new(moments: Vec<R>) -> Self {
        MomentFunctional { moments }
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    /// `<u, p>`.
    pub fn apply(&self, p: &UniPoly<R>) -> Result<R> {
        self.apply_times_power(0, p)
    }

    /// `<u, x^k p>`.
    pub fn apply_times_power(&self, k: usize, p: &UniPoly<R>) -> Result<R> {
        let needed = p.degree().map_or(0, |d| d + k + 1);
        if needed > self.moments.len() {
            return Err(Error::InsufficientMoments {
                needed,
                available: self.moments.len(),
            });
        }
        let mut acc = R::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc + c.clone() * &self.moments[i + k];
            }
        }
        Ok(acc)
    }

    /// The functional `x u`, with moments `m_{n+1}`.
    pub fn shift(&self) -> Self {
        MomentFunctional {
            moments: self.moments.iter().skip(1).cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Zero,
    Nonzero,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Zero => "zero",
            Expected::Nonzero => "nonzero",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityEntry<R> {
    /// One-based index of the functional.
    pub functional: usize,
    pub k: usize,
    pub n: usize,
    pub expected: Expected,
    pub value: R,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport<R> {
    pub entries: Vec<OrthogonalityEntry<R>>,
}

impl<R: Ring> OrthogonalityReport<R> {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &OrthogonalityEntry<R>> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    json!({
                        "functional": e.functional,
                        "k": e.k,
                        "n": e.n,
                        "expected": e.expected.to_string(),
                        "value": e.value.to_json(),
                        "pass": e.pass,
                    })
                })
                .collect(),
        )
    }
}

/// For the `j`-th functional (one-based) and every `k`, checks
/// `<v_j, x^k P_n> = 0` for `rk + j <= n <= max_n` and `!= 0` for
/// `n = rk + j - 1`.
pub fn orthogonality_check<R: Ring>(
    p: &PolySeq<R>,
    functionals: &[MomentFunctional<R>],
    r: usize,
    max_n: usize,
) -> Result<OrthogonalityReport<R>> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    if p.len() <= max_n {
        return Err(Error::TruncationTooSmall {
            needed: max_n + 1,
            available: p.len(),
        });
    }
    let mut entries = Vec::new();
    for (idx, v) in functionals.iter().enumerate() {
        let j = idx + 1;
        let mut k = 0;
        while r * k + j - 1 <= max_n {
            for n in r * k + j - 1..=max_n {
                let value = v.apply_times_power(k, p.get(n))?;
                let expected = if n == r * k + j - 1 {
                    Expected::Nonzero
                } else {
                    Expected::Zero
                };
                let pass = value.is_zero() == (expected == Expected::Zero);
                entries.push(OrthogonalityEntry {
                    functional: j,
                    k,
                    n,
                    expected,
                    value,
                    pass,
                });
            }
            k += 1;
        }
    }
    Ok(OrthogonalityReport { entries })
}

/// `Z^(r;j)_n` for `n < count`, read off the dual moments of the symmetric
/// sequence as `<u_j, x^{(r+1)n+j}>`.
pub fn modified_sr_moments<R: AlphaRing>(
    r: usize,
    j: usize,
    alpha: &AlphaSpec,
    count: usize,
) -> Result<Vec<R>> {
    check_rj(r, j)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let m = r + 1;
    let size = m * (count - 1) + j + 1;
    let s = symmetric_sequence::<R>(r, alpha, size - 1)?;
    let column = dual_moment_column(&s.to_poly_seq(), j, size)?;
    Ok(column.into_iter().skip(j).step_by(m).collect())
}

/// `v_i` with `<v_i, x^n> = Z^(r;i-1)_n` for `n < count`, `i = 1..=r`.
pub fn base_functionals<R: AlphaRing>(
    r: usize,
    alpha: &AlphaSpec,
    count: usize,
) -> Result<Vec<MomentFunctional<R>>> {
    (0..r)
        .map(|i| modified_sr_moments(r, i, alpha, count).map(MomentFunctional::new))
        .collect()
}

/// `(v_{j+1}, ..., v_r, x v_1, ..., x v_j)`, each with `count` moments.
pub fn component_functionals<R: AlphaRing>(
    r: usize,
    j: usize,
    alpha: &AlphaSpec,
    count: usize,
) -> Result<Vec<MomentFunctional<R>>> {
    check_rj(r, j)?;
    let base = base_functionals::<R>(r, alpha, count + 1)?;
    let trim = |mut f: MomentFunctional<R>| {
        f.moments.truncate(count);
        f
    };
    let mut out: Vec<_> = base[j..].iter().cloned().map(trim).collect();
    out.extend(base[..j].iter().map(|v| trim(v.shift())));
    Ok(out)
}

/// `u_0, ..., u_{r-1}` with `<u_j, x^{(r+1)n+k}> = Z^(r;j)_n` when `k = j`
/// and zero otherwise, for degrees below `count`.
pub fn symmetric_functionals<R: AlphaRing>(
    r: usize,
    alpha: &AlphaSpec,
    count: usize,
) -> Result<Vec<MomentFunctional<R>>> {
    let m = r + 1;
    (0..r)
        .map(|j| {
            let z = modified_sr_moments::<R>(r, j, alpha, count / m + 1)?;
            let moments = (0..count)
                .map(|d| {
                    if d % m == j {
                        z[d / m].clone()
                    } else {
                        R::zero()
                    }
                })
                .collect();
            Ok(MomentFunctional::new(moments))
        })
        .collect()
}

/// Moment `m` of the star-set measure attached to `v_j`: zero unless
/// `m = (r+1)n + j - 1`, in which case `Z^(r;j-1)_n`.
pub fn star_moment<R: AlphaRing>(r: usize, j: usize, m: usize, alpha: &AlphaSpec) -> Result<R> {
    if j == 0 || j > r {
        return Err(Error::InvalidParameter(format!(
            "star moments need 1 <= j <= r (r = {r}, j = {j})"
        )));
    }
    let period = r + 1;
    if m % period != j - 1 {
        return Ok(R::zero());
    }
    let n = m / period;
    let z = modified_sr_moments::<R>(r, j - 1, alpha, n + 1)?;
    Ok(z[n].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bidiag::{closed_form_entries, hessenberg_product};
    use crate::paths::modified_sr;
    use crate::prodmat::poly_sequence_from_hessenberg;
    use crate::ring::{int, rat, MultiPoly, Rational};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn q(v: &[Rational]) -> UniPoly<Rational> {
        UniPoly::new(v.to_vec())
    }

    fn a(i: u32) -> MultiPoly {
        MultiPoly::var(i)
    }

    #[test]
    fn appell_r2_sequence() {
        let s = symmetric_sequence::<Rational>(2, &AlphaSpec::Appell(2), 6).unwrap();
        for j in 0..=2 {
            assert_eq!(s.polys[j], UniPoly::monomial(j));
        }
        assert_eq!(s.polys[3], q(&[rat(-2, 9), int(0), int(0), int(1)]));
        assert_eq!(s.polys[4], q(&[int(0), rat(-8, 9), int(0), int(0), int(1)]));
        let mut p6 = vec![int(0); 7];
        p6[0] = rat(40, 81);
        p6[3] = rat(-40, 9);
        p6[6] = int(1);
        assert_eq!(s.polys[6], q(&p6));
    }

    #[test]
    fn insufficient_alpha() {
        let err = symmetric_sequence::<Rational>(1, &AlphaSpec::ones(3), 6).unwrap_err();
        assert_eq!(err, Error::InsufficientAlpha { needed: 5, available: 3 });
        assert!(symmetric_sequence::<Rational>(1, &AlphaSpec::ones(5), 6).is_ok());
    }

    #[test]
    fn appell_r2_components() {
        let s = symmetric_sequence::<Rational>(2, &AlphaSpec::Appell(2), 6).unwrap();
        let c = decompose(&s).unwrap();
        assert_eq!(c[0].polys[2], q(&[rat(40, 81), rat(-40, 9), int(1)]));
        assert_eq!(c[1].polys[1], q(&[rat(-8, 9), int(1)]));
        for comp in &c {
            assert_eq!(comp.polys[0], UniPoly::one());
        }
    }

    #[test]
    fn symmetry_violation_detected() {
        let mut s = symmetric_sequence::<Rational>(1, &AlphaSpec::ones(4), 4).unwrap();
        s.polys[3] = s.polys[3].clone() + UniPoly::monomial(2);
        assert_eq!(decompose(&s).unwrap_err(), Error::SymmetryViolation { n: 3, m: 2 });
    }

    #[test]
    fn decomposition_round_trip() {
        for r in 1..=3 {
            let sym = symmetric_sequence::<MultiPoly>(r, &AlphaSpec::Symbolic, 24).unwrap();
            let app = symmetric_sequence::<Rational>(r, &AlphaSpec::Appell(r), 24).unwrap();
            for c in decompose(&sym).unwrap() {
                for n in 0..c.polys.len() {
                    assert_eq!(c.reconstruct(n), sym.polys[(r + 1) * n + c.j]);
                    assert_eq!(c.polys[n].degree(), Some(n));
                }
            }
            for c in decompose(&app).unwrap() {
                for n in 0..c.polys.len() {
                    assert_eq!(c.reconstruct(n), app.polys[(r + 1) * n + c.j]);
                }
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let s = AlphaSpec::Symbolic;
        let g: MultiPoly = component_gamma(2, 0, &s, 2, 0).unwrap();
        assert_eq!(g, a(4) + a(5) + a(6));
        let g: MultiPoly = component_gamma(2, 0, &s, 0, 0).unwrap();
        assert_eq!(g, a(0));
        let g: MultiPoly = component_gamma(2, 0, &s, 0, 1).unwrap();
        assert_eq!(g, a(0) * a(2) + a(0) * a(1));
        let g: Rational = component_gamma(2, 0, &AlphaSpec::Appell(2), 1, 0).unwrap();
        assert_eq!(g, rat(38, 9));
        let h = closed_form_entries::<MultiPoly>(3, 1, &s, 6).unwrap();
        for k in 0..=3 {
            for n in 0..6 - k {
                let g: MultiPoly = component_gamma(3, 1, &s, n, k).unwrap();
                assert_eq!(g, h.get(n + k, n));
            }
        }
    }

    #[test]
    fn component_recurrences_hold() {
        for r in 1..=3 {
            let sym = symmetric_sequence::<MultiPoly>(r, &AlphaSpec::Symbolic, 7 * (r + 1)).unwrap();
            for c in decompose(&sym).unwrap() {
                let check = verify_component_recurrence(&c, &AlphaSpec::Symbolic).unwrap();
                assert!(check.passed(), "r={r} j={}", c.j);
                assert!(check.checked >= 6);
            }
        }
        let ones = symmetric_sequence::<Rational>(1, &AlphaSpec::ones(20), 8).unwrap();
        let c0 = &decompose(&ones).unwrap()[0];
        assert_eq!(c0.polys[2], q(&[int(1), int(-3), int(1)]));
    }

    #[test]
    fn broken_component_is_reported() {
        let s = symmetric_sequence::<Rational>(2, &AlphaSpec::Appell(2), 9).unwrap();
        let mut c = decompose(&s).unwrap().remove(0);
        c.polys[2] = c.polys[2].clone() + UniPoly::one();
        let check = verify_component_recurrence(&c, &AlphaSpec::Appell(2)).unwrap();
        let failure = check.failure.unwrap();
        assert_eq!((failure.n, failure.j), (1, 0));
        assert_eq!(failure.residual, UniPoly::one());
    }

    #[test]
    fn components_match_hessenberg() {
        for r in 1..=3 {
            let sym = symmetric_sequence::<MultiPoly>(r, &AlphaSpec::Symbolic, 6 * (r + 1) + r).unwrap();
            for c in decompose(&sym).unwrap() {
                let h = hessenberg_product::<MultiPoly>(r, c.j, &AlphaSpec::Symbolic, 6).unwrap();
                let p = poly_sequence_from_hessenberg(&h, 6).unwrap();
                assert_eq!(&p.polys[..], &c.polys[..7], "r={r} j={}", c.j);
            }
        }
    }

    #[test]
    fn component_dual_moments_are_path_sums() {
        let s = AlphaSpec::Symbolic;
        for r in 1..=2 {
            let sym = symmetric_sequence::<MultiPoly>(r, &s, 7 * (r + 1) + r).unwrap();
            for c in decompose(&sym).unwrap() {
                let a = dual_moment_matrix(&c.to_poly_seq(), 7).unwrap();
                for n in 0..7 {
                    for k in 0..=n {
                        let p: MultiPoly = generalised_sr(r, c.j, n, k, &s).unwrap();
                        assert_eq!(*a.get(n, k), p, "r={r} j={} n={n} k={k}", c.j);
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_dual_moments() {
        let t = dual_moments_symmetric::<Rational>(1, &AlphaSpec::ones(20), 9).unwrap();
        assert!(t.passed());
        assert_eq!(*t.moments.get(4, 0), int(2));
        assert_eq!(*t.moments.get(3, 1), int(2));
        for r in 1..=3 {
            let t = dual_moments_symmetric::<MultiPoly>(r, &AlphaSpec::Symbolic, 10).unwrap();
            assert!(t.passed(), "r={r}");
            let t = dual_moments_symmetric::<Rational>(r, &AlphaSpec::Appell(r), 14).unwrap();
            assert!(t.passed(), "r={r}");
        }
    }

    #[test]
    fn functional_application() {
        let u = MomentFunctional::new(vec![int(1), int(0), int(1), int(0), int(2)]);
        let p2 = q(&[int(-1), int(0), int(1)]);
        assert_eq!(u.apply(&p2).unwrap(), int(0));
        assert_eq!(u.apply_times_power(2, &p2).unwrap(), int(1));
        assert_eq!(
            u.apply_times_power(3, &p2),
            Err(Error::InsufficientMoments { needed: 6, available: 5 })
        );
        assert_eq!(u.shift().moments, vec![int(0), int(1), int(0), int(2)]);
    }

    #[test]
    fn orthogonality_examples() {
        let s = symmetric_sequence::<Rational>(2, &AlphaSpec::Appell(2), 9).unwrap();
        let u = symmetric_functionals::<Rational>(2, &AlphaSpec::Appell(2), 12).unwrap();
        assert_eq!(u[0].apply(&s.polys[3]).unwrap(), int(0));
        assert_eq!(u[0].moments[3], rat(2, 9));

        let s1 = symmetric_sequence::<Rational>(1, &AlphaSpec::ones(10), 6).unwrap();
        let u1 = symmetric_functionals::<Rational>(1, &AlphaSpec::ones(10), 3).unwrap();
        assert_eq!(u1[0].moments, vec![int(1), int(0), int(1)]);
        assert_eq!(u1[0].apply(&s1.polys[2]).unwrap(), int(0));

        let report = orthogonality_check(&s.to_poly_seq(), &u, 2, 5).unwrap();
        assert!(report.passed());
        let first = &report.entries[0];
        assert_eq!((first.functional, first.k, first.n), (1, 0, 0));
        assert_eq!(first.expected, Expected::Nonzero);
        assert!(first.value.is_one());
        let json = report.to_json();
        assert_eq!(json[0]["expected"], "nonzero");
        assert_eq!(json[0]["pass"], true);
    }

    #[test]
    fn orthogonality_needs_moments() {
        let s = symmetric_sequence::<Rational>(2, &AlphaSpec::Appell(2), 9).unwrap();
        let u = symmetric_functionals::<Rational>(2, &AlphaSpec::Appell(2), 5).unwrap();
        assert!(matches!(
            orthogonality_check(&s.to_poly_seq(), &u, 2, 8),
            Err(Error::InsufficientMoments { .. })
        ));
    }

    #[test]
    fn wrong_functional_fails_check() {
        let s = symmetric_sequence::<Rational>(1, &AlphaSpec::ones(20), 8).unwrap();
        let bogus = MomentFunctional::new(vec![int(1); 16]);
        let report = orthogonality_check(&s.to_poly_seq(), &[bogus], 1, 6).unwrap();
        assert!(!report.passed());
        assert!(report.failures().count() > 0);
    }

    #[test]
    fn symmetric_sequence_orthogonality() {
        for r in 1..=3 {
            let max_n = 3 * (r + 1);
            let alpha = AlphaSpec::Appell(r);
            let s = symmetric_sequence::<Rational>(r, &alpha, max_n).unwrap();
            let u = symmetric_functionals::<Rational>(r, &alpha, 2 * max_n + 2).unwrap();
            let report = orthogonality_check(&s.to_poly_seq(), &u, r, max_n).unwrap();
            assert!(report.passed(), "r={r}");
        }
    }

    #[test]
    fn component_orthogonality() {
        for r in 1..=3 {
            let alpha = AlphaSpec::Appell(r);
            let s = symmetric_sequence::<Rational>(r, &alpha, 7 * (r + 1) + r).unwrap();
            for c in decompose(&s).unwrap() {
                let v = component_functionals::<Rational>(r, c.j, &alpha, 16).unwrap();
                assert_eq!(v.len(), r);
                let report = orthogonality_check(&c.to_poly_seq(), &v, r, 6).unwrap();
                assert!(report.passed(), "r={r} j={}", c.j);
            }
        }
    }

    #[test]
    fn component_functional_order() {
        let s = AlphaSpec::Symbolic;
        let f0 = component_functionals::<MultiPoly>(2, 0, &s, 3).unwrap();
        for (i, f) in f0.iter().enumerate() {
            for n in 0..3 {
                assert_eq!(f.moments[n], modified_sr::<MultiPoly>(2, i, n, &s).unwrap());
            }
        }
        let f1 = component_functionals::<MultiPoly>(2, 1, &s, 3).unwrap();
        assert_eq!(f1[0], f0[1]);
        assert_eq!(f1[1].moments[0], a(0));
        let long = component_functionals::<MultiPoly>(2, 0, &s, 4).unwrap();
        let f2 = component_functionals::<MultiPoly>(2, 2, &s, 3).unwrap();
        assert_eq!(f2[0], long[0].shift_trimmed(3));
        assert_eq!(f2[1], long[1].shift_trimmed(3));
    }

    #[test]
    fn star_moments() {
        let s = AlphaSpec::Symbolic;
        assert!(star_moment::<MultiPoly>(2, 1, 4, &s).unwrap().is_zero());
        assert_eq!(star_moment::<MultiPoly>(2, 1, 3, &s).unwrap(), a(0));
        assert!(star_moment::<MultiPoly>(2, 2, 1, &s).unwrap().is_one());
        assert!(star_moment::<MultiPoly>(2, 0, 1, &s).is_err());
        for r in 1..=3 {
            for j in 1..=r {
                for m in 0..4 * (r + 1) {
                    let v: MultiPoly = star_moment(r, j, m, &s).unwrap();
                    if m % (r + 1) == j - 1 {
                        let z: MultiPoly = modified_sr(r, j - 1, m / (r + 1), &s).unwrap();
                        assert_eq!(v, z);
                    } else {
                        assert!(v.is_zero());
                    }
                }
            }
        }
    }

    impl<R: Ring> MomentFunctional<R> {
        fn shift_trimmed(&self, count: usize) -> Self {
            let mut f = self.shift();
            f.moments.truncate(count);
            f
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn production_moments_match_paths(r in 1usize..=3, j in 0usize..=3, n in 0usize..5) {
            prop_assume!(j <= r);
            let s = AlphaSpec::Symbolic;
            let z = modified_sr_moments::<MultiPoly>(r, j, &s, n + 1).unwrap();
            prop_assert_eq!(&z[n], &modified_sr::<MultiPoly>(r, j, n, &s).unwrap());
        }

        #[test]
        fn functional_is_linear(
            m in proptest::collection::vec(-20i64..20, 6),
            p in proptest::collection::vec(-9i64..9, 4),
            q2 in proptest::collection::vec(-9i64..9, 4),
            c in -5i64..5,
        ) {
            let u = MomentFunctional::new(m.into_iter().map(int).collect());
            let p = UniPoly::new(p.into_iter().map(int).collect());
            let q2 = UniPoly::new(q2.into_iter().map(int).collect());
            let lhs = u.apply(&(p.scale(&int(c)) + &q2)).unwrap();
            let rhs = int(c) * u.apply(&p).unwrap() + u.apply(&q2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn symmetric_sequence_is_symmetric(r in 1usize..=4, deg in 0usize..20) {
            let s = symmetric_sequence::<Rational>(r, &AlphaSpec::Appell(r), deg).unwrap();
            prop_assert!(decompose(&s).is_ok());
            for (n, p) in s.polys.iter().enumerate() {
                prop_assert!(p.is_monic() && p.degree() == Some(n));
            }
        }
    }
}
