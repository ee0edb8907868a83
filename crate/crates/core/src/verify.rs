//! Verification suites. Each suite checks one family of exact identities
//! over a fixed range and reports either success or its first
//! counterexample.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::alpha::AlphaSpec;
use crate::appell::{
    appell_moments, appell_verify, default_scale, explicit_poly, hypergeometric_poly,
};
use crate::bidiag::{closed_form_entries, hessenberg_product};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mop::{
    component_functionals, decompose, dual_moments_symmetric, star_moment, symmetric_functionals,
    symmetric_sequence, verify_component_recurrence,
};
use crate::paths::{generalised_sr, generalised_sr_transfer, genetic_sum, modified_sr};
use crate::posspec::{interlacing_check, isolate_positive_simple_roots, oscillation_check, tp_check};
use crate::prodmat::{dual_moment_matrix, output_matrix, poly_sequence_from_hessenberg};
use crate::ring::{int, MultiPoly, Rational, Ring, UniPoly};

/// Environment variable holding the worker count for parallel suites.
pub const THREADS_ENV: &str = "STARHESS_THREADS";

/// Leading block compared entrywise in the factorisation suite.
pub const FACTOR_BLOCK: usize = 8;
/// Largest path index in the production and dual-moment suites.
pub const PRODUCTION_MAX: usize = 5;
pub const DUAL_MOMENT_MAX: usize = 6;
pub const COMPONENT_MAX: usize = 6;
pub const GENETIC_MAX: usize = 5;
/// Minor caps: order and block for polynomial entries, block for rationals.
pub const TP_SYMBOLIC_ORDER: usize = 3;
pub const TP_SYMBOLIC_BLOCK: usize = 6;
pub const TP_RATIONAL_BLOCK: usize = 8;
/// Root boxes are refined to width `2^-ZERO_WIDTH_BITS`.
pub const ZERO_WIDTH_BITS: usize = 30;
pub const ZERO_MAX: usize = 8;
pub const OSCILLATION_MAX: usize = 6;
pub const APPELL_DEGREE: usize = 24;
pub const APPELL_MOMENT_MAX: usize = 8;

/// Optional narrowing of a suite: a single `r`, or a different index bound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub r: Option<usize>,
    pub max: Option<usize>,
}

impl SuiteParams {
    fn rs(&self, default: RangeInclusive<usize>) -> Result<Vec<usize>> {
        match self.r {
            Some(0) => Err(Error::InvalidParameter("r must be positive".into())),
            Some(r) => Ok(vec![r]),
            None => Ok(default.collect()),
        }
    }

    fn max_or(&self, default: usize) -> usize {
        self.max.unwrap_or(default)
    }
}

type Verdict = Result<std::result::Result<String, String>>;

pub struct Suite {
    pub id: usize,
    pub name: &'static str,
    pub summary: &'static str,
    run: fn(&SuiteParams) -> Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} [{:>2}] {:<14} {:>7.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub static SUITES: [Suite; 11] = [
    Suite {
        id: 1,
        name: "factorisation",
        summary: "bidiagonal product equals closed-form entries",
        run: factorisation,
    },
    Suite {
        id: 2,
        name: "production",
        summary: "output matrix of H^(r;j) equals the path polynomials",
        run: production,
    },
    Suite {
        id: 3,
        name: "components",
        summary: "components satisfy the Hessenberg recurrence",
        run: components,
    },
    Suite {
        id: 4,
        name: "dual-moments",
        summary: "dual moments equal path polynomials, zero off congruence",
        run: dual_moments,
    },
    Suite {
        id: 5,
        name: "golden",
        summary: "Catalan and Fuss-Catalan counts",
        run: golden,
    },
    Suite {
        id: 6,
        name: "genetic",
        summary: "nested sums equal modified path polynomials",
        run: genetic,
    },
    Suite {
        id: 7,
        name: "tp",
        summary: "minors are nonnegative",
        run: total_positivity,
    },
    Suite {
        id: 8,
        name: "zeros",
        summary: "simple positive zeros that interlace",
        run: zeros,
    },
    Suite {
        id: 9,
        name: "oscillation",
        summary: "leading blocks are oscillation matrices",
        run: oscillation,
    },
    Suite {
        id: 10,
        name: "appell",
        summary: "closed forms, Appell property, moments",
        run: appell,
    },
    Suite {
        id: 11,
        name: "orthogonality",
        summary: "orthogonality conditions hold exactly",
        run: orthogonality,
    },
];

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

pub fn run_suite(suite: &Suite, params: &SuiteParams) -> CheckOutcome {
    let start = Instant::now();
    let (passed, detail) = match (suite.run)(params) {
        Ok(Ok(detail)) => (true, detail),
        Ok(Err(detail)) => (false, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome {
        id: suite.id,
        name: suite.name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Thread pool sized by [`THREADS_ENV`], defaulting to the logical CPU count.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidParameter(format!("{THREADS_ENV} must be an integer")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
}

/// Runs the given suites in parallel; outcomes come back in input order.
pub fn run_suites(suites: &[&'static Suite], params: &SuiteParams) -> Result<Vec<CheckOutcome>> {
    let pool = thread_pool()?;
    Ok(pool.install(|| suites.par_iter().map(|s| run_suite(s, params)).collect()))
}

pub fn run_all(params: &SuiteParams) -> Result<Vec<CheckOutcome>> {
    let all: Vec<&'static Suite> = SUITES.iter().collect();
    run_suites(&all, params)
}

fn js(r: usize) -> RangeInclusive<usize> {
    0..=r
}

// (r, j) pairs evaluated in parallel; the first failure in pair order wins.
fn over_pairs(
    rs: &[usize],
    f: impl Fn(usize, usize) -> Result<Option<String>> + Sync,
) -> Result<Option<String>> {
    let pairs: Vec<(usize, usize)> = rs.iter().flat_map(|&r| js(r).map(move |j| (r, j))).collect();
    let results: Vec<Result<Option<String>>> = pairs.par_iter().map(|&(r, j)| f(r, j)).collect();
    for res in results {
        if let Some(fail) = res? {
            return Ok(Some(fail));
        }
    }
    Ok(None)
}

fn verdict(failure: Option<String>, ok: String) -> Verdict {
    Ok(match failure {
        Some(f) => Err(f),
        None => Ok(ok),
    })
}

fn factorisation(p: &SuiteParams) -> Verdict {
    let rs = p.rs(1..=3)?;
    let size = p.max_or(FACTOR_BLOCK);
    let fail = over_pairs(&rs, |r, j| {
        let s = AlphaSpec::Symbolic;
        let a = hessenberg_product::<MultiPoly>(r, j, &s, size)?;
        let b = closed_form_entries::<MultiPoly>(r, j, &s, size)?;
        for row in 0..size {
            for col in 0..size {
                if a.get(row, col) != b.get(row, col) {
                    return Ok(Some(format!(
                        "r={r} j={j} entry ({row},{col}): product {} vs closed form {}",
                        a.get(row, col),
                        b.get(row, col)
                    )));
                }
            }
        }
        Ok(None)
    })?;
    verdict(fail, format!("{size}x{size} blocks equal for r in {rs:?}, all j"))
}

fn production(p: &SuiteParams) -> Verdict {
    let rs = p.rs(1..=3)?;
    let max = p.max_or(PRODUCTION_MAX);
    let fail = over_pairs(&rs, |r, j| {
        let s = AlphaSpec::Symbolic;
        let h = hessenberg_product::<MultiPoly>(r, j, &s, max + 2)?;
        let a = output_matrix(&h, max + 1)?;
        for n in 0..=max {
            for k in 0..=max {
                let paths: MultiPoly = generalised_sr(r, j, n, k, &s)?;
                if *a.get(n, k) != paths {
                    return Ok(Some(format!(
                        "r={r} j={j} (n,k)=({n},{k}): output {} vs paths {paths}",
                        a.get(n, k)
                    )));
                }
            }
        }
        Ok(None)
    })?;
    verdict(fail, format!("n,k <= {max} for r in {rs:?}, all j"))
}

fn components(p: &SuiteParams) -> Verdict {
    let rs = p.rs(1..=3)?;
    let max = p.max_or(COMPONENT_MAX);
    fn check<R: crate::alpha::AlphaRing>(
        r: usize,
        alpha: &AlphaSpec,
        max: usize,
        label: &str,
    ) -> Result<Option<String>> {
        let sym = symmetric_sequence::<R>(r, alpha, (r + 1) * max + r)?;
        for c in decompose(&sym)? {
            let rec = verify_component_recurrence(&c, alpha)?;
            if let Some(f) = rec.failure {
                return Ok(Some(format!(
                    "{label} r={r} j={} n={}: recurrence residual {}",
                    f.j, f.n, f.residual
                )));
            }
            let h = hessenberg_product::<R>(r, c.j, alpha, max)?;
            let chars = poly_sequence_from_hessenberg(&h, max)?;
            for n in 0..=max {
                if chars.polys[n] != c.polys[n] {
                    return Ok(Some(format!(
                        "{label} r={r} j={} n={n}: component {} vs characteristic {}",
                        c.j, c.polys[n], chars.polys[n]
                    )));
                }
            }
        }
        Ok(None)
    }
    let jobs: Vec<(usize, bool)> = rs.iter().flat_map(|&r| [(r, true), (r, false)]).collect();
    let results: Vec<Result<Option<String>>> = jobs
        .par_iter()
        .map(|&(r, symbolic)| {
            if symbolic {
                check::<MultiPoly>(r, &AlphaSpec::Symbolic, max, "symbolic")
            } else {
                check::<Rational>(r, &AlphaSpec::Appell(r), max, "appell")
            }
        })
        .collect();
    let mut fail = None;
    for res in results {
        if let Some(f) = res? {
            fail = Some(f);
            break;
        }
    }
    verdict(fail, format!("n <= {max}, symbolic and appell, r in {rs:?}"))
}

fn dual_moments(p: &SuiteParams) -> Verdict {
    let rs = p.rs(1..=3)?;
    let max = p.max_or(DUAL_MOMENT_MAX);
    let fail = over_pairs(&rs, |r, j| {
        let s = AlphaSpec::Symbolic;
        let sym = symmetric_sequence::<MultiPoly>(r, &s, (r + 1) * max + r)?;
        let comp = &decompose(&sym)?[j];
        let a = dual_moment_matrix(&comp.to_poly_seq(), max + 1)?;
        for n in 0..=max {
            for k in 0..=n {
                let paths: MultiPoly = generalised_sr(r, j, n, k, &s)?;
                if *a.get(n, k) != paths {
                    return Ok(Some(format!(
                        "r={r} j={j} (n,k)=({n},{k}): inverse {} vs paths {paths}",
                        a.get(n, k)
                    )));
                }
            }
        }
        if j == 0 {
            let t = dual_moments_symmetric::<MultiPoly>(r, &s, 2 * (r + 1) + 2)?;
            if let Some(&(n, k)) = t.zero_violations.first() {
                return Ok(Some(format!("r={r}: moment ({n},{k}) should vanish")));
            }
            if let Some(&(n, k)) = t.path_mismatches.first() {
                return Ok(Some(format!("r={r}: symmetric moment ({n},{k}) differs from paths")));
            }
        }
        Ok(None)
    })?;
    verdict(fail, format!("n,k <= {max} for r in {rs:?}, all j"))
}

fn golden(p: &SuiteParams) -> Verdict {
    let expected: [(usize, &[u64]); 3] = [
        (1, &[1, 1, 2, 5, 14, 42]),
        (2, &[1, 1, 3, 12, 55]),
        (3, &[1, 1, 4, 22, 140]),
    ];
    let rs = p.rs(1..=3)?;
    for (r, seq) in expected.iter().filter(|(r, _)| rs.contains(r)) {
        let ones = AlphaSpec::ones((r + 1) * seq.len() + 1);
        for (n, &want) in seq.iter().enumerate() {
            let got: Rational = modified_sr(*r, 0, n, &ones)?;
            if got != Rational::from_integer(BigInt::from(want)) {
                return Ok(Err(format!("r={r} n={n}: got {got}, want {want}")));
            }
        }
    }
    Ok(Ok(format!("counts match for r in {rs:?}")))
}

fn genetic(p: &SuiteParams) -> Verdict {
    let rs = p.rs(1..=3)?;
    let max = p.max_or(GENETIC_MAX);
    let fail = over_pairs(&rs, |r, j| {
        if j >= r {
            return Ok(None);
        }
        let s = AlphaSpec::Symbolic;
        for n in 0..=max {
            let g: MultiPoly = genetic_sum(r, n, j, &s)?;
            let z: MultiPoly = modified_sr(r, j, n, &s)?;
            if g != z {
                return Ok(Some(format!("r={r} j={j} n={n}: nested sum {g} vs paths {z}")));
            }
        }
        Ok(None)
    })?;
    verdict(fail, format!("n <= {max} for r in {rs:?}, j < r"))
}

fn path_matrix<R: crate::alpha::AlphaRing>(
    r: usize,
    j: usize,
    alpha: &AlphaSpec,
    size: usize,
) -> Result<Matrix<R>> {
    let rows = (0..size)
        .map(|n| {
            (0..size)
                .map(|k| generalised_sr_transfer(r, j, n, k, alpha))
                .collect::<Result<Vec<R>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

fn first_negative_minor<R: Ring>(
    m: &Matrix<R>,
    block: usize,
    order: usize,
    label: &str,
) -> Result<Option<String>> {
    let rep = tp_check(m, block, order)?;
    let fail = rep.failures().next().map(|f| {
        format!(
            "{label}: minor rows {:?} cols {:?} = {}",
            f.rows, f.cols, f.value
        )
    });
    Ok(fail)
}

fn total_positivity(p: &SuiteParams) -> Verdict {
    let rs = p.rs(1..=3)?;
    let fail = over_pairs(&rs, |r, j| {
        let s = AlphaSpec::Symbolic;
        let b = TP_SYMBOLIC_BLOCK;
        let h = hessenberg_product::<MultiPoly>(r, j, &s, b)?.to_matrix();
        if let Some(f) = first_negative_minor(&h, b, TP_SYMBOLIC_ORDER, &format!("H r={r} j={j}"))? {
            return Ok(Some(f));
        }
        let sm = path_matrix::<MultiPoly>(r, j, &s, b)?;
        if let Some(f) = first_negative_minor(&sm, b, TP_SYMBOLIC_ORDER, &format!("S r={r} j={j}"))? {
            return Ok(Some(f));
        }
        let a = AlphaSpec::Appell(r);
        let b = TP_RATIONAL_BLOCK;
        let h = hessenberg_product::<Rational>(r, j, &a, b)?.to_matrix();
        if let Some(f) = first_negative_minor(&h, b, b, &format!("appell H r={r} j={j}"))? {
            return Ok(Some(f));
        }
        let sm = path_matrix::<Rational>(r, j, &a, b)?;
        first_negative_minor(&sm, b, b, &format!("appell S r={r} j={j}"))
    })?;
    verdict(
        fail,
        format!(
            "symbolic order <= {TP_SYMBOLIC_ORDER} on {TP_SYMBOLIC_BLOCK}x{TP_SYMBOLIC_BLOCK}, \
             appell all orders on {TP_RATIONAL_BLOCK}x{TP_RATIONAL_BLOCK}, r in {rs:?}"
        ),
    )
}

fn width() -> Rational {
    Rational::new(
        BigInt::from(1),
        num_traits::pow(BigInt::from(2), ZERO_WIDTH_BITS),
    )
}

fn zeros(p: &SuiteParams) -> Verdict {
    let rs = p.rs(2..=3)?;
    let max = p.max_or(ZERO_MAX);
    let w = width();
    let mut boxes = 0usize;
    let results: Vec<Result<std::result::Result<usize, String>>> = rs
        .iter()
        .flat_map(|&r| js(r).map(move |j| (r, j)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(r, j)| {
            let s = symmetric_sequence::<Rational>(r, &AlphaSpec::Appell(r), (r + 1) * max + r)?;
            let c = &decompose(&s)?[j];
            let mut prev = None;
            let mut count = 0;
            for n in 1..=max {
                let iso = match isolate_positive_simple_roots(&c.polys[n], &w) {
                    Ok(iso) => iso,
                    Err(e) => return Ok(Err(format!("r={r} j={j} n={n}: {e}"))),
                };
                if iso.boxes.len() != n || iso.boxes.iter().any(|b| b.width() > w) {
                    return Ok(Err(format!("r={r} j={j} n={n}: bad box list")));
                }
                if let Some(prev) = &prev {
                    if !interlacing_check(prev, &iso)? {
                        return Ok(Err(format!("r={r} j={j}: n={} and n={n} do not interlace", n - 1)));
                    }
                }
                count += n;
                prev = Some(iso);
            }
            Ok(Ok(count))
        })
        .collect();
    for res in results {
        match res? {
            Ok(c) => boxes += c,
            Err(f) => return Ok(Err(f)),
        }
    }
    Ok(Ok(format!(
        "{boxes} roots boxed to width 2^-{ZERO_WIDTH_BITS}, n <= {max}, r in {rs:?}"
    )))
}

fn oscillation(p: &SuiteParams) -> Verdict {
    let rs = p.rs(1..=3)?;
    let max = p.max_or(OSCILLATION_MAX);
    let fail = over_pairs(&rs, |r, j| {
        let h = hessenberg_product::<Rational>(r, j, &AlphaSpec::Appell(r), max)?.to_matrix();
        for n in 1..=max {
            let v = oscillation_check(&h.crop(n))?;
            if !v.passed() {
                return Ok(Some(format!("r={r} j={j} n={n}: {v:?}")));
            }
        }
        Ok(None)
    })?;
    verdict(fail, format!("blocks n <= {max} for r in {rs:?}, all j"))
}

fn appell(p: &SuiteParams) -> Verdict {
    let rs = p.rs(1..=3)?;
    let degree = p.max_or(APPELL_DEGREE);
    let results: Vec<Result<Option<String>>> = rs
        .par_iter()
        .map(|&r| {
            let alpha = AlphaSpec::Appell(r);
            let s = symmetric_sequence::<Rational>(r, &alpha, degree)?;
            for (deg, poly) in s.polys.iter().enumerate() {
                let (n, j) = (deg / (r + 1), deg % (r + 1));
                if hypergeometric_poly(r, n, j)? != *poly {
                    return Ok(Some(format!("r={r} degree {deg}: hypergeometric form differs")));
                }
                if explicit_poly(r, n, j)? != *poly {
                    return Ok(Some(format!("r={r} degree {deg}: explicit coefficients differ")));
                }
            }
            for c in [default_scale(), int(1)] {
                let rep = appell_verify(r, degree, &c)?;
                if let Some(f) = rep.failure {
                    return Ok(Some(format!(
                        "r={r} c={c}: {:?} check fails at n={} with residual {}",
                        f.kind, f.n, f.residual
                    )));
                }
            }
            for j in 1..=r {
                let m = appell_moments(r, j, APPELL_MOMENT_MAX + 1)?;
                for n in 0..=APPELL_MOMENT_MAX {
                    let paths: Rational = generalised_sr_transfer(r, j - 1, n, 0, &alpha)?;
                    if paths != m.moments[n] {
                        return Ok(Some(format!(
                            "r={r} j={j} n={n}: moment {} vs paths {paths}",
                            m.moments[n]
                        )));
                    }
                }
                for mm in 0..3 * (r + 1) {
                    let v: Rational = star_moment(r, j, mm, &alpha)?;
                    let expected = if mm % (r + 1) == j - 1 {
                        m.moments[mm / (r + 1)].clone()
                    } else {
                        Rational::from_integer(BigInt::from(0))
                    };
                    if v != expected {
                        return Ok(Some(format!("r={r} j={j} m={mm}: star moment {v}")));
                    }
                }
            }
            if r == 1 {
                let hermite = UniPoly::new(vec![int(0), crate::ring::rat(-3, 2), int(0), int(1)]);
                if degree >= 3 && s.polys[3] != hermite {
                    return Ok(Some(format!("r=1: P_3 = {} is not monic Hermite", s.polys[3])));
                }
            }
            Ok(None)
        })
        .collect();
    for res in results {
        if let Some(f) = res? {
            return Ok(Err(f));
        }
    }
    Ok(Ok(format!("degree <= {degree}, moments n <= {APPELL_MOMENT_MAX}, r in {rs:?}")))
}

fn orthogonality(p: &SuiteParams) -> Verdict {
    let rs = p.rs(1..=3)?;
    let mut entries = 0usize;
    let results: Vec<Result<std::result::Result<usize, String>>> = rs
        .iter()
        .flat_map(|&r| std::iter::once((r, None)).chain(js(r).map(move |j| (r, Some(j)))))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(r, comp)| {
            let max_n = p.max_or(3 * (r + 1));
            let alpha = AlphaSpec::Appell(r);
            let moments = max_n + max_n / r + 2;
            let (seq, funcs, label) = match comp {
                None => {
                    let s = symmetric_sequence::<Rational>(r, &alpha, max_n)?;
                    (s.to_poly_seq(), symmetric_functionals(r, &alpha, moments)?, format!("r={r} symmetric"))
                }
                Some(j) => {
                    let s = symmetric_sequence::<Rational>(r, &alpha, (r + 1) * max_n + r)?;
                    let c = decompose(&s)?.swap_remove(j);
                    (c.to_poly_seq(), component_functionals(r, j, &alpha, moments)?, format!("r={r} j={j}"))
                }
            };
            let report = crate::mop::orthogonality_check(&seq, &funcs, r, max_n)?;
            let outcome = match report.failures().next() {
                Some(e) => Err(format!(
                    "{label}: functional {} k={} n={} expected {} got {}",
                    e.functional, e.k, e.n, e.expected, e.value
                )),
                None => Ok(report.entries.len()),
            };
            Ok(outcome)
        })
        .collect();
    for res in results {
        match res? {
            Ok(c) => entries += c,
            Err(f) => return Ok(Err(f)),
        }
    }
    Ok(Ok(format!("{entries} conditions, n <= 3(r+1), r in {rs:?}")))
}
