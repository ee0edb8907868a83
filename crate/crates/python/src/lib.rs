//! Python bindings. Exact values cross the boundary as strings: rationals
//! as `"p/q"`, polynomials in the alpha indeterminates in `a0*a1 + ...`
//! notation, univariate polynomials as coefficient lists (constant first).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use starhess_core::appell;
use starhess_core::bidiag::{hessenberg_product, BandedHessenberg};
use starhess_core::mop::{decompose, symmetric_sequence as sym_seq};
use starhess_core::paths;
use starhess_core::posspec::isolate_positive_simple_roots;
use starhess_core::ring::{format_rational, parse_rational, pochhammer as poch};
use starhess_core::verify::{find_suite, run_suites, SuiteParams, Suite, SUITES};
use starhess_core::{AlphaRing, AlphaSpec, Error, MultiPoly, Rational, Ring, UniPoly};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spec(alpha: &str, r: usize) -> PyResult<AlphaSpec> {
    alpha.parse::<AlphaSpec>().map(|s| s.with_r(r)).map_err(err)
}

fn rat(s: &str) -> PyResult<Rational> {
    parse_rational(s).map_err(err)
}

fn coeffs<R: Ring>(p: &UniPoly<R>) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

/// Rising factorial `(c)_n` of a rational `c`.
#[pyfunction]
fn pochhammer(c: &str, n: u32) -> PyResult<String> {
    Ok(format_rational(&poch(&rat(c)?, n)))
}

/// `(k+1)_r / (r+1)^r`.
#[pyfunction]
fn appell_alpha(r: usize, k: usize) -> String {
    format_rational(&starhess_core::appell_alpha(r, k))
}

enum Band {
    Symbolic(BandedHessenberg<MultiPoly>),
    Rational(BandedHessenberg<Rational>),
}

/// Leading `size x size` block of `H^(r;j)`.
#[pyclass(name = "Hessenberg")]
struct PyHessenberg {
    #[pyo3(get)]
    r: usize,
    #[pyo3(get)]
    j: usize,
    #[pyo3(get)]
    size: usize,
    band: Band,
}

#[pymethods]
impl PyHessenberg {
    #[new]
    #[pyo3(signature = (r, j, size, alpha = "symbolic"))]
    fn new(r: usize, j: usize, size: usize, alpha: &str) -> PyResult<Self> {
        let a = spec(alpha, r)?;
        let band = if a.is_symbolic() {
            Band::Symbolic(hessenberg_product(r, j, &a, size).map_err(err)?)
        } else {
            Band::Rational(hessenberg_product(r, j, &a, size).map_err(err)?)
        };
        Ok(PyHessenberg { r, j, size, band })
    }

    fn get(&self, row: usize, col: usize) -> PyResult<String> {
        if row >= self.size || col >= self.size {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(match &self.band {
            Band::Symbolic(h) => h.get(row, col).to_string(),
            Band::Rational(h) => h.get(row, col).to_string(),
        })
    }

    fn rows(&self) -> Vec<Vec<String>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|k| self.get(i, k).expect("in range")).collect())
            .collect()
    }

    fn to_json(&self) -> String {
        match &self.band {
            Band::Symbolic(h) => h.to_json().to_string(),
            Band::Rational(h) => h.to_json().to_string(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Hessenberg(r={}, j={}, size={})", self.r, self.j, self.size)
    }
}

fn sequence<R: AlphaRing>(r: usize, a: &AlphaSpec, max_degree: usize) -> PyResult<Vec<Vec<String>>> {
    let s = sym_seq::<R>(r, a, max_degree).map_err(err)?;
    Ok(s.polys.iter().map(coeffs).collect())
}

/// Coefficients of `P_0, ..., P_max_degree`.
#[pyfunction]
#[pyo3(signature = (r, max_degree, alpha = "appell"))]
fn symmetric_sequence(r: usize, max_degree: usize, alpha: &str) -> PyResult<Vec<Vec<String>>> {
    let a = spec(alpha, r)?;
    if a.is_symbolic() {
        sequence::<MultiPoly>(r, &a, max_degree)
    } else {
        sequence::<Rational>(r, &a, max_degree)
    }
}

fn component_list<R: AlphaRing>(r: usize, j: usize, count: usize, a: &AlphaSpec) -> PyResult<Vec<Vec<String>>> {
    if j > r || count == 0 {
        return Err(PyValueError::new_err("need j <= r and count >= 1"));
    }
    let s = sym_seq::<R>(r, a, (r + 1) * (count - 1) + j).map_err(err)?;
    let c = decompose(&s).map_err(err)?.swap_remove(j);
    Ok(c.polys.iter().take(count).map(coeffs).collect())
}

/// Coefficients of the components `P_0^[j], ..., P_{count-1}^[j]`.
#[pyfunction]
#[pyo3(signature = (r, j, count, alpha = "appell"))]
fn components(r: usize, j: usize, count: usize, alpha: &str) -> PyResult<Vec<Vec<String>>> {
    let a = spec(alpha, r)?;
    if a.is_symbolic() {
        component_list::<MultiPoly>(r, j, count, &a)
    } else {
        component_list::<Rational>(r, j, count, &a)
    }
}

fn by_ring(
    alpha: &str,
    r: usize,
    sym: impl FnOnce(&AlphaSpec) -> starhess_core::Result<MultiPoly>,
    num: impl FnOnce(&AlphaSpec) -> starhess_core::Result<Rational>,
) -> PyResult<String> {
    let a = spec(alpha, r)?;
    if a.is_symbolic() {
        sym(&a).map(|v| v.to_string()).map_err(err)
    } else {
        num(&a).map(|v| format_rational(&v)).map_err(err)
    }
}

/// Generating polynomial of partial r-Dyck paths from `(0,0)` to
/// `((r+1)n+j, (r+1)k+j)`.
#[pyfunction]
#[pyo3(signature = (r, j, n, k, alpha = "symbolic"))]
fn generalised_sr(r: usize, j: usize, n: usize, k: usize, alpha: &str) -> PyResult<String> {
    by_ring(
        alpha,
        r,
        |a| paths::generalised_sr(r, j, n, k, a),
        |a| paths::generalised_sr(r, j, n, k, a),
    )
}

/// The `k = 0` case of [`generalised_sr`].
#[pyfunction]
#[pyo3(signature = (r, j, n, alpha = "symbolic"))]
fn modified_sr(r: usize, j: usize, n: usize, alpha: &str) -> PyResult<String> {
    by_ring(
        alpha,
        r,
        |a| paths::modified_sr(r, j, n, a),
        |a| paths::modified_sr(r, j, n, a),
    )
}

/// Nested alpha sum, equal to `modified_sr(r, j, n)`.
#[pyfunction]
#[pyo3(signature = (r, n, j, alpha = "symbolic"))]
fn genetic_sum(r: usize, n: usize, j: usize, alpha: &str) -> PyResult<String> {
    by_ring(
        alpha,
        r,
        |a| paths::genetic_sum(r, n, j, a),
        |a| paths::genetic_sum(r, n, j, a),
    )
}

/// Certified boxes `(lo, hi)` around every root of a polynomial whose roots
/// are all simple and positive.
#[pyfunction]
#[pyo3(signature = (coeffs, width = "1/1073741824"))]
fn isolate_roots(coeffs: Vec<String>, width: &str) -> PyResult<Vec<(String, String)>> {
    let c = coeffs.iter().map(|s| rat(s)).collect::<PyResult<Vec<_>>>()?;
    let iso = isolate_positive_simple_roots(&UniPoly::new(c), &rat(width)?).map_err(err)?;
    Ok(iso
        .boxes
        .iter()
        .map(|b| (format_rational(&b.lo), format_rational(&b.hi)))
        .collect())
}

/// `P_{(r+1)n+j}` of the Appell instance from its hypergeometric form.
#[pyfunction]
fn appell_poly(r: usize, n: usize, j: usize) -> PyResult<Vec<String>> {
    Ok(coeffs(&appell::hypergeometric_poly(r, n, j).map_err(err)?))
}

/// Moments `0..count` of the Appell functional with index `j`, `1 <= j <= r`.
#[pyfunction]
fn appell_moments(r: usize, j: usize, count: usize) -> PyResult<Vec<String>> {
    let m = appell::appell_moments(r, j, count).map_err(err)?;
    Ok(m.moments.iter().map(format_rational).collect())
}

/// Runs verification suites; returns one dict per suite.
#[pyfunction]
#[pyo3(signature = (suite = "all", r = None, max = None))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    r: Option<usize>,
    max: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let chosen: Vec<&'static Suite> = if suite == "all" {
        SUITES.iter().collect()
    } else {
        vec![find_suite(suite).ok_or_else(|| PyValueError::new_err(format!("unknown suite `{suite}`")))?]
    };
    let outcomes = py
        .detach(|| run_suites(&chosen, &SuiteParams { r, max }))
        .map_err(err)?;
    outcomes
        .iter()
        .map(|o| {
            let d = PyDict::new(py);
            d.set_item("id", o.id)?;
            d.set_item("name", o.name)?;
            d.set_item("passed", o.passed)?;
            d.set_item("detail", &o.detail)?;
            d.set_item("seconds", o.elapsed.as_secs_f64())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn starhess(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHessenberg>()?;
    m.add_function(wrap_pyfunction!(pochhammer, m)?)?;
    m.add_function(wrap_pyfunction!(appell_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(components, m)?)?;
    m.add_function(wrap_pyfunction!(generalised_sr, m)?)?;
    m.add_function(wrap_pyfunction!(modified_sr, m)?)?;
    m.add_function(wrap_pyfunction!(genetic_sum, m)?)?;
    m.add_function(wrap_pyfunction!(isolate_roots, m)?)?;
    m.add_function(wrap_pyfunction!(appell_poly, m)?)?;
    m.add_function(wrap_pyfunction!(appell_moments, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
