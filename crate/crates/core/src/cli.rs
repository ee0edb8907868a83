//! Command-line front end. Every number is emitted exactly.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::alpha::{AlphaRing, AlphaSpec};
use crate::appell::{
    appell_moments, appell_verify, component_hypergeometric, default_scale, hypergeometric_poly,
};
use crate::bidiag::hessenberg_product;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mop::{decompose, symmetric_sequence};
use crate::paths::{generalised_sr, generalised_sr_transfer, list_dyck_paths};
use crate::posspec::{isolate_positive_simple_roots, star_zero_map, tp_check, RootBox};
use crate::ring::{format_rational, parse_rational, MultiPoly, Rational, Ring, UniPoly};
use crate::verify::{find_suite, run_suites, SuiteParams, Suite, SUITES, ZERO_WIDTH_BITS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "starhess",
    version,
    about = "Exact Hessenberg matrices, symmetric multiple orthogonal polynomials and r-Dyck paths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Leading block of the banded Hessenberg matrix H^(r;j).
    Hess {
        #[command(flatten)]
        at: Family,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        out: Output,
    },
    /// Generating polynomial S^(r;j)_{n,k} of partial r-Dyck paths.
    Paths {
        #[command(flatten)]
        at: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[command(flatten)]
        alpha: AlphaArg,
        /// Also list every path as a step string.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Symmetric polynomials P_0..P_n, or the components P_0^[j]..P_n^[j].
    Mop {
        #[arg(long, value_parser = positive)]
        r: usize,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        out: Output,
    },
    /// Certified root boxes of P_n^[j] and the star of zeros of P_{(r+1)n+j}.
    Zeros {
        #[command(flatten)]
        at: Family,
        #[arg(long, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        alpha: AlphaArg,
        /// Maximal box width as `p/q`; defaults to 2^-30.
        #[arg(long, value_parser = parse_width)]
        width: Option<Rational>,
        #[command(flatten)]
        out: Output,
    },
    /// Minors of a leading block of H^(r;j) or of the path matrix S^(r;j).
    Tp {
        #[command(flatten)]
        at: Family,
        #[arg(long, value_parser = positive)]
        size: usize,
        /// Largest minor order; defaults to the block size.
        #[arg(long)]
        max_minor: Option<usize>,
        #[arg(long, value_enum, default_value_t = TpMatrix::Hess)]
        matrix: TpMatrix,
        #[command(flatten)]
        alpha: AlphaArg,
        #[command(flatten)]
        out: Output,
    },
    /// The Appell instance: hypergeometric polynomials, checks and moments.
    Appell {
        #[command(flatten)]
        at: Family,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run a verification suite, or `all` of them.
    Verify {
        /// Suite name or number, or `all`.
        #[arg(required_unless_present = "list")]
        suite: Option<String>,
        /// Restrict to a single r.
        #[arg(long, value_parser = positive)]
        r: Option<usize>,
        /// Override the suite's index bound.
        #[arg(long)]
        max: Option<usize>,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TpMatrix {
    Hess,
    Paths,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Family {
    #[arg(long, value_parser = positive)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    j: usize,
}

#[derive(Debug, Args)]
pub struct AlphaArg {
    /// `symbolic`, `appell`, or comma-separated rationals `p/q`.
    #[arg(long, default_value = "symbolic")]
    alpha: AlphaSpec,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_width(s: &str) -> Result<Rational> {
    let w = parse_rational(s)?;
    if w <= Rational::from_integer(0.into()) {
        return Err(Error::InvalidParameter("width must be positive".into()));
    }
    Ok(w)
}

/// What a command produced.
enum Status {
    Ok,
    /// Verification failed; the message names the first counterexample.
    Failed(String),
}

/// A finished artifact: JSON form and a CSV table with header.
struct Artifact {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(Status::Ok) => EXIT_OK,
        Ok(Status::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            EXIT_FAILED
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command) -> Result<Status> {
    match command {
        Command::Hess {
            at,
            size,
            alpha,
            out,
        } => {
            let alpha = family_alpha(&at, alpha)?;
            let art = if alpha.is_symbolic() {
                hess::<MultiPoly>(&at, size, &alpha)?
            } else {
                hess::<Rational>(&at, size, &alpha)?
            };
            emit(&art, &out)?;
            Ok(Status::Ok)
        }
        Command::Paths {
            at,
            n,
            k,
            alpha,
            list,
            out,
        } => {
            let alpha = family_alpha(&at, alpha)?;
            let art = if alpha.is_symbolic() {
                paths::<MultiPoly>(&at, n, k, &alpha, list)?
            } else {
                paths::<Rational>(&at, n, k, &alpha, list)?
            };
            emit(&art, &out)?;
            Ok(Status::Ok)
        }
        Command::Mop {
            r,
            j,
            n,
            alpha,
            out,
        } => {
            if let Some(j) = j {
                check_j(r, j)?;
            }
            let alpha = alpha.alpha.with_r(r);
            let art = if alpha.is_symbolic() {
                mop::<MultiPoly>(r, j, n, &alpha)?
            } else {
                mop::<Rational>(r, j, n, &alpha)?
            };
            emit(&art, &out)?;
            Ok(Status::Ok)
        }
        Command::Zeros {
            at,
            n,
            alpha,
            width,
            out,
        } => {
            let alpha = family_alpha(&at, alpha)?;
            if alpha.is_symbolic() {
                return Err(Error::InvalidParameter(
                    "zeros need numeric alpha (appell or a list)".into(),
                ));
            }
            let width = width.unwrap_or_else(default_width);
            match zeros(&at, n, &alpha, &width)? {
                Ok(art) => {
                    emit(&art, &out)?;
                    Ok(Status::Ok)
                }
                Err(msg) => Ok(Status::Failed(msg)),
            }
        }
        Command::Tp {
            at,
            size,
            max_minor,
            matrix,
            alpha,
            out,
        } => {
            let alpha = family_alpha(&at, alpha)?;
            let order = max_minor.unwrap_or(size);
            if order == 0 || order > size {
                return Err(Error::InvalidParameter(format!(
                    "--max-minor must lie in 1..={size}"
                )));
            }
            let (art, failure) = if alpha.is_symbolic() {
                tp::<MultiPoly>(&at, size, order, matrix, &alpha)?
            } else {
                tp::<Rational>(&at, size, order, matrix, &alpha)?
            };
            emit(&art, &out)?;
            Ok(failure.map_or(Status::Ok, Status::Failed))
        }
        Command::Appell { at, n, out } => {
            check_j(at.r, at.j)?;
            let (art, failure) = appell(&at, n)?;
            emit(&art, &out)?;
            Ok(failure.map_or(Status::Ok, Status::Failed))
        }
        Command::Verify {
            suite,
            r,
            max,
            list,
        } => {
            if list {
                for s in &SUITES {
                    println!("{:>2} {:<14} {}", s.id, s.name, s.summary);
                }
                return Ok(Status::Ok);
            }
            let name = suite.expect("clap requires a suite");
            let chosen: Vec<&'static Suite> = if name == "all" {
                SUITES.iter().collect()
            } else {
                let s = name
                    .parse::<usize>()
                    .ok()
                    .and_then(|id| SUITES.iter().find(|s| s.id == id))
                    .or_else(|| find_suite(&name))
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{name}`")))?;
                vec![s]
            };
            let outcomes = run_suites(&chosen, &SuiteParams { r, max })?;
            for o in &outcomes {
                println!("{o}");
            }
            match outcomes.iter().find(|o| !o.passed) {
                Some(o) => Ok(Status::Failed(format!("{}: {}", o.name, o.detail))),
                None => Ok(Status::Ok),
            }
        }
    }
}

fn check_j(r: usize, j: usize) -> Result<()> {
    if j > r {
        return Err(Error::InvalidParameter(format!("j = {j} exceeds r = {r}")));
    }
    Ok(())
}

fn family_alpha(at: &Family, alpha: AlphaArg) -> Result<AlphaSpec> {
    check_j(at.r, at.j)?;
    Ok(alpha.alpha.with_r(at.r))
}

fn default_width() -> Rational {
    Rational::new(1.into(), num_traits::pow(2.into(), ZERO_WIDTH_BITS))
}

fn emit(art: &Artifact, out: &Output) -> Result<()> {
    let io = |e: io::Error| Error::InvalidParameter(format!("cannot write output: {e}"));
    let sink: Box<dyn Write> = match &out.out {
        Some(path) => Box::new(File::create(path).map_err(io)?),
        None => Box::new(io::stdout().lock()),
    };
    match out.format {
        Format::Json => {
            let mut sink = sink;
            serde_json::to_writer_pretty(&mut sink, &art.json)
                .map_err(|e| Error::InvalidParameter(format!("cannot write output: {e}")))?;
            writeln!(sink).map_err(io)?;
            sink.flush().map_err(io)
        }
        Format::Csv => {
            let bad = |e: csv::Error| Error::InvalidParameter(format!("cannot write output: {e}"));
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(&art.header).map_err(bad)?;
            for row in &art.rows {
                w.write_record(row).map_err(bad)?;
            }
            w.flush().map_err(io)
        }
    }
}

fn poly_rows<R: Ring>(index: usize, p: &UniPoly<R>) -> impl Iterator<Item = Vec<String>> + '_ {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(move |(power, c)| vec![index.to_string(), power.to_string(), c.to_string()])
}

fn hess<R: AlphaRing>(at: &Family, size: usize, alpha: &AlphaSpec) -> Result<Artifact> {
    let h = hessenberg_product::<R>(at.r, at.j, alpha, size)?;
    let m = h.to_matrix();
    let rows = (0..size)
        .flat_map(|i| (0..size).map(move |k| (i, k)))
        .filter(|&(i, k)| !m.get(i, k).is_zero())
        .map(|(i, k)| vec![i.to_string(), k.to_string(), m.get(i, k).to_string()])
        .collect();
    Ok(Artifact {
        json: h.to_json(),
        header: vec!["row", "col", "value"],
        rows,
    })
}

fn paths<R: AlphaRing>(
    at: &Family,
    n: usize,
    k: usize,
    alpha: &AlphaSpec,
    list: bool,
) -> Result<Artifact> {
    let (r, j) = (at.r, at.j);
    let value = generalised_sr::<R>(r, j, n, k, alpha)?;
    let mut json = json!({
        "r": r, "j": j, "n": n, "k": k,
        "alpha": alpha.to_string(),
        "value": value.to_json(),
    });
    if list {
        let m = r + 1;
        let steps: Vec<String> = list_dyck_paths(r, (0, 0), (m * n + j, m * k + j))
            .iter()
            .map(|p| p.step_string())
            .collect();
        json["paths"] = json!(steps);
    }
    Ok(Artifact {
        json,
        header: vec!["r", "j", "n", "k", "value"],
        rows: vec![vec![
            r.to_string(),
            j.to_string(),
            n.to_string(),
            k.to_string(),
            value.to_string(),
        ]],
    })
}

fn mop<R: AlphaRing>(r: usize, j: Option<usize>, n: usize, alpha: &AlphaSpec) -> Result<Artifact> {
    let polys: Vec<UniPoly<R>> = match j {
        None => symmetric_sequence::<R>(r, alpha, n)?.polys,
        Some(j) => {
            let s = symmetric_sequence::<R>(r, alpha, (r + 1) * n + j)?;
            decompose(&s)?.swap_remove(j).polys.into_iter().take(n + 1).collect()
        }
    };
    let rows = polys.iter().enumerate().flat_map(|(i, p)| poly_rows(i, p)).collect();
    Ok(Artifact {
        json: json!({
            "r": r,
            "j": j,
            "alpha": alpha.to_string(),
            "polys": polys.iter().map(UniPoly::to_json).collect::<Vec<_>>(),
        }),
        header: vec!["index", "power", "coeff"],
        rows,
    })
}

fn box_json(b: &RootBox) -> Value {
    json!({ "lo": format_rational(&b.lo), "hi": format_rational(&b.hi) })
}

fn zeros(
    at: &Family,
    n: usize,
    alpha: &AlphaSpec,
    width: &Rational,
) -> Result<std::result::Result<Artifact, String>> {
    let (r, j) = (at.r, at.j);
    let s = symmetric_sequence::<Rational>(r, alpha, (r + 1) * n + j)?;
    let p = decompose(&s)?.swap_remove(j).polys.swap_remove(n);
    let iso = match isolate_positive_simple_roots(&p, width) {
        Ok(iso) => iso,
        Err(
            e @ (Error::NotSquarefree | Error::RootsNotAllPositive(_) | Error::ConstantPolynomial),
        ) => return Ok(Err(format!("P_{n}^[{j}]: {e}"))),
        Err(e) => return Err(e),
    };
    let star = star_zero_map(r, j, &iso.boxes, width);
    let mut rows: Vec<Vec<String>> = iso
        .boxes
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut row = vec!["component".to_string(), r.to_string(), j.to_string()];
            row.extend([n.to_string(), i.to_string()]);
            row.extend([format_rational(&b.lo), format_rational(&b.hi), String::new()]);
            row
        })
        .collect();
    rows.extend(star.zeros.iter().map(|z| {
        let mut row = vec!["star".to_string(), r.to_string(), j.to_string()];
        row.extend([n.to_string(), z.index.to_string()]);
        row.extend([
            format_rational(&z.radius.lo),
            format_rational(&z.radius.hi),
            z.ray.to_string(),
        ]);
        row
    }));
    let json = json!({
        "r": r, "j": j, "n": n,
        "alpha": alpha.to_string(),
        "width": format_rational(width),
        "poly": p.to_json(),
        "boxes": iso.boxes.iter().map(box_json).collect::<Vec<_>>(),
        "star": {
            "origin_multiplicity": star.origin_multiplicity,
            "zeros": star.zeros.iter().map(|z| json!({
                "ray": z.ray, "index": z.index, "radius": box_json(&z.radius),
            })).collect::<Vec<_>>(),
        },
    });
    Ok(Ok(Artifact {
        json,
        header: vec!["kind", "r", "j", "n", "index", "lo", "hi", "ray"],
        rows,
    }))
}

fn tp<R: AlphaRing>(
    at: &Family,
    size: usize,
    order: usize,
    matrix: TpMatrix,
    alpha: &AlphaSpec,
) -> Result<(Artifact, Option<String>)> {
    let (r, j) = (at.r, at.j);
    let m = match matrix {
        TpMatrix::Hess => hessenberg_product::<R>(r, j, alpha, size)?.to_matrix(),
        TpMatrix::Paths => Matrix::from_rows(
            (0..size)
                .map(|n| {
                    (0..size)
                        .map(|k| generalised_sr_transfer::<R>(r, j, n, k, alpha))
                        .collect::<Result<Vec<R>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        )?,
    };
    let rep = tp_check(&m, size, order)?;
    let failure = rep.failures().next().map(|f| {
        format!("minor rows {:?} cols {:?} = {}", f.rows, f.cols, f.value)
    });
    let minors: Vec<Value> = rep
        .minors
        .iter()
        .map(|m| {
            json!({
                "order": m.order, "rows": m.rows, "cols": m.cols,
                "value": m.value.to_json(), "nonneg": m.nonneg,
            })
        })
        .collect();
    let rows = rep
        .minors
        .iter()
        .map(|m| {
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            vec![
                m.order.to_string(),
                join(&m.rows),
                join(&m.cols),
                m.nonneg.to_string(),
                m.value.to_string(),
            ]
        })
        .collect();
    let art = Artifact {
        json: json!({
            "r": r, "j": j, "block": size, "max_order": order,
            "alpha": alpha.to_string(),
            "passed": rep.passed(),
            "minors": minors,
        }),
        header: vec!["order", "rows", "cols", "nonneg", "value"],
        rows,
    };
    Ok((art, failure))
}

fn appell(at: &Family, n: usize) -> Result<(Artifact, Option<String>)> {
    let (r, j) = (at.r, at.j);
    let degree = (r + 1) * n + j;
    let full = hypergeometric_poly(r, n, j)?;
    let component = component_hypergeometric(r, n, j)?;
    let s = symmetric_sequence::<Rational>(r, &AlphaSpec::Appell(r), degree)?;
    let mut failure = None;
    if s.polys[degree] != full {
        failure = Some(format!("P_{degree}: hypergeometric form differs from the recurrence"));
    } else if decompose(&s)?[j].polys[n] != component {
        failure = Some(format!("P_{n}^[{j}]: hypergeometric form differs from the recurrence"));
    } else {
        let rep = appell_verify(r, degree, &default_scale())?;
        if let Some(f) = rep.failure {
            failure = Some(format!("{:?} check fails at n = {}", f.kind, f.n));
        }
    }
    let moments = if j >= 1 {
        appell_moments(r, j, n + 1)?.to_json()
    } else {
        Value::Null
    };
    let mut rows: Vec<Vec<String>> = Vec::new();
    for (kind, p) in [("component", &component), ("polynomial", &full)] {
        rows.extend(poly_rows(0, p).map(|row| {
            let mut out = vec![kind.to_string()];
            out.extend(row.into_iter().skip(1));
            out
        }));
    }
    let art = Artifact {
        json: json!({
            "r": r, "j": j, "n": n,
            "component": component.to_json(),
            "polynomial": full.to_json(),
            "moments": moments,
        }),
        header: vec!["kind", "power", "coeff"],
        rows,
    };
    Ok((art, failure))
}
