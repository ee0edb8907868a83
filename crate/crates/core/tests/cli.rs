use std::path::Path;

use serde_json::Value;
use starhess_core::appell::AppellMoments;
use starhess_core::bidiag::{hessenberg_product, BandedHessenberg};
use starhess_core::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use starhess_core::mop::symmetric_sequence;
use starhess_core::paths::generalised_sr;
use starhess_core::ring::int;
use starhess_core::{AlphaSpec, MultiPoly, Rational, Ring, UniPoly};

fn run_to(path: &Path, args: &[&str]) -> i32 {
    let mut argv = vec!["starhess"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--out", path.to_str().unwrap()]);
    run(argv)
}

fn json_at(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn tmp() -> (tempfile::TempDir, std::path::PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out");
    (dir, path)
}

#[test]
fn hess_json_round_trips() {
    let (_d, p) = tmp();
    let args = ["hess", "--r", "2", "--j", "1", "--size", "4", "--alpha", "symbolic", "--format", "json"];
    assert_eq!(run_to(&p, &args), EXIT_OK);
    let parsed = BandedHessenberg::<MultiPoly>::from_json(&json_at(&p)).unwrap();
    let direct = hessenberg_product::<MultiPoly>(2, 1, &AlphaSpec::Symbolic, 4).unwrap();
    assert_eq!(parsed, direct);
    assert_eq!(parsed.to_json(), json_at(&p));
}

#[test]
fn hess_rational_alpha_list() {
    let (_d, p) = tmp();
    let args = ["hess", "--r", "1", "--size", "3", "--alpha", "1/2,2,3,4,5,6"];
    assert_eq!(run_to(&p, &args), EXIT_OK);
    let parsed = BandedHessenberg::<Rational>::from_json(&json_at(&p)).unwrap();
    assert_eq!(parsed.get(0, 0), Rational::new(1.into(), 2.into()));
}

#[test]
fn paths_value_and_listing() {
    let (_d, p) = tmp();
    assert_eq!(run_to(&p, &["paths", "--r", "1", "--n", "2", "--list"]), EXIT_OK);
    let v = json_at(&p);
    let value = MultiPoly::from_json(&v["value"]).unwrap();
    let direct: MultiPoly = generalised_sr(1, 0, 2, 0, &AlphaSpec::Symbolic).unwrap();
    assert_eq!(value, direct);
    let mut listed: Vec<&str> = v["paths"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    listed.sort();
    assert_eq!(listed, ["RFRF", "RRFF"]);
}

#[test]
fn mop_polynomials_round_trip() {
    let (_d, p) = tmp();
    assert_eq!(run_to(&p, &["mop", "--r", "2", "--n", "7", "--alpha", "appell"]), EXIT_OK);
    let v = json_at(&p);
    let polys: Vec<UniPoly<Rational>> = v["polys"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| UniPoly::from_json(q).unwrap())
        .collect();
    let direct = symmetric_sequence::<Rational>(2, &AlphaSpec::Appell(2), 7).unwrap();
    assert_eq!(polys, direct.polys);
}

#[test]
fn zeros_csv_has_component_and_star_rows() {
    let (_d, p) = tmp();
    let args = ["zeros", "--r", "2", "--j", "0", "--n", "4", "--alpha", "appell", "--width", "1/1024", "--format", "csv"];
    assert_eq!(run_to(&p, &args), EXIT_OK);
    let text = std::fs::read_to_string(&p).unwrap();
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rd.headers().unwrap(), vec!["kind", "r", "j", "n", "index", "lo", "hi", "ray"]);
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.iter().filter(|r| &r[0] == "component").count(), 4);
    assert_eq!(rows.iter().filter(|r| &r[0] == "star").count(), 12);
    for r in rows.iter().filter(|r| &r[0] == "component") {
        let lo: Rational = r[5].parse().unwrap();
        let hi: Rational = r[6].parse().unwrap();
        assert!(&hi - &lo <= Rational::new(1.into(), 1024.into()));
    }
    assert!(!text.contains('.'), "no decimal output expected");
}

#[test]
fn zeros_reject_symbolic_alpha() {
    let (_d, p) = tmp();
    assert_eq!(run_to(&p, &["zeros", "--r", "2", "--n", "3"]), EXIT_USAGE);
}

#[test]
fn tp_failure_exits_one() {
    let (_d, p) = tmp();
    let args = ["tp", "--r", "1", "--size", "3", "--alpha=-1,1,1,1,1,1,1,1"];
    assert_eq!(run_to(&p, &args), EXIT_FAILED);
    assert_eq!(json_at(&p)["passed"], Value::Bool(false));
    let args = ["tp", "--r", "2", "--size", "4", "--max-minor", "2", "--matrix", "paths"];
    assert_eq!(run_to(&p, &args), EXIT_OK);
    assert_eq!(json_at(&p)["passed"], Value::Bool(true));
}

#[test]
fn appell_moments_round_trip() {
    let (_d, p) = tmp();
    assert_eq!(run_to(&p, &["appell", "--r", "2", "--j", "1", "--n", "3"]), EXIT_OK);
    let v = json_at(&p);
    let m = AppellMoments::from_json(&v["moments"]).unwrap();
    assert_eq!(m.to_json(), v["moments"]);
    assert_eq!(m.moments[0], int(1));
    let (_d, p) = tmp();
    assert_eq!(run_to(&p, &["appell", "--r", "1", "--j", "1", "--n", "1"]), EXIT_OK);
    let full = UniPoly::<Rational>::from_json(&json_at(&p)["polynomial"]).unwrap();
    let hermite = UniPoly::new(vec![int(0), Rational::new((-3).into(), 2.into()), int(0), int(1)]);
    assert_eq!(full, hermite);
}

#[test]
fn usage_errors_exit_two() {
    let (_d, p) = tmp();
    assert_eq!(run_to(&p, &["hess", "--r", "2", "--j", "3", "--size", "4"]), EXIT_USAGE);
    assert_eq!(run_to(&p, &["hess", "--r", "0", "--size", "4"]), EXIT_USAGE);
    assert_eq!(run_to(&p, &["hess", "--r", "1", "--size", "4", "--alpha", "0.5"]), EXIT_USAGE);
    assert_eq!(run_to(&p, &["hess", "--r", "1", "--size", "4", "--alpha", "1,1"]), EXIT_USAGE);
    assert_eq!(run_to(&p, &["frobnicate"]), EXIT_USAGE);
    assert_eq!(run(["starhess", "verify", "nope"]), EXIT_USAGE);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(["starhess", "verify", "production", "--r", "2", "--max", "5"]), EXIT_OK);
    assert_eq!(run(["starhess", "verify", "5"]), EXIT_OK);
    assert_eq!(run(["starhess", "verify", "--list"]), EXIT_OK);
    assert_eq!(run(["starhess", "verify", "golden", "--r", "0"]), EXIT_USAGE);
}

#[test]
fn output_is_deterministic() {
    let (_d, a) = tmp();
    let (_e, b) = tmp();
    let args = ["tp", "--r", "2", "--j", "1", "--size", "4", "--alpha", "appell", "--format", "csv"];
    assert_eq!(run_to(&a, &args), EXIT_OK);
    assert_eq!(run_to(&b, &args), EXIT_OK);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
