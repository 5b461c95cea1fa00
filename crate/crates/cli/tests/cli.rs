use std::path::{Path, PathBuf};
use std::process::Command;

use smalleig_cli::config::RunConfig;
use smalleig_cli::report::{LEDGER_HEADER, LEDGER_VERSION};
use smalleig_cli::run::{run, EXIT_CERTIFIED, EXIT_ERROR, EXIT_NOT_CERTIFIED};
use smalleig_cli::spec_file::{parse_spec, parse_spec_str};
use smalleig_cli::ParseError;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn fast() -> RunConfig {
    RunConfig::load(&fixture("fast.json")).unwrap()
}

fn reject(text: &str) -> ParseError {
    parse_spec_str(text, "spec.json", 7.3).unwrap_err()
}

#[test]
fn minimal_spec_parses() {
    let s = parse_spec(&fixture("minimal.json"), 7.3).unwrap();
    assert_eq!((s.signature.g, s.signature.n), (0, 3));
    assert_eq!(s.pants, vec![[0.0; 3]]);
    assert!(s.short_spectrum.lengths.is_empty() && s.short_spectrum.declared_complete);
    assert_eq!(s.c2, 7.3);
    for f in ["direct.json", "graph.json", "minmax.json", "pinched.json"] {
        parse_spec(&fixture(f), 7.3).unwrap();
    }
}

#[test]
fn too_many_pants_rejected() {
    let e = reject("{\n \"signature\": {\"g\": 0, \"n\": 3},\n \"pants\": [[0,0,0], [0,0,0], [0,0,0], [0,0,0]]\n}");
    assert_eq!(e.field, "pants");
    assert_eq!((e.line, e.column), (3, 11));
}

#[test]
fn long_short_length_rejected() {
    let e = reject("{\n \"signature\": {\"g\": 1, \"n\": 3},\n \"short_spectrum\": [\n   0.5,\n   1.5\n ]\n}");
    assert_eq!(e.field, "short_spectrum[1]");
    assert_eq!(e.line, 5);
    assert!(e.detail.contains("1.5"));
}

#[test]
fn boundary_over_c2_names_the_pants() {
    let e = reject("{\"signature\": {\"g\": 0, \"n\": 6},\n\"c2\": 4,\n\"pants\": [\n [0,0,1],\n [0,3,2]\n]}");
    assert_eq!(e.field, "pants[1]");
    assert_eq!((e.line, e.column), (5, 2));
    assert!(e.to_string().starts_with("spec.json:5:2: pants[1]:"));
}

#[test]
fn schema_errors_carry_positions() {
    let e = reject("{\n \"signature\": {\"g\": 0, \"n\": 3},\n \"pantz\": []\n}");
    assert_eq!(e.field, "schema");
    assert_eq!(e.line, 3);
    assert!(e.detail.contains("pantz"));
    let e = reject("{\n \"signature\": {\"g\": 0, \"n\": \"three\"}\n}");
    assert_eq!(e.line, 2);
    assert_eq!(reject("{\"signature\": {\"g\": 0, \"n\": 2}}").field, "signature");
    let e = reject("{\"signature\": {\"g\": 0, \"n\": 4}, \"horocycle_graph\": {\"vertices\": 2, \"edges\": [[0, 1]], \"self_intersect\": [false], \"H\": 1, \"C\": 2}}");
    assert_eq!(e.field, "horocycle_graph");
}

#[test]
fn report_carries_every_trace_term() {
    let dir = tempfile::tempdir().unwrap();
    let spec = parse_spec(&fixture("minimal.json"), 7.3).unwrap();
    let out = run(&spec, &fast(), dir.path(), false).unwrap();
    assert_eq!(out.exit_code, EXIT_NOT_CERTIFIED);
    assert!(out.reason.as_ref().unwrap().contains("S_low"));
    for key in [
        "certificate.ledger.0.T=",
        "certificate.ledger.0.identityTerm=",
        "certificate.ledger.0.geodesicTerm=",
        "certificate.ledger.0.log2Term=",
        "certificate.ledger.0.digammaTerm=",
        "certificate.ledger.0.scatteringTraceBound=",
        "certificate.ledger.0.sMinusBound=",
        "certificate.ledger.2.extractionDenominator=",
        "certificate.U1=",
        "certificate.kappa.floor=",
        "branch=direct",
        "verdict=not_certified",
        "reason=",
    ] {
        assert!(out.report.contains(key), "missing {key}");
    }
    let csv = std::fs::read_to_string(dir.path().join("ledger.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(LEDGER_VERSION));
    assert_eq!(lines.next(), Some(LEDGER_HEADER));
    assert_eq!(LEDGER_HEADER, "T,geodesicTerm,identityTerm,cuspTerms,T_U1,sMinusBound,extractionDenominator,certifiedCount");
    assert_eq!(lines.count(), 3);
    // every report line is key=value
    assert!(out.report.lines().all(|l| l.split_once('=').is_some_and(|(k, _)| !k.is_empty())));
}

#[test]
fn reports_do_not_depend_on_workers() {
    let spec = parse_spec(&fixture("graph.json"), 7.3).unwrap();
    let reports: Vec<String> = [1, 2, 8]
        .iter()
        .map(|&w| {
            let dir = tempfile::tempdir().unwrap();
            let cfg = RunConfig { workers: Some(w), ..fast() };
            run(&spec, &cfg, dir.path(), false).unwrap().report
        })
        .collect();
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0], reports[2]);
    assert!(reports[0].contains("graph.seedList=0-1,4-5"));
}

fn certify_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_certify"))
}

#[test]
fn binary_exit_codes_and_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let status = certify_bin()
        .args(["--input", fixture("minmax.json").to_str().unwrap(), "--out"])
        .arg(dir.path())
        .args(["--emit-testfn", "--T-grid", "10:12:1", "--c3", "0.01"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_CERTIFIED));
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("branch=minmax") && report.contains("certifiedEigenvalues=21"));
    let f1 = std::fs::read_to_string(dir.path().join("f1.csv")).unwrap();
    let h1 = std::fs::read_to_string(dir.path().join("h1.csv")).unwrap();
    assert!(f1.starts_with("x,f1\n") && h1.starts_with("r,h1\n"));

    let dir = tempfile::tempdir().unwrap();
    let out = certify_bin()
        .args(["--input", fixture("pinched.json").to_str().unwrap(), "--config", fixture("fast.json").to_str().unwrap()])
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_NOT_CERTIFIED));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not certified"));
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("branch=pinched") && report.contains("limit.n=12") && report.contains("limit.g=1"));

    let out = certify_bin().args(["--input", "/nonexistent.json", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_ERROR));
    let out = certify_bin()
        .args(["--input", fixture("minimal.json").to_str().unwrap(), "--c3", "0.3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_ERROR));
    assert!(String::from_utf8_lossy(&out.stderr).contains("c3"));
    let out = certify_bin()
        .env("CERTIFY_ENUM_BUDGET", "100")
        .args(["--input", fixture("minimal.json").to_str().unwrap(), "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_ERROR));
}
