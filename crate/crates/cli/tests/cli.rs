use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use ntriv::certify::samples;
use ntriv::certify::{CertificateReport, PipelineReport, Verdict};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ntriv(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ntriv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn shipped(stem: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", "certificates", &format!("{stem}.json")].iter().collect();
    path.to_str().unwrap().to_string()
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", run.stdout))
}

const TREFOIL: &str = "# genus, then V row by row\n1\n-1 1\n0 -1\n";

#[test]
fn magnus_degree_of_a_commutator() {
    let r = ntriv(&["magnus", "degree", "-D", "4"], "g1 g2 g1^-1 g2^-1");
    assert_eq!((r.code, r.stdout.as_str()), (0, "2\n"));
    let r = ntriv(&["magnus", "degree", "-D", "4", "--format", "json"], "1 2 -1 -2");
    assert_eq!(json(&r)["result"]["lcs_degree"], serde_json::json!({ "exact": 2 }));
    let r = ntriv(&["magnus", "degree", "-D", "3"], "g1 g1^-1");
    assert_eq!(r.stdout, "> 3\n");
}

#[test]
fn alexander_of_the_trefoil() {
    let f = temp_file(TREFOIL);
    let r = ntriv(&["alexander", f.path().to_str().unwrap()], "");
    assert_eq!((r.code, r.stdout.as_str()), (0, "t^-1 - 1 + t\n"));
    let r = ntriv(&["alexander", "--format", "json"], TREFOIL);
    let v = json(&r);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["laurent"], serde_json::json!({ "min_exponent": -1, "coefficients": [1, -1, 1] }));
    let r = ntriv(&["alexander"], "1\n0 1\n0 5\n");
    assert_eq!(r.stdout, "1\n");
}

#[test]
fn certify_shipped_hyperbolic() {
    let r = ntriv(&["certify", "hyperbolic", &shipped("hyperbolic-g1-n5"), "--format", "json"], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: CertificateReport = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report.verdict, Verdict::Valid);
    assert_eq!(report.l_n_s, Some(0));
    let r = ntriv(&["certify", "hyperbolic", &shipped("hyperbolic-g1-n5")], "");
    assert!(r.stdout.contains("l(n, S) = 0"), "{}", r.stdout);
}

#[test]
fn every_shipped_certificate_certifies() {
    for (stem, _) in samples::shipped() {
        let r = ntriv(&["certify", "auto", &shipped(&stem)], "");
        assert_eq!(r.code, 0, "{stem}: {}", r.stdout);
    }
}

#[test]
fn invalid_certificate_exits_one() {
    let mut cert = samples::hyperbolic(1, 2);
    cert.curves[0].pushoff_plus = Some("g1".parse().unwrap());
    let f = temp_file(&cert.to_json());
    let r = ntriv(&["certify", "hyperbolic", f.path().to_str().unwrap()], "");
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("invalid"));
}

#[test]
fn missing_assertion_exits_three() {
    let mut cert = samples::hyperbolic(2, 3);
    cert.asserted_flags.clear();
    let r = ntriv(&["certify", "auto"], &cert.to_json());
    assert_eq!(r.code, 3);
    assert!(r.stdout.contains("MISSING regular-spine"), "{}", r.stdout);
}

#[test]
fn malformed_inputs_exit_two_with_positions() {
    let r = ntriv(&["word", "reduce"], "g1 g2\ng3 h4");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("<stdin>:2:4:"), "{}", r.stderr);
    let r = ntriv(&["certify", "auto"], "{\n  \"genus\": 1,\n  \"n\": x\n}");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("<stdin>:3:"), "{}", r.stderr);
    let r = ntriv(&["alexander"], "1\n1 2 3\n");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("needs 4 entries"), "{}", r.stderr);
    let r = ntriv(&["alexander"], "1\n1 0 0 1\n");
    assert_eq!(r.code, 2);
    let r = ntriv(&["certify", "elliptic", &shipped("hyperbolic-g1-n1")], "");
    assert_eq!(r.code, 2);
    let r = ntriv(&["magnus", "fox", "--index", "1,x"], "g1");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("--index:1:3:"), "{}", r.stderr);
    let r = ntriv(&["altsum", "-n", "1"], "{} 1\n{1} 1/\n");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("<stdin>:2:5:"), "{}", r.stderr);
    let r = ntriv(&["magnus", "degree", "-D", "0"], "g1");
    assert_eq!(r.code, 2);
}

#[test]
fn structured_output_is_deterministic_and_round_trips() {
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["certify".into(), "auto".into(), shipped("unknotted-g1-n2")], ""),
        (vec!["magnus".into(), "expand".into(), "-D".into(), "3".into()], "g1 g2 g1^-1"),
        (vec!["decompose".into(), "-m".into(), "1".into(), "-D".into(), "4".into()], "g1 g2 g1^-1 g2^-1 g3 g1 g3^-1 g1^-1"),
        (vec!["bounds".into(), "inequalities".into(), "60".into()], ""),
        (vec!["mmr".into(), "--matrix".into()], TREFOIL),
        (vec!["pipeline".into(), "spine-link".into(), "--signs".into(), "+-+-".into(), shipped("spine-link-g2-n3")], ""),
    ];
    for (args, stdin) in cases {
        let mut args: Vec<&str> = args.iter().map(String::as_str).collect();
        args.extend(["--format", "json"]);
        let a = ntriv(&args, stdin);
        let b = ntriv(&args, stdin);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v = json(&a);
        assert_eq!(v["schema"], 1, "{args:?}");
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v, "{args:?}");
    }
    let r = ntriv(&["certify", "auto", &shipped("elliptic-g1-n2"), "--format", "json"], "");
    let report: CertificateReport = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report.to_json() + "\n", r.stdout);
}

#[test]
fn milnor_values() {
    let r = ntriv(&["milnor", "invariant", "--index", "1,2"], "g2\ng1\n");
    assert_eq!(r.stdout, "1\n");
    let borromean = "g2 g3 g2^-1 g3^-1\ng3 g1 g3^-1 g1^-1\ng1 g2 g1^-1 g2^-1\n";
    for index in ["1,2", "2,3", "3,1"] {
        assert_eq!(ntriv(&["milnor", "invariant", "--index", index], borromean).stdout, "0\n");
    }
    let v = json(&ntriv(&["milnor", "invariant", "--index", "1,2,3", "--mode", "gcd", "--format", "json"], borromean));
    assert_eq!(v["result"]["value"].as_i64().unwrap().abs(), 1);
    assert_eq!(v["result"]["mode"], "gcd");
    assert_eq!(ntriv(&["milnor", "vanish", "-n", "1"], borromean).code, 0);
    assert_eq!(ntriv(&["milnor", "vanish", "-n", "2"], borromean).code, 1);
    assert_eq!(ntriv(&["milnor", "vanish", "-n", "1"], "e\ng1\n").code, 1);
}

#[test]
fn trivializer_build_then_verify() {
    let factors = "g1 g2 g3\ng2 g3 g1\ninsert 4 g2^-1\n";
    let built = ntriv(&["trivialize", "build", "--format", "json"], factors);
    assert_eq!(built.code, 0, "{}", built.stderr);
    let r = ntriv(&["trivialize", "verify"], &built.stdout);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("all 7 subfamily"), "{}", r.stdout);
    assert_eq!(ntriv(&["trivialize", "verify"], factors).code, 0);
    let r = ntriv(&["trivialize", "build", "--extremal", "1", "-m", "6"], "");
    assert!(r.stdout.starts_with("word: "), "{}", r.stdout);
    let mut v = json(&built);
    v["result"]["family"][0] = serde_json::json!([0, 1, 2, 3]);
    v["result"]["family"][1] = serde_json::json!([0]);
    let r = ntriv(&["trivialize", "verify"], &v.to_string());
    assert_eq!(r.code, 2, "{}", r.stdout);
}

#[test]
fn word_commands() {
    assert_eq!(ntriv(&["word", "reduce"], "g1 g2 g2^-1 g3").stdout, "g1 g3\n");
    assert_eq!(ntriv(&["word", "reduce"], "g1 g1^-1").stdout, "e\n");
    assert_eq!(ntriv(&["word", "commutator"], "g1\ng2\n").stdout, "g1 g2 g1^-1 g2^-1\n");
    assert_eq!(ntriv(&["word", "kill", "--generators", "2"], "g1 g2 g1^-1 g3").stdout, "g3\n");
    assert_eq!(ntriv(&["magnus", "fox", "--index", "1,2", "-D", "2"], "g1 g2 g1^-1 g2^-1").stdout, "1\n");
    let r = ntriv(&["schreier", "degree", "--killed", "1", "-D", "4"], "g2 g1 g2^-1 g1^-1");
    assert_eq!((r.code, r.stdout.as_str()), (0, "1\n"));
    assert_eq!(ntriv(&["schreier", "degree", "--killed", "1"], "g2").code, 2);
    let r = ntriv(&["decompose", "-m", "1", "-D", "3"], "g1 g2 g1^-1 g2^-1");
    assert!(r.stdout.contains("weight 2:"), "{}", r.stdout);
}

#[test]
fn series_and_sums() {
    let r = ntriv(&["mmr", "--order", "4"], "0 1");
    assert_eq!(r.stdout, "(1, 0, 1/24, 0, 1/1920)\n");
    let r = ntriv(&["mmr", "--order", "2", "--matrix"], TREFOIL);
    assert_eq!(r.stdout, "(1, 0, -23/24)\n");
    assert_eq!(ntriv(&["mmr"], "0 2").code, 2);
    let values = "{} 1\n{1} 1/2\n{2} 1/3\n{1,2} 1/6\n";
    assert_eq!(ntriv(&["altsum", "-n", "1"], values).stdout, "1/3\n");
    assert_eq!(ntriv(&["altsum", "-n", "1"], "{} 1\n").code, 2);
}

#[test]
fn classify_forms() {
    assert_eq!(ntriv(&["classify"], "1\n0 1\n1 0\n").stdout, "elliptic\n");
    assert_eq!(ntriv(&["classify"], "1\n0 1\n1 3\n").stdout, "hyperbolic\n");
    assert_eq!(ntriv(&["classify", "--seifert"], TREFOIL).stdout, "parabolic\n");
    assert_eq!(ntriv(&["classify"], "2\n0 0 1 0\n0 0 0 1\n1 0 0 0\n0 1 0 2\n").stdout, "hyperbolic\n");
    assert_eq!(ntriv(&["classify"], "2\n1 1 0 0\n1 0 0 0\n0 0 0 1\n0 0 1 0\n").stdout, "none\n");
    let u = temp_file("1\n0 1\n1 0\n");
    let r = ntriv(&["classify", "--basis", u.path().to_str().unwrap()], "1\n2 1\n1 0\n");
    assert_eq!(r.stdout, "hyperbolic\n");
    assert_eq!(ntriv(&["classify"], "1\n0 1\n2 0\n").code, 2);
}

#[test]
fn bounds_functions() {
    assert_eq!(ntriv(&["bounds", "q", "13"], "").stdout, "2\n");
    assert_eq!(ntriv(&["bounds", "t", "9"], "").stdout, "2\n");
    assert_eq!(ntriv(&["bounds", "q-param", "29", "1"], "").stdout, "3\n");
    assert_eq!(ntriv(&["bounds", "l-n-s", "3", "-1", "4"], "").stdout, "-2\n");
    assert_eq!(ntriv(&["bounds", "partition-k", "1,2", "2,3", "5,6,7"], "").stdout, "3\n");
    assert_eq!(ntriv(&["bounds", "conflict-max", "3"], "").stdout, "6\n");
    assert_eq!(ntriv(&["bounds", "product-length", "1", "3", "2"], "").stdout, "13\n");
    assert_eq!(ntriv(&["bounds", "ratio", "4", "3"], "").stdout, "true\n");
    assert_eq!(ntriv(&["bounds", "floor-log2", "11", "6"], "").stdout, "0\n");
    assert_eq!(ntriv(&["bounds", "exceeds-log2", "1", "11", "6"], "").stdout, "true\n");
    assert_eq!(ntriv(&["bounds", "good-arc", "20", "2", "1", "--embedded"], "").stdout, "20\n");
    let v = json(&ntriv(&["bounds", "product-bound", "12", "1", "3", "2", "--format", "json"], ""));
    assert_eq!(v["result"]["log_argument"], "7/6");
    assert_eq!(v["command"], "bounds product-bound");
    assert_eq!(ntriv(&["bounds", "inequalities", "5"], "").code, 2);
    assert_eq!(ntriv(&["bounds", "q-param", "5", "0"], "").code, 2);
}

#[test]
fn translations() {
    let r = ntriv(&["translate", &shipped("elliptic-g2-n4-trivial"), "--format", "json"], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["result"]["lemma"], "elliptic-to-hyperbolic");
    assert_eq!(v["result"]["certificate"]["kind"], "hyperbolic");
    assert_eq!(v["result"]["certificate"]["n"], 2);
    let r = ntriv(&["translate", "--lemma", "unknotted-shift", &shipped("hyperbolic-g1-n1")], "");
    assert_eq!(r.code, 1);
    let r = ntriv(&["translate", "--lemma", "sideways", &shipped("hyperbolic-g1-n1")], "");
    assert_eq!(r.code, 2);
}

#[test]
fn spine_link_pipeline() {
    let r = ntriv(&["pipeline", "spine-link", "--signs", "++--", &shipped("spine-link-g2-n3"), "--format", "json"], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: PipelineReport = serde_json::from_str(&r.stdout).unwrap();
    assert!(report.vanish_lcs && report.agree);
    assert!(report.l_n_s.is_some());
    let mut cert = samples::spine_link(1, 2);
    cert.curves[0].pushoff_plus = Some("g2".parse().unwrap());
    let r = ntriv(&["pipeline", "spine-link", "--signs", "++", "-n", "1"], &cert.to_json());
    assert_eq!(r.code, 1);
    let r = ntriv(&["pipeline", "spine-link", "--signs", "+"], &cert.to_json());
    assert_eq!(r.code, 2);
}
