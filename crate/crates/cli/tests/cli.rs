use std::io::Write;
use std::process::{Command, Output};

fn nilclose(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilclose")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = nilclose(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

fn monoid(name: &str) -> String {
    format!("{}/../core/data/monoids/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn stallings_report() {
    let v = json(&["stallings", "--alphabet", "ab", "aa,b"]);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["index"], "infinite");
    let v = json(&["stallings", "--alphabet", "ab", "aa,b,aBA"]);
    assert_eq!(v["index"], 2);
}

#[test]
fn prime_spectra() {
    assert_eq!(stdout(&["primes-closed", "--alphabet", "ab", "aa,b"]).trim(), "{2}");
    assert_eq!(stdout(&["primes-closed", "--alphabet", "ab", "a,bbb"]).trim(), "{3}");
}

#[test]
fn p_closure() {
    assert_eq!(stdout(&["pclosure", "--alphabet", "ab", "-p", "3", "aaaaaa,b"]).trim(), "<b,aaa>");
}

#[test]
fn nil_closures() {
    let v = json(&["nilclosure", "product", "--alphabet", "ab", "aa,b;a,bbb"]);
    assert_eq!(v["universal"], true);
    let v = json(&["nilclosure", "rational", "--alphabet", "ab", "(aa|b)*|(a|bbb)*"]);
    assert_eq!(v["universal"], false);
    let sub = stdout(&["nilclosure", "subgroup", "--alphabet", "ab", "aa,b"]);
    assert!(sub.contains("aa"), "{sub}");
}

#[test]
fn rational_closure_from_automaton_file() {
    let v = json(&["nilclosure", "rational", "--alphabet", "ab", "a*b*"]);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", v["automaton"]).unwrap();
    let again = json(&["nilclosure", "rational", "--alphabet", "ab", "--automaton", f.path().to_str().unwrap()]);
    assert_eq!(again["automaton"], v["automaton"]);
}

#[test]
fn monoid_checks() {
    let s3 = monoid("s3");
    let out = stdout(&["monoid", "analyze", &s3, "--check", "j-star-gnil"]);
    assert!(out.contains("J*Gnil: false") && out.contains("((123), e)"), "{out}");
    assert_eq!(stdout(&["monoid", "kernel", &s3]).trim(), "{e, (123), (132)}");
    let out = stdout(&["monoid", "analyze", &monoid("right_zero"), "--check", "j-star-gnil"]);
    assert!(out.contains("J*Gnil: false"), "{out}");
    let out = stdout(&["monoid", "analyze", &monoid("z4"), "--check", "j-malcev-gnil"]);
    assert!(out.contains("true"), "{out}");
}

#[test]
fn pseudonorm_and_profinite_closure() {
    let out = stdout(&["pseudonorm", "--alphabet", "ab", "aba"]);
    assert!(out.starts_with("2^-2"), "{out}");
    assert_eq!(stdout(&["closure", "profinite", "--alphabet", "ab", "a*b"]).trim(), "b·<Bab>");
}

#[test]
fn exit_codes() {
    assert_eq!(nilclose(&["stallings", "--alphabet", "ab", "aq"]).status.code(), Some(2));
    assert_eq!(nilclose(&["pclosure", "--alphabet", "ab", "-p", "4", "a"]).status.code(), Some(2));
    assert_eq!(nilclose(&["monoid", "kernel", "/nonexistent.json"]).status.code(), Some(2));
    let capped = nilclose(&["--max-overgroups", "2", "overgroups", "--alphabet", "a", "aaaaaa"]);
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "nilclosure", "rational", "--alphabet", "ab", "(ab)*a|bb*"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn catalog_generation_round_trips() {
    let out = stdout(&["catalog", "generate", "--max-order", "8"]);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(out.as_bytes()).unwrap();
    let norm = stdout(&["--catalog", f.path().to_str().unwrap(), "pseudonorm", "--alphabet", "ab", "abAB"]);
    assert!(norm.starts_with("2^-8"), "{norm}");
}
