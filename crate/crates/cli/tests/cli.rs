use std::process::{Command, Output};

fn regconst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regconst")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const F20: &str = "frobenius:5,4,2";
const F20_U: &str = "normal:5 + 4*order:4";

#[test]
fn relation_check_exit_codes() {
    let ok = regconst(&["relation-check", "--group", F20, "--relation", "1 - 4*C4 - C5 + 4*G"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("valid Brauer relation"));
    let bad = regconst(&["relation-check", "--group", "cyclic:6", "--relation", "1 - C2 - C3 + G"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("not a Brauer relation"));
    let empty = regconst(&["relation-check", "--group", "cyclic:6", "--relation", ""]);
    assert_eq!(empty.status.code(), Some(0));
    let parse = regconst(&["relation-check", "--group", "cyclic:6", "--relation", "1 - - G"]);
    assert_eq!(parse.status.code(), Some(2));
    let group = regconst(&["relation-check", "--group", "cyclic:", "--relation", "1"]);
    assert_eq!(group.status.code(), Some(2));
}

#[test]
fn bindings() {
    let o = regconst(&[
        "relation-check",
        "--group",
        "heisenberg:3",
        "--relation",
        "1 + 2*G - N - C",
        "--bind",
        "N=order=9,index=0",
        "--bind",
        "C=order=3,index=12",
    ]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    let unbound = regconst(&["relation-check", "--group", "heisenberg:3", "--relation", "1 - N"]);
    assert_eq!(unbound.status.code(), Some(2));
}

#[test]
fn alpha_f20() {
    let o = regconst(&["alpha", "--group", F20, "--U", F20_U, "--lattice", &data("f20/m_tau.json"), "--multiplicity", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("lambda = (-7/4, 0, 4, 3/4)"), "{text}");
    assert!(text.contains("alpha = 5^-12 = 1/244140625"));
    assert!(text.contains("per copy (multiplicity 4) = 5^-3"));
}

#[test]
fn alpha_klein_four() {
    let o = regconst(&["alpha", "--group", "elab:2,2", "--U", "all-index:2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for c in v["cyclic"].as_array().unwrap() {
        for p in c["alpha"]["factors"].as_object().unwrap().keys() {
            assert_eq!(p, "2");
        }
    }
}

#[test]
fn verify_exit_codes() {
    let o = regconst(&["verify", "--group", F20, "--U", F20_U, "--lattice", &data("f20/m_tau.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("left  = [M : sum M^H]^2 / |ker f|^2 = 5^12 = 244140625"));
    let t = regconst(&["verify", "--group", F20, "--U", F20_U, "--lattice", &data("f20/m1.json")]);
    assert_eq!(t.status.code(), Some(0));
    assert!(stdout(&t).contains("right = c_phi / (c_phi_G * C) = 1\n"));
    let dir = std::env::temp_dir().join(format!("regconst-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"rank": 1, "action": [[["2"]], [["1"]]]}"#).unwrap();
    let o = regconst(&["verify", "--group", F20, "--U", F20_U, "--lattice", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not unimodular"));
    let wrong_group = regconst(&["verify", "--group", "frobenius:3,2,2", "--U", "all-index:2", "--lattice", &data("f20/m1.json")]);
    assert_eq!(wrong_group.status.code(), Some(2));
    let missing = regconst(&["verify", "--group", F20, "--U", F20_U, "--lattice", "/nonexistent.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn phi_search_failure_is_exit_one() {
    let o = regconst(&["phi-search", "--group", "cyclic:4", "--U", "order:2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = regconst(&["phi-search", "--group", F20, "--U", F20_U, "--budget", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = regconst(&["phi-search", "--group", F20, "--U", "9*order:4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_json_parses() {
    let args = ["beta", "--group", F20, "--U", F20_U, "--json"];
    let a = regconst(&args);
    let b = regconst(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["entries"].as_array().unwrap().len(), 6);
    assert_eq!(v["entries"][5]["beta"]["value"], "125");
    assert_eq!(v["entries"][5]["printed_agrees"], true);
}

#[test]
fn regconst_by_relation_and_by_u() {
    let m2 = data("f20/m2.json");
    let by_rel = regconst(&["regconst", "--group", F20, "--relation", "1 - 4*C4 - C5 + 4*G", "--lattice", &m2]);
    assert_eq!(by_rel.status.code(), Some(0));
    assert!(stdout(&by_rel).contains("C (pairing) = 5\n"));
    let by_u = regconst(&["regconst", "--group", F20, "--U", F20_U, "--lattice", &m2]);
    assert!(stdout(&by_u).contains("C (cokernels) = 5\n"));
    let invalid = regconst(&["regconst", "--group", F20, "--relation", "1 - G", "--lattice", &m2]);
    assert_eq!(invalid.status.code(), Some(1));
}

#[test]
fn group_info_and_max_order() {
    let o = regconst(&["group-info", "--group", "perms:(1,2);(1,2,3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("group perms:(1,2);(1,2,3): order 6\n"));
    let capped = regconst(&["group-info", "--group", "elab:2,6", "--max-order", "32"]);
    assert_eq!(capped.status.code(), Some(2));
}
