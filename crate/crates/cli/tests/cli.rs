use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn cck(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_cck")).args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (out.status.code().unwrap(), v)
}

fn fixture() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/hplus.csv").display().to_string()
}

#[test]
fn fingen_rejects_2t_minus_1_at_zero() {
    let module = r#"{"generators":1,"relations":[[{"val":0,"coeffs":["-1","2"]}]]}"#;
    let (code, v) = cck(&["fingen", "--module", module]);
    assert_eq!(code, 0);
    assert_eq!(v["subcommand"], "fingen");
    assert_eq!(v["result"]["answer"], "no");
    assert_eq!(v["result"]["witness"]["prime"], "0");
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn hp_minus_23() {
    let (code, v) = cck(&["hp-minus", "--p", "23"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["h_minus"], "3");
}

#[test]
fn gate_verdicts() {
    let f = fixture();
    let (_, v) = cck(&["gate", "--p", "191", "--fixture", &f]);
    assert_eq!(v["result"]["gate"], true);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    let (_, v) = cck(&["gate", "--p", "199", "--fixture", &f]);
    assert_eq!(v["result"]["gate"], "unknown");
    let (_, v) = cck(&["gate", "--p", "3", "--fixture", &f]);
    assert_eq!(v["result"]["gate"], false);
}

#[test]
fn prime_bound_is_configurable() {
    let out = Command::new(env!("CARGO_BIN_EXE_cck"))
        .args(["hp-minus", "--p", "29"])
        .env("CCK_PRIME_BOUND", "23")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "invalid_input");
    assert!(v["error"]["message"].as_str().unwrap().contains("23"));
}

#[test]
fn error_paths_are_json_with_exit_2() {
    let (code, v) = cck(&["fingen", "--module", "{not json"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");

    let (code, v) = cck(&["fingen"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("--module"));

    let (code, v) = cck(&["frobnicate"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");

    let (code, v) = cck(&["wang", "--complex", r#"{"ranks":[1,1,1],"boundaries":[[[1]],[[1]]]}"#, "--q", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "invalid_complex");

    let (code, v) = cck(&["cover-homology", "--complex", r#"{"ranks":[1],"boundaries":[]}"#, "--kappa", "Fp:4"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "invalid_input");
}

#[test]
fn digest_ignores_key_order_and_number_style() {
    let a = r#"{"generators":1,"relations":[[{"val":0,"coeffs":[1,-1,1]}]]}"#;
    let b = r#"{"relations":[[{"coeffs":["1","-1","1"],"val":"0"}]],"generators":"1"}"#;
    let (_, va) = cck(&["fingen", "--module", a]);
    let (_, vb) = cck(&["fingen", "--module", b]);
    assert_eq!(va["input_digest"], vb["input_digest"]);
    assert_eq!(va, vb);
}

#[test]
fn file_inputs_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("m.json");
    std::fs::write(&input, r#"{"generators":1,"relations":[[{"val":0,"coeffs":[1,-3,1]}]]}"#).unwrap();
    let out = dir.path().join("report.json");
    let arg = format!("@{}", input.display());
    let (code, v) = cck(&["fingen", "--module", &arg, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["answer"], "yes");
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, v);
}

#[test]
fn empty_corpus_has_zero_cases() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = cck(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cases"], "0");
}

fn write_case(dir: &Path, name: &str, expected: &str) {
    std::fs::write(
        dir.join(format!("{name}.case.json")),
        r#"{"subcommand":"hp-minus","args":{"p":23}}"#,
    )
    .unwrap();
    std::fs::write(dir.join(format!("{name}.expected.json")), expected).unwrap();
}

#[test]
fn corpus_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write_case(dir.path(), "a", r#"{"result":{"h_minus":3}}"#);
    let (code, v) = cck(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], "1");

    write_case(dir.path(), "b", r#"{"result":{"h_minus":4}}"#);
    let (code, v) = cck(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["results"][1]["status"], "fail");

    write_case(dir.path(), "c", "{corrupt");
    let (code, v) = cck(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("c.expected.json"));

    std::fs::remove_file(dir.path().join("c.expected.json")).unwrap();
    let (code, v) = cck(&["corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("c.expected.json"));
}

#[test]
fn mapping_torus_and_covers() {
    let tref = r#"{"ranks":[1,2],"boundaries_F":[[[0,0]]],"f":[[[1]],[[0,-1],[1,1]]]}"#;
    let (code, v) = cck(&["mapping-torus", "--complex", tref]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["homology"][1]["factors"][0]["text"], "t^2 - t + 1");
    let (_, v) = cck(&["wang", "--complex", tref, "--q", "6"]);
    assert_eq!(v["result"]["dims"], serde_json::json!(["1", "3", "2"]));
    let (_, v) = cck(&["cover-homology", "--complex", tref, "--q", "6", "--kappa", "Fp:5"]);
    assert_eq!(v["result"]["degrees"][1]["dim"], "3");
    let (_, v) = cck(&["dimension-bound", "--complex", tref, "--q", "5,25"]);
    assert_eq!(v["result"]["holds"], true);
}

#[test]
fn periodicity_subcommands() {
    let (code, v) = cck(&["prop-matrix", "--f", r#"{"a":[[0,-1],[1,0]],"b":[[1,0],[0,1]]}"#, "--k", "3", "--sign", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["m"], "4");
    let f = r#"{"monodromy":[{"free":[[1]]},{"free":[[1,-1],[1,0]]}],"witness":[{"b":[[1]]},{"b":[[1,0],[1,-1]]}]}"#;
    let (code, v) = cck(&["periodicity", "--f", f, "--k", "5"]);
    assert_eq!(code, 0);
    assert_eq!((v["result"]["m"].as_str(), v["result"]["l"].as_str()), (Some("6"), Some("6")));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cck"))
            .args(["order-ideal", "--module", r#"{"generators":1,"relations":[[{"val":-1,"coeffs":[2,-4]}]]}"#])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}
