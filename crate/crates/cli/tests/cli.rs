use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use g2net_core::coeffs::{spider_r, seven_c};
use g2net_core::{bundled, FieldValue};

fn g2net(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_g2net"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../core/data");
    p.push(format!("{name}.net"));
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(o: &Output) -> FieldValue {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(o).trim().parse().unwrap()
}

#[test]
fn unknot_from_stdin() {
    let out = g2net(&["eval", "-"], Some("O\n"));
    assert_eq!(stdout(&out).trim(), "q^5+q^4+q+1+q^-1+q^-4+q^-5");
}

#[test]
fn theta_at_the_spider_point() {
    let out = g2net(&["eval", &data("theta"), "--r-kuperberg"], None);
    assert_eq!(value(&out), &seven_c() * &spider_r());
}

#[test]
fn mirror_flag_inverts_q() {
    for ex in &bundled::EXAMPLES {
        let plain = value(&g2net(&["eval", &data(ex.name)], None));
        let mirrored = value(&g2net(&["eval", &data(ex.name), "--mirror"], None));
        assert_eq!(mirrored, plain.invert_q(), "{}", ex.name);
    }
}

#[test]
fn numeric_specialisation() {
    let out = g2net(&["eval", &data("theta"), "--q=1", "--r=2"], None);
    assert_eq!(stdout(&out).trim(), "14");
    let out = g2net(&["eval", &data("tetrahedron"), "--q", "-1"], None);
    assert_eq!(value(&out), "-3/2*r^2".parse().unwrap());
}

#[test]
fn json_output_round_trips() {
    let out = g2net(&["eval", &data("trefoil"), "--json", "--stats"], None);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let v = FieldValue::from_json(&doc["value"].to_string()).unwrap();
    assert_eq!(v, bundled::find("trefoil").unwrap().expected());
    assert_eq!(doc["text"].as_str().unwrap(), v.to_string());
    assert!(doc["stats"]["crossings_resolved"].as_u64().unwrap() > 0);
}

#[test]
fn parse_errors_exit_with_two() {
    let out = g2net(&["eval", "-"], Some("V 1 2 3\nV 1 2\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = g2net(&["eval", "-"], Some("X 1 2 3 4\nX 3 4 1 2\n"));
    assert_eq!(out.status.code(), Some(2));
    let out = g2net(&["eval", "/no/such/file.net"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn substituting_a_pole_fails() {
    // 7c has negative powers of q
    let out = g2net(&["eval", "-", "--q=0"], Some("O\n"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn examples_table() {
    let out = g2net(&["examples"], None);
    assert!(out.status.success());
    let text = stdout(&out);
    for ex in &bundled::EXAMPLES {
        assert!(text.contains(ex.name));
    }
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn coeffs_lists_the_table() {
    let out = g2net(&["coeffs"], None);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l.starts_with("alpha") && l.ends_with("= q")));
    let out = g2net(&["coeffs", "--json"], None);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["beta"]["text"], "q-1");
}

#[test]
fn verify_passes() {
    let out = g2net(&["verify"], None);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    assert!(text.contains("0 failed"));
}
