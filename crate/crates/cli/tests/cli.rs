use std::io::Write;
use std::process::{Command, Output, Stdio};

fn utree(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_utree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim().to_string()
}

#[test]
fn pte_check_and_degree() {
    let ok = utree(&["pte", "check", "--a", "1,1", "--b", "2,0", "--k", "1"], None);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "true");
    let too_far = utree(&["pte", "check", "--a", "1,1", "--b", "2,0", "--k", "2"], None);
    assert_eq!(too_far.status.code(), Some(1));
    let degree = utree(&["pte", "degree", "--a", "1,1", "--b", "2,0"], None);
    assert_eq!(stdout(&degree), "1");
}

#[test]
fn prouhet_certificate() {
    let out = utree(&["pte", "prouhet", "--k", "3"], None);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["a"].as_array().unwrap().len(), 8);
    assert_eq!(v["b"].as_array().unwrap().len(), 8);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["verified"], true);
}

#[test]
fn build_then_compute_and_recognize() {
    let tree = stdout(&utree(&["tree", "build", "--alpha", "2", "--p", "1,1"], None));
    let u0 = utree(&["upoly", "compute", "--tree", "-", "--k", "0"], Some(&tree));
    assert_eq!(stdout(&u0), r#"{"terms":[{"partition":[15],"ypow":0,"coeff":"1"}]}"#);
    let rec = utree(&["tree", "recognize", "--tree", "-"], Some(&tree));
    assert_eq!(rec.status.code(), Some(0));
    assert_eq!(stdout(&rec), r#"{"alpha":2,"p":[1,1]}"#);

    let dot = stdout(&utree(&["tree", "build", "--alpha", "2", "--p", "1,1", "--dot"], None));
    assert!(dot.starts_with("graph T {"));
}

#[test]
fn paths_are_not_pte_trees() {
    let edges: Vec<String> = (0..14).map(|i| format!("[{i},{}]", i + 1)).collect();
    let path = format!(r#"{{"n":15,"edges":[{}]}}"#, edges.join(","));
    let rec = utree(&["tree", "recognize", "--tree", "-"], Some(&path));
    assert_eq!(rec.status.code(), Some(1));
    assert_eq!(stdout(&rec), "not-PTE");
}

#[test]
fn verify_exit_codes() {
    let iso = utree(&["verify", "--alpha", "2", "--p", "1,1", "--q", "1,1", "--k", "1"], None);
    assert_eq!(iso.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&iso.stderr).contains("isomorphic"));

    let ok = utree(&["verify", "--alpha", "2", "--p", "1,1", "--q", "2,0", "--k", "1"], None);
    assert_eq!(ok.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["u_equal_level"], 2);
    assert_eq!(v["consistent_with_degree"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--alpha", "3", "--p", "1,3", "--q", "2,2", "--k", "1"];
    let runs: Vec<String> = ["1", "4"]
        .iter()
        .map(|t| {
            let mut a = vec!["--threads", t];
            a.extend(args);
            stdout(&utree(&a, None))
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}
