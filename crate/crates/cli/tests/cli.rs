use std::process::{Command, Output};

fn orthopath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthopath")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn single_moment_as_json() {
    let o = orthopath(&["moments", "--family", "symbolic", "--n", "3", "--k", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "b0^2+b0*b1+b1^2+l1+l2");
}

#[test]
fn hermite_table_as_csv() {
    let o = orthopath(&["moments", "--family", "hermite", "--max-n", "8", "--routes", "recurrence,motzkin"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,k0,k1,k2,k3,k4,k5,k6,k7,k8,routes");
    let row4: Vec<&str> = lines.nth(4).unwrap().split(',').collect();
    assert_eq!(row4, ["4", "3", "0", "6", "0", "1", "0", "0", "0", "0", "recurrence+motzkin"]);
}

#[test]
fn rational_laguerre_values_are_fractions() {
    let o = orthopath(&["moments", "--family", "laguerre:1/2", "--n", "1", "--k", "0", "--routes", "all"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "3/2");
}

#[test]
fn oscillator_and_hydrogen_values() {
    let o = orthopath(&["qho", "--m", "0", "--power", "4"]);
    assert_eq!(stdout(&o).split_whitespace().next(), Some("3"));
    let o = orthopath(&["qho", "--m", "2", "--power", "4", "--momentum"]);
    assert_eq!(stdout(&o).split_whitespace().next(), Some("39"));
    let o = orthopath(&["hydrogen", "--m", "2", "--l", "0", "--power", "1"]);
    assert_eq!(stdout(&o).split_whitespace().next(), Some("6"));
    let o = orthopath(&["hydrogen", "--m", "3", "--l", "1", "--power", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["entries"][0]["routes"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "thm35", "--max-n", "6", "--family", "symbolic"],
        vec!["verify", "thm38", "--family", "laguerre:alpha", "--max-n", "6"],
        vec!["verify", "prop33", "--max-n", "10"],
        vec!["verify", "prop36", "--max-n", "5"],
        vec!["verify", "cor37", "--max-n", "5"],
        vec!["verify", "lemmas", "--max-n", "5"],
    ] {
        let o = orthopath(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["status"], "pass");
        assert!(v["first_failure"].is_null());
    }
}

#[test]
fn paths_count_and_list() {
    let o = orthopath(&["paths", "count", "motzkin", "--end", "1", "--len", "3"]);
    assert_eq!(stdout(&o).trim(), "5");
    let o = orthopath(&["paths", "count", "slh", "--from", "T,2", "--to", "1,4,0"]);
    assert_eq!(stdout(&o).trim(), "6");
    let o = orthopath(&["paths", "list", "motzkin", "--end", "0", "--len", "4", "--dyck", "--family", "hermite"]);
    assert_eq!(stdout(&o), "m=0:UUDD\t2\nm=0:UDUD\t1\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["moments", "--routes", "bogus"],
        vec!["moments", "--family", "jacobi"],
        vec!["moments", "--family", "symbolic", "--routes", "lecturehall"],
        vec!["hydrogen", "--m", "2", "--l", "2", "--power", "1"],
        vec!["verify", "thm38", "--family", "hermite"],
        vec!["verify", "thm35", "--family", "laguerre:1"],
        vec!["render", "--path", "T,1;0,0,0"],
        vec!["qho", "--routes", "closed"],
    ] {
        assert_eq!(orthopath(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn enumeration_cap_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_orthopath"))
        .env("ORTHOPATH_ENUM_CAP", "3")
        .args(["paths", "list", "motzkin", "--end", "0", "--len", "6"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap of 3"));
}

#[test]
fn render_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fig4.svg");
    let fig4 = "T,1;1,1,1;1,2,1;1,2,0;0,2,2;0,2,1;0,3,2;0,4,3;0,4,2;0,4,1;0,4,0";
    let o = orthopath(&["render", "--path", fig4, "--family", "symbolic-lambda", "-o", file.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&file).unwrap();
    assert!(svg.starts_with("<svg"));
    // Columns 0..=4 and the three east step labels.
    for label in [">4</text>", ">l1</text>", ">l2</text>", ">l3</text>"] {
        assert!(svg.contains(label), "{label}");
    }
    let empty = orthopath(&["render", "--path", ""]);
    assert!(empty.status.success());
    assert!(!stdout(&empty).contains("polyline"));
    let m = orthopath(&["render", "--motzkin", "HUD", "--family", "symbolic"]);
    assert!(stdout(&m).contains(">b0</text>"));
}
