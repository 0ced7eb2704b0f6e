use std::process::{Command, Output};

fn hcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcf")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    hcf(args).status.code().expect("exit code")
}

const TM: &str = r#"{"type":"thue-morse","outputs":[[3,0],[0,4]]}"#;

#[test]
fn golden_ratio_expansion() {
    let out = hcf(&["expand", "--surd", "1,1,5,2", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("[2, -3, 3, -3, 3"), "{text}");
    let v: serde_json::Value = serde_json::from_slice(&hcf(&["expand", "--surd", "1,1,5,2"]).stdout).unwrap();
    assert_eq!(v["digits"][0], serde_json::json!([2, 0]));
    assert_eq!(v["digits"][1], serde_json::json!([-3, 0]));
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["validate", "--digits", "[[0,0],[1,2],[-2,2],[1,1]]"], 1),
        (&["validate", "--digits", "[[0,0],[-2,2],[1,1]]"], 0),
        (&["eval-periodic", "--preperiod", "[[2,0]]", "--period", "[[-3,0],[3,0]]"], 0),
        (&["eval-periodic", "--period", "[[2,1],[-2,1],[3,0]]"], 1),
        (&["eval-periodic", "--period", "[[2,1],[-2,1],[3,0]]", "--formal"], 0),
        (&["cycle", "--surd", "1,1,5,2"], 0),
        (&["cycle", "--surd", "1,0,5,2"], 1),
        (&["pure-periodic", "--surd", "1,1,5,2"], 0),
        (&["good-approx", "--surd", "1,1,5,2", "--p", "[5,0]", "--q", "[3,0]"], 0),
        (&["good-approx", "--surd", "1,1,5,2", "--p", "[4,0]", "--q", "[3,0]"], 1),
        (&["bad-cert", "--surd", "1,1,5,2"], 0),
        (&["rep", "--word", TM, "--n", "4"], 0),
        (&["wuv", "--word", TM, "--horizon", "64"], 0),
        (&["club", "--word", TM, "--horizon", "64"], 0),
        (&["log-bound", "--word", TM, "--horizon", "64"], 0),
        (&["counterexample", "--family", "a", "--m", "[2,-2]"], 0),
        (&["counterexample", "--family", "c", "--m", "[3,0]"], 0),
        (&["counterexample", "--family", "c", "--m", "[2,1]"], 1),
        (&["partition-dump", "--cap", "8"], 0),
        (&["partition-dump", "--format", "json"], 2),
        (&["verify-all", "--only", "1"], 0),
        (&["verify-all", "--only", "2"], 1),
        (&["expand", "--surd", "not-a-surd"], 2),
        (&["expand"], 2),
        (&["--precision", "8", "expand", "--surd", "1,1,5,2"], 2),
        (&["no-such-command"], 2),
    ];
    for (args, want) in cases {
        let out = hcf(args);
        assert_eq!(out.status.code(), Some(*want), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if *want != 0 {
            assert!(!out.stderr.is_empty(), "{args:?} should explain itself on stderr");
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["expand", "--surd", "3,2,-7,5", "--digits", "30"][..],
        &["rep", "--word", TM, "--horizon", "128", "--hypotheses"],
        &["partition-dump", "--cap", "20"],
        &["verify-all", "--only", "8", "--seed", "7"],
    ] {
        let a = hcf(args);
        let b = hcf(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(args), a.status.code().unwrap());
    }
}

#[test]
fn partition_dump_header() {
    let out = String::from_utf8(hcf(&["partition-dump", "--cap", "8", "--samples", "4"]).stdout).unwrap();
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("digit_re,digit_im,arc_index,point_re,point_im"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 5);
        let (x, y): (f64, f64) = (cols[3].parse().unwrap(), cols[4].parse().unwrap());
        assert!(x.abs() <= 0.5 + 1e-9 && y.abs() <= 0.5 + 1e-9 && x.hypot(y) > 0.0);
    }
}

#[test]
fn inline_values_from_files() {
    let dir = std::env::temp_dir().join(format!("hcf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("digits.json");
    std::fs::write(&path, "[[0,0],[-2,2],[1,1]]").unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(code(&["validate", "--digits", &arg]), 0);
    std::fs::remove_dir_all(&dir).unwrap();
}
