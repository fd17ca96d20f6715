use std::process::{Command, Output};

fn urodlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_urodlab"))
        .args(args)
        .output()
        .expect("spawn urodlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cc_prints_exact_central_charge() {
    let o = urodlab(&["cc", "--sys", "A1", "--grading", "principal", "--t", "5/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["c"], "-22/5");
}

#[test]
fn verify_urod_exit_codes() {
    let ok = urodlab(&[
        "verify", "urod", "--sys", "A1", "--nu", "0", "--order", "30",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("\"equal\": true"));
    let bad = urodlab(&[
        "verify",
        "urod",
        "--sys",
        "A1",
        "--nu",
        "0",
        "--order",
        "30",
        "--perturb",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("\"equal\": false"));
}

#[test]
fn usage_and_domain_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["cc", "--sys", "A1"],
        &["cc", "--sys", "A1", "--t", "seven"],
        &["verify", "verma", "--t", "3/2", "--order", "20"],
        &["fusion", "transport", "--t", "1/3"],
        &["brst", "dims", "--cutoff", "9"],
    ] {
        let o = urodlab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("urodlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fusion.json");
    let o = urodlab(&[
        "fusion",
        "table",
        "--sys",
        "A2",
        "--ell",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["brst", "cohomology", "--k", "-1/2", "--cutoff", "3"];
    let one = Command::new(env!("CARGO_BIN_EXE_urodlab"))
        .args(args)
        .env("URODLAB_THREADS", "1")
        .output()
        .unwrap();
    let many = urodlab(&args);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn tsv_format() {
    let o = urodlab(&["fusion", "table", "--ell", "2", "--format", "tsv"]);
    let text = stdout(&o);
    assert!(text.starts_with("a\tb\tc\tN\n"));
    assert!(text.contains("[1]\t[1]\t[2]\t1\n"));
    let o = urodlab(&["verify", "cc-identity", "--sys", "A2", "--format", "tsv"]);
    assert!(stdout(&o).contains("equal\ttrue\n"));
}
