use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasibell")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn domain_errors_exit_with_two() {
    assert_eq!(code(&["entropy", "--kappa", "1", "--index", "1"]), 2);
    assert_eq!(code(&["entropy", "--kappa", "-0.1", "--index", "1"]), 2);
    assert_eq!(code(&["photon", "--alpha", "0", "--index", "2"]), 2);
    assert_eq!(code(&["charfunc", "--alpha", "0", "--index", "4"]), 2);
    assert_eq!(code(&["entropy", "--kappa", "0.5", "--index", "5"]), 2);
}

#[test]
fn truncation_exits_with_three() {
    let out = run(&["photon", "--alpha", "3", "--index", "1", "--nmax", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncation"));
}

#[test]
fn unwritable_output_exits_with_one() {
    assert_eq!(code(&["photon", "--alpha", "1", "--index", "1", "--out", "/nonexistent/dir/x.csv"]), 1);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("quasibell-cli-{}.csv", std::process::id()));
    let args = ["gram", "--kappa", "0.3"];
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    assert!(stdout(&with_out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, stdout(&args));
}

#[test]
fn json_fields_match_csv_header() {
    for args in [
        vec!["entropy", "--kappa", "0.4", "--index", "2"],
        vec!["photon", "--alpha", "0.7", "--index", "3"],
        vec!["synth", "--alpha", "0.5", "--m-cut", "4"],
        vec!["generate", "--kappa", "0.2"],
    ] {
        let csv = stdout(&args);
        let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
        let mut json_args = args.clone();
        json_args.extend(["--format", "json"]);
        let value: serde_json::Value = serde_json::from_str(&stdout(&json_args)).unwrap();
        let keys: Vec<&str> = value[0].as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, header, "{args:?}");
    }
}

#[test]
fn charfunc_is_one_at_the_origin() {
    let csv = stdout(&["charfunc", "--alpha", "1", "--index", "3", "--points", "3"]);
    let origin = csv.lines().find(|l| l.starts_with("0,0,0,0,")).expect("origin row");
    let cols: Vec<f64> = origin.split(',').map(|x| x.parse().unwrap()).collect();
    assert!((cols[4] - 1.0).abs() < 1e-12 && cols[5].abs() < 1e-12);
}

#[test]
fn index_two_is_maximally_entangled_in_fock_space() {
    let csv = stdout(&["entropy", "--alpha", "1.0", "--index", "2", "--fock"]);
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[4], "fock");
    assert!((row[5].parse::<f64>().unwrap() - 1.0).abs() < 1e-10);
}

#[test]
fn sweeps_emit_one_row_per_point_in_order() {
    let csv = stdout(&["entropy", "--kappa", "0:0.9:10", "--index", "1", "--jobs", "3"]);
    let kappas: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(kappas.len(), 10);
    assert!(kappas.windows(2).all(|w| w[0] < w[1]));
}
