//! End-to-end tests of the binary: exit codes, JSON/CSV layout, output
//! determinism, and the help text.

use std::process::{Command, Output};

fn gatelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gatelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn pst_cycle_emits_parseable_json_with_expected_phase() {
    let out = gatelab(&["pst-cycle", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.ends_with('\n'));
    let json: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    assert_eq!(json["scenario"], "pst-cycle");
    let re = json["outputs"]["e_i_beta_re"].as_f64().unwrap();
    assert!((re + 1.0).abs() < 1e-9);
    let checks = json["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"].as_bool().unwrap()));
}

#[test]
fn boson_ring_seven_five_reports_zero_intensity() {
    let out = gatelab(&["boson-ring", "--nu", "7", "--nl", "5"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let intensity = json["outputs"]["intensity_factor"].as_f64().unwrap();
    assert!(intensity.abs() < 1e-9);
}

#[test]
fn surface_csv_has_header_and_row_major_grid() {
    let out = gatelab(&[
        "surface", "--theta0", "1", "--n", "1", "--grid", "3x3", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10, "header plus 9 data rows");
    assert_eq!(
        lines[0],
        "xi,gamma,beta_numeric,beta_paper,re_exp_i_beta_numeric,re_exp_i_beta_paper"
    );
    // gamma scans fastest.
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    let second: Vec<f64> = lines[2].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[0], second[0]);
    assert!(second[1] > first[1]);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = gatelab(&[
        "qubit-gate",
        "--wdelta",
        "1.0471975511965976",
        "--theta0",
        "0.5",
    ]);
    let b = gatelab(&[
        "qubit-gate",
        "--wdelta",
        "1.0471975511965976",
        "--theta0",
        "0.5",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_input_exits_two_with_one_line_diagnostic() {
    for args in [
        &["pst-cycle", "--n", "1"][..],
        &["pst-cycle", "--n", "4", "--unknown"][..],
        &["qubit-gate", "--wdelta", "0", "--theta0", "0.5"][..],
        &["boson-ring", "--nu", "7"][..],
        &["dark-state", "--thetac", "9.9"][..],
        &["pst-cycle", "--n", "4", "--format", "csv"][..],
    ] {
        let out = gatelab(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
        let stderr = String::from_utf8(out.stderr.clone()).unwrap();
        assert_eq!(
            stderr.trim_end().lines().count(),
            1,
            "args: {args:?}, stderr: {stderr}"
        );
    }
}

#[test]
fn help_exits_zero_and_names_the_parameters() {
    let top = gatelab(&["--help"]);
    assert!(top.status.success());
    let mut all_help = stdout_str(&top);
    for sub in [
        "pst-cycle",
        "pst-transfer",
        "qubit-gate",
        "surface",
        "dark-state",
        "boson-ring",
        "selftest",
    ] {
        assert!(all_help.contains(sub), "top help lists {sub}");
        let out = gatelab(&[sub, "--help"]);
        assert!(out.status.success(), "{sub} --help exits 0");
        all_help.push_str(&stdout_str(&out));
    }
    for symbol in ["N", "ϖδ", "θ0", "ξ", "γ", "N_U", "N_L", "θ_c"] {
        assert!(all_help.contains(symbol), "help names {symbol}");
    }
}

#[test]
fn output_flag_writes_the_file_and_nothing_else() {
    let dir = std::env::temp_dir().join(format!("gatelab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ring.json");
    let out = gatelab(&[
        "boson-ring",
        "--nu",
        "5",
        "--nl",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!((json["outputs"]["intensity_factor"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes_and_is_seed_deterministic() {
    let a = gatelab(&["selftest", "--seed", "7"]);
    assert!(a.status.success(), "selftest failed: {}", stdout_str(&a));
    let json: serde_json::Value = serde_json::from_str(&stdout_str(&a)).unwrap();
    assert_eq!(json["scenario"], "selftest");
    assert_eq!(json["outputs"]["failed"].as_i64().unwrap(), 0);
    assert!(json["outputs"]["all_criteria_pass"].as_bool().unwrap());

    let b = gatelab(&["selftest", "--seed", "7"]);
    assert_eq!(
        a.stdout, b.stdout,
        "same seed must give identical summaries"
    );
}

#[test]
fn unwritable_output_path_exits_one() {
    let out = gatelab(&[
        "boson-ring",
        "--nu",
        "5",
        "--nl",
        "5",
        "--output",
        "/nonexistent-dir/definitely/not/here.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
