//! End-to-end runs of the compiled binary: JSON shape, exit codes,
//! determinism, golden exports, and table formats.

use std::process::Command;

use prefix_spectra::reversal::{generator_sum, reversal_matrix};
use prefix_spectra::{PrefixReversal, Variant};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_prefix-spectra"))
        .args(args)
        .env_remove("PREFIX_SPECTRA_CAP")
        .output()
        .expect("binary launches");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

fn run_with_cap_env(args: &[&str], cap: &str) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_prefix-spectra"))
        .args(args)
        .env("PREFIX_SPECTRA_CAP", cap)
        .output()
        .expect("binary launches");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

fn parse(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("stdout is valid JSON")
}

fn strip_runtime(text: &str) -> String {
    text.lines()
        .filter(|line| !line.contains("runtime_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn spectrum_report_certifies_the_claimed_integers() {
    let (code, stdout, _) = run(&[
        "spectrum", "--m", "3", "--n", "3", "--variant", "undirected", "--scope", "quotient",
    ]);
    assert_eq!(code, 0);
    let report = parse(&stdout);
    assert_eq!(report["claimed"], serde_json::json!([0, 4, 6]));
    assert_eq!(report["params"]["m"], 3);
    assert_eq!(report["params"]["variant"], "undirected");
    assert_eq!(report["params"]["scope"], "quotient");
    let certs = report["certificates"].as_array().expect("certificate list");
    assert_eq!(certs.len(), 3);
    for cert in certs {
        assert_eq!(cert["verified"], true);
        assert_eq!(cert["kind"], "exact-kernel");
        assert!(cert.get("vector").is_none(), "vectors only under the flag");
    }
    assert_eq!(report["multiplicities"]["4"], 1);
    assert_eq!(report["multiplicities"]["6"], 1);
    let spectrum = report["spectrum"].as_array().expect("symmetric case");
    assert!((spectrum[0].as_f64().unwrap() - 6.0).abs() < 1e-8);
    assert!(report["gap"].as_f64().is_some());
    assert!(report["cheeger"].as_array().is_some());
}

#[test]
fn spectrum_covers_the_divisible_color_count_and_the_directed_case() {
    let (code, stdout, _) = run(&["spectrum", "--m", "4", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&stdout)["claimed"], serde_json::json!([0, 2, 4]));

    let (code, stdout, _) = run(&["spectrum", "--m", "3", "--n", "2", "--variant", "directed"]);
    assert_eq!(code, 0);
    let report = parse(&stdout);
    assert_eq!(report["claimed"], serde_json::json!([0, 2]));
    assert!(report["spectrum"].is_null(), "no float spectrum for an asymmetric matrix");
    assert!(report["gap"].is_null());
}

#[test]
fn kernel_vectors_appear_as_decimal_strings_under_the_flag() {
    let (code, stdout, _) = run(&["spectrum", "--m", "3", "--n", "2", "--with-vectors"]);
    assert_eq!(code, 0);
    let report = parse(&stdout);
    for cert in report["certificates"].as_array().unwrap() {
        let vector = cert["vector"].as_array().expect("vector included");
        assert_eq!(vector.len(), 6);
        for entry in vector {
            let text = entry.as_str().expect("decimal string");
            assert!(text.parse::<i64>().is_ok(), "entry '{text}' is an integer");
        }
    }
}

#[test]
fn multi_point_runs_emit_an_array_and_are_deterministic_across_threads() {
    let args = ["spectrum", "--m", "3..4", "--n", "2..3", "--seed", "7"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let reports = parse(&first);
    assert_eq!(reports.as_array().expect("array of reports").len(), 4);

    let mut with_threads: Vec<&str> = args.to_vec();
    with_threads.extend(["--threads", "5"]);
    let (code, second, _) = run(&with_threads);
    assert_eq!(code, 0);
    assert_eq!(
        strip_runtime(&first),
        strip_runtime(&second),
        "output depends on thread count"
    );
}

#[test]
fn full_scope_reports_certify_against_the_graph() {
    let (code, stdout, _) = run(&["spectrum", "--m", "3", "--n", "2", "--scope", "full", "--with-vectors"]);
    assert_eq!(code, 0);
    let report = parse(&stdout);
    assert_eq!(report["params"]["scope"], "full");
    for cert in report["certificates"].as_array().unwrap() {
        assert_eq!(cert["verified"], true);
        assert_eq!(cert["vector"].as_array().unwrap().len(), 18, "lifted to graph length");
    }
}

#[test]
fn verify_suites_pass_on_their_core_grids() {
    for args in [
        vec!["verify", "--theorem", "structure", "--m", "3..5", "--n", "1..4"],
        vec!["verify", "--theorem", "circulant-singularity", "--m", "3..32"],
        vec!["verify", "--theorem", "silvester"],
        vec!["verify", "--theorem", "equitable", "--m", "3", "--n", "2..3"],
        vec!["verify", "--theorem", "undirected-spectrum", "--m", "3..4", "--n", "2..4"],
        vec!["verify", "--theorem", "directed-spectrum", "--m", "3..4", "--n", "2..4"],
        vec!["verify", "--theorem", "dalfo-fiol", "--n", "2..5"],
        vec![
            "verify", "--theorem", "eigenvector-families", "--m", "3", "--n", "2..4",
            "--variant", "directed",
        ],
    ] {
        let (code, stdout, stderr) = run(&args);
        assert_eq!(code, 0, "{args:?} failed:\n{stdout}{stderr}");
        assert!(stdout.contains(", 0 fail"), "{args:?} summary:\n{stdout}");
    }
}

#[test]
fn family_audit_reports_the_odd_band_discrepancy_and_exits_one() {
    let (code, stdout, _) = run(&["verify", "--theorem", "eigenvector-families", "--m", "3", "--n", "3"]);
    assert_eq!(code, 1, "the printed undirected odd-band eigenvalue is off by two");
    assert!(stdout.contains("odd-band i=1 lambda=2: FAIL"));
    assert!(stdout.contains("all-ones lambda=6: pass"));
    assert!(stdout.contains("recorded ("));
}

#[test]
fn usage_errors_exit_with_code_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["spectrum", "--m", "6..3", "--n", "2"],
        vec!["spectrum", "--m", "3"],
        vec!["verify", "--theorem", "no-such-theorem"],
        vec!["verify", "--theorem", "dalfo-fiol", "--m", "5"],
        vec!["conjecture", "--table", "cheeger", "--variant", "directed"],
        vec!["export", "--object", "reversal", "--m", "3", "--n", "2"],
        vec!["spectrum", "--m", "3", "--n", "2", "--scope", "full", "--cap", "5"],
    ];
    for args in cases {
        let (code, _, stderr) = run(&args);
        assert_eq!(code, 2, "{args:?} should be a usage error:\n{stderr}");
    }
}

#[test]
fn the_cap_environment_variable_applies_and_the_flag_wins() {
    let args = ["spectrum", "--m", "3", "--n", "2", "--scope", "full"];
    let (code, _, stderr) = run_with_cap_env(&args, "5");
    assert_eq!(code, 2);
    assert!(stderr.contains("exceeds vertex cap 5"), "stderr: {stderr}");

    let (code, _, stderr) = run_with_cap_env(&args, "banana");
    assert_eq!(code, 2);
    assert!(stderr.contains("PREFIX_SPECTRA_CAP"), "stderr: {stderr}");

    let mut with_flag: Vec<&str> = args.to_vec();
    with_flag.extend(["--cap", "100"]);
    let (code, _, _) = run_with_cap_env(&with_flag, "5");
    assert_eq!(code, 0, "an explicit --cap overrides the environment");
}

#[test]
fn exported_matrices_match_the_library_byte_for_byte() {
    let (code, stdout, _) = run(&["export", "--object", "sum", "--m", "4", "--n", "3"]);
    assert_eq!(code, 0);
    let expected = generator_sum(4, 3, Variant::Undirected).unwrap().to_csv();
    assert_eq!(stdout, expected);

    let (code, stdout, _) = run(&[
        "export", "--object", "reversal", "--m", "3", "--n", "2", "--index", "2", "--sign", "+",
    ]);
    assert_eq!(code, 0);
    let expected = reversal_matrix(PrefixReversal::flip(2), 3, 2).unwrap().to_csv();
    assert_eq!(stdout, expected);

    let (code, stdout, _) = run(&[
        "export", "--object", "reversal", "--m", "3", "--n", "2", "--index", "2", "--sign", "flop",
    ]);
    assert_eq!(code, 0);
    let expected = reversal_matrix(PrefixReversal::flop(2), 3, 2).unwrap().to_csv();
    assert_eq!(stdout, expected);
}

#[test]
fn the_two_color_edge_list_has_thirty_six_records() {
    let (code, stdout, _) = run(&["export", "--object", "edges", "--m", "3", "--n", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "src,dst,generator");
    assert_eq!(lines.len() - 1, 36, "18 vertices of degree 4, each edge once");
}

#[test]
fn dot_export_declares_the_right_graph_kind() {
    let (code, stdout, _) = run(&["export", "--object", "dot", "--m", "3", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("graph "));
    assert!(stdout.contains(" -- "));

    let (code, stdout, _) = run(&[
        "export", "--object", "dot", "--m", "3", "--n", "2", "--variant", "directed",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("digraph "));
    assert!(stdout.contains(" -> "));
}

#[test]
fn conjecture_tables_carry_their_documented_headers() {
    let (code, stdout, _) = run(&["conjecture", "--table", "gap", "--m", "3", "--n", "2..4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "m,n,variant,quantity,value");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("3,2,undirected,gap,"));

    let (code, stdout, _) = run(&["conjecture", "--table", "multiplicity", "--m", "4", "--n", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "m,n,variant,lambda,multiplicity");
    assert!(lines.contains(&"4,3,undirected,0,3"));
    assert!(lines.contains(&"4,3,undirected,6,1"));

    let (code, stdout, _) = run(&[
        "conjecture", "--table", "cheeger", "--m", "3", "--n", "2", "--exact-cheeger",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "m,n,d,lambda2,lower,upper,exact");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[0], "3");
    assert_eq!(fields[2], "4");
    assert_eq!(fields[6], "10/9", "exhaustive expansion ratio of the 18-vertex graph");
}

#[test]
fn the_output_flag_writes_the_file_instead_of_stdout() {
    let path = std::env::temp_dir().join(format!("prefix-spectra-out-{}.json", std::process::id()));
    let path_text = path.to_str().unwrap().to_owned();
    let (code, stdout, _) = run(&["spectrum", "--m", "3", "--n", "2", "--output", &path_text]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).expect("file written");
    assert_eq!(parse(&written)["claimed"], serde_json::json!([0, 4]));
    std::fs::remove_file(&path).ok();
}
