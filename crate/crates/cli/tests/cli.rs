//! End-to-end tests of the `cube` binary: flag validation and exit codes,
//! reference values on stdout, exact CSV column contracts, JSON document
//! shape, and byte-stability of seeded output.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cube"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn csv_rows(stdout: &str) -> Vec<Vec<String>> {
    stdout
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn eval_identity_point() {
    let (code, stdout, _) = run(&["eval", "--m", "1", "--stretches", "1,1,1"]);
    assert_eq!(code, 0);
    let rows = csv_rows(&stdout);
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    // t1, t2, t3 vanish at the identity
    for field in &row[3..6] {
        assert_eq!(field.parse::<f64>().unwrap(), 0.0);
    }
    // det DT = 12M
    let det: f64 = row[7].parse().unwrap();
    assert!((det - 12.0).abs() <= 1e-11, "det = {det}");
    assert_eq!(row[11], "strongly_monotone");
    assert_eq!(row[12], "1");
}

#[test]
fn eval_derives_ratio_from_moduli() {
    let (code, stdout, _) = run(&["eval", "--mu", "2", "--lambda", "2", "--stretches", "1,1,1"]);
    assert_eq!(code, 0);
    // M = (2 + 4/3)/2 = 5/3 reported in the metadata
    let meta_m = stdout
        .lines()
        .find(|l| l.starts_with("# m = "))
        .expect("m metadata line");
    let m: f64 = meta_m.trim_start_matches("# m = ").parse().unwrap();
    assert!((m - 5.0 / 3.0).abs() <= 1e-14);
}

#[test]
fn eval_rejects_inadmissible_ratio_with_exit_2() {
    let (code, _, stderr) = run(&["eval", "--m", "0.5", "--stretches", "1,1,1"]);
    assert_eq!(code, 2);
    assert!(
        stderr.contains("2/3"),
        "stderr must name the constraint: {stderr}"
    );
}

#[test]
fn eval_rejects_malformed_stretches() {
    let (code, _, _) = run(&["eval", "--m", "1", "--stretches", "1,1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["eval", "--m", "1", "--stretches", "1,abc,1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["eval", "--m", "1", "--stretches", "1,-1,1"]);
    assert_eq!(code, 2);
}

#[test]
fn material_flags_are_exclusive() {
    let (code, _, _) = run(&["eval", "--stretches", "1,1,1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["eval", "--m", "1", "--mu", "2", "--stretches", "1,1,1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["eval", "--mu", "2", "--stretches", "1,1,1"]);
    assert_eq!(code, 2);
}

#[test]
fn bifurcate_reference_values_json() {
    let (code, stdout, _) = run(&["bifurcate", "--m", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["meta"]["command"], "bifurcate");
    assert_eq!(doc["meta"]["m"], 1.0);
    let rec = &doc["data"][0];
    assert!((rec["alpha_flat"].as_f64().unwrap() - 3.09675).abs() <= 1e-3);
    assert!((rec["lambda_star"].as_f64().unwrap() - 1.70310).abs() <= 1e-4);
    assert!((rec["alpha_star"].as_f64().unwrap() - 3.406).abs() <= 1e-3);
    assert!(rec["sextic_residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn bifurcate_onset_below_bifurcation_for_stiffer_material() {
    let (code, stdout, _) = run(&["bifurcate", "--m", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rec = &doc["data"][0];
    assert!(rec["alpha_flat"].as_f64().unwrap() < rec["alpha_star"].as_f64().unwrap());
}

#[test]
fn trace_csv_contract() {
    let (code, stdout, _) = run(&[
        "trace",
        "--m",
        "1",
        "--alpha-min",
        "0",
        "--alpha-max",
        "5",
        "--step",
        "0.1",
    ]);
    assert_eq!(code, 0);
    let header = stdout
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("header row");
    assert_eq!(
        header,
        "alpha,branch,l1,l2,l3,residual,monotonicity,stable,total_energy"
    );
    let rows = csv_rows(&stdout);
    let radial: Vec<_> = rows.iter().filter(|r| r[1] == "radial").collect();
    assert_eq!(radial.len(), 51);
    for r in &rows {
        let alpha: f64 = r[0].parse().unwrap();
        let residual: f64 = r[5].parse().unwrap();
        assert!(residual <= 1e-9, "residual {residual} at alpha {alpha}");
        if r[1].starts_with("nonradial") {
            assert!(alpha >= 3.1 - 1e-9, "nonradial row below onset at {alpha}");
        }
    }
    // both non-radial branches appear above the onset
    assert!(rows.iter().any(|r| r[1] == "nonradial_a"));
    assert!(rows.iter().any(|r| r[1] == "nonradial_b"));
}

#[test]
fn trace_compression_has_only_radial_rows() {
    let (code, stdout, _) = run(&[
        "trace",
        "--m",
        "1",
        "--alpha-min",
        "-2",
        "--alpha-max",
        "0",
        "--step",
        "0.5",
    ]);
    assert_eq!(code, 0);
    let rows = csv_rows(&stdout);
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[1] == "radial"));
}

#[test]
fn trace_output_is_byte_stable() {
    let args = [
        "trace",
        "--m",
        "1",
        "--alpha-min",
        "2.5",
        "--alpha-max",
        "4",
        "--step",
        "0.25",
    ];
    let (c1, first, _) = run(&args);
    let (c2, second, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(first, second);
}

#[test]
fn regions_slice_boundary_near_loss_stretch() {
    let (code, stdout, _) = run(&[
        "regions",
        "--m",
        "1",
        "--slice",
        "two-equal",
        "--box",
        "0.5,3",
        "--res",
        "100",
    ]);
    assert_eq!(code, 0);
    let rows = csv_rows(&stdout);
    assert_eq!(rows.len(), 100 * 100);
    // walk the diagonal (l3 == l1): the monotone region must end within one
    // grid cell of the invertibility-loss stretch
    let lstar = 1.7031065365713212;
    let cell = (3.0 - 0.5) / 99.0;
    let mut flip = None;
    for r in rows.iter().filter(|r| r[0] == r[2]) {
        if r[7] == "not_monotone" {
            flip = Some(r[0].parse::<f64>().unwrap());
            break;
        }
    }
    let flip = flip.expect("diagonal must lose monotonicity");
    assert!((flip - lstar).abs() <= cell + 1e-12, "flip at {flip}");
}

#[test]
fn regions_box3_stability_contained_in_monotonicity() {
    let (code, stdout, _) = run(&["regions", "--m", "1", "--box3", "0.5,2", "--res", "20"]);
    assert_eq!(code, 0);
    let rows = csv_rows(&stdout);
    assert_eq!(rows.len(), 20 * 20 * 20);
    for r in &rows {
        if r[8] == "1" {
            assert_ne!(r[7], "not_monotone", "stable point must be monotone: {r:?}");
        }
    }
}

#[test]
fn regions_rejects_malformed_requests() {
    let (code, _, _) = run(&["regions", "--m", "1", "--slice", "two-equal", "--box", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["regions", "--m", "1", "--box3", "2,0.5", "--res", "10"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&[
        "regions", "--m", "1", "--slice", "diagonal", "--box", "0.5,3",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["regions", "--m", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_passes_and_prints_report() {
    let (code, stdout, _) = run(&["verify", "--m", "1", "--seed", "42", "--quick"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("PASS"));
    assert!(!stdout.contains("FAIL "));
    assert!(stdout.contains("0 failed"));
}

#[test]
fn verify_quick_is_deterministic() {
    let args = [
        "verify", "--m", "1", "--seed", "7", "--quick", "--format", "json",
    ];
    let (c1, first, _) = run(&args);
    let (c2, second, _) = run(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn verify_rejects_inadmissible_material() {
    let (code, _, stderr) = run(&["verify", "--m", "0.6"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("2/3"));
}

#[test]
fn json_documents_have_meta_and_data() {
    for args in [
        vec![
            "eval",
            "--m",
            "1",
            "--stretches",
            "1.2,0.9,1.1",
            "--format",
            "json",
        ],
        vec!["bifurcate", "--m", "1.5", "--format", "json"],
        vec![
            "trace",
            "--m",
            "1",
            "--alpha-min",
            "3",
            "--alpha-max",
            "3.5",
            "--step",
            "0.25",
            "--format",
            "json",
        ],
        vec![
            "regions",
            "--m",
            "1",
            "--slice",
            "two-equal",
            "--box",
            "0.8,2",
            "--res",
            "5",
            "--format",
            "json",
        ],
        vec!["verify", "--m", "1", "--quick", "--format", "json"],
    ] {
        let (code, stdout, stderr) = run(&args);
        assert_eq!(code, 0, "{args:?}: {stderr}");
        let doc: serde_json::Value =
            serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        let meta = doc["meta"].as_object().expect("meta object");
        assert!(meta.contains_key("command"));
        assert!(meta.contains_key("version"));
        assert!(meta.contains_key("m"));
        assert!(doc["data"].is_array());
        assert!(!doc["data"].as_array().unwrap().is_empty());
    }
}

#[test]
fn json_records_match_shipped_schema_requirements() {
    let schema_path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../schema/output.schema.json"
    );
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let definitions = schema["definitions"].as_object().unwrap();

    let cases = [
        (
            "evalRecord",
            vec![
                "eval",
                "--m",
                "1",
                "--stretches",
                "1.1,0.9,1.2",
                "--format",
                "json",
            ],
        ),
        (
            "bifurcateRecord",
            vec!["bifurcate", "--m", "1", "--format", "json"],
        ),
        (
            "traceRecord",
            vec![
                "trace",
                "--m",
                "1",
                "--alpha-min",
                "3",
                "--alpha-max",
                "3.4",
                "--step",
                "0.2",
                "--format",
                "json",
            ],
        ),
        (
            "regionRecord",
            vec![
                "regions",
                "--m",
                "1",
                "--slice",
                "two-equal",
                "--box",
                "0.9,1.5",
                "--res",
                "4",
                "--format",
                "json",
            ],
        ),
        (
            "verifyRecord",
            vec!["verify", "--m", "1", "--quick", "--format", "json"],
        ),
    ];
    for (def_name, args) in cases {
        let (code, stdout, _) = run(&args);
        assert_eq!(code, 0, "{args:?}");
        let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        let required: Vec<&str> = definitions[def_name]["required"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap())
            .collect();
        let properties = definitions[def_name]["properties"].as_object().unwrap();
        for record in doc["data"].as_array().unwrap() {
            for key in &required {
                let value = record
                    .get(*key)
                    .unwrap_or_else(|| panic!("{def_name}: missing required key {key}"));
                let declared = &properties[*key];
                let type_ok = match declared.get("type").and_then(|t| t.as_str()) {
                    Some("number") => value.is_number(),
                    Some("boolean") => value.is_boolean(),
                    Some("string") => value.is_string(),
                    Some("integer") => value.is_i64() || value.is_u64(),
                    _ => value.is_string(), // enum-valued fields serialize as strings
                };
                assert!(type_ok, "{def_name}.{key} has wrong type: {value}");
            }
        }
    }
}

#[test]
fn eval_reports_physical_stresses_when_moduli_given() {
    let (code, stdout, _) = run(&[
        "eval",
        "--mu",
        "2",
        "--lambda",
        "2",
        "--stretches",
        "1.3,1.3,1.3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rec = &doc["data"][0];
    let t1 = rec["t1"].as_f64().unwrap();
    let t1_phys = rec["t1_physical"].as_f64().unwrap();
    assert!((t1_phys - 2.0 * t1).abs() <= 1e-12 * t1.abs().max(1.0));
}

#[test]
fn out_flag_writes_the_same_document() {
    let dir = std::env::temp_dir().join("cube-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bifurcate.json");
    let args_file = [
        "bifurcate",
        "--m",
        "1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ];
    let (code, _, _) = run(&args_file);
    assert_eq!(code, 0);
    let from_file = std::fs::read_to_string(&path).unwrap();
    let (_, from_stdout, _) = run(&["bifurcate", "--m", "1", "--format", "json"]);
    assert_eq!(from_file, from_stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn csv_uses_lf_line_endings_and_comment_metadata() {
    let (code, stdout, _) = run(&["bifurcate", "--m", "1"]);
    assert_eq!(code, 0);
    assert!(!stdout.contains('\r'));
    assert!(stdout.starts_with("# m = 1\n"));
    assert!(stdout.ends_with('\n'));
}
