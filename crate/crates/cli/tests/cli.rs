use std::process::Command;

use mubforge::qfourier::{fourier_matrix, QdftSpec};
use mubforge::weyl::{pauli_u, PauliIndex};
use mubforge::PhaseMatrix;
use mubforge_cli::{run, tolerance, DEFAULT_TOL};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["mubforge"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn fourier_json_round_trips() {
    let (code, out, _) = call(&["gen-fourier", "--d", "3", "--a", "0", "--format", "json"]);
    assert_eq!(code, 0);
    let m: PhaseMatrix = serde_json::from_str(&out).unwrap();
    assert_eq!(m, fourier_matrix(&QdftSpec::new(3, 0).unwrap()));
    // ω = q^2 over order 6: rows (1, ω², ω), (1, ω, ω²), (1, 1, 1)
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(v["scale_inv_sqrt_d"], true);
    assert_eq!(v["entries"], serde_json::json!([[0, 4, 2], [0, 2, 4], [0, 0, 0]]));
}

#[test]
fn fourier_pretty_has_order_header() {
    let (code, out, _) = call(&["gen-fourier", "--d", "3", "--a", "1"]);
    assert_eq!(code, 0);
    let want = "# q = exp(2 pi i / 6), scale 1/sqrt(3)\n\
                [ q^2    1  q^4 ]\n\
                [ q^2  q^4    1 ]\n\
                [   1    1    1 ]\n";
    assert_eq!(out, want);
}

#[test]
fn fourier_csv_uses_fifteen_digits() {
    let (code, out, _) = call(&["gen-fourier", "--d", "2", "--a", "0", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "row,col,re,im");
    assert_eq!(lines.len(), 5);
    let re = lines[1].split(',').nth(2).unwrap();
    let mantissa: String = re.split('e').next().unwrap().chars().filter(char::is_ascii_digit).collect();
    assert_eq!(mantissa.len(), 15);
    assert!((re.parse::<f64>().unwrap() - 0.5f64.sqrt()).abs() < 1e-14);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("mubforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["gen-fourier", "--d", "5", "--a", "2", "--format", "json", "--out", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let m: PhaseMatrix = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m, fourier_matrix(&QdftSpec::new(5, 2).unwrap()));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_mub_prime_seven() {
    let (code, out, _) = call(&["verify-mub", "--d", "7", "--pairs", "all"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 28);
    assert!(rows.iter().all(|r| r.ends_with("unbiased")));
}

#[test]
fn verify_mub_composite_fails() {
    let (code, out, err) = call(&["verify-mub", "--d", "6"]);
    assert_eq!(code, 1);
    assert!(out.contains("neither"));
    assert!(err.contains("not unbiased"));
}

#[test]
fn verify_mub_four_level_set() {
    let (code, out, _) = call(&["verify-mub", "--d", "4", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn gen_mub_json_exact_columns_round_trip() {
    let (code, out, _) = call(&["gen-mub", "--d", "5", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let bases = v.as_array().unwrap();
    assert_eq!(bases.len(), 6);
    let m: PhaseMatrix = serde_json::from_value(bases[2]["exact"].clone()).unwrap();
    assert_eq!(m, fourier_matrix(&QdftSpec::new(5, 2).unwrap()));
}

#[test]
fn gen_mub_rejects_non_prime() {
    let (code, _, err) = call(&["gen-mub", "--d", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains("d=6"));
}

#[test]
fn gauss_sum_all_methods() {
    let (code, out, _) = call(&["gauss-sum", "--u", "2", "--v", "0", "--w", "3", "--all-methods"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), ["brute", "closed", "reciprocity"]);
    for r in rows {
        let (re, im): (f64, f64) = (r[1].parse().unwrap(), r[2].parse().unwrap());
        assert!(re.abs() < 1e-9 && (im - 3f64.sqrt()).abs() < 1e-9);
    }
}

#[test]
fn gauss_sum_single_method_and_bad_params() {
    let (code, out, _) = call(&["gauss-sum", "--u", "1", "--v", "-3", "--w", "-5", "--method", "closed"]);
    assert_eq!(code, 0);
    assert_eq!(out.split_whitespace().count(), 2);
    let (code, _, err) = call(&["gauss-sum", "--u", "2", "--v", "0", "--w", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("coprime"));
    let (code, _, _) = call(&["gauss-sum", "--u", "1", "--v", "0", "--w", "3", "--method", "fourier"]);
    assert_eq!(code, 2);
}

#[test]
fn pauli_matrix_and_action() {
    for (d, a, b) in [(3usize, 1i64, 1i64), (4, 2, 3), (6, 5, 1)] {
        let (ds, as_, bs) = (d.to_string(), a.to_string(), b.to_string());
        let base = ["pauli", "--d", &ds, "--a", &as_, "--b", &bs];
        let (code, out, _) = call(&[&base[..], &["--matrix", "--format", "json"]].concat());
        assert_eq!(code, 0);
        let m: PhaseMatrix = serde_json::from_str(&out).unwrap();
        assert_eq!(m, pauli_u(d, PauliIndex::new(d, a, b)).unwrap());

        let (code, out, _) = call(&[&base[..], &["--action"]].concat());
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), d);
        for (k, line) in lines.iter().enumerate() {
            // u|k> = q^e |t>
            let (lhs, rhs) = line.split_once(" = q^").unwrap();
            assert_eq!(lhs, format!("u|{k}>"));
            let (e, t) = rhs.split_once(" |").unwrap();
            let t: usize = t.trim_end_matches('>').parse().unwrap();
            let e: u64 = e.parse().unwrap();
            assert_eq!(m.exponent(t, k), Some(e % m.order()), "d={d} k={k}");
        }
    }
    let (code, out, _) = call(&["pauli", "--d", "3", "--a", "1", "--b", "1", "--matrix"]);
    assert_eq!(code, 0);
    assert_eq!(out, "# q = exp(2 pi i / 3)\n[   0  q^1    0 ]\n[   0    0  q^2 ]\n[   1    0    0 ]\n");
}

#[test]
fn cartan_json_schema() {
    let (code, out, _) = call(&["cartan", "--p", "5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["p"], 5);
    let sets = v["sets"].as_array().unwrap();
    assert_eq!(sets.len(), 6);
    assert!(sets.iter().all(|s| s.as_array().unwrap().len() == 4));
    assert_eq!(sets[2], serde_json::json!([[1, 1], [2, 2], [3, 3], [4, 4]]));
    let (code, _, _) = call(&["cartan", "--p", "6"]);
    assert_eq!(code, 2);
}

#[test]
fn pauli_group_outputs() {
    let (code, out, _) = call(&["pauli-group", "--d", "3", "--classes"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["d"], 3);
    assert_eq!(v["classes"].as_array().unwrap().len(), 11);
    assert_eq!(v["irrep_dims"].as_array().unwrap().len(), 11);
    let (code, out, _) = call(&["pauli-group", "--d", "2", "--diagnostics"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ambivalent"], true);
    assert_eq!(v["doubled_order"], 16);
    let (code, _, _) = call(&["pauli-group", "--d", "9"]);
    assert_eq!(code, 2);
}

#[test]
fn check_all_small_and_fault() {
    let (code, out, _) = call(&["check-all", "--scale", "small"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().last().unwrap().ends_with("properties passed"));
    let (code, out, _) = call(&["check-all", "--scale", "small", "--inject-fault"]);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL]"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["check-all", "--scale", "small"][..],
        &["gen-mub", "--d", "5", "--csv"],
        &["gen-mub", "--d", "4", "--json"],
        &["verify-mub", "--d", "11", "--json"],
        &["pauli-group", "--d", "4"],
    ] {
        assert_eq!(call(args), call(args), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--bogus"][..],
        &[],
        &["gen-fourier"],
        &["gen-fourier", "--d", "1"],
        &["gen-fourier", "--d", "3", "--format", "xml"],
        &["check-all", "--scale", "huge"],
        &["pauli", "--d", "3", "--a", "1", "--b", "0", "--matrix", "--action"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-all"));
}

#[test]
fn tolerance_from_environment_value() {
    assert_eq!(tolerance(None), Ok(DEFAULT_TOL));
    assert_eq!(tolerance(Some("1e-6")), Ok(1e-6));
    assert!(tolerance(Some("zero")).is_err());
    assert!(tolerance(Some("-1")).is_err());
}

#[test]
fn binary_honours_tolerance_variable() {
    let bin = env!("CARGO_BIN_EXE_mubforge");
    let ok = Command::new(bin).args(["verify-mub", "--d", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    // at a negative tolerance nothing can pass the check, so the value is rejected up front
    let bad = Command::new(bin)
        .args(["verify-mub", "--d", "3"])
        .env("MUBFORGE_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    // a tolerance below float noise makes unbiasedness unverifiable
    let tight = Command::new(bin)
        .args(["verify-mub", "--d", "7"])
        .env("MUBFORGE_TOL", "1e-300")
        .output()
        .unwrap();
    assert_eq!(tight.status.code(), Some(1));
}

struct ClosedPipe;

impl std::io::Write for ClosedPipe {
    fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
        Err(std::io::ErrorKind::BrokenPipe.into())
    }

    fn flush(&mut self) -> std::io::Result<()> {
        Ok(())
    }
}

#[test]
fn closed_stdout_is_quiet() {
    let mut err = Vec::new();
    let code = run(["mubforge", "verify-mub", "--d", "7"], &mut ClosedPipe, &mut err);
    assert_eq!(code, 0);
    assert!(err.is_empty());
}
