use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn vw(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_vw"));
    c.args(args).env_remove("VW_CACHE_DIR");
    if let Some(dir) = cache {
        c.env("VW_CACHE_DIR", dir);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(o: &Output) -> Vec<Value> {
    serde_json::from_str::<Value>(&stdout(o)).unwrap().as_array().unwrap().clone()
}

fn row<'a>(rows: &'a [Value], parity: &str, i: u64, j: u64) -> &'a Value {
    rows.iter()
        .find(|r| r["parity"] == parity && r["i"] == i && r["j"] == j)
        .unwrap()
}

#[test]
fn homology_table_of_t_odd() {
    let o = vw(&["homology", "--complex", "T", "--parity", "odd", "--i-max", "4", "--ring", "Z"], None);
    assert!(o.status.success());
    let r = rows(&o);
    let e = row(&r, "odd", 4, 5);
    assert_eq!(e["free_rank"], 0);
    assert_eq!(e["torsion"], serde_json::json!([2]));
    assert_eq!(e["zhat_nonzero"], true);
    let keys: Vec<&str> = e.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["complex", "parity", "i", "j", "ring", "free_rank", "torsion", "zhat_nonzero"]);
}

#[test]
fn t0_upper_diagonal_vanishes_from_i_two() {
    let o = vw(&["homology", "--complex", "T0", "--parity", "both", "--i-max", "5", "--jobs", "2"], None);
    assert!(o.status.success());
    let r = rows(&o);
    for p in ["odd", "even"] {
        for i in 2..=5 {
            let e = row(&r, p, i, i + 1);
            assert_eq!((e["free_rank"].as_u64(), e["torsion"].as_array().unwrap().len()), (Some(0), 0), "{p} {i}");
        }
    }
}

#[test]
fn z_complex_at_one_two() {
    let r = rows(&vw(&["homology", "--complex", "Z", "--parity", "even", "--i-max", "1"], None));
    assert_eq!(row(&r, "even", 1, 2)["free_rank"], 1);
}

#[test]
fn output_is_byte_identical_across_runs_jobs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["homology", "--complex", "T,Ts", "--parity", "both", "--i-max", "3", "--format", "csv"];
    let plain = vw(&args, None);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "4"]);
    let cold = vw(&parallel, Some(dir.path()));
    let warm = vw(&parallel, Some(dir.path()));
    assert!(plain.status.success() && cold.status.success() && warm.status.success());
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    assert!(fs::read_dir(dir.path()).unwrap().count() > 0);
}

#[test]
fn full_audit_agrees_with_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["homology", "--complex", "T", "--parity", "even", "--i-max", "3", "--cache-dir", d];
    let first = vw(&args, None);
    let mut audited = args.to_vec();
    audited.extend(["--audit", "1.0"]);
    let second = vw(&audited, None);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn audit_catches_a_corrupted_entry() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["homology", "--complex", "T", "--parity", "even", "--i", "2", "--j", "3", "--cache-dir", d];
    assert!(vw(&args, None).status.success());
    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.contains("\"torsion\":[\"2\"]"), "{text}");
    fs::write(&file, text.replace("\"torsion\":[\"2\"]", "\"torsion\":[\"3\"]")).unwrap();
    let trusted = vw(&args, None);
    assert!(stdout(&trusted).contains("\"torsion\": [\n      3\n    ]"));
    let mut audited = args.to_vec();
    audited.extend(["--audit", "1.0"]);
    assert_eq!(vw(&audited, None).status.code(), Some(3));
}

#[test]
fn resource_limit_exits_two_and_names_the_slice() {
    let o = vw(&["--max-slice", "3", "homology", "--complex", "Tss", "--i", "3"], None);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("Tss") && err.contains("i=3"), "{err}");
}

#[test]
fn out_file_and_matrix_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let dumps = dir.path().join("m");
    let o = vw(
        &[
            "homology", "--complex", "T", "--i", "2", "--format", "csv",
            "--out", out.to_str().unwrap(), "--dump-matrices", dumps.to_str().unwrap(),
        ],
        None,
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let csv = fs::read_to_string(out).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5);
    let m = fs::read_to_string(dumps.join("T_odd_i2_j4.txt")).unwrap();
    assert!(m.starts_with("# complex T parity odd\n# source i=2 j=4"));
}

#[test]
fn basis_listings() {
    let one = stdout(&vw(&["basis", "--complex", "T", "--parity", "odd", "--i", "1", "--j", "2"], None));
    assert_eq!(one.lines().filter(|l| !l.starts_with('#')).count(), 1);
    let z3 = stdout(&vw(&["basis", "--complex", "Z", "--parity", "even", "--i", "3", "--j", "4"], None));
    assert_eq!(z3.lines().skip(1).collect::<Vec<_>>(), ["1;chords=;bottom=;top=3"]);
    // T at (2,3): two chords on three points, admissible forests only
    let t = stdout(&vw(&["basis", "--complex", "T", "--i", "2", "--j", "3"], None));
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let brute = (0u32..8)
        .filter(|m| m.count_ones() == 2)
        .filter(|m| {
            let heads: Vec<usize> = (0..3).filter(|k| m >> k & 1 == 1).map(|k| pairs[k].1).collect();
            heads[0] != heads[1]
        })
        .count();
    assert_eq!(t.lines().skip(1).count(), brute);
}

#[test]
fn verify_suites_report_and_exit() {
    let o = vw(&["verify", "d-squared", "--i-max", "2", "--parity", "both"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l == "d-squared: pass"), "{text}");
    let o = vw(&["verify", "chord-split", "--order-max", "4"], None);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(vw(&["verify", "nope"], None).status.code(), Some(1));
}
