use std::process::Command;

use serde_json::Value;
use virasoro_fusion::algebra::q;
use virasoro_fusion::verma::{singular_vector, HighestWeightParams};
use virasoro_fusion_cli::cache::{read_entries, write_entries, CacheEntry, CacheKey, SCHEMA_VERSION};
use virasoro_fusion_cli::run;

fn run_in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("virfusion").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = run_in_process(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_virfusion"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn fusion_json() {
    let v = json(&["fusion", "--q", "2", "--w1", "1,2", "--w2", "1,2", "--w3", "1,1"]);
    assert_eq!(v["N"], 1);
    assert_eq!(v["witness"], serde_json::json!([1, 1]));
    assert_eq!(v["schema_version"], 1);
    let v = json(&["fusion", "--q", "2", "--w1", "1,2", "--w2", "1,2", "--w3", "2,1"]);
    assert_eq!(v["N"], 0);
    assert!(v["witness"].is_null());
}

#[test]
fn minimal_and_verma_routes() {
    let v = json(&["fusion", "--p", "4", "--q", "3", "--w1", "2,2", "--w2", "2,2", "--w3", "3,1"]);
    assert_eq!(v["N"], 1);
    let v = json(&["fusion", "--q", "2", "--w1", "1,2", "--verma-h2", "-3/32", "--verma-h3", "5/32"]);
    assert_eq!(v["N"], 1);
    assert_eq!(v["t_range"], "{-s+1, -s+3, ..., s-1}");
    let v = json(&["fusion", "--q", "2", "--w1", "1,2", "--w2", "1,2", "--verma-h3", "-3/32"]);
    assert_eq!(v["N"], 0);
    let (code, _, err) =
        run_in_process(&["fusion", "--q", "2", "--w1", "1,2", "--verma-h2", "0", "--verma-h3", "5/32"]);
    assert_eq!(code, 1);
    assert!(err.contains("not an irreducible Verma"), "{err}");
}

#[test]
fn weights_table() {
    let v = json(&["weights", "--p", "4", "--q", "3"]);
    assert_eq!(v["c"], "1/2");
    let entries = v["weights"].as_array().unwrap();
    assert!(entries.contains(&serde_json::json!({"r": 2, "s": 2, "h": "1/16"})));
    let v = json(&["weights", "--p", "1", "--q", "2", "--imax", "2"]);
    assert_eq!(v["c"], "-2");
    assert_eq!(v["weights"].as_array().unwrap().len(), 4);
    let (code, out, _) = run_in_process(&["weights", "--p", "4", "--q", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("r,s,h\n1,1,0\n"));
    assert!(out.contains("2,2,1/16\n"));
}

#[test]
fn text_output_is_exact() {
    let (code, out, _) = run_in_process(&["singular", "--c", "-2", "--h", "-1/8", "--level", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("-1/2"));
    assert!(!out.contains("0.5"));
    let (_, out, _) = run_in_process(&["singular", "--c", "1/3", "--h", "2/7", "--level", "2"]);
    assert!(out.contains("no singular vector"));
}

#[test]
fn zhu_image_and_threept() {
    let v = json(&["zhu-image", "--label", "c1q:2,1,2"]);
    assert_eq!(v["images"][0]["grade"], 2);
    assert_eq!(v["label"]["kind"], "C1qIrreducible");
    let v = json(&["zhu-image", "--label", "min:4,3,2,2"]);
    assert_eq!(v["images"].as_array().unwrap().len(), 2);
    let v = json(&["threept", "--q", "2", "--w1", "1,2", "--w2", "1,2", "--w3", "2,1", "--slot", "1"]);
    assert_eq!(v["insertions"][0]["coeff"], "1");
    assert_eq!(v["insertions"][0]["shift"], 2);
    let v = json(&[
        "threept", "--q", "2", "--w1", "1,2", "--w2", "1,2", "--w3", "1,1", "--slot", "1", "--partition", "1",
    ]);
    assert_eq!(v["insertions"][0]["coeff"], "1/4");
}

#[test]
fn limit_rows() {
    let v = json(&["limit", "--q", "2", "--w1", "1,2", "--w2", "1,2", "--w3", "1,1", "--kmin", "3", "--kmax", "6"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["c_k"], "-3/5");
    assert_eq!(rows[0]["h1k"], "-1/20");
    let (code, _, err) = run_in_process(&[
        "limit", "--q", "2", "--w1", "3,1", "--w2", "1,1", "--w3", "1,1", "--kmin", "3", "--kmax", "4",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("Kac box"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(run_in_process(&["--help"]).0, 0);
    assert_eq!(run_in_process(&["--version"]).0, 0);
    let (code, _, err) = run_in_process(&["fusion", "--q", "2", "--w1", "1;2", "--w2", "1,2", "--w3", "1,1"]);
    assert_eq!(code, 1);
    assert!(err.contains("--w1"), "{err}");
    assert_eq!(run_in_process(&["fusion", "--q", "2", "--w1", "1,3", "--w2", "1,2", "--w3", "1,1"]).0, 1);
    assert_eq!(run_in_process(&["singular", "--c", "0.5", "--h", "0", "--level", "1"]).0, 1);
    assert_eq!(run_in_process(&["nonsense"]).0, 1);
    // the seed flag is accepted and changes nothing
    let a = run_in_process(&["fusion", "--q", "3", "--w1", "1,2", "--w2", "2,2", "--w3", "2,1", "--seed", "7"]);
    let b = run_in_process(&["fusion", "--q", "3", "--w1", "1,2", "--w2", "2,2", "--w3", "2,1"]);
    assert_eq!(a, b);
}

#[test]
fn verify_reports_disagreements_with_exit_two() {
    let (code, out, _) = run_in_process(&["verify", "--qmax", "2", "--imax", "2", "--sweep-qmax", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cross_validation"]["triples_checked"], 72);
    assert_eq!(v["equivalence_sweep"]["failures"].as_array().unwrap().len(), 0);
    let n = v["cross_validation"]["disagreements"].as_array().unwrap().len();
    assert_eq!(code, if n == 0 { 0 } else { 2 });
    let (code, _, _) = run_in_process(&["verify", "--qmax", "1", "--imax", "2", "--sweep-qmax", "1"]);
    assert_eq!(code, 0);
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let params = HighestWeightParams::new(q(-2, 1), q(-1, 8));
    let entry = CacheEntry {
        key: CacheKey { c: q(-2, 1), h: q(-1, 8), grade: 2 },
        value: singular_vector(&params, 2).unwrap().unwrap(),
        schema_version: SCHEMA_VERSION,
    };
    write_entries(&path, std::slice::from_ref(&entry)).unwrap();
    assert_eq!(read_entries(&path).unwrap(), vec![entry]);
    assert_eq!(read_entries(&dir.path().join("missing.json")).unwrap(), vec![]);
}

#[test]
fn cache_hits_skip_the_solver() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let p = path.to_str().unwrap();
    // h_{2,2} = 3/8 at c = -2 has a genuine grade-4 singular vector
    let args = ["singular", "--c", "-2", "--h", "3/8", "--level", "4", "--format", "json"];
    let cached: Vec<&str> = args.iter().copied().chain(["--cache", p, "--verbose"]).collect();
    let first = binary(&cached);
    assert!(String::from_utf8_lossy(&first.stderr).contains("memo: 1 solves, 0 hits"));
    let second = binary(&cached);
    assert!(String::from_utf8_lossy(&second.stderr).contains("memo: 0 solves, 1 hits"));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(binary(&args).stdout, first.stdout);
}

#[test]
fn corrupted_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = binary(&["singular", "--c", "-2", "--h", "-1/8", "--level", "2", "--cache", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a valid cache file"));
    assert_eq!(read_entries(&path).unwrap().len(), 1);
}
