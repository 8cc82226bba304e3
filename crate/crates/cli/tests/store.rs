use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::tempdir;

fn run(args: &[&str]) -> sjoin::Outcome {
    sjoin::run(args.iter().copied())
}

#[test]
fn se_search_round_trip_and_tamper() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("se.jsonl");
    let p = path.to_str().unwrap();
    let out = run(&["search-se", "--d", "1", "--index", "2", "--height", "58", "--out", p]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let summary: Value = serde_json::from_str(&out.stdout).unwrap();
    let n = summary["records"].as_u64().unwrap() as usize;
    assert!(n >= 1000, "only {n} records");

    let direct = run(&["search-se", "--d", "1", "--index", "2", "--height", "58"]);
    let loaded = run(&["search-se", "--load", p]);
    assert_eq!(loaded.code, 0, "{}", loaded.stderr);
    assert_eq!(loaded.stdout, direct.stdout);
    assert!(loaded.stderr.is_empty());

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let i = rng.gen_range(1..lines.len());
    let mut rec: Value = serde_json::from_str(&lines[i]).unwrap();
    let w0 = rec["w"][0].as_u64().unwrap();
    rec["w"][0] = Value::from(w0 + 2);
    lines[i] = rec.to_string();
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let bad = run(&["search-se", "--load", p]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains(&format!("line {}", i + 1)), "{}", bad.stderr);
}

#[test]
fn header_mismatch_warns() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("ypq.jsonl");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["catalog", "--family", "ypq", "--max-p", "5", "--out", p]).code, 0);
    let same = run(&["catalog", "--family", "ypq", "--max-p", "5", "--load", p]);
    assert_eq!(same.code, 0);
    assert!(same.stderr.is_empty());
    let other = run(&["catalog", "--family", "ypq", "--max-p", "6", "--load", p]);
    assert_eq!(other.code, 0);
    assert!(other.stderr.contains("warning: header parameter max_p is 5, requested 6"), "{}", other.stderr);
    assert_eq!(other.stdout, same.stdout);
    let wrong_kind = run(&["search-se", "--load", p]);
    assert_eq!(wrong_kind.code, 2);
    assert!(wrong_kind.stderr.contains("catalog kind catalog is not se_search"));
}

#[test]
fn catalog_tamper_is_rejected() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("pq.jsonl");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["catalog", "--family", "brieskorn-pq", "--max-pq", "3", "--max-w", "3", "--out", p]).code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("\"h4_torsion_order\":32", "\"h4_torsion_order\":33", 1);
    assert_ne!(tampered, text);
    std::fs::write(&path, tampered).unwrap();
    let bad = run(&["catalog", "--family", "brieskorn-pq", "--load", p]);
    assert_eq!(bad.code, 2, "{}", bad.stderr);
    assert!(bad.stderr.contains("line 2"), "{}", bad.stderr);
}

#[test]
fn empty_listing_keeps_header_row() {
    let out = run(&["search-se", "--d", "1", "--index", "2", "--height", "2", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("k,w,v,l,smooth,fano_index,order\n"));
}
