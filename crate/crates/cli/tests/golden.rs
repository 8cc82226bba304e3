//! Byte-exact CLI output. Set UPDATE_GOLDENS=1 to rewrite the files.

use std::fs;
use std::path::PathBuf;

const CASES: &[(&str, &str)] = &[
    ("se_d1_w21_5", "se --d 1 --w 21,5"),
    ("se_d1_w21_5_indexed", "se --d 1 --index 2 --w 21,5"),
    ("info_s5_l1_13_w21_5", "info --seed-file {data}/s5.json --l 1,13 --w 21,5 --v 7,5"),
    ("csc_d1_l1_13_w21_5", "csc --d 1 --A 2 --l 1,13 --w 21,5"),
    ("csc_s3_l1_20_w2_1_table", "csc --sphere 3 --l 1,20 --w 2,1 --precision 1/1000000 --format table"),
    ("extremal_d1_l1_13_w21_5", "extremal --d 1 --index 2 --l 1,13 --w 21,5 --v 7,5"),
    ("topology_s5_l1_13_w21_5", "topology --seed-file {data}/s5.json --l 1,13 --w 21,5"),
    ("search_se_d1_h4_csv", "search-se --d 1 --index 2 --height 4 --format csv"),
    ("catalog_ypq_4", "catalog --family ypq --max-p 4 --precision 1/1000"),
];

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

#[test]
fn goldens() {
    let data = dir("data");
    let update = std::env::var_os("UPDATE_GOLDENS").is_some();
    let mut failed = Vec::new();
    for (name, args) in CASES {
        let args = args.replace("{data}", &data.display().to_string());
        let out = sjoin::run(args.split_whitespace());
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        let path = dir("golden").join(format!("{name}.txt"));
        if update {
            fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != out.stdout {
            failed.push(format!("{name}:\n--- expected\n{expected}--- actual\n{}", out.stdout));
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}

#[test]
fn frozen_values() {
    let out = sjoin::run(["se", "--d", "1", "--w", "21,5"]);
    assert!(out.stdout.contains(r#""k":"3","b":"5/7","v":[7,5],"quasi_regular":true"#));
    let s5 = dir("data").join("s5.json");
    let out = sjoin::run(["info", "--seed-file", s5.to_str().unwrap(), "--l", "1,13", "--w", "21,5", "--v", "7,5"]);
    assert!(out.stdout.contains(r#""smooth":true"#));
    assert!(out.stdout.contains(r#""order":455"#));
    let out = sjoin::run(["csc", "--d", "1", "--A", "2", "--l", "1,13", "--w", "21,5"]);
    assert!(out.stdout.contains(r#""b":"5/7""#));
}

#[test]
fn exit_codes() {
    assert_eq!(sjoin::run(["--help"]).code, 0);
    assert!(sjoin::run(["--version"]).stdout.starts_with("sjoin "));
    assert_eq!(sjoin::run(["frobnicate"]).code, 1);
    assert_eq!(sjoin::run(["se", "--d", "1", "--w", "21"]).code, 1);
    let bad = sjoin::run(["se", "--d", "1", "--w", "3,3"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.starts_with("error: "));
    assert_eq!(sjoin::run(["se", "--d", "1", "--w", "2,2"]).code, 2);
    assert_eq!(sjoin::run(["info", "--d", "1", "--l", "2,4", "--w", "3,1"]).code, 2);
    assert_eq!(sjoin::run(["se", "--w", "3,1"]).code, 2);
    assert_eq!(sjoin::run(["se", "--d", "1", "--w", "3,1", "--precision", "0"]).code, 2);
    assert_eq!(sjoin::run(["se", "--sphere", "4", "--w", "3,1"]).code, 2);
}

#[test]
fn w_order_is_normalized() {
    let a = sjoin::run(["se", "--d", "1", "--w", "21,5"]);
    let b = sjoin::run(["se", "--d", "1", "--w", "5,21"]);
    assert_eq!(a, b);
    let info = sjoin::run(["info", "--d", "1", "--index", "2", "--l", "1,13", "--w", "5,21", "--v", "5,7"]);
    assert!(info.stdout.contains(r#""perp_applied":true"#));
    assert!(info.stdout.contains(r#""v":[7,5]"#));
}
