use std::path::Path;
use std::process::{Command, Output};

fn permsort(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permsort"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .env_remove("PERMSORT_CACHE_DIR")
        .output()
        .expect("spawn permsort")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let o = permsort(cache, args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn sort_and_degree() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(ok(d, &["sort", "--op", "revstack", "4 2 5 1 3"]), "1 3 2 4 5\n");
    assert_eq!(ok(d, &["sort", "--op", "stack", "42513"]), "2 4 1 3 5\n");
    assert_eq!(ok(d, &["sort", "--op", "revstack", "--times", "3", "42513"]), "1 2 3 4 5\n");
    assert_eq!(ok(d, &["degree", "1 2 3"]), "0\n");
    assert_eq!(ok(d, &["degree", "--sorter", "stack", "1 3 2"]), "1\n");
    let json: serde_json::Value = serde_json::from_str(&ok(d, &["--format", "json", "degree", "42513"])).unwrap();
    assert_eq!(json["degree"], 3);
}

#[test]
fn printed_permutations_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for op in ["stack", "revstack", "reverse", "f", "g"] {
        let out = ok(d, &["sort", "--op", op, "3 6 1 5 7 2 4"]);
        let again = ok(d, &["degree", out.trim()]);
        assert!(again.trim().parse::<usize>().is_ok(), "{op}: {out}");
    }
    let h = ok(d, &["sort", "--op", "h", "8 7 9 4 6 1 10 2 3 5 11"]);
    assert_eq!(h, "7 8 9 4 6 1 10 5 3 2 11\n");
}

#[test]
fn patterns_zigzags_roots_counts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(ok(d, &["pattern", "--pattern", "1 3 2", "2 3 1"]), "avoids 1 3 2\n");
    let occ: serde_json::Value =
        serde_json::from_str(&ok(d, &["--format", "json", "pattern", "--pattern", "2 4 1 5! 3", "3 5 2 4 1 6"]))
            .unwrap();
    assert_eq!(occ["contains"], true);
    assert_eq!(ok(d, &["zigzag", "--k", "3", "15327846"]), "8 6 5 4 3 (uninterrupted)\n");
    assert_eq!(ok(d, &["zigzag", "--k", "3", "42513"]), "none\n");
    assert_eq!(
        ok(d, &["roots", "--coeffs", "0,1,3,1"]),
        "-2.61803\n-0.38197\n0.00000\nall real: true, nonpositive: true\n"
    );
    assert_eq!(ok(d, &["count", "--kind", "revstack-nm2", "--n", "5"]), "116\n");
    assert_eq!(ok(d, &["count", "--kind", "revstack-nm3", "--n", "5"]), "91\n");
    assert_eq!(ok(d, &["count", "--kind", "stack-nm2", "--n", "6"]), "696\n");
    assert_eq!(ok(d, &["poly", "--kind", "narayana", "--n", "4"]), "x^4 + 6x^3 + 6x^2 + x\n");
    assert_eq!(
        ok(d, &["poly", "--kind", "table", "--n", "5", "--t", "3"]),
        "x^5 + 25x^4 + 64x^3 + 25x^2 + x\n"
    );
}

#[test]
fn steingrimsson_suite_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["verify", "--suite", "steingrimsson", "--n", "6"]);
    let rows: Vec<&str> = out.lines().skip(1).filter(|l| l.starts_with(char::is_numeric)).collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let cols: Vec<&str> = row.split('\t').collect();
        assert!(cols[1].parse::<u64>().unwrap() <= cols[2].parse::<u64>().unwrap(), "{row}");
    }
    assert!(out.ends_with("holds\n"));
}

#[test]
fn appendix_flags_corrupted_entry() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(ok(d, &["appendix", "--max-n", "6"]).ends_with("all match\n"));

    let mut golden: serde_json::Value = serde_json::from_str(permsort::enumerate::EMBEDDED_APPENDIX).unwrap();
    let entry = golden
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["n"] == 6 && e["t"] == 3)
        .unwrap();
    entry["coeffs"][2] = serde_json::json!(entry["coeffs"][2].as_u64().unwrap() + 1);
    let path = d.join("golden.json");
    std::fs::write(&path, golden.to_string()).unwrap();
    let path = path.to_str().unwrap();

    let o = permsort(d, &["appendix", "--max-n", "6", "--golden", path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mismatch n=6 t=3 coeff[2]"), "{}", stdout(&o));

    let o = permsort(d, &["--format", "json", "appendix", "--max-n", "6", "--golden", path]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let m = &report["mismatches"][0];
    assert_eq!((m["n"].as_u64(), m["t"].as_u64()), (Some(6), Some(3)));
    assert_eq!(report["holds"], false);
}

#[test]
fn warm_and_cold_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for format in ["plain", "json", "csv"] {
        let cold = ok(d, &["--format", format, "table", "--n", "7"]);
        assert!(d.join("descent-table-revstack-7.json").exists());
        let warm = ok(d, &["--format", format, "table", "--n", "7"]);
        assert_eq!(cold, warm, "{format}");
        std::fs::remove_file(d.join("descent-table-revstack-7.json")).unwrap();
    }
    let serial = ok(d, &["--jobs", "1", "table", "--n", "7", "--sorter", "stack"]);
    std::fs::remove_file(d.join("descent-table-stack-7.json")).unwrap();
    assert_eq!(serial, ok(d, &["--jobs", "3", "table", "--n", "7", "--sorter", "stack"]));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_permsort"))
        .args(["table", "--n", "4"])
        .env("PERMSORT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("descent-table-revstack-4.json").exists());
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        &["frobnicate"][..],
        &["degree", "--bogus", "1 2"],
        &["degree", "1 1 2"],
        &["--format", "csv", "degree", "1 2"],
        &["table", "--n", "13"],
        &["roots", "--width", "0", "--coeffs", "1,1"],
        &["sort", "--op", "h", "3 2 1"],
    ] {
        let o = permsort(d, args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(permsort(d, &["--help"]).status.code(), Some(0));
}
