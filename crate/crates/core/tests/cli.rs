use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coprime-tree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["encode", "7", "12"]).status.code(), Some(0));
    assert_eq!(bin(&["encode", "4", "6"]).status.code(), Some(1));
    assert_eq!(bin(&["encode", "four", "6"]).status.code(), Some(2));
    assert_eq!(bin(&["decode", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["scan", "--len", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        bin(&["verify", "--reflection", "10"]).status.code(),
        Some(0)
    );
    // Length 5 has violations; see NOTES.md. The exit code follows the report either way.
    let o = bin(&["scan", "--len", "5", "--format", "json"]);
    let violations = stdout(&o).contains("\"violations\": []");
    assert_eq!(o.status.code(), Some(if violations { 0 } else { 1 }));
}

#[test]
fn decode_trace_layout() {
    let o = bin(&["decode", "--trace", "1010000"]);
    assert_eq!(
        stdout(&o),
        "5 27\n[1,2] ↦ [2,3] ↦ [2,5] ↦ [5,7] ↦ [5,12] ↦ [5,17] ↦ [5,22] ↦ [5,27]\n"
    );
    assert_eq!(stdout(&bin(&["decode", ""])), "1 2\n");
    assert_eq!(stdout(&bin(&["decode", "--trace", ""])), "1 2\n[1,2]\n");
}

#[test]
fn scan_writes_files_and_exports_csv() {
    let dir = std::env::temp_dir().join(format!("coprime-tree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.json");
    let o = bin(&[
        "scan",
        "--len",
        "6",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        stdout(&bin(&["scan", "--len", "6", "--format", "json"]))
    );
    assert!(written.starts_with("{\n  \"kind\": \"conjecture\",\n  \"range\": {\n    \"len\": 6,"));

    let csv = stdout(&bin(&[
        "scan", "--len", "4", "--weight", "2", "--format", "csv",
    ]));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.contains(&"1010,4,2,1,1,5,12,17"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn enumerate_is_deterministic() {
    let a = bin(&["enumerate", "--depth", "8", "--format", "json"]);
    let b = bin(&["enumerate", "--depth", "8", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), (1 << 9) - 1 + 2);
    assert!(text.contains("{\"code\":\"1011\",\"length\":4,\"weight\":3,\"var\":\"5/2\",\"a\":\"7\",\"b\":\"12\",\"sum\":\"19\"}"));
}

#[test]
fn verify_json_renders_big_integers_as_strings() {
    let text = stdout(&bin(&["verify", "--reflection", "20", "--format", "json"]));
    // F(24) = 46368
    assert!(text.contains("\"norm\": \"46368\""));
    assert!(text.contains("\"checked_count\": 2097150"));
}
