use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn chipfire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chipfire")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = chipfire(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    chipfire(args).status.code().unwrap()
}

#[test]
fn group_of_diamond_and_house() {
    assert_eq!(
        stdout(&["group", &fixture("diamond.txt")]),
        "group: Z/8\nsnf: 1 1 8 0\nspanning trees: 8\ngenus: 2\n"
    );
    assert!(stdout(&["group", &fixture("house.txt")]).starts_with("group: Z/11\n"));
    let reduced = stdout(&["group", &fixture("diamond.txt"), "--reduced-at", "v1"]);
    assert!(reduced.starts_with("group: Z/8\nsnf: 1 1 8\n"));
}

#[test]
fn directed_group() {
    let out = stdout(&["group", "--directed", &fixture("directed_diamond.txt")]);
    assert_eq!(out, "group: trivial\nfree rank: 1\nsnf: 1 1 1 0\n");
    assert_eq!(code(&["group", &fixture("directed_diamond.txt")]), 2);
}

#[test]
fn divisor_subcommands() {
    let d = fixture("diamond.txt");
    let reduced = stdout(&["divisor", &d, "reduce", "v1:-1 v2:1", "--q", "v1"]);
    assert_eq!(reduced, "v1:-1 v2:1 v3:0 v4:0\n");
    assert_eq!(stdout(&["divisor", &d, "order", "v1:1", "v2:-1"]), "8\n");
    let pairing = stdout(&["divisor", &d, "pairing", "v1:1 v2:-1", "v1:1 v2:-1"]);
    assert!(pairing.trim_end().ends_with("/8"), "{pairing}");
    let gon = stdout(&["divisor", &fixture("doubled_triangle.txt"), "gonality"]);
    assert_eq!(gon, "gonality: 3\nwitness: v1:1 v2:1 v3:1\n");
}

#[test]
fn arith_subcommands() {
    let d = fixture("diamond.txt");
    let listing = stdout(&["arith", &d, "enumerate", "--rmax", "20"]);
    assert!(listing.starts_with("63 structures\nr_max: 20\n"));
    assert_eq!(listing.lines().count(), 63 + 3);
    assert_eq!(stdout(&["arith", &d, "validate", "r=3,2,4,9"]), "r=(3,2,4,9) d=(5,6,3,1)\n");
    let path = stdout(&["arith", &fixture("path5.txt"), "enumerate", "--rmax", "64"]);
    assert!(path.starts_with("14 structures\n"));
    let smoothed = stdout(&["arith", &fixture("path5.txt"), "smooth", "r=1,2,1,1,1", "--at", "v2"]);
    assert!(smoothed.starts_with("r=(1,1,1,1) d=(1,2,2,1)\n"), "{smoothed}");
}

#[test]
fn exit_codes() {
    let d = fixture("diamond.txt");
    assert_eq!(code(&["arith", &d, "validate", "r=2,1,1,1"]), 4);
    assert_eq!(code(&["arith", &d, "validate", "r=x"]), 2);
    assert_eq!(code(&["divisor", &d, "order", "v1:1"]), 4);
    assert_eq!(code(&["divisor", &d, "pairing", "v1:1 v2:-1", "v1:2"]), 4);
    assert_eq!(code(&["divisor", &d, "order", "v9:1"]), 2);
    assert_eq!(code(&["group", &fixture("disconnected.txt")]), 3);
    assert_eq!(code(&["group", &fixture("missing.txt")]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["group", &d, "--bogus"]), 2);
    assert_eq!(code(&["random", "--n", "5", "--q", "3/2", "--samples", "3"]), 2);
}

#[test]
fn tree_count() {
    assert_eq!(stdout(&["tree-count", &fixture("house.txt")]), "11\n");
    assert_eq!(stdout(&["tree-count", &fixture("disconnected.txt")]), "0\n");
}

#[test]
fn random_report_is_deterministic_and_thread_independent() {
    let args = ["random", "--n", "14", "--q", "1/2", "--samples", "60", "--seed", "3"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let mut serial = vec!["--jobs", "1"];
    serial.extend(args);
    assert_eq!(a, stdout(&serial));
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["samples"], 60);
    assert!(doc["statistics"]["trivial_sylow"]["frequency"].is_string());
}

#[test]
fn single_sample_report() {
    let out = stdout(&["random", "--n", "6", "--q", "1/2", "--samples", "1", "--seed", "1"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let total = doc["connected"].as_u64().unwrap() + doc["disconnected"].as_u64().unwrap();
    assert_eq!(total, 1);
}
