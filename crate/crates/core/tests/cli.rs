//! The `wanglab` binary: golden outputs, exit codes and written files.
//! Set `WANGLAB_UPDATE_GOLDEN=1` to rewrite the golden files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use wanglab::TilePattern;

fn wanglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wanglab")).args(args).env_remove("WANGLAB_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("WANGLAB_UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, expected, "{name} differs from golden");
}

#[test]
fn orbits_even_json() {
    let o = wanglab(&["orbits", "--even", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    golden("orbits_even.json", &stdout(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tilesets"], 255);
    assert_eq!(v["orbits"], 36);
}

#[test]
fn orbits_all_reports_both_counts() {
    let o = wanglab(&["orbits", "--all", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tilesets"], 65535);
    assert_eq!(v["orbits"], 2889);
    assert_eq!(v["orbits_including_empty"], 2890);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 2889);
}

#[test]
fn table_markdown() {
    let o = wanglab(&["table"]);
    assert_eq!(o.status.code(), Some(0));
    golden("table.md", &stdout(&o));
}

#[test]
fn table_json_columns() {
    let v: Value = serde_json::from_slice(&wanglab(&["table", "--json"]).stdout).unwrap();
    let len = |a: &str, b: &str| v[a][b].as_array().unwrap().len();
    assert_eq!([len("minimal", "L0"), len("minimal", "NotL0_L1Open"), len("minimal", "NotL1")], [13, 8, 7]);
    assert_eq!([len("non_minimal", "Empty"), len("non_minimal", "UnusedTile")], [2, 6]);
}

#[test]
fn classify_accepts_any_orbit_member() {
    let o = wanglab(&["--json", "classify", "--tileset", "1100,0000,0110,0011,1001"]);
    golden("classify_corners_white.json", &stdout(&o));
    // Swapping both colors on horizontal edges fixes the corners and turns 0000 into 1111.
    let o = wanglab(&["classify", "--tileset", "1111,0110,1001,0011,1100"]);
    assert!(stdout(&o).starts_with("6.5.6 "), "{}", stdout(&o));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(wanglab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wanglab(&["classify", "--tileset", "0001"]).status.code(), Some(2));
    assert_eq!(wanglab(&["classify", "--tileset", "01x0"]).status.code(), Some(2));
    let o = wanglab(&["generate", "--class", "6.1.2", "--size", "3x3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("6.1.2"));
    assert_eq!(wanglab(&["generate", "--class", "6.8.1", "--size", "0x3"]).status.code(), Some(2));
    assert_eq!(wanglab(&["render", "--in", "/nonexistent.json", "--out", "/tmp/x.svg"]).status.code(), Some(2));
    assert_eq!(wanglab(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_one_class() {
    let o = wanglab(&["verify", "--class", "6.5.3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let facts = v["facts"].as_array().unwrap();
    assert!(!facts.is_empty() && facts.iter().all(|f| f["class"] == "6.5.3"));
    assert_eq!(wanglab(&["verify", "--class", "7.1.1"]).status.code(), Some(2));
}

#[test]
fn check_subcommands() {
    let v: Value = serde_json::from_slice(&wanglab(&["--json", "check", "--tileset", "0011,0110", "empty"]).stdout).unwrap();
    assert_eq!(v["result"]["result"], "empty");
    let v: Value = serde_json::from_slice(&wanglab(&["--json", "check", "--tileset", "0011,0110,1100", "unused"]).stdout).unwrap();
    assert_eq!(v["unused"], serde_json::json!(["0110"]));
    let o = wanglab(&["--json", "check", "--tileset", "0000,0011,0110,1001,1100,1111", "--radius", "1", "independence", "--f", "0,0;1,1;2,2;3,3;4,4", "--g", "4,0"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "not_independent");
}

fn temp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

fn path(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn graft_from_files() {
    let dir = temp();
    let x = path(&dir, "x.json");
    let target = path(&dir, "t.json");
    let white = TilePattern::filled(wanglab::Rect::new(0, 0, 5, 5), wanglab::Tile::WHITE);
    fs::write(&x, serde_json::to_string(&white).unwrap()).unwrap();
    fs::write(&target, r#"{"domain":[[0,0]],"cells":["1111"]}"#).unwrap();
    let args = ["--json", "check", "--tileset", "0000,0011,0101,0110,1001,1010,1100,1111", "--radius", "1", "graft"];
    let o = wanglab(&[&args[..], &["--in", x.to_str().unwrap(), "--target", target.to_str().unwrap(), "--at", "2,2"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "witness");
}

#[test]
fn generate_is_deterministic_and_valid() {
    let args = ["generate", "--class", "6.8.1", "--size", "20x20", "--seed", "7"];
    let a = wanglab(&args);
    let b = wanglab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let p: TilePattern = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(p.len(), 400);
    assert!(p.is_locally_valid());
    let c = wanglab(&["generate", "--class", "6.8.1", "--size", "20x20", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn generate_svg_parses() {
    let dir = temp();
    let out = path(&dir, "t.svg");
    let o = wanglab(&["generate", "--class", "6.6.5", "--size", "12x9", "--seed", "3", "--out", out.to_str().unwrap(), "--cell", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("width"), Some("120"));
    assert_eq!(root.attribute("height"), Some("90"));
    let cells = doc.descendants().filter(|n| n.attribute("transform").is_some_and(|t| t.starts_with("translate"))).count();
    assert_eq!(cells, 108);
}

#[test]
fn render_roundtrip_and_factor() {
    let dir = temp();
    let pattern = path(&dir, "p.json");
    let svg = path(&dir, "p.svg");
    let o = wanglab(&["generate", "--class", "6.4.6", "--size", "6x4", "--seed", "1", "--out", pattern.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = wanglab(&["render", "--in", pattern.to_str().unwrap(), "--out", svg.to_str().unwrap(), "--no-grid"]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    roxmltree::Document::parse(&text).unwrap();
    assert!(!text.contains("#d0d0d0"));
    let v: Value = serde_json::from_slice(&wanglab(&["--json", "factor", "--map", "first-row", "--in", pattern.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(v["word"].as_str().unwrap().len(), 6);
    assert!(v["word"].as_str().unwrap().chars().all(|c| c == 'W' || c == 'B'));
}

#[test]
fn zigzag_factor() {
    let dir = temp();
    let grid = path(&dir, "z.json");
    // n_j = 2, 3, 2 from the bottom; rows are listed top first.
    fs::write(&grid, r#"{"rows":["0011","0001","0011"]}"#).unwrap();
    let v: Value = serde_json::from_slice(&wanglab(&["--json", "factor", "--map", "zigzag", "--in", grid.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(v["zigzag_valid"], true);
    let tiles: TilePattern = serde_json::from_value(v["tiles"].clone()).unwrap();
    assert_eq!(tiles.len(), 6);
    assert!(tiles.is_locally_valid());
}
