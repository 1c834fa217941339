use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn torwood(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_torwood"));
    cmd.args(args).env_remove("TORWOOD_OUT_DIR");
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn fixture(name: &str) -> String {
    let o = torwood(&["fixture", name], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn example3_wood_checks() {
    let o = torwood(&["wood", "check", "-"], Some(&fixture("example3")));
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Type 1") || String::from_utf8_lossy(&o.stderr).contains("Type 1"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&torwood(&["frobnicate"], None)), 2);
    assert_eq!(code(&torwood(&[], None)), 2);
    assert_eq!(code(&torwood(&["fixture", "nonsense"], None)), 2);
    assert_eq!(code(&torwood(&["draw", "-", "--window", "3by3"], None)), 2);
    assert_eq!(code(&torwood(&["--help"], None)), 0);
}

#[test]
fn contractible_loop_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let map = "tmap 1\nvertices 1\nedge 0 0 0 1 0\nedge 1 0 0 1 1\nedge 2 0 0 0 1\nedge 3 0 0 0 0\nrot 0 0+ 3+ 3- 1+ 2+ 0- 1- 2-\n";
    let p = write(dir.path(), "loop.tmap", map);
    let o = torwood(&["validate", &p], None);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("contractible"));
    let o = torwood(&["validate", "-"], Some(&fixture("brick")));
    assert_eq!(code(&o), 0);
}

#[test]
fn bad_wood_fails_check() {
    let mut text = fixture("3loops");
    text = text.lines().filter(|l| !l.starts_with("w ")).collect::<Vec<_>>().join("\n");
    text.push_str("\nw 0 +0\nw 1 +1\nw 2 +2\n");
    let o = torwood(&["wood", "check", "-"], Some(&text));
    assert_eq!(code(&o), 1);
}

#[test]
fn basic_fixture_gets_a_type2_wood() {
    let o = torwood(&["wood", "compute", "-"], Some(&fixture("basic(3)")));
    assert_eq!(code(&o), 0);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(stdout(&o).contains("w 0 ") || err.contains("Type 2"));
    let mut both = fixture("basic(3)");
    both = both.lines().filter(|l| !l.starts_with("w ")).collect::<Vec<_>>().join("\n") + "\n" + &stdout(&o);
    let o = torwood(&["wood", "check", "-"], Some(&both));
    assert_eq!(code(&o), 0);
    let all = stdout(&o) + &String::from_utf8_lossy(&o.stderr);
    assert!(all.contains("Type 2"), "{}", all);
}

#[test]
fn info_reports_counts() {
    let o = torwood(&["info", "-"], Some(&fixture("example3")));
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains('3') && s.contains('7') && s.contains('4'), "{}", s);
}

#[test]
fn coords_and_cover() {
    let o = torwood(&["coords", "-", "--scale", "3"], Some(&fixture("example3")));
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("S -12 24 -12"));
    assert!(s.contains("0 12 -11"));
    let o = torwood(&["cover", "-", "--radius", "1"], Some(&fixture("3loops")));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("vertex ")).count(), 9);
}

#[test]
fn drawings_are_written_and_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(dir.path(), "p.tmap", &fixture("example3"));
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let o = torwood(&["draw", &map, "--plane", "x", "--window", "2x1", "-o", out.to_str().unwrap()], None);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let o = torwood(&["draw", &map, "--mode", "one-bend", "--dual", "--bends"], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("</svg>"));
}

#[test]
fn obj_embedding() {
    let o = torwood(&["embed", "-", "--dual"], Some(&fixture("example3")));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.starts_with("v ")));
    assert!(s.lines().any(|l| l.starts_with("l ")));
}

#[test]
fn output_dir_variable() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_torwood"))
        .args(["fixture", "brick", "-o", "brick.tmap"])
        .env("TORWOOD_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("brick.tmap").exists());
}

#[test]
fn planar_conversion() {
    let pmap = "pmap 1\nvertices 3\nedge 0 0 1\nedge 1 1 2\nedge 2 2 0\nrot 0 0+ 2-\nrot 1 1+ 0-\nrot 2 2+ 1-\nouter 0 1 2\n";
    let o = torwood(&["convert", "planar", "-"], Some(pmap));
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = torwood(&["validate", "-"], Some(&stdout(&o)));
    assert_eq!(code(&o), 0);
}

#[test]
fn random_then_compute_then_check() {
    for (n, seed) in [(1, 1), (8, 2), (20, 3), (30, 4)] {
        let o = torwood(&["random", &n.to_string(), "--seed", &seed.to_string()], None);
        assert_eq!(code(&o), 0);
        let map = stdout(&o);
        let w = torwood(&["wood", "compute", "-"], Some(&map));
        assert_eq!(code(&w), 0);
        let o = torwood(&["wood", "check", "-"], Some(&(map + &stdout(&w))));
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    // no simple toroidal triangulation has fewer than seven vertices
    let o = torwood(&["random", "5", "--simple"], None);
    assert_eq!(code(&o), 2);
}

#[test]
fn dual_wood_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dm = dir.path().join("dual.tmap");
    let dw = dir.path().join("dual.wood");
    let o = torwood(
        &["wood", "dual", "-", "--map-output", dm.to_str().unwrap(), "-o", dw.to_str().unwrap()],
        Some(&fixture("example3")),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = torwood(&["wood", "check", dm.to_str().unwrap(), dw.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}
