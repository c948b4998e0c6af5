use std::path::Path;
use std::process::{Command, Output};

fn dwm(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwm"))
        .args(args)
        .current_dir(dir)
        .env_remove("DWM_THREADS")
        .output()
        .expect("binary runs")
}

fn dwm_threads(dir: &Path, threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwm"))
        .args(args)
        .current_dir(dir)
        .env("DWM_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn same_file(d: &Path, a: &str, b: &str) -> bool {
    std::fs::read(d.join(a)).unwrap() == std::fs::read(d.join(b)).unwrap()
}

#[test]
fn construct_then_verify() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let o = dwm(d, &["construct", "dw28", "--out", "out", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for f in ["dw28.grid", "dw28.json", "dw28.cert.txt", "manifest.json"] {
        assert!(d.join("out").join(f).exists(), "{f} missing");
    }
    let o = dwm(d, &["verify", "out/dw28.grid", "--expect", "dw"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().filter(|l| !l.starts_with('#')).all(|l| l.starts_with("PASS ")));
    let o = dwm(d, &["verify", "out/dw28.grid", "--expect", "od"]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    assert!(stdout(&o).contains(" antiamicable"));
    let o = dwm(d, &["verify", "out/dw28.grid", "--weights", "9,9,8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL weighing[2]"));
}

#[test]
fn construct_families_and_pairs() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let o = dwm(d, &["construct", "powers2:n=2,m=1", "--out", "p"]);
    assert_eq!(o.status.code(), Some(0));
    let grid = std::fs::read_to_string(d.join("p/powers2_n_2_m_1.grid")).unwrap();
    assert!(grid.contains("# order=4") && grid.contains("# weights=1,1,1"));
    assert_eq!(dwm(d, &["construct", "pairs:m=3", "--out", "q"]).status.code(), Some(0));
    assert_eq!(dwm(d, &["verify", "q/pairs_m_3_hk.grid", "--expect", "pairs"]).status.code(), Some(0));
    assert_eq!(dwm(d, &["verify", "q/pairs_m_3_lm.grid", "--expect", "pairs"]).status.code(), Some(0));
    assert_eq!(dwm(d, &["construct", "sylvester:2^3", "--out", "h"]).status.code(), Some(0));
    assert_eq!(dwm(d, &["verify", "h/sylvester_2_3.grid", "--expect", "hadamard"]).status.code(), Some(0));
    assert_eq!(dwm(d, &["verify", "h/sylvester_2_3.grid", "--expect", "dw"]).status.code(), Some(1));
}

#[test]
fn usage_and_input_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let o = dwm(d, &["construct", "f10:m=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing base data"));
    let o = dwm(d, &["construct", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("powers2:n="));
    assert_eq!(dwm(d, &["search", "--n", "2"]).status.code(), Some(2));
    assert_eq!(dwm(d, &["search", "--n", "7", "--budget", "lots"]).status.code(), Some(2));
    let o = dwm(d, &["scheme", "--k", "3", "--m", "9", "--l", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kl+1 = 10"));
    std::fs::write(d.join("t.grid"), "# order=3\n0+-\n-0+\n+-").unwrap();
    let o = dwm(d, &["verify", "t.grid"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4, column 3"), "{}", stderr(&o));
    assert_eq!(dwm(d, &["verify", "absent.grid"]).status.code(), Some(2));
}

#[test]
fn search_writes_certified_triple_and_replays() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let o = dwm(d, &["search", "--n", "7", "--budget", "1e8", "--out", "s"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("found DW(28;[9]^3)"));
    assert_eq!(dwm(d, &["verify", "s/dw.grid"]).status.code(), Some(0));
    let o = dwm(d, &["replay", "s/manifest.json", "--out", "r"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(same_file(d, "s/dw.grid", "r/dw.grid"));
}

#[test]
fn checkpoint_then_resume_via_cli() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let o = dwm(d, &["search", "--n", "7", "--budget", "200", "--checkpoint", "c.bin", "--out", "a"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(d.join("c.bin").exists());
    let o = dwm(d, &["search", "--n", "7", "--resume", "c.bin", "--out", "b"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(dwm(d, &["search", "--n", "7", "--out", "c"]).status.code(), Some(0));
    assert!(same_file(d, "b/seeds.txt", "c/seeds.txt"));
    assert!(same_file(d, "b/stats.json", "c/stats.json"));
    let o = dwm(d, &["search", "--n", "7", "--seed", "5", "--resume", "c.bin", "--out", "e"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("checkpoint does not belong"));
    let o = dwm_threads(d, "4", &["search", "--n", "7", "--checkpoint", "x.bin"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn threads_env_override_gives_same_triple() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    assert_eq!(dwm(d, &["search", "--n", "7", "--out", "one"]).status.code(), Some(0));
    let o = dwm_threads(d, "4", &["search", "--n", "7", "--threads", "1", "--out", "four"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(same_file(d, "one/seeds.txt", "four/seeds.txt"));
    let m = std::fs::read_to_string(d.join("four/manifest.json")).unwrap();
    assert!(m.contains("\"threads\": \"4\""));
    assert_eq!(dwm_threads(d, "zero", &["search", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn scheme_outputs_and_replay() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let args = ["scheme", "--k", "3", "--m", "9", "--l", "1", "--dw", "builtin:dw28", "--hadamard", "sylvester"];
    let o = dwm(d, &[&args[..], &["--out", "x", "--json"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("3-class scheme on 112 vertices"));
    for f in ["relations.grid", "tensor.json", "l1.txt", "eigen_computed.txt", "eigen_closed.txt", "eigen.json", "report.txt"] {
        assert!(d.join("x").join(f).exists(), "{f} missing");
    }
    let o = dwm(d, &["scheme", "--k", "1", "--m", "1", "--l", "3", "--out", "y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4-class scheme on 24 vertices"));
    assert_eq!(dwm(d, &["replay", "y/manifest.json", "--out", "z"]).status.code(), Some(0));
    assert!(same_file(d, "y/report.txt", "z/report.txt"));
}

#[test]
fn scheme_from_files() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    assert_eq!(dwm(d, &["construct", "dw28", "--out", "c"]).status.code(), Some(0));
    assert_eq!(dwm(d, &["construct", "sylvester:2^2", "--out", "c"]).status.code(), Some(0));
    let args = ["scheme", "--k", "3", "--m", "9", "--l", "1", "--dw", "c/dw28.grid", "--hadamard", "c/sylvester_2_2.grid"];
    let o = dwm(d, &[&args[..], &["--out", "s"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let manifest = std::fs::read_to_string(d.join("s/manifest.json")).unwrap();
    assert!(manifest.contains("c/dw28.grid"));
    std::fs::write(d.join("c/sylvester_2_2.grid"), "# order=2\n++\n+-\n").unwrap();
    assert_eq!(dwm(d, &["replay", "s/manifest.json", "--out", "r"]).status.code(), Some(2));
    let o = dwm(d, &["scheme", "--k", "3", "--m", "5", "--l", "1", "--dw", "c/dw28.grid"]);
    assert_eq!(o.status.code(), Some(2));
}
