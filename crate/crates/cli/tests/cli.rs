use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgame")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qgame-cli-{}-{name}", std::process::id()))
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(2).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn fig2a_has_versioned_header_and_small_block_row() {
    let csv = stdout(&qgame(&["fig2a", "--nb", "2"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# experiment=fig2a seed=- schema=v1"));
    assert_eq!(lines.next(), Some("N_B,M,M_over_NB,energy_per_site"));
    let row = rows(&csv).into_iter().find(|r| r[0] == "2" && r[1] == "1").unwrap();
    let e: f64 = row[3].parse().unwrap();
    assert!((e + 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn default_fig2a_curves() {
    let csv = stdout(&qgame(&["fig2a"]));
    let r = rows(&csv);
    assert_eq!(r.len(), 6 + 11 + 16 + 21);
    for nb in ["5", "10", "15", "20"] {
        let last = r.iter().filter(|row| row[0] == nb).last().unwrap();
        assert_eq!(last[3], "0");
    }
}

#[test]
fn three_qubit_sweep_starts_at_minus_one() {
    let csv = stdout(&qgame(&["appendix-n3"]));
    let r = rows(&csv);
    assert_eq!(r.len(), 11);
    assert_eq!(r[0][0], "0.5");
    assert!((r[0][1].parse::<f64>().unwrap() + 1.0).abs() < 1e-9);
}

#[test]
fn haar_stats_is_byte_identical_across_runs() {
    let a = temp("haar-a.csv");
    let b = temp("haar-b.csv");
    for path in [&a, &b] {
        let out = qgame(&["haar-stats", "--samples", "1000", "--seed", "7", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (x, y) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert!(text.starts_with("# experiment=haar-stats seed=7 schema=v1\nsample_index,mean_entropy\n"));
    assert_eq!(text.lines().count(), 1002);
    fs::remove_file(a).unwrap();
    fs::remove_file(b).unwrap();
}

#[test]
fn play_scripts() {
    let moves = temp("bell.moves");
    fs::write(&moves, "# Bell defence\nsites 2\ninit zero\ncapability A 2\ncapability B 1\nA 1,2 bell\nB best\n").unwrap();
    let csv = stdout(&qgame(&["play", moves.to_str().unwrap()]));
    let r = &rows(&csv)[0];
    assert_eq!(r[0], "A-first");
    assert!(r[3].parse::<f64>().unwrap().abs() < 1e-12);

    fs::write(&moves, "sites 5\ncapability A 3\ncapability B 2\nA 1,2,3 ghz\nA 4,5 bell\nB best 3,4|2,5|1\n").unwrap();
    let csv = stdout(&qgame(&["play", moves.to_str().unwrap()]));
    assert!(rows(&csv)[0][3].parse::<f64>().unwrap().abs() < 1e-10);

    fs::write(&moves, "sites 2\ncapability A 2\ncapability B 1\nA 1,2 wat\n").unwrap();
    let out = qgame(&["play", moves.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    fs::remove_file(moves).unwrap();
}

#[test]
fn ame_search_uses_and_fills_the_cache() {
    let cache = temp("states.txt");
    let _ = fs::remove_file(&cache);
    let args = ["ame-search", "--n", "2,3", "--restarts", "2", "--seed", "3", "--cache", cache.to_str().unwrap()];
    let first = stdout(&qgame(&args));
    let stored = fs::read_to_string(&cache).unwrap();
    assert_eq!(stored.lines().filter(|l| !l.starts_with('#')).count(), 2);
    assert_eq!(stdout(&qgame(&args)), first);
    fs::remove_file(cache).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(qgame(&["no-such-experiment"]).status.code(), Some(2));
    assert_eq!(qgame(&["haar-stats", "--samples", "x"]).status.code(), Some(2));
    let out = qgame(&["ame-search", "--n", "9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2..=8"));
    assert_eq!(qgame(&["classical-demo", "--n", "11"]).status.code(), Some(3));
}

#[test]
fn classical_demo_second_mover_wins() {
    let csv = stdout(&qgame(&["classical-demo", "--n", "4"]));
    for r in rows(&csv) {
        let n: f64 = r[0].parse().unwrap();
        let e: f64 = r[2].parse().unwrap();
        assert_eq!(e, if r[1] == "A-first" { -n } else { n });
        assert_eq!(r[3], "true");
    }
}
