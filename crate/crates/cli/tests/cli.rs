use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cocycle-lab"))
        .args(args)
        .env("COCYCLE_LAB_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let o = run(cache, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn center_h2_of_klein_four() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["--format", "machine", "center-h2", "--rank", "0", "--torsion", "2,2"]);
    assert_eq!(out, "record=center-h2 torus_rank=0 finite=2 finite_order=2 trivial=no\n");
}

#[test]
fn klein_four_is_of_central_type() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["scan-ctfg", "--group", "catalog:c2xc2"]);
    assert!(out.contains("central-type yes"), "{out}");
}

#[test]
fn h2_of_c2_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["--format", "machine", "h2", "--group", "catalog:c2"]);
    assert!(out.starts_with("record=h2 group_order=2 invariants=- order=1 trivial=yes"), "{out}");
}

#[test]
fn machine_lines_are_key_value_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["--format", "machine", "chartab", "--group", "catalog:s3"]);
    for line in out.lines() {
        assert!(line.split(' ').all(|f| f.split_once('=').is_some()), "{line}");
    }
    assert_eq!(out.lines().filter(|l| l.starts_with("record=character")).count(), 3);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["h2", "--group", "catalog:nope"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["--max-order", "0", "scan-ctfg"]).status.code(), Some(2));
    // order 64 exceeds the H² bound: a domain error
    let grp = dir.path().join("c64.grp");
    let table: Vec<String> = (0..64)
        .map(|i| (0..64).map(|j| ((i + j) % 64).to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    fs::write(&grp, format!("order 64\n{}\n", table.join("\n"))).unwrap();
    let o = run(dir.path(), &["--no-cache", "h2", "--group", grp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("size bound"));
}

#[test]
fn cached_and_fresh_outputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "machine", "amen", "--ring", "su2:40", "--measure", "1:1/2,2:1/2", "--budget", "8"];
    let first = ok(dir.path(), &args);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let cached = ok(dir.path(), &args);
    let mut fresh_args = vec!["--no-cache"];
    fresh_args.extend(args);
    let fresh = ok(dir.path(), &fresh_args);
    assert_eq!(first, cached);
    assert_eq!(first, fresh);
    assert!(first.contains("record=verdict"));
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for seed in ["1", "2", "7"] {
        let x = ok(a.path(), &["--format", "machine", "--seed", seed, "tau"]);
        let y = ok(b.path(), &["--format", "machine", "--seed", seed, "tau"]);
        assert_eq!(x, y);
    }
}

#[test]
fn group_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dump = ok(dir.path(), &["group", "--group", "catalog:q8", "--dump"]);
    let path = dir.path().join("q8.grp");
    fs::write(&path, &dump).unwrap();
    let from_file = ok(dir.path(), &["--format", "machine", "fusion", "--group", path.to_str().unwrap(), "--compare", "catalog:d8"]);
    assert!(from_file.contains("groups_isomorphic=no degrees_equal=yes fusion_isomorphic=yes"), "{from_file}");
}

#[test]
fn pair_search_writes_a_certified_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("pair");
    let out = ok(dir.path(), &["--format", "machine", "pair", "--out", out_dir.to_str().unwrap()]);
    assert!(out.contains("isomorphic=false"), "{out}");
    assert!(out.contains("groups_isomorphic=no degrees_equal=yes fusion_isomorphic=yes"), "{out}");
    let tau = ok(dir.path(), &["--format", "machine", "tau", "--action", out_dir.join("action.txt").to_str().unwrap()]);
    assert!(tau.contains("coboundary=no"), "{tau}");
    let cmp = ok(
        dir.path(),
        &["fusion", "--group", out_dir.join("g1.grp").to_str().unwrap(), "--compare", out_dir.join("g2.grp").to_str().unwrap()],
    );
    assert!(cmp.contains("groups_isomorphic no"), "{cmp}");
}

#[test]
fn cocycle_file_is_classified() {
    let dir = tempfile::tempdir().unwrap();
    // the bicharacter ((a1,a2),(b1,b2)) -> a1 b2 on C2 x C2, values in Z/2
    let mut rows = Vec::new();
    for x in 0..4usize {
        let row: Vec<String> = (0..4usize).map(|y| ((x % 2) * (y / 2)).to_string()).collect();
        rows.push(row.join(" "));
    }
    let path = dir.path().join("c.txt");
    fs::write(&path, format!("group catalog:c2xc2\nmodulus 2\n{}\n", rows.join("\n"))).unwrap();
    let out = ok(dir.path(), &["--format", "machine", "h2", "--cocycle", path.to_str().unwrap()]);
    assert!(out.contains("record=cocycle class=1 nondegenerate=yes twisted_center_dim=1"), "{out}");
}
