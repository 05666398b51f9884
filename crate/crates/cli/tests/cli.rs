use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paramod-cli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generate(dir: &Path, family: &str, q: &str) -> String {
    let o = cli(&["generate", family, q]);
    assert!(o.status.success());
    let path = dir.join(format!("{family}{q}.txt"));
    fs::write(&path, &o.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn generate_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let fano = generate(dir.path(), "pg", "2");
    let o = cli(&["validate", &fano]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2-(7,3,1)"));

    let broken = dir.path().join("broken.txt");
    let text = fs::read_to_string(&fano).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    fs::write(&broken, lines.join("\n")).unwrap();
    let o = cli(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("covered zero times"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&["generate", "pg", "6"]).status.code(), Some(2));
    assert_eq!(cli(&["nonsense"]).status.code(), Some(2));
    assert_eq!(cli(&["canon", "/no/such/file"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let fano = generate(dir.path(), "pg", "2");
    assert_eq!(
        cli(&["colorings", &fano, "--block", "7"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cli(&["paramod", &fano, "--block", "0", "--resolution", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn colorings_of_the_affine_plane() {
    let dir = tempfile::tempdir().unwrap();
    let ag = generate(dir.path(), "ag", "3");
    let o = cli(&["colorings", &ag, "--block", "0", "--no-symmetry"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2], "# 2 resolutions");
    for l in &lines[..2] {
        assert_eq!(l.split(';').count(), 3);
    }
    let o = cli(&["colorings", &ag, "--block", "0", "--count-only"]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn paramod_output_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let h = generate(dir.path(), "hermitian", "3");
    let hash = {
        let d = paramod::io::import(&h).unwrap();
        paramod::io::content_hash(&d)
    };
    let o = cli(&["paramod", &h, "--block", "0", "--resolution", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(
        out.lines().next().unwrap(),
        format!("# paramod of {hash} at block 0, resolution 3")
    );
    let p = dir.path().join("p.txt");
    fs::write(&p, &out).unwrap();
    assert_eq!(
        cli(&["validate", p.to_str().unwrap()]).status.code(),
        Some(0)
    );

    // explicit trivial assignment on the trivial resolution is the identity
    let o = cli(&["colorings", &h, "--block", "0", "--no-symmetry"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    let design = paramod::io::import(&h).unwrap();
    let pencil = design.pencil(0).unwrap();
    let anchors: Vec<String> = first
        .split(';')
        .map(|class| {
            let blk: usize = class.split(',').next().unwrap().parse().unwrap();
            pencil.anchor[pencil.position(blk).unwrap()].to_string()
        })
        .collect();
    let o = cli(&[
        "paramod",
        &h,
        "--block",
        "0",
        "--resolution",
        "0",
        "--assignment",
        &anchors.join(","),
    ]);
    let same = paramod::parse_design(&stdout(&o)).unwrap();
    assert_eq!(same, design);
}

#[test]
fn canon_and_iso() {
    let dir = tempfile::tempdir().unwrap();
    let a = generate(dir.path(), "ag", "3");
    let b = generate(dir.path(), "hermitian", "2");
    let ca = stdout(&cli(&["canon", &a]));
    let cb = stdout(&cli(&["canon", &b]));
    assert_eq!(ca, cb);
    assert_eq!(ca.trim().len(), 64);
    let o = cli(&["iso", &a, &b]);
    assert!(o.status.success());
    let map: Vec<(usize, usize)> = stdout(&o)
        .split_whitespace()
        .map(|pair| {
            let (p, q) = pair.split_once("->").unwrap();
            (p.parse().unwrap(), q.parse().unwrap())
        })
        .collect();
    let perm: Vec<usize> = map.iter().map(|&(_, q)| q).collect();
    let da = paramod::io::import(&a).unwrap();
    let db = paramod::io::import(&b).unwrap();
    assert_eq!(paramod::canon::relabel(&da, &perm).normalized(), db);

    let fano = generate(dir.path(), "pg", "2");
    let o = cli(&["iso", &a, &fano]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "non-isomorphic");
}

#[test]
fn pasch_and_switchings() {
    let dir = tempfile::tempdir().unwrap();
    let fano = generate(dir.path(), "pg", "2");
    assert!(stdout(&cli(&["pasch", &fano])).contains("# 7 Pasch configurations"));
    let h = generate(dir.path(), "hermitian", "3");
    assert_eq!(stdout(&cli(&["pasch", &h])).trim(), "anti-Pasch");
    assert!(stdout(&cli(&["switchings", &h])).starts_with("# 0 switchings"));
}

#[test]
fn explore_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let fano = generate(dir.path(), "pg", "2");
    let ag = generate(dir.path(), "ag", "3");
    let out = dir.path().join("catalog");
    let out = out.to_str().unwrap();
    let o = cli(&[
        "explore",
        "--seed",
        &fano,
        &ag,
        "--out",
        out,
        "--max-vertices",
        "10",
        "--max-depth",
        "3",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let first = fs::read_to_string(Path::new(out).join("index.txt")).unwrap();
    // a second identical run adds only its run marker
    cli(&[
        "explore",
        "--seed",
        &fano,
        &ag,
        "--out",
        out,
        "--max-vertices",
        "10",
        "--max-depth",
        "3",
    ]);
    let second = fs::read_to_string(Path::new(out).join("index.txt")).unwrap();
    assert!(second.starts_with(&first));
    assert!(second[first.len()..]
        .lines()
        .all(|l| l.starts_with("run ") || l.starts_with("commit ")));

    let o = cli(&["stats", out]);
    let text = stdout(&o);
    assert!(text.contains("isolated vertex"), "{text}");
    let isolated = text
        .lines()
        .find(|l| l.starts_with("isolated vertex"))
        .unwrap();
    let cols: Vec<&str> = isolated.split_whitespace().collect();
    assert_eq!(cols[2..], ["2", "2", "0", "0"]);
    assert_eq!(
        cli(&["stats", dir.path().to_str().unwrap()]).status.code(),
        Some(2)
    );
}
