mod common;

use std::fs;

use paramod::explore::{Catalog, Explorer, Limits, StopReason, INDEX_FILE};
use paramod::generators::{affine_plane, hermitian_unital, projective_plane};

fn limits(max_vertices: usize, max_depth: usize) -> Limits {
    Limits {
        max_vertices,
        max_depth,
        time_budget: None,
    }
}

fn seed_all(ex: &mut Explorer) {
    ex.add_seed(&projective_plane(2).unwrap(), "fano").unwrap();
    ex.add_seed(&affine_plane(3).unwrap(), "ag23").unwrap();
    ex.add_seed(&common::sts13_cyclic(), "sts13").unwrap();
    ex.add_seed(&hermitian_unital(3).unwrap(), "unital")
        .unwrap();
}

#[test]
fn interrupted_run_resumes_to_the_same_graph() {
    let straight = tempfile::tempdir().unwrap();
    let mut ex = Explorer::open(straight.path()).unwrap();
    seed_all(&mut ex);
    ex.run(&limits(12, 2)).unwrap();
    let expected = ex.graph().clone();
    drop(ex);

    let pieces = tempfile::tempdir().unwrap();
    for cap in [5, 7, 12, 12] {
        let mut ex = Explorer::open(pieces.path()).unwrap();
        seed_all(&mut ex);
        ex.run(&limits(cap, 2)).unwrap();
    }
    assert_eq!(Catalog::load(pieces.path()).unwrap(), expected);
    assert_eq!(Catalog::load(straight.path()).unwrap(), expected);
}

#[test]
fn rerun_with_same_limits_changes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let mut ex = Explorer::open(dir.path()).unwrap();
    seed_all(&mut ex);
    ex.run(&limits(10, 1)).unwrap();
    let before = ex.graph().clone();
    drop(ex);
    let mut ex = Explorer::open(dir.path()).unwrap();
    seed_all(&mut ex);
    let summary = ex.run(&limits(10, 1)).unwrap();
    assert_eq!(summary.expanded, 0);
    assert_eq!(ex.graph(), &before);
}

#[test]
fn torn_tail_is_dropped() {
    let dir = tempfile::tempdir().unwrap();
    let mut ex = Explorer::open(dir.path()).unwrap();
    ex.add_seed(&projective_plane(2).unwrap(), "fano").unwrap();
    ex.run(&limits(10, 3)).unwrap();
    let committed = ex.graph().clone();
    drop(ex);

    let index = dir.path().join(INDEX_FILE);
    let good = fs::read_to_string(&index).unwrap();
    fs::write(
        &index,
        format!("{good}edge aa bb 3 0000\n{}", "f".repeat(64)),
    )
    .unwrap();
    let (_, graph) = Catalog::open(dir.path()).unwrap();
    assert_eq!(graph, committed);
    // the tail is gone, so the file is clean again
    assert_eq!(fs::read_to_string(&index).unwrap(), good);
}

#[test]
fn corruption_before_a_commit_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut ex = Explorer::open(dir.path()).unwrap();
    ex.add_seed(&projective_plane(2).unwrap(), "fano").unwrap();
    ex.run(&limits(10, 3)).unwrap();
    drop(ex);
    let index = dir.path().join(INDEX_FILE);
    let text = fs::read_to_string(&index).unwrap();
    let damaged = text.replacen("seed:fano", "seed:fanO", 1);
    fs::write(&index, damaged).unwrap();
    assert!(Catalog::load(dir.path()).is_err());
}

#[test]
fn index_records_and_design_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut ex = Explorer::open(dir.path()).unwrap();
    let h = ex
        .add_seed(&hermitian_unital(3).unwrap(), "unital")
        .unwrap();
    let summary = ex.run(&limits(100, 1)).unwrap();
    assert_eq!(summary.stop, StopReason::Exhausted);
    let graph = ex.graph().clone();
    let (catalog, _) = Catalog::open(dir.path()).unwrap();
    for v in graph.vertices() {
        let d = catalog.load_design(&v.hash).unwrap();
        assert!(d.validate().is_valid());
        assert_eq!(paramod::canonical_certificate(&d).hash_hex(), v.hash);
    }
    let text = fs::read_to_string(dir.path().join(INDEX_FILE)).unwrap();
    let seed_line = text.lines().find(|l| l.starts_with(&h)).unwrap();
    let fields: Vec<&str> = seed_line.split(' ').collect();
    assert_eq!(fields[1..5], ["0", "0", "0", "seed:unital"]);
    // the final record for the seed says finished, with its degree
    let last = text.lines().rfind(|l| l.starts_with(&h)).unwrap();
    let fields: Vec<&str> = last.split(' ').collect();
    assert_eq!(fields[2], "1");
    assert_eq!(fields[3], graph.degree(&h).to_string());
}

#[test]
fn edges_between_finished_vertices_go_both_ways() {
    let mut ex = Explorer::new();
    ex.add_seed(&hermitian_unital(3).unwrap(), "unital")
        .unwrap();
    ex.run(&limits(40, 3)).unwrap();
    let g = ex.graph();
    for ((from, to), _) in g.edges() {
        if g.vertex(to).unwrap().finished {
            assert!(
                g.multiplicity(to, from) > 0,
                "{from} -> {to} has no reverse"
            );
        }
    }
}
