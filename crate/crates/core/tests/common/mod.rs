#![allow(dead_code)]

use paramod::generators::{affine_plane, hermitian_unital, projective_plane};
use paramod::{parse_design, Design};

pub fn sts13_cyclic() -> Design {
    parse_design(include_str!("../fixtures/sts13_cyclic.txt")).unwrap()
}

pub fn sts13_noncyclic() -> Design {
    parse_design(include_str!("../fixtures/sts13_noncyclic.txt")).unwrap()
}

pub fn sts9() -> Design {
    parse_design(include_str!("../fixtures/sts9.txt")).unwrap()
}

/// The standard fixture set, smallest first.
pub fn fixtures() -> Vec<(&'static str, Design)> {
    vec![
        ("Fano", projective_plane(2).unwrap()),
        ("AG(2,3)", affine_plane(3).unwrap()),
        ("PG(2,3)", projective_plane(3).unwrap()),
        ("STS(13) cyclic", sts13_cyclic()),
        ("STS(13) non-cyclic", sts13_noncyclic()),
        ("AG(2,4)", affine_plane(4).unwrap()),
        ("Hermitian(3)", hermitian_unital(3).unwrap()),
    ]
}

/// Fixtures small enough for exhaustive enumeration over all blocks.
pub fn small_fixtures() -> Vec<(&'static str, Design)> {
    fixtures()
        .into_iter()
        .filter(|(_, d)| d.n() <= 16)
        .collect()
}

/// Block indices to test: all of them for small designs, an evenly spaced
/// sample of `sample` blocks otherwise.
pub fn blocks_to_test(d: &Design, sample: usize) -> Vec<usize> {
    if d.n() <= 16 {
        (0..d.num_blocks()).collect()
    } else {
        let step = d.num_blocks() / sample;
        (0..sample).map(|i| i * step).collect()
    }
}
