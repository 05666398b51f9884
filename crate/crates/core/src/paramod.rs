//! The paramodification transform, switchings and Pasch configurations.

use rayon::prelude::*;

use crate::coloring::{
    anchor_assignment, coloring_from_resolution, enumerate_resolutions, BlockColoring, Resolution,
};
use crate::design::{BlockPencil, Design};
use crate::error::{Error, Result};

/// Rewrites every pencil member `b'` as `(b' - anchor(b')) + color(b')`.
///
/// Block `i` of the result corresponds to block `i` of `design`; only the
/// pencil members change. The result is validated before it is returned.
pub fn paramodify(design: &Design, b: usize, coloring: &BlockColoring) -> Result<Design> {
    let pencil = design.pencil(b)?;
    check_coloring(design, &pencil, coloring)?;
    let mut blocks = design.blocks().to_vec();
    for (i, &m) in pencil.members.iter().enumerate() {
        let anchor = pencil.anchor[i];
        let color = coloring.colors()[i];
        if anchor != color {
            let block = &mut blocks[m];
            let at = block
                .iter()
                .position(|&p| p == anchor)
                .expect("anchor lies on member");
            block[at] = color;
        }
    }
    let result = Design::new(design.n(), design.k(), blocks);
    let report = result.validate();
    if !report.is_valid() {
        return Err(Error::Invalid(report.summary(5)));
    }
    Ok(result)
}

fn check_coloring(design: &Design, pencil: &BlockPencil, coloring: &BlockColoring) -> Result<()> {
    if coloring.pencil() != pencil {
        return Err(Error::PencilMismatch(coloring.base(), pencil.base));
    }
    if let Some(c) = coloring
        .colors()
        .iter()
        .find(|c| pencil.base_points.binary_search(c).is_err())
    {
        return Err(Error::ImproperColoring(format!(
            "color {c} is not a point of the base block"
        )));
    }
    // members through a common point off b must get distinct colors
    let mut seen = vec![usize::MAX; design.n() * design.k()];
    let slot = |c: usize| pencil.base_points.binary_search(&c).unwrap();
    for (i, &m) in pencil.members.iter().enumerate() {
        let color = slot(coloring.colors()[i]);
        for &p in &design.blocks()[m] {
            if p == pencil.anchor[i] {
                continue;
            }
            let cell = &mut seen[p * design.k() + color];
            if *cell != usize::MAX {
                return Err(Error::ImproperColoring(format!(
                    "blocks {} and {m} meet at point {p} and share color {}",
                    *cell,
                    coloring.colors()[i]
                )));
            }
            *cell = m;
        }
    }
    Ok(())
}

/// One application of the transform, kept together with its inputs.
#[derive(Debug, Clone)]
pub struct Paramodification {
    pub source: Design,
    pub b: usize,
    pub coloring: BlockColoring,
    pub result: Design,
}

impl Paramodification {
    pub fn new(source: &Design, b: usize, coloring: BlockColoring) -> Result<Paramodification> {
        let result = paramodify(source, b, &coloring)?;
        Ok(Paramodification {
            source: source.clone(),
            b,
            coloring,
            result,
        })
    }

    /// The coloring of the result's pencil at `b` that undoes this step:
    /// each member goes back to its original anchor.
    pub fn reverse_coloring(&self) -> BlockColoring {
        let pencil = self
            .result
            .pencil(self.b)
            .expect("base block survives the transform");
        let source_pencil = self.source.pencil(self.b).expect("base block in range");
        debug_assert_eq!(pencil.members, source_pencil.members);
        BlockColoring::new(pencil, source_pencil.anchor)
    }
}

pub fn reverse_coloring(p: &Paramodification) -> BlockColoring {
    p.reverse_coloring()
}

/// Number of color classes that are not an anchor class.
pub fn nontrivial_class_count(coloring: &BlockColoring) -> usize {
    let anchors = coloring.pencil().anchor_classes();
    coloring
        .classes()
        .iter()
        .filter(|c| !c.is_empty() && !anchors.contains(c))
        .count()
}

/// Same count for a resolution of the pencil at `pencil.base`.
pub fn nontrivial_classes_in(pencil: &BlockPencil, resolution: &Resolution) -> usize {
    let trivial = Resolution::trivial(pencil);
    resolution
        .classes
        .iter()
        .filter(|c| !trivial.classes.contains(c))
        .count()
}

/// Every `(b, coloring)` whose coloring has exactly two non-trivial
/// classes, one per resolution. Colorings keep anchor classes on their
/// anchor point.
pub fn enumerate_switchings(design: &Design) -> Vec<(usize, BlockColoring)> {
    (0..design.num_blocks())
        .into_par_iter()
        .map(|b| {
            let ds = design.derived_system(b).expect("block index in range");
            enumerate_resolutions(&ds)
                .into_iter()
                .filter(|r| nontrivial_classes_in(&ds.pencil, r) == 2)
                .map(|r| {
                    let assignment = anchor_assignment(&ds.pencil, &r);
                    let c = coloring_from_resolution(&ds.pencil, &r, &assignment)
                        .expect("anchor assignment is a bijection");
                    (b, c)
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// `2k^3 - 8k^2 + 13k - 6`.
pub fn switching_threshold(k: usize) -> i64 {
    let k = k as i64;
    2 * k * k * k - 8 * k * k + 13 * k - 6
}

/// Whether an anti-Pasch 2-(n,k,1) design is too small to admit a switching.
pub fn switching_excluded_by_bound(n: usize, k: usize) -> bool {
    (n as i64) < switching_threshold(k)
}

/// Six points with `{P1,P3,P4}`, `{P1,P5,P6}`, `{P2,P3,P5}`, `{P2,P4,P6}`
/// collinear, on four distinct blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PaschConfiguration {
    /// `points[i]` is `P(i+1)`.
    pub points: [usize; 6],
    /// Sorted block indices of the four lines.
    pub blocks: [usize; 4],
}

impl PaschConfiguration {
    /// Checks the collinearities against `design`.
    pub fn holds_in(&self, design: &Design) -> bool {
        let p = self.points;
        let mut distinct = p.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 6 {
            return false;
        }
        let line = |a: usize, b: usize, c: usize| -> Option<usize> {
            let j = design.block_through(a, b).ok()?;
            design.contains(j, c).then_some(j)
        };
        let lines = [
            line(p[0], p[2], p[3]),
            line(p[0], p[4], p[5]),
            line(p[1], p[2], p[4]),
            line(p[1], p[3], p[5]),
        ];
        let mut found: Vec<usize> = lines.iter().flatten().copied().collect();
        found.sort_unstable();
        found.dedup();
        found.len() == 4
    }
}

fn meet(design: &Design, a: usize, b: usize) -> Option<usize> {
    let (x, y) = (&design.blocks()[a], &design.blocks()[b]);
    x.iter().copied().find(|p| y.binary_search(p).is_ok())
}

/// Walks pairs of blocks through a common point `P1`, picks `P3, P4` on the
/// first and `P5, P6` on the second, and looks for the meet of `P3P5` and
/// `P4P6`. Calls `found` with each configuration; stops when it returns
/// `false`.
fn scan_pasch(design: &Design, found: &mut dyn FnMut(PaschConfiguration) -> bool) {
    for p1 in 0..design.n() {
        let through = design.blocks_through(p1);
        for (i, &l1) in through.iter().enumerate() {
            for &l2 in &through[i + 1..] {
                let a: Vec<usize> = design.blocks()[l1]
                    .iter()
                    .copied()
                    .filter(|&x| x != p1)
                    .collect();
                let b: Vec<usize> = design.blocks()[l2]
                    .iter()
                    .copied()
                    .filter(|&x| x != p1)
                    .collect();
                for (ia, &p3) in a.iter().enumerate() {
                    for &p4 in &a[ia + 1..] {
                        for &p5 in &b {
                            let Ok(m1) = design.block_through(p3, p5) else {
                                continue;
                            };
                            for &p6 in &b {
                                if p6 == p5 {
                                    continue;
                                }
                                let Ok(m2) = design.block_through(p4, p6) else {
                                    continue;
                                };
                                if let Some(p2) = meet(design, m1, m2) {
                                    let mut blocks = [l1, l2, m1, m2];
                                    blocks.sort_unstable();
                                    let conf = PaschConfiguration {
                                        points: [p1, p2, p3, p4, p5, p6],
                                        blocks,
                                    };
                                    if !found(conf) {
                                        return;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Some Pasch configuration, or `None` when the design is anti-Pasch.
pub fn find_pasch(design: &Design) -> Option<PaschConfiguration> {
    let mut witness = None;
    scan_pasch(design, &mut |c| {
        witness = Some(c);
        false
    });
    witness
}

pub fn is_anti_pasch(design: &Design) -> bool {
    find_pasch(design).is_none()
}

/// Largest number of configurations [`pasch_configurations`] will collect.
pub const PASCH_LIMIT: usize = 20_000;

/// All Pasch configurations, one per set of four blocks, ordered by block
/// quadruple. Empty when there are more than [`PASCH_LIMIT`] of them.
pub fn pasch_configurations(design: &Design) -> Vec<PaschConfiguration> {
    let mut by_blocks = std::collections::BTreeMap::new();
    let mut overflow = false;
    scan_pasch(design, &mut |c| {
        by_blocks.entry(c.blocks).or_insert(c);
        if by_blocks.len() > PASCH_LIMIT {
            overflow = true;
            return false;
        }
        true
    });
    if overflow {
        return Vec::new();
    }
    by_blocks.into_values().collect()
}
