//! Steiner 2-(n,k,1) designs and the objects derived from a fixed block.
//!
//! A [`Design`] is deliberately allowed to be invalid: [`Design::validate`]
//! collects every defect instead of failing on the first one, which is what
//! an import pipeline wants. Operations that need the Steiner property
//! (pencils, derived systems, the structured matrix) assume a valid design.

use std::fmt;

use crate::coloring::BlockColoring;
use crate::error::{Error, Result};

const NO_BLOCK: u32 = u32::MAX;

/// Points are `0..n`; each block is stored sorted.
///
/// The block list keeps the order it was built with. [`Design::normalized`]
/// sorts it, which is what import and the generators hand out; the
/// paramodification transform rewrites blocks in place so that block `i` of
/// the result corresponds to block `i` of the source.
#[derive(Clone)]
pub struct Design {
    n: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
    // n*n table: index of the (first) block through a pair, NO_BLOCK if none.
    pairs: Vec<u32>,
    through: Vec<Vec<usize>>,
}

impl PartialEq for Design {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.blocks == other.blocks
    }
}

impl Eq for Design {}

impl std::hash::Hash for Design {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.k.hash(state);
        self.blocks.hash(state);
    }
}

impl fmt::Debug for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Design")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl Design {
    /// Builds a design from raw blocks. Points inside each block are sorted;
    /// the order of the blocks is kept.
    pub fn new(n: usize, k: usize, blocks: Vec<Vec<usize>>) -> Design {
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        let mut pairs = vec![NO_BLOCK; n * n];
        let mut through = vec![Vec::new(); n];
        for (i, block) in blocks.iter().enumerate() {
            for (a, &p) in block.iter().enumerate() {
                if p >= n {
                    continue;
                }
                if through[p].last() != Some(&i) {
                    through[p].push(i);
                }
                for &q in &block[a + 1..] {
                    if q >= n || q == p {
                        continue;
                    }
                    if pairs[p * n + q] == NO_BLOCK {
                        pairs[p * n + q] = i as u32;
                        pairs[q * n + p] = i as u32;
                    }
                }
            }
        }
        Design {
            n,
            k,
            blocks,
            pairs,
            through,
        }
    }

    /// Same design with the block list sorted lexicographically.
    pub fn normalized(&self) -> Design {
        let mut blocks = self.blocks.clone();
        blocks.sort();
        Design::new(self.n, self.k, blocks)
    }

    pub fn is_normalized(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> Result<&[usize]> {
        self.blocks
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::BlockOutOfRange {
                index,
                count: self.blocks.len(),
            })
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Indices of the blocks containing `point`, ascending.
    pub fn blocks_through(&self, point: usize) -> &[usize] {
        &self.through[point]
    }

    pub fn contains(&self, block: usize, point: usize) -> bool {
        self.blocks[block].binary_search(&point).is_ok()
    }

    /// Number of blocks through a point, `(n-1)/(k-1)`.
    ///
    /// Fails when the parameters do not admit a Steiner 2-design, i.e. when
    /// the quotient is not an integer.
    pub fn replication_number(&self) -> Result<usize> {
        replication_number(self.n, self.k)
    }

    /// The unique block through two distinct points.
    pub fn block_through(&self, p: usize, q: usize) -> Result<usize> {
        if p == q {
            return Err(Error::SamePoint(p));
        }
        for x in [p, q] {
            if x >= self.n {
                return Err(Error::PointOutOfRange {
                    point: x,
                    n: self.n,
                });
            }
        }
        match self.pairs[p * self.n + q] {
            NO_BLOCK => Err(Error::PairNotCovered(p, q)),
            b => Ok(b as usize),
        }
    }

    /// Checks every Steiner 2-(n,k,1) axiom and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let (n, k) = (self.n, self.k);
        let mut violations = Vec::new();

        if k < 2 || n < k {
            violations.push(Violation::Parameters { n, k });
        } else {
            if (n - 1) % (k - 1) != 0 {
                violations.push(Violation::NonIntegralReplication { n, k });
            }
            let num = n * (n - 1);
            let den = k * (k - 1);
            if num % den != 0 || num / den != self.blocks.len() {
                violations.push(Violation::BlockCount {
                    expected: (num % den == 0).then_some(num / den),
                    actual: self.blocks.len(),
                });
            }
        }

        let mut cover = vec![0u32; n * n];
        for (i, block) in self.blocks.iter().enumerate() {
            if block.len() != k {
                violations.push(Violation::BlockSize {
                    block: i,
                    size: block.len(),
                });
            }
            for w in block.windows(2) {
                if w[0] == w[1] {
                    violations.push(Violation::RepeatedPoint {
                        block: i,
                        point: w[0],
                    });
                }
            }
            for &p in block {
                if p >= n {
                    violations.push(Violation::PointOutOfRange { block: i, point: p });
                }
            }
            for (a, &p) in block.iter().enumerate() {
                for &q in &block[a + 1..] {
                    if p < n && q < n && p != q {
                        cover[p * n + q] += 1;
                    }
                }
            }
        }
        for p in 0..n {
            for q in p + 1..n {
                match cover[p * n + q] {
                    1 => {}
                    0 => violations.push(Violation::PairUncovered { p, q }),
                    times => violations.push(Violation::PairCoveredTwice { p, q, times }),
                }
            }
        }
        ValidationReport { violations }
    }

    /// Fails with [`Error::Invalid`] listing the first few violations.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(report.summary(5)))
        }
    }

    /// The pencil `C(b)`: blocks meeting `b` in exactly one point.
    pub fn pencil(&self, b: usize) -> Result<BlockPencil> {
        let base = self.block(b)?;
        let mut members = Vec::new();
        let mut anchor = Vec::new();
        for (i, block) in self.blocks.iter().enumerate() {
            if i == b {
                continue;
            }
            let mut shared = block.iter().filter(|p| base.binary_search(p).is_ok());
            if let (Some(&p), None) = (shared.next(), shared.next()) {
                members.push(i);
                anchor.push(p);
            }
        }
        Ok(BlockPencil {
            base: b,
            base_points: base.to_vec(),
            members,
            anchor,
        })
    }

    /// The derived system `D_b` on the points off `b`.
    pub fn derived_system(&self, b: usize) -> Result<DerivedSystem> {
        let pencil = self.pencil(b)?;
        let outside_points: Vec<usize> = (0..self.n)
            .filter(|p| pencil.base_points.binary_search(p).is_err())
            .collect();
        let restricted_blocks = pencil
            .members
            .iter()
            .zip(&pencil.anchor)
            .map(|(&m, &a)| self.blocks[m].iter().copied().filter(|&p| p != a).collect())
            .collect();
        Ok(DerivedSystem {
            n: self.n,
            outside_points,
            pencil,
            restricted_blocks,
        })
    }

    /// Plain point-by-block incidence matrix, rows are points.
    pub fn incidence_matrix(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.blocks.len()]; self.n];
        for (j, block) in self.blocks.iter().enumerate() {
            for &p in block {
                m[p][j] = true;
            }
        }
        m
    }

    /// Incidence matrix with rows and columns arranged around block `b`.
    pub fn structured_matrix(&self, b: usize) -> Result<StructuredIncidenceMatrix> {
        let pencil = self.pencil(b)?;
        let mut rows = pencil.base_points.clone();
        rows.extend((0..self.n).filter(|p| pencil.base_points.binary_search(p).is_err()));

        let mut cols = Vec::with_capacity(self.blocks.len());
        for &point in &pencil.base_points {
            cols.extend(pencil.anchored_at(point));
        }
        let pencil_len = cols.len();
        cols.push(b);
        let mut in_front = vec![false; self.blocks.len()];
        for &c in &cols {
            in_front[c] = true;
        }
        cols.extend((0..self.blocks.len()).filter(|&j| !in_front[j]));

        Ok(StructuredIncidenceMatrix::build(
            self, rows, cols, self.k, pencil_len,
        ))
    }
}

/// `(n-1)/(k-1)`, or an error when it is not a whole number.
pub fn replication_number(n: usize, k: usize) -> Result<usize> {
    if k < 2 || n < k {
        return Err(Error::Parameters {
            n,
            k,
            reason: "need 2 <= k <= n".into(),
        });
    }
    if !(n - 1).is_multiple_of(k - 1) {
        return Err(Error::Parameters {
            n,
            k,
            reason: format!("(n-1)/(k-1) = {}/{} is not an integer", n - 1, k - 1),
        });
    }
    Ok((n - 1) / (k - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Parameters {
        n: usize,
        k: usize,
    },
    NonIntegralReplication {
        n: usize,
        k: usize,
    },
    BlockCount {
        expected: Option<usize>,
        actual: usize,
    },
    BlockSize {
        block: usize,
        size: usize,
    },
    RepeatedPoint {
        block: usize,
        point: usize,
    },
    PointOutOfRange {
        block: usize,
        point: usize,
    },
    PairUncovered {
        p: usize,
        q: usize,
    },
    PairCoveredTwice {
        p: usize,
        q: usize,
        times: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Parameters { n, k } => write!(f, "parameters n={n}, k={k} out of range"),
            Violation::NonIntegralReplication { n, k } => {
                write!(
                    f,
                    "replication number (n-1)/(k-1) is not an integer for n={n}, k={k}"
                )
            }
            Violation::BlockCount {
                expected: Some(e),
                actual,
            } => write!(f, "block count {actual}, expected {e}"),
            Violation::BlockCount {
                expected: None,
                actual,
            } => write!(
                f,
                "block count {actual}, but n(n-1)/(k(k-1)) is not an integer"
            ),
            Violation::BlockSize { block, size } => write!(f, "block {block} has {size} points"),
            Violation::RepeatedPoint { block, point } => {
                write!(f, "block {block} repeats point {point}")
            }
            Violation::PointOutOfRange { block, point } => {
                write!(f, "block {block} has point {point} out of range")
            }
            Violation::PairUncovered { p, q } => write!(f, "pair {{{p},{q}}} covered zero times"),
            Violation::PairCoveredTwice { p, q, times } => {
                write!(f, "pair {{{p},{q}}} covered twice ({times} blocks)")
            }
        }
    }
}

/// Result of [`Design::validate`]; empty iff the design is a Steiner 2-design.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self, limit: usize) -> String {
        let mut parts: Vec<String> = self
            .violations
            .iter()
            .take(limit)
            .map(ToString::to_string)
            .collect();
        if self.violations.len() > limit {
            parts.push(format!("... {} more", self.violations.len() - limit));
        }
        parts.join("; ")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Blocks meeting a base block in exactly one point, with that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPencil {
    pub base: usize,
    /// The points of the base block, sorted.
    pub base_points: Vec<usize>,
    /// Block indices, ascending.
    pub members: Vec<usize>,
    /// `anchor[i]` is the point shared by `members[i]` and the base block.
    pub anchor: Vec<usize>,
}

impl BlockPencil {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of a block in `members`.
    pub fn position(&self, block: usize) -> Option<usize> {
        self.members.binary_search(&block).ok()
    }

    /// Members whose anchor is `point`, in ascending block order.
    pub fn anchored_at(&self, point: usize) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .zip(&self.anchor)
            .filter(move |(_, &a)| a == point)
            .map(|(&m, _)| m)
    }

    /// The trivial coloring: every member gets its anchor point.
    pub fn trivial_coloring(&self) -> BlockColoring {
        BlockColoring::new(self.clone(), self.anchor.clone())
    }

    /// The anchor classes as sets of member positions, in base-point order.
    pub fn anchor_classes(&self) -> Vec<Vec<usize>> {
        self.base_points
            .iter()
            .map(|&p| (0..self.len()).filter(|&i| self.anchor[i] == p).collect())
            .collect()
    }
}

/// `D_b`: the points off `b` together with the pencil blocks restricted to them.
#[derive(Debug, Clone)]
pub struct DerivedSystem {
    /// Point count of the ambient design.
    pub n: usize,
    pub outside_points: Vec<usize>,
    pub pencil: BlockPencil,
    /// `restricted_blocks[i]` is `members[i]` minus its anchor, sorted.
    pub restricted_blocks: Vec<Vec<usize>>,
}

impl DerivedSystem {
    pub fn k(&self) -> usize {
        self.pencil.base_points.len()
    }

    /// Number of restricted blocks in a parallel class, `(n-k)/(k-1)`.
    pub fn class_size(&self) -> usize {
        let k = self.k();
        if k < 2 {
            0
        } else {
            self.outside_points.len() / (k - 1)
        }
    }

    /// For each ambient point, the member positions through it.
    pub fn members_through(&self) -> Vec<Vec<usize>> {
        let mut through = vec![Vec::new(); self.n];
        for (i, block) in self.restricted_blocks.iter().enumerate() {
            for &p in block {
                through[p].push(i);
            }
        }
        through
    }

    /// True when every outside point lies on exactly k restricted blocks.
    pub fn is_regular(&self) -> bool {
        let k = self.k();
        let through = self.members_through();
        self.outside_points.iter().all(|&p| through[p].len() == k)
            && self.restricted_blocks.iter().all(|b| b.len() + 1 == k)
    }
}

/// Incidence matrix with the points of `b` first and the pencil grouped by
/// anchor point, followed by `b` itself and then every other block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredIncidenceMatrix {
    /// Point index for each row.
    pub rows: Vec<usize>,
    /// Block index for each column.
    pub cols: Vec<usize>,
    pub bits: Vec<Vec<bool>>,
    k: usize,
    pencil_len: usize,
}

impl StructuredIncidenceMatrix {
    fn build(
        design: &Design,
        rows: Vec<usize>,
        cols: Vec<usize>,
        k: usize,
        pencil_len: usize,
    ) -> StructuredIncidenceMatrix {
        let bits = rows
            .iter()
            .map(|&p| cols.iter().map(|&c| design.contains(c, p)).collect())
            .collect();
        StructuredIncidenceMatrix {
            rows,
            cols,
            bits,
            k,
            pencil_len,
        }
    }

    /// Incidence of `other` laid out with this matrix's row and column order.
    pub fn project(&self, other: &Design) -> StructuredIncidenceMatrix {
        Self::build(
            other,
            self.rows.clone(),
            self.cols.clone(),
            self.k,
            self.pencil_len,
        )
    }

    /// Size of the top-left corner that may change: `k` by `k(r-1)`.
    pub fn corner(&self) -> (usize, usize) {
        (self.k, self.pencil_len)
    }

    /// Whether the top-left corner is the block-diagonal all-ones pattern
    /// and the column of the base block is ones on top, zeros below.
    pub fn has_structured_corner(&self) -> bool {
        let k = self.k;
        if k == 0 || !self.pencil_len.is_multiple_of(k) {
            return false;
        }
        let width = self.pencil_len / k;
        let corner_ok =
            (0..k).all(|i| (0..self.pencil_len).all(|j| self.bits[i][j] == (j / width == i)));
        let base_col = self.pencil_len;
        let base_ok = self
            .bits
            .iter()
            .enumerate()
            .all(|(i, row)| row[base_col] == (i < k));
        corner_ok && base_ok
    }

    /// Cells (row, column) where the two matrices differ.
    pub fn differences(&self, other: &StructuredIncidenceMatrix) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, (a, b)) in self.bits.iter().zip(&other.bits).enumerate() {
            for (j, (x, y)) in a.iter().zip(b).enumerate() {
                if x != y {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Undo the row/column permutation, giving the plain incidence matrix.
    pub fn to_plain(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.cols.len()]; self.rows.len()];
        for (i, &p) in self.rows.iter().enumerate() {
            for (j, &c) in self.cols.iter().enumerate() {
                m[p][c] = self.bits[i][j];
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{affine_plane, projective_plane};

    fn fano() -> Design {
        projective_plane(2).unwrap()
    }

    #[test]
    fn fano_is_valid() {
        assert!(fano().validate().is_valid());
    }

    #[test]
    fn duplicated_block_is_reported_twice_covered() {
        let d = fano();
        let mut blocks = d.blocks().to_vec();
        blocks.push(blocks[0].clone());
        let report = Design::new(7, 3, blocks).validate();
        assert!(!report.is_valid());
        let twice = report
            .violations
            .iter()
            .filter(|v| matches!(v, Violation::PairCoveredTwice { .. }))
            .count();
        assert_eq!(twice, 3);
        assert!(report.to_string().contains("covered twice"));
    }

    #[test]
    fn deleted_block_leaves_three_pairs_uncovered() {
        let d = affine_plane(3).unwrap();
        let mut blocks = d.blocks().to_vec();
        let gone = blocks.remove(4);
        let report = Design::new(9, 3, blocks).validate();
        let uncovered: Vec<_> = report
            .violations
            .iter()
            .filter_map(|v| match v {
                Violation::PairUncovered { p, q } => Some((*p, *q)),
                _ => None,
            })
            .collect();
        assert_eq!(uncovered.len(), 3);
        for (p, q) in uncovered {
            assert!(gone.contains(&p) && gone.contains(&q));
        }
        assert!(report.to_string().contains("covered zero times"));
    }

    #[test]
    fn out_of_range_and_wrong_size_are_reported() {
        let report = Design::new(7, 3, vec![vec![0, 1, 9], vec![2, 3]]).validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PointOutOfRange { point: 9, .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::BlockSize { block: 1, size: 2 })));
    }

    #[test]
    fn replication_numbers() {
        assert_eq!(replication_number(7, 3).unwrap(), 3);
        assert_eq!(replication_number(9, 3).unwrap(), 4);
        assert_eq!(replication_number(28, 4).unwrap(), 9);
        assert!(replication_number(8, 3).is_err());
        let d = affine_plane(3).unwrap();
        assert_eq!(
            d.replication_number().unwrap(),
            d.num_blocks() * d.k() / d.n()
        );
    }

    #[test]
    fn block_through_known_block() {
        let d = fano();
        for (i, block) in d.blocks().iter().enumerate() {
            assert_eq!(d.block_through(block[0], block[2]).unwrap(), i);
            assert_eq!(d.block_through(block[2], block[1]).unwrap(), i);
        }
        assert!(matches!(d.block_through(3, 3), Err(Error::SamePoint(3))));
        assert!(d.block_through(0, 7).is_err());
    }

    #[test]
    fn block_through_counts_every_block_k_choose_2_times() {
        let d = affine_plane(4).unwrap();
        let mut hits = vec![0; d.num_blocks()];
        for p in 0..d.n() {
            for q in p + 1..d.n() {
                hits[d.block_through(p, q).unwrap()] += 1;
            }
        }
        assert!(hits.iter().all(|&h| h == 6));
    }

    #[test]
    fn block_through_agrees_with_linear_scan() {
        let d = affine_plane(4).unwrap();
        for p in 0..d.n() {
            for q in 0..d.n() {
                if p == q {
                    continue;
                }
                let scan = d
                    .blocks()
                    .iter()
                    .position(|b| b.contains(&p) && b.contains(&q))
                    .unwrap();
                assert_eq!(d.block_through(p, q).unwrap(), scan);
            }
        }
    }

    #[test]
    fn fano_pencil() {
        let d = fano();
        for b in 0..d.num_blocks() {
            let pencil = d.pencil(b).unwrap();
            assert_eq!(pencil.len(), 6);
            for &p in &pencil.base_points {
                assert_eq!(pencil.anchored_at(p).count(), 2);
            }
        }
        assert!(matches!(
            d.pencil(7),
            Err(Error::BlockOutOfRange { index: 7, count: 7 })
        ));
    }

    #[test]
    fn affine_pencil_and_derived_system() {
        let d = affine_plane(3).unwrap();
        let b = 0;
        assert_eq!(d.pencil(b).unwrap().len(), 9);
        let ds = d.derived_system(b).unwrap();
        assert_eq!(ds.outside_points.len(), 6);
        assert_eq!(ds.restricted_blocks.len(), 9);
        assert!(ds.is_regular());

        // D_b is K_{3,3} between the two lines parallel to b: the pairs inside
        // each parallel line are exactly the non-edges.
        let base: Vec<usize> = d.block(b).unwrap().to_vec();
        let parallels: Vec<&Vec<usize>> = d
            .blocks()
            .iter()
            .filter(|blk| blk.iter().all(|p| !base.contains(p)))
            .collect();
        assert_eq!(parallels.len(), 2);
        let out = &ds.outside_points;
        let mut edges = 0;
        for (i, &p) in out.iter().enumerate() {
            for &q in &out[i + 1..] {
                let is_edge = ds.restricted_blocks.iter().any(|e| e == &vec![p, q]);
                let same_side = parallels.iter().any(|l| l.contains(&p) && l.contains(&q));
                assert_eq!(is_edge, !same_side);
                edges += is_edge as usize;
            }
        }
        assert_eq!(edges, 9);
    }

    #[test]
    fn fano_derived_system_is_a_graph() {
        let ds = fano().derived_system(2).unwrap();
        assert_eq!(ds.outside_points.len(), 4);
        assert_eq!(ds.restricted_blocks.len(), 6);
        assert!(ds.restricted_blocks.iter().all(|e| e.len() == 2));
        assert_eq!(ds.class_size(), 2);
    }

    #[test]
    fn trivial_coloring_class_sizes() {
        let d = affine_plane(3).unwrap();
        let c = d.pencil(5).unwrap().trivial_coloring();
        let classes = c.classes();
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|cl| cl.len() == 3));
    }

    #[test]
    fn structured_matrix_shape() {
        let d = fano();
        let m = d.structured_matrix(3).unwrap();
        assert_eq!((m.rows.len(), m.cols.len()), (7, 7));
        assert_eq!(m.corner(), (3, 6));
        assert!(m.has_structured_corner());
        assert_eq!(m.to_plain(), d.incidence_matrix());

        let ag = affine_plane(3).unwrap();
        let m = ag.structured_matrix(0).unwrap();
        assert_eq!((m.rows.len(), m.cols.len()), (9, 12));
        assert_eq!(m.corner(), (3, 9));
        assert!(m.has_structured_corner());
        assert_eq!(m.to_plain(), ag.incidence_matrix());
    }
}
