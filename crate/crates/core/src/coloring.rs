//! Block colorings of the derived system `D_b`.
//!
//! A proper block coloring of `D_b` with `k` colors is the same thing as a
//! resolution of `D_b` into `k` parallel classes together with a bijection
//! from classes to the points of `b`. Enumeration therefore works on
//! [`Resolution`]s; a [`BlockColoring`] is recovered with
//! [`coloring_from_resolution`].
//!
//! Two independent enumerators are provided. [`enumerate_resolutions`] first
//! lists every parallel class (an independent set of size `K` in the line
//! graph) and then solves the exact-cover problem over those classes.
//! [`enumerate_resolutions_bruteforce`] assigns colors to pencil members one
//! at a time and exists as an oracle for the first.

use std::collections::{BTreeSet, HashMap};

use crate::bitset::BitSet;
use crate::canon;
use crate::design::{BlockPencil, DerivedSystem, Design};
use crate::error::{Error, Result};

/// Colors of the pencil members, indexed like `pencil.members`; every color
/// is a point of the base block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockColoring {
    pencil: BlockPencil,
    colors: Vec<usize>,
}

impl BlockColoring {
    pub fn new(pencil: BlockPencil, colors: Vec<usize>) -> BlockColoring {
        assert_eq!(pencil.len(), colors.len(), "one color per pencil member");
        BlockColoring { pencil, colors }
    }

    pub fn pencil(&self) -> &BlockPencil {
        &self.pencil
    }

    pub fn base(&self) -> usize {
        self.pencil.base
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Color of a design block, if it is a pencil member.
    pub fn color_of(&self, block: usize) -> Option<usize> {
        self.pencil.position(block).map(|i| self.colors[i])
    }

    /// Member positions per point of the base block, in base-point order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.pencil
            .base_points
            .iter()
            .map(|&p| {
                (0..self.colors.len())
                    .filter(|&i| self.colors[i] == p)
                    .collect()
            })
            .collect()
    }

    /// The color classes as sets of design blocks, sorted; this forgets
    /// which color each class had.
    pub fn partition(&self) -> Resolution {
        let mut by_color: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &c) in self.colors.iter().enumerate() {
            by_color.entry(c).or_default().push(self.pencil.members[i]);
        }
        Resolution::new(by_color.into_values().collect())
    }

    /// Adjacent members get different colors and every color is a base point.
    pub fn is_proper(&self, graph: &LineGraph) -> bool {
        self.colors
            .iter()
            .all(|c| self.pencil.base_points.binary_search(c).is_ok())
            && (0..self.colors.len())
                .all(|v| graph.neighbors(v).all(|u| self.colors[u] != self.colors[v]))
    }
}

/// A partition of the pencil into parallel classes of `D_b`, as sorted sets
/// of design block indices. Classes are sorted, so equal partitions compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Resolution {
    pub classes: Vec<Vec<usize>>,
}

impl Resolution {
    pub fn new(classes: Vec<Vec<usize>>) -> Resolution {
        let mut classes = classes;
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort();
        Resolution { classes }
    }

    /// The anchor partition of a pencil.
    pub fn trivial(pencil: &BlockPencil) -> Resolution {
        Resolution::new(
            pencil
                .anchor_classes()
                .into_iter()
                .map(|c| c.into_iter().map(|i| pencil.members[i]).collect())
                .collect(),
        )
    }

    pub fn is_trivial(&self, pencil: &BlockPencil) -> bool {
        *self == Resolution::trivial(pencil)
    }

    /// `class1;class2;...` with comma-separated block indices.
    pub fn to_line(&self) -> String {
        self.classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Line graph of `D_b`: pencil members, adjacent when they share a point off `b`.
#[derive(Debug, Clone)]
pub struct LineGraph {
    adj: Vec<BitSet>,
}

impl LineGraph {
    pub fn new(ds: &DerivedSystem) -> LineGraph {
        let m = ds.restricted_blocks.len();
        let mut adj = vec![BitSet::new(m); m];
        for members in ds.members_through() {
            for &a in &members {
                for &b in &members {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        LineGraph { adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter()
    }

    pub fn neighborhood(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Whether every vertex has degree `d`.
    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.order()).all(|v| self.degree(v) == d)
    }
}

pub fn line_graph(ds: &DerivedSystem) -> LineGraph {
    LineGraph::new(ds)
}

/// Search state shared by the parallel-class and resolution enumerators.
struct Arena {
    m: usize,
    graph: LineGraph,
    // ambient point -> members through it (bit set over member positions)
    through: Vec<BitSet>,
    outside: BitSet,
    restricted: Vec<Vec<usize>>,
}

impl Arena {
    fn new(ds: &DerivedSystem) -> Arena {
        let m = ds.restricted_blocks.len();
        let through = ds
            .members_through()
            .into_iter()
            .map(|v| BitSet::from_indices(m, v))
            .collect();
        Arena {
            m,
            graph: LineGraph::new(ds),
            through,
            outside: BitSet::from_indices(ds.n, ds.outside_points.iter().copied()),
            restricted: ds.restricted_blocks.clone(),
        }
    }

    /// Every independent set whose restricted blocks cover the outside
    /// points exactly once. Classes come out as member bit sets.
    fn parallel_classes(&self) -> Vec<BitSet> {
        let mut out = Vec::new();
        let mut chosen = BitSet::new(self.m);
        let mut allowed = BitSet::new(self.m);
        for v in 0..self.m {
            allowed.insert(v);
        }
        self.extend_class(&mut chosen, &allowed, &self.outside.clone(), &mut out);
        out
    }

    fn extend_class(
        &self,
        chosen: &mut BitSet,
        allowed: &BitSet,
        uncovered: &BitSet,
        out: &mut Vec<BitSet>,
    ) {
        let Some(point) = uncovered.first() else {
            out.push(chosen.clone());
            return;
        };
        let candidates = self.through[point].intersection(allowed);
        for v in candidates.iter() {
            let mut next_allowed = allowed.clone();
            next_allowed.difference_with(self.graph.neighborhood(v));
            next_allowed.remove(v);
            let mut next_uncovered = uncovered.clone();
            for &p in &self.restricted[v] {
                next_uncovered.remove(p);
            }
            chosen.insert(v);
            self.extend_class(chosen, &next_allowed, &next_uncovered, out);
            chosen.remove(v);
        }
    }

    /// Exact covers of the members by `k` parallel classes. Calls `visit`
    /// with the chosen classes (indices into `classes`) in search order.
    fn resolutions(
        &self,
        classes: &[BitSet],
        first_level: Option<&[usize]>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let mut by_least: Vec<Vec<usize>> = vec![Vec::new(); self.m];
        for (i, c) in classes.iter().enumerate() {
            if let Some(least) = c.first() {
                by_least[least].push(i);
            }
        }
        if let Some(first) = first_level {
            // restrict the class through member 0
            let keep: BTreeSet<usize> = first.iter().copied().collect();
            if !by_least.is_empty() {
                by_least[0].retain(|i| keep.contains(i));
            }
        }
        let mut covered = BitSet::new(self.m);
        let mut stack = Vec::new();
        self.cover(classes, &by_least, &mut covered, &mut stack, visit);
    }

    fn cover(
        &self,
        classes: &[BitSet],
        by_least: &[Vec<usize>],
        covered: &mut BitSet,
        stack: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let Some(least) = (0..self.m).find(|&v| !covered.contains(v)) else {
            visit(stack);
            return;
        };
        for &ci in &by_least[least] {
            let class = &classes[ci];
            if !class.is_disjoint(covered) {
                continue;
            }
            covered.union_with(class);
            stack.push(ci);
            self.cover(classes, by_least, covered, stack, visit);
            stack.pop();
            covered.difference_with(class);
        }
    }
}

fn members_to_blocks(ds: &DerivedSystem, set: &BitSet) -> Vec<usize> {
    set.iter().map(|i| ds.pencil.members[i]).collect()
}

/// All parallel classes of `D_b`: independent sets of size `K` in the line
/// graph whose restricted blocks partition the outside points. Each class is
/// a sorted list of design block indices.
pub fn parallel_classes(ds: &DerivedSystem) -> Vec<Vec<usize>> {
    let arena = Arena::new(ds);
    arena
        .parallel_classes()
        .iter()
        .map(|c| members_to_blocks(ds, c))
        .collect()
}

/// Every resolution of `D_b`, each exactly once, in search order.
pub fn enumerate_resolutions(ds: &DerivedSystem) -> Vec<Resolution> {
    let arena = Arena::new(ds);
    let classes = arena.parallel_classes();
    let mut out = Vec::new();
    arena.resolutions(&classes, None, &mut |chosen| {
        out.push(Resolution::new(
            chosen
                .iter()
                .map(|&ci| members_to_blocks(ds, &classes[ci]))
                .collect(),
        ));
    });
    out
}

/// Symmetries of a pencil: the stabilizer of the base block in the design's
/// automorphism group, acting on member positions.
#[derive(Debug, Clone)]
pub struct PencilSymmetry {
    /// Every group element as a permutation of member positions.
    elements: Vec<Vec<usize>>,
}

/// Largest stabilizer we are willing to list element by element.
pub const MAX_STABILIZER_ORDER: u128 = 200_000;

impl PencilSymmetry {
    /// Stabilizer of block `b`; `None` when it is larger than
    /// [`MAX_STABILIZER_ORDER`].
    pub fn new(design: &Design, b: usize) -> Result<Option<PencilSymmetry>> {
        let pencil = design.pencil(b)?;
        let group = canon::block_stabilizer(design, b)?;
        if group.order > MAX_STABILIZER_ORDER {
            return Ok(None);
        }
        let to_member = |g: &[usize]| -> Vec<usize> {
            pencil
                .members
                .iter()
                .map(|&blk| {
                    let image: Vec<usize> = design.blocks()[blk].iter().map(|&p| g[p]).collect();
                    let target = design
                        .block_through(image[0], image[1])
                        .expect("automorphism maps pairs to covered pairs");
                    pencil
                        .position(target)
                        .expect("stabilizer of b preserves the pencil")
                })
                .collect()
        };
        let elements = group
            .elements()
            .iter()
            .map(|g| to_member(g))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(Some(PencilSymmetry { elements }))
    }

    /// Builds the symmetry from explicit member permutations (the full group,
    /// not generators). Mostly for tests.
    pub fn from_elements(elements: Vec<Vec<usize>>) -> PencilSymmetry {
        PencilSymmetry { elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn image_of(g: &[usize], classes: &[BitSet], m: usize) -> Vec<BitSet> {
    let mut img: Vec<BitSet> = classes
        .iter()
        .map(|c| BitSet::from_indices(m, c.iter().map(|v| g[v])))
        .collect();
    img.sort();
    img
}

/// One resolution per orbit of the pencil symmetry group, with orbit sizes.
///
/// The class through member 0 is restricted to representatives of the
/// orbits of its stabilizer; the remaining duplicates are removed by
/// comparing least images. Each representative is the least element of its
/// orbit, so the output does not depend on search order. Without `symmetry`
/// this is [`enumerate_resolutions`] with every orbit of size 1.
pub fn enumerate_resolutions_with(
    ds: &DerivedSystem,
    symmetry: Option<&PencilSymmetry>,
) -> Vec<(Resolution, u64)> {
    let Some(sym) = symmetry else {
        return enumerate_resolutions(ds)
            .into_iter()
            .map(|r| (r, 1))
            .collect();
    };
    let arena = Arena::new(ds);
    let m = arena.m;
    let classes = arena.parallel_classes();
    let index: HashMap<&BitSet, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();

    // orbit representatives among the classes through member 0 under the
    // stabilizer of member 0
    let stab0: Vec<&Vec<usize>> = sym
        .elements
        .iter()
        .filter(|g| m == 0 || g[0] == 0)
        .collect();
    let mut first_reps = Vec::new();
    let mut seen_first = BTreeSet::new();
    for (i, c) in classes.iter().enumerate() {
        if c.first() != Some(0) || seen_first.contains(&i) {
            continue;
        }
        first_reps.push(i);
        for g in &stab0 {
            let img = BitSet::from_indices(m, c.iter().map(|v| g[v]));
            if let Some(&j) = index.get(&img) {
                seen_first.insert(j);
            }
        }
    }

    let mut found: BTreeSet<Vec<BitSet>> = BTreeSet::new();
    let mut reps: Vec<(Vec<BitSet>, u64)> = Vec::new();
    arena.resolutions(&classes, Some(&first_reps), &mut |chosen| {
        let mut res: Vec<BitSet> = chosen.iter().map(|&ci| classes[ci].clone()).collect();
        res.sort();
        let mut least = res.clone();
        let mut fixers = 0u64;
        for g in &sym.elements {
            let img = image_of(g, &res, m);
            if img == res {
                fixers += 1;
            }
            if img < least {
                least = img;
            }
        }
        if found.insert(least.clone()) {
            reps.push((least, sym.elements.len() as u64 / fixers));
        }
    });
    let mut out: Vec<(Resolution, u64)> = reps
        .into_iter()
        .map(|(classes, size)| {
            (
                Resolution::new(classes.iter().map(|c| members_to_blocks(ds, c)).collect()),
                size,
            )
        })
        .collect();
    out.sort();
    out
}

/// Largest pencil the brute-force enumerator accepts.
pub const BRUTEFORCE_LIMIT: usize = 40;

/// Depth-first color assignment over the members in index order. A member
/// may take any color already in use or the next unused one, so each
/// partition is produced once. Only adjacency is consulted.
pub fn enumerate_resolutions_bruteforce(ds: &DerivedSystem) -> Result<Vec<Resolution>> {
    let m = ds.restricted_blocks.len();
    if m > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            size: m,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let k = ds.k();
    // plain adjacency lists straight from the restricted blocks
    let adj: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| {
                    b != a
                        && ds.restricted_blocks[a]
                            .iter()
                            .any(|p| ds.restricted_blocks[b].contains(p))
                })
                .collect()
        })
        .collect();

    fn go(
        v: usize,
        used: usize,
        k: usize,
        adj: &[Vec<usize>],
        color: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == adj.len() {
            if used == k {
                out.push(color.clone());
            }
            return;
        }
        for c in 0..(used + 1).min(k) {
            if adj[v].iter().any(|&u| u < v && color[u] == c) {
                continue;
            }
            color[v] = c;
            go(v + 1, used.max(c + 1), k, adj, color, out);
        }
        color[v] = usize::MAX;
    }

    let mut raw = Vec::new();
    let mut color = vec![usize::MAX; m];
    go(0, 0, k, &adj, &mut color, &mut raw);
    Ok(raw
        .into_iter()
        .map(|col| {
            Resolution::new(
                (0..k)
                    .map(|c| {
                        (0..m)
                            .filter(|&i| col[i] == c)
                            .map(|i| ds.pencil.members[i])
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect())
}

/// Colors class `i` of `resolution` with `assignment[i]`.
pub fn coloring_from_resolution(
    pencil: &BlockPencil,
    resolution: &Resolution,
    assignment: &[usize],
) -> Result<BlockColoring> {
    if assignment.len() != resolution.classes.len() {
        return Err(Error::NotBijective(format!(
            "{} colors for {} classes",
            assignment.len(),
            resolution.classes.len()
        )));
    }
    let mut targets = assignment.to_vec();
    targets.sort_unstable();
    if targets != pencil.base_points {
        return Err(Error::NotBijective(format!(
            "{assignment:?} vs base points {:?}",
            pencil.base_points
        )));
    }
    let mut colors = vec![usize::MAX; pencil.len()];
    for (class, &color) in resolution.classes.iter().zip(assignment) {
        for &blk in class {
            let i = pencil.position(blk).ok_or_else(|| {
                Error::ImproperColoring(format!("block {blk} is not in the pencil"))
            })?;
            if colors[i] != usize::MAX {
                return Err(Error::ImproperColoring(format!(
                    "block {blk} in two classes"
                )));
            }
            colors[i] = color;
        }
    }
    if let Some(i) = colors.iter().position(|&c| c == usize::MAX) {
        return Err(Error::ImproperColoring(format!(
            "block {} left uncolored",
            pencil.members[i]
        )));
    }
    Ok(BlockColoring::new(pencil.clone(), colors))
}

/// Class-to-point assignment that keeps anchor classes on their anchor.
///
/// Classes are matched greedily to the base point that anchors most of
/// their members; the trivial resolution gets the identity.
pub fn anchor_assignment(pencil: &BlockPencil, resolution: &Resolution) -> Vec<usize> {
    let k = resolution.classes.len();
    let mut overlaps: Vec<(usize, usize, usize)> = Vec::new();
    for (ci, class) in resolution.classes.iter().enumerate() {
        for &p in &pencil.base_points {
            let hits = class
                .iter()
                .filter(|&&blk| pencil.position(blk).map(|i| pencil.anchor[i]) == Some(p))
                .count();
            overlaps.push((hits, ci, p));
        }
    }
    // most overlap first; ties by class then point
    overlaps.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut assignment = vec![usize::MAX; k];
    let mut taken = BTreeSet::new();
    for (_, ci, p) in overlaps {
        if assignment[ci] == usize::MAX && !taken.contains(&p) {
            assignment[ci] = p;
            taken.insert(p);
        }
    }
    assignment
}

/// A proper coloring is a b-coloring when it uses `k` colors and every
/// class has a vertex seeing all the other colors.
pub fn is_b_coloring(graph: &LineGraph, coloring: &BlockColoring) -> bool {
    let k = coloring.pencil.base_points.len();
    if coloring.colors.len() != graph.order() || !coloring.is_proper(graph) {
        return false;
    }
    let used: BTreeSet<usize> = coloring.colors.iter().copied().collect();
    if used.len() != k {
        return false;
    }
    used.iter().all(|&color| {
        (0..graph.order()).any(|v| {
            coloring.colors[v] == color && {
                let seen: BTreeSet<usize> =
                    graph.neighbors(v).map(|u| coloring.colors[u]).collect();
                seen.len() == k - 1
            }
        })
    })
}

/// Same color classes, regardless of which color each class carries.
pub fn equivalent(a: &BlockColoring, b: &BlockColoring) -> Result<bool> {
    if a.pencil != b.pencil {
        return Err(Error::PencilMismatch(a.pencil.base, b.pencil.base));
    }
    Ok(a.partition() == b.partition())
}

/// True iff for every block the only resolution of `D_b` is the anchor one.
pub fn is_para_rigid(design: &Design) -> bool {
    (0..design.num_blocks()).all(|b| {
        let ds = design.derived_system(b).expect("block index in range");
        let all = enumerate_resolutions(&ds);
        all.len() == 1 && all[0].is_trivial(&ds.pencil)
    })
}
