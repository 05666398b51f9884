//! Canonical labeling, isomorphism and automorphisms of Steiner 2-designs.
//!
//! The design is viewed as its bipartite point-block incidence graph. A
//! partition of the vertices is refined to an equitable one (colour
//! refinement), points are individualized one at a time, and the search tree
//! is walked in the usual individualization-refinement fashion. Each leaf
//! fixes a relabeling of the points; the canonical form is the leaf with the
//! least (refinement trace, relabeled block list). Automorphisms found when
//! two leaves give the same relabeled design prune sibling subtrees, and the
//! generators found along the way give the automorphism group with its order.
//!
//! Between refinement rounds every point is also tagged with the cell
//! pattern of the Pasch configurations through it. Pasch configurations are
//! invisible to colour refinement and they break ties early on the
//! rigid designs that paramodification tends to produce.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use crate::design::Design;
use crate::error::Result;
use crate::io::{content_hash, write_design};
use crate::paramod::pasch_configurations;

/// The canonically relabeled design, serialized.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCertificate {
    pub n: usize,
    pub k: usize,
    /// Text serialization of the relabeled, normalized design.
    pub bytes: Vec<u8>,
}

impl CanonicalCertificate {
    /// SHA-256 of the certificate bytes, hex encoded.
    pub fn hash_hex(&self) -> String {
        hex::encode(Sha256::digest(&self.bytes))
    }
}

/// A point permutation group given by generators.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub order: u128,
}

impl AutomorphismGroup {
    /// Lists every element by closing the generators under composition.
    /// Only sensible for small groups.
    pub fn elements(&self) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..self.degree).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        let mut out = Vec::new();
        while let Some(g) = queue.pop_front() {
            for h in &self.generators {
                let gh: Vec<usize> = g.iter().map(|&x| h[x]).collect();
                if seen.insert(gh.clone()) {
                    queue.push_back(gh);
                }
            }
            out.push(g);
        }
        out
    }

    /// Point orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for (x, &y) in g.iter().enumerate() {
                uf.union(x, y);
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for x in 0..self.degree {
            groups.entry(uf.find(x)).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// Result of a full canonical labeling run.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub certificate: CanonicalCertificate,
    /// `labeling[p]` is the canonical label of point `p`.
    pub labeling: Vec<usize>,
    pub group: AutomorphismGroup,
}

pub fn canonical_form(design: &Design) -> CanonicalForm {
    let n = design.n();
    let (labeling, group) = run(design, None);
    let canon = relabel(design, &labeling).normalized();
    CanonicalForm {
        certificate: CanonicalCertificate {
            n,
            k: design.k(),
            bytes: write_design(&canon).into_bytes(),
        },
        labeling,
        group,
    }
}

pub fn canonical_certificate(design: &Design) -> CanonicalCertificate {
    canonical_form(design).certificate
}

/// Generators of the automorphism group (as point permutations) and its order.
pub fn automorphism_generators(design: &Design) -> AutomorphismGroup {
    run(design, None).1
}

/// Automorphisms mapping block `b` to itself.
pub fn block_stabilizer(design: &Design, b: usize) -> Result<AutomorphismGroup> {
    let base = design.block(b)?;
    let colors: Vec<u32> = (0..design.n())
        .map(|p| base.binary_search(&p).is_ok() as u32)
        .collect();
    Ok(run(design, Some(&colors)).1)
}

/// Applies a point permutation; block order is kept.
pub fn relabel(design: &Design, perm: &[usize]) -> Design {
    Design::new(
        design.n(),
        design.k(),
        design
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&p| perm[p]).collect())
            .collect(),
    )
}

/// Whether `perm` is a permutation of the points mapping blocks onto blocks.
pub fn is_automorphism(design: &Design, perm: &[usize]) -> bool {
    maps_onto(design, design, perm)
}

fn maps_onto(from: &Design, to: &Design, perm: &[usize]) -> bool {
    if from.n() != to.n() || from.k() != to.k() || perm.len() != from.n() {
        return false;
    }
    let mut seen = vec![false; from.n()];
    for &x in perm {
        if x >= from.n() || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    relabel(from, perm).normalized() == to.normalized()
}

/// A verified point bijection mapping the blocks of `a` onto those of `b`,
/// or `None` when the designs are not isomorphic.
pub fn isomorphism(a: &Design, b: &Design) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.k() != b.k() || a.num_blocks() != b.num_blocks() {
        return None;
    }
    let fa = canonical_form(a);
    let fb = canonical_form(b);
    if fa.certificate != fb.certificate {
        return None;
    }
    // b's labeling inverted, composed with a's
    let mut inv_b = vec![0; b.n()];
    for (p, &l) in fb.labeling.iter().enumerate() {
        inv_b[l] = p;
    }
    let bijection: Vec<usize> = fa.labeling.iter().map(|&l| inv_b[l]).collect();
    assert!(
        maps_onto(a, b, &bijection),
        "equal certificates must come with a block-preserving bijection"
    );
    Some(bijection)
}

pub fn are_isomorphic(a: &Design, b: &Design) -> bool {
    isomorphism(a, b).is_some()
}

/// Thread-safe memo of certificates keyed by design content hash.
#[derive(Debug, Default)]
pub struct CertificateCache {
    inner: Mutex<HashMap<String, Arc<CanonicalCertificate>>>,
}

impl CertificateCache {
    pub fn new() -> CertificateCache {
        CertificateCache::default()
    }

    pub fn certificate(&self, design: &Design) -> Arc<CanonicalCertificate> {
        let key = content_hash(design);
        if let Some(hit) = self.inner.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let cert = Arc::new(canonical_certificate(design));
        self.inner
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(cert)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(h << 6)
        .wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Incidence graph: vertices `0..n` are points, `n..n+b` blocks.
struct Graph {
    points: usize,
    adj: Vec<Vec<u32>>,
    // each Pasch configuration as its six points
    pasch: Vec<[u32; 6]>,
    // configurations through each point
    pasch_at: Vec<Vec<u32>>,
}

impl Graph {
    fn new(design: &Design) -> Graph {
        let n = design.n();
        let nv = n + design.num_blocks();
        let mut adj = vec![Vec::new(); nv];
        for (j, block) in design.blocks().iter().enumerate() {
            for &p in block {
                adj[p].push((n + j) as u32);
                adj[n + j].push(p as u32);
            }
        }
        let pasch: Vec<[u32; 6]> = pasch_configurations(design)
            .into_iter()
            .map(|c| c.points.map(|p| p as u32))
            .collect();
        let mut pasch_at = vec![Vec::new(); n];
        for (i, c) in pasch.iter().enumerate() {
            for &p in c {
                pasch_at[p as usize].push(i as u32);
            }
        }
        Graph {
            points: n,
            adj,
            pasch,
            pasch_at,
        }
    }

    fn order(&self) -> usize {
        self.adj.len()
    }
}

/// Ordered partition of the vertices. Cells are identified by their start
/// position in `lab`.
#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    cell_of: Vec<u32>,
    cell_end: Vec<u32>,
    cells: usize,
}

impl Partition {
    /// Cells ordered by `key`, which must be label-invariant.
    fn from_keys(keys: &[(u64, u64)]) -> Partition {
        let nv = keys.len();
        let mut lab: Vec<u32> = (0..nv as u32).collect();
        lab.sort_by_key(|&v| (keys[v as usize], v));
        let mut pos = vec![0u32; nv];
        let mut cell_of = vec![0u32; nv];
        let mut cell_end = vec![0u32; nv];
        let mut cells = 0;
        let mut start = 0;
        while start < nv {
            let mut end = start + 1;
            while end < nv && keys[lab[end] as usize] == keys[lab[start] as usize] {
                end += 1;
            }
            for i in start..end {
                cell_of[lab[i] as usize] = start as u32;
            }
            cell_end[start] = end as u32;
            cells += 1;
            start = end;
        }
        for (i, &v) in lab.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        Partition {
            lab,
            pos,
            cell_of,
            cell_end,
            cells,
        }
    }

    fn cell(&self, start: usize) -> &[u32] {
        &self.lab[start..self.cell_end[start] as usize]
    }

    fn cell_starts(&self, limit: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut s = 0;
        while s < limit {
            out.push(s);
            s = self.cell_end[s] as usize;
        }
        out
    }

    fn points_discrete(&self, points: usize) -> bool {
        let mut s = 0;
        while s < points {
            let e = self.cell_end[s] as usize;
            if e - s > 1 {
                return false;
            }
            s = e;
        }
        true
    }

    fn target_cell(&self, points: usize) -> Option<usize> {
        let mut s = 0;
        while s < points {
            let e = self.cell_end[s] as usize;
            if e - s > 1 {
                return Some(s);
            }
            s = e;
        }
        None
    }

    /// Splits cell `start` by `key` (ascending). Returns the fragment starts
    /// or `None` when the cell does not split.
    fn split(&mut self, start: usize, key: &[u64]) -> Option<Vec<usize>> {
        let end = self.cell_end[start] as usize;
        if end - start < 2 {
            return None;
        }
        let first = key[self.lab[start] as usize];
        if self.lab[start..end]
            .iter()
            .all(|&v| key[v as usize] == first)
        {
            return None;
        }
        self.lab[start..end].sort_by_key(|&v| (key[v as usize], v));
        let mut frags = Vec::new();
        let mut s = start;
        while s < end {
            let kv = key[self.lab[s] as usize];
            let mut e = s + 1;
            while e < end && key[self.lab[e] as usize] == kv {
                e += 1;
            }
            for i in s..e {
                let v = self.lab[i] as usize;
                self.cell_of[v] = s as u32;
                self.pos[v] = i as u32;
            }
            self.cell_end[s] = e as u32;
            frags.push(s);
            s = e;
        }
        self.cells += frags.len() - 1;
        Some(frags)
    }

    /// Moves `v` to the front of its cell as a singleton.
    fn individualize(&mut self, v: usize) -> (usize, usize) {
        let start = self.cell_of[v] as usize;
        let end = self.cell_end[start] as usize;
        let p = self.pos[v] as usize;
        let w = self.lab[start];
        self.lab.swap(start, p);
        self.pos[w as usize] = p as u32;
        self.pos[v] = start as u32;
        self.cell_end[start] = (start + 1) as u32;
        self.cell_end[start + 1] = end as u32;
        for i in start + 1..end {
            self.cell_of[self.lab[i] as usize] = (start + 1) as u32;
        }
        self.cells += 1;
        (start, start + 1)
    }
}

struct Refiner {
    counts: Vec<u64>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
    pasch_key: Vec<u64>,
}

impl Refiner {
    fn new(nv: usize) -> Refiner {
        Refiner {
            counts: vec![0; nv],
            touched: Vec::new(),
            in_queue: vec![false; nv],
            pasch_key: vec![0; nv],
        }
    }

    /// Colour refinement until equitable, alternated with the Pasch pattern
    /// split. Returns a hash of everything that happened.
    fn refine(&mut self, g: &Graph, part: &mut Partition, initial: &[usize]) -> u64 {
        let mut trace = 0x5151_u64;
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &c in initial {
            if !self.in_queue[c] {
                self.in_queue[c] = true;
                queue.push_back(c);
            }
        }
        loop {
            trace = mix(trace, self.equitable(g, part, &mut queue));
            if g.pasch.is_empty() || part.points_discrete(g.points) {
                break;
            }
            let (t, split) = self.pasch_split(g, part, &mut queue);
            trace = mix(trace, t);
            if !split {
                break;
            }
        }
        mix(trace, part.cells as u64)
    }

    fn enqueue(&mut self, queue: &mut VecDeque<usize>, c: usize) {
        if !self.in_queue[c] {
            self.in_queue[c] = true;
            queue.push_back(c);
        }
    }

    fn equitable(&mut self, g: &Graph, part: &mut Partition, queue: &mut VecDeque<usize>) -> u64 {
        let mut trace = 0u64;
        while let Some(w) = queue.pop_front() {
            self.in_queue[w] = false;
            let wend = part.cell_end[w] as usize;
            for i in w..wend {
                let v = part.lab[i] as usize;
                for &u in &g.adj[v] {
                    if self.counts[u as usize] == 0 {
                        self.touched.push(u);
                    }
                    self.counts[u as usize] += 1;
                }
            }
            let mut cells: Vec<usize> = self
                .touched
                .iter()
                .map(|&u| part.cell_of[u as usize] as usize)
                .collect();
            cells.sort_unstable();
            cells.dedup();
            trace = mix(trace, w as u64);
            for x in cells {
                let was_queued = self.in_queue[x];
                if let Some(frags) = part.split(x, &self.counts) {
                    trace = mix(trace, x as u64);
                    let mut largest = frags[0];
                    for &f in &frags {
                        let size = part.cell_end[f] as usize - f;
                        trace = mix(trace, size as u64);
                        trace = mix(trace, self.counts[part.lab[f] as usize]);
                        if size > part.cell_end[largest] as usize - largest {
                            largest = f;
                        }
                    }
                    for &f in &frags {
                        if was_queued || f != largest {
                            self.enqueue(queue, f);
                        }
                    }
                } else {
                    let c = self.counts[part.lab[x] as usize];
                    trace = mix(trace, c);
                }
            }
            for &u in &self.touched {
                self.counts[u as usize] = 0;
            }
            self.touched.clear();
        }
        trace
    }

    /// Tags each point with the multiset of cell patterns of the Pasch
    /// configurations through it and splits point cells accordingly.
    fn pasch_split(
        &mut self,
        g: &Graph,
        part: &mut Partition,
        queue: &mut VecDeque<usize>,
    ) -> (u64, bool) {
        for p in 0..g.points {
            let mut acc = 0u64;
            for &ci in &g.pasch_at[p] {
                let mut cells: [u32; 6] = g.pasch[ci as usize].map(|q| part.cell_of[q as usize]);
                cells.sort_unstable();
                let mut h = part.cell_of[p] as u64;
                for c in cells {
                    h = mix(h, c as u64);
                }
                // commutative sum over configurations
                acc = acc.wrapping_add(mix(h, 1));
            }
            self.pasch_key[p] = acc;
        }
        let mut trace = 0u64;
        let mut split = false;
        for s in part.cell_starts(g.points) {
            if let Some(frags) = part.split(s, &self.pasch_key) {
                split = true;
                trace = mix(trace, s as u64);
                for f in frags {
                    trace = mix(trace, (part.cell_end[f] as usize - f) as u64);
                    self.enqueue(queue, f);
                }
            }
        }
        (trace, split)
    }
}

struct Leaf {
    labels: Vec<u32>,
    cert: Vec<u32>,
    trace: Vec<u64>,
    path: Vec<u32>,
}

struct Search<'a> {
    g: &'a Graph,
    design: &'a Design,
    refiner: Refiner,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn leaf_cert(&self, labels: &[u32]) -> Vec<u32> {
        let k = self.design.k();
        let mut blocks: Vec<Vec<u32>> = self
            .design
            .blocks()
            .iter()
            .map(|b| {
                let mut l: Vec<u32> = b.iter().map(|&p| labels[p]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        blocks.sort_unstable();
        let mut out = Vec::with_capacity(blocks.len() * k);
        for b in blocks {
            out.extend(b);
        }
        out
    }

    fn automorphism(target: &Leaf, leaf: &Leaf) -> Vec<u32> {
        let mut inv = vec![0u32; target.labels.len()];
        for (p, &l) in target.labels.iter().enumerate() {
            inv[l as usize] = p as u32;
        }
        leaf.labels.iter().map(|&l| inv[l as usize]).collect()
    }

    fn record(&mut self, gen: Vec<u32>) {
        if gen.iter().enumerate().any(|(i, &x)| i as u32 != x) && !self.generators.contains(&gen) {
            self.generators.push(gen);
        }
    }

    fn at_leaf(&mut self, part: &Partition, path: &[u32], traces: &[u64]) -> Option<usize> {
        let labels: Vec<u32> = (0..self.g.points).map(|p| part.pos[p]).collect();
        let cert = self.leaf_cert(&labels);
        let leaf = Leaf {
            labels,
            cert,
            trace: traces.to_vec(),
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                labels: leaf.labels.clone(),
                cert: leaf.cert.clone(),
                trace: leaf.trace.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if first.trace == leaf.trace && first.cert == leaf.cert {
            let gen = Self::automorphism(first, &leaf);
            let level = first
                .path
                .iter()
                .zip(&leaf.path)
                .take_while(|(a, b)| a == b)
                .count();
            self.record(gen);
            return Some(level);
        }
        let best = self.best.as_ref().unwrap();
        match (&leaf.trace, &leaf.cert).cmp(&(&best.trace, &best.cert)) {
            Ordering::Less => self.best = Some(leaf),
            Ordering::Equal => {
                let gen = Self::automorphism(best, &leaf);
                self.record(gen);
            }
            Ordering::Greater => {}
        }
        None
    }

    fn orbit_roots(&self, fixed: &[u32]) -> Vec<usize> {
        let n = self.g.points;
        let mut uf = UnionFind::new(n);
        for gen in &self.generators {
            if fixed.iter().all(|&v| gen[v as usize] == v) {
                for (x, &y) in gen.iter().enumerate() {
                    uf.union(x, y as usize);
                }
            }
        }
        (0..n).map(|x| uf.find(x)).collect()
    }

    fn visit(
        &mut self,
        part: Partition,
        path: &mut Vec<u32>,
        traces: &mut Vec<u64>,
    ) -> Option<usize> {
        let Some(target) = part.target_cell(self.g.points) else {
            return self.at_leaf(&part, path, traces);
        };
        let depth = path.len();
        let mut members: Vec<u32> = part.cell(target).to_vec();
        members.sort_unstable();
        let mut done: Vec<u32> = Vec::new();
        let mut gens_seen = usize::MAX;
        let mut roots = Vec::new();
        for w in members {
            if !done.is_empty() {
                if gens_seen != self.generators.len() {
                    roots = self.orbit_roots(path);
                    gens_seen = self.generators.len();
                }
                if done.iter().any(|&d| roots[d as usize] == roots[w as usize]) {
                    continue;
                }
            }
            done.push(w);
            let mut child = part.clone();
            let (single, rest) = child.individualize(w as usize);
            let t = self.refiner.refine(self.g, &mut child, &[single, rest]);
            path.push(w);
            traces.push(t);

            let eq_first = self.first.as_ref().is_none_or(|f| {
                f.trace.len() >= traces.len() && f.trace[..traces.len()] == traces[..]
            });
            let worse_than_best = self.best.as_ref().is_some_and(|b| {
                let m = b.trace.len().min(traces.len());
                match traces[..m].cmp(&b.trace[..m]) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => traces.len() > b.trace.len(),
                }
            });
            let jump = if eq_first || !worse_than_best {
                self.visit(child, path, traces)
            } else {
                None
            };
            path.pop();
            traces.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

/// Runs the search. `point_colors` restricts to automorphisms preserving
/// the colouring. Returns the canonical labeling and the group.
fn run(design: &Design, point_colors: Option<&[u32]>) -> (Vec<usize>, AutomorphismGroup) {
    let g = Graph::new(design);
    let n = design.n();
    let nv = g.order();
    let keys: Vec<(u64, u64)> = (0..nv)
        .map(|v| {
            if v < n {
                (0, point_colors.map_or(0, |c| c[v] as u64))
            } else {
                (1, 0)
            }
        })
        .collect();
    let mut part = Partition::from_keys(&keys);
    let mut refiner = Refiner::new(nv);
    let all_cells = part.cell_starts(nv);
    let root_trace = refiner.refine(&g, &mut part, &all_cells);

    let mut search = Search {
        g: &g,
        design,
        refiner,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    let mut traces = vec![root_trace];
    search.visit(part, &mut path, &mut traces);

    let first = search.first.as_ref().expect("search reaches a leaf");
    let best = search.best.as_ref().expect("search reaches a leaf");

    // group order: product of first-path orbit lengths under the
    // generators fixing the earlier first-path points
    let mut order: u128 = 1;
    for d in 0..first.path.len() {
        let roots = search.orbit_roots(&first.path[..d]);
        let v = first.path[d] as usize;
        let len = roots.iter().filter(|&&r| r == roots[v]).count();
        order *= len as u128;
    }

    let labeling = best.labels.iter().map(|&l| l as usize).collect();
    let generators = search
        .generators
        .iter()
        .map(|g| g.iter().map(|&x| x as usize).collect::<Vec<usize>>())
        .collect::<Vec<_>>();
    debug_assert!(generators.iter().all(|g| is_automorphism(design, g)));
    (
        labeling,
        AutomorphismGroup {
            degree: n,
            generators,
            order,
        },
    )
}
