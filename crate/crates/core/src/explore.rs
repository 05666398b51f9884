//! The paramodification graph: one vertex per isomorphism class, an edge
//! wherever some paramodification of one class lands in the other.
//!
//! [`Explorer`] grows the graph breadth first from seed designs, always
//! expanding the unfinished vertex with the least `(depth, hash)`, so a run
//! that is interrupted and resumed visits the same vertices in the same order
//! as one that is not. With a [`Catalog`] attached, each expansion is appended
//! to an on-disk index as one committed batch.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::canon::{self, CanonicalCertificate, CertificateCache};
use crate::coloring::{
    anchor_assignment, coloring_from_resolution, enumerate_resolutions_with, PencilSymmetry,
};
use crate::design::Design;
use crate::error::{Error, Result};
use crate::io::parse_design;
use crate::paramod::paramodify;

/// An isomorphism class reached from a design, with the number of
/// `(block, resolution)` pairs leading to it.
#[derive(Debug, Clone)]
pub struct Neighbor {
    pub hash: String,
    pub certificate: Arc<CanonicalCertificate>,
    pub multiplicity: u64,
    /// Base block of the first pair reaching this class.
    pub block: usize,
    /// Index of that pair's resolution among the block's resolutions.
    pub resolution: usize,
}

/// `(hash, certificate, multiplicity, block, resolution)` of one step.
type Found = (String, Arc<CanonicalCertificate>, u64, usize, usize);

/// Every class one paramodification away from `design`, sorted by hash.
///
/// With `symmetry`, only one block per orbit of the automorphism group is
/// expanded and only one resolution per orbit of each block stabilizer;
/// multiplicities are scaled by the orbit sizes, so they agree with the
/// plain enumeration.
pub fn expand(design: &Design, cache: &CertificateCache, symmetry: bool) -> Result<Vec<Neighbor>> {
    let blocks: Vec<(usize, u64)> = if symmetry {
        block_orbits(design)
            .into_iter()
            .map(|orbit| (orbit[0], orbit.len() as u64))
            .collect()
    } else {
        (0..design.num_blocks()).map(|b| (b, 1)).collect()
    };
    let per_block = blocks
        .par_iter()
        .map(|&(b, weight)| -> Result<Vec<Found>> {
            let ds = design.derived_system(b)?;
            let sym = if symmetry {
                PencilSymmetry::new(design, b)?
            } else {
                None
            };
            let mut out = Vec::new();
            for (j, (res, orbit)) in enumerate_resolutions_with(&ds, sym.as_ref())
                .into_iter()
                .enumerate()
            {
                let assignment = anchor_assignment(&ds.pencil, &res);
                let coloring = coloring_from_resolution(&ds.pencil, &res, &assignment)?;
                let next = paramodify(design, b, &coloring)?;
                let cert = cache.certificate(&next);
                out.push((cert.hash_hex(), cert, weight * orbit, b, j));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut found: BTreeMap<String, Neighbor> = BTreeMap::new();
    for (hash, certificate, multiplicity, block, resolution) in per_block.into_iter().flatten() {
        found
            .entry(hash.clone())
            .and_modify(|n| n.multiplicity += multiplicity)
            .or_insert(Neighbor {
                hash,
                certificate,
                multiplicity,
                block,
                resolution,
            });
    }
    Ok(found.into_values().collect())
}

/// Orbits of the automorphism group on block indices, each sorted,
/// ordered by least element.
pub fn block_orbits(design: &Design) -> Vec<Vec<usize>> {
    let group = canon::automorphism_generators(design);
    let nb = design.num_blocks();
    let mut parent: Vec<usize> = (0..nb).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in &group.generators {
        for (i, block) in design.blocks().iter().enumerate() {
            let j = design
                .block_through(g[block[0]], g[block[1]])
                .expect("automorphisms map blocks to blocks");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..nb {
        let r = find(&mut parent, i);
        orbits.entry(r).or_default().push(i);
    }
    orbits.into_values().collect()
}

/// What the graph knows about one isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub hash: String,
    pub depth: usize,
    /// Whether every paramodification of the class has been recorded.
    pub finished: bool,
    /// `seed:<name>` or `paramod:<parent hash>:b<block>:r<resolution>`.
    pub provenance: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamodGraph {
    vertices: BTreeMap<String, Vertex>,
    /// Directed multiplicities, self-loops included.
    edges: BTreeMap<(String, String), u64>,
    adjacency: BTreeMap<String, BTreeSet<String>>,
}

impl ParamodGraph {
    pub fn new() -> ParamodGraph {
        ParamodGraph::default()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values()
    }

    pub fn vertex(&self, hash: &str) -> Option<&Vertex> {
        self.vertices.get(hash)
    }

    /// `((from, to), multiplicity)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (&(String, String), &u64)> {
        self.edges.iter()
    }

    pub fn multiplicity(&self, from: &str, to: &str) -> u64 {
        self.edges
            .get(&(from.to_string(), to.to_string()))
            .copied()
            .unwrap_or(0)
    }

    /// Distinct neighbors other than the vertex itself.
    pub fn neighbors<'a>(&'a self, hash: &'a str) -> impl Iterator<Item = &'a String> + 'a {
        self.adjacency
            .get(hash)
            .into_iter()
            .flatten()
            .filter(move |h| h.as_str() != hash)
    }

    pub fn degree(&self, hash: &str) -> usize {
        self.neighbors(hash).count()
    }

    pub fn has_self_loop(&self, hash: &str) -> bool {
        self.multiplicity(hash, hash) > 0
    }

    fn insert_vertex(&mut self, v: Vertex) {
        self.adjacency.entry(v.hash.clone()).or_default();
        self.vertices.insert(v.hash.clone(), v);
    }

    fn insert_edge(&mut self, from: &str, to: &str, multiplicity: u64) {
        self.edges
            .insert((from.to_string(), to.to_string()), multiplicity);
        self.adjacency
            .entry(from.to_string())
            .or_default()
            .insert(to.to_string());
        self.adjacency
            .entry(to.to_string())
            .or_default()
            .insert(from.to_string());
    }

    /// Connected components (ignoring direction), each sorted, ordered by
    /// least hash.
    pub fn components(&self) -> Vec<Vec<String>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices.keys() {
            if !seen.insert(start.clone()) {
                continue;
            }
            let mut comp = vec![start.clone()];
            let mut stack = vec![start.clone()];
            while let Some(v) = stack.pop() {
                for w in self.adjacency.get(&v).into_iter().flatten() {
                    if seen.insert(w.clone()) {
                        comp.push(w.clone());
                        stack.push(w.clone());
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn stats(&self) -> ClassStats {
        ClassStats::new(self)
    }
}

/// One row of the class-size table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsRow {
    pub label: String,
    /// Number of components in this size range.
    pub classes: usize,
    /// Total vertices in those components.
    pub vertices: usize,
    /// How many of those vertices are unfinished.
    pub unfinished: usize,
    /// Components holding at least one unfinished vertex; their true size
    /// may be larger.
    pub incomplete: usize,
}

/// Component sizes grouped as isolated, 2-5, 6-10, 11-100, 101-1000, and
/// exact sizes beyond that. Empty ranges are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStats {
    pub rows: Vec<StatsRow>,
    pub vertices: usize,
    pub classes: usize,
}

fn bucket(size: usize) -> (usize, String) {
    match size {
        1 => (0, "isolated vertex".into()),
        2..=5 => (1, "2-5".into()),
        6..=10 => (2, "6-10".into()),
        11..=100 => (3, "11-100".into()),
        101..=1000 => (4, "101-1000".into()),
        n => (5 + n, n.to_string()),
    }
}

impl ClassStats {
    pub fn new(graph: &ParamodGraph) -> ClassStats {
        let mut rows: BTreeMap<usize, StatsRow> = BTreeMap::new();
        let components = graph.components();
        for comp in &components {
            let (key, label) = bucket(comp.len());
            let row = rows.entry(key).or_insert(StatsRow {
                label,
                classes: 0,
                vertices: 0,
                unfinished: 0,
                incomplete: 0,
            });
            let open = comp.iter().filter(|h| !graph.vertices[*h].finished).count();
            row.classes += 1;
            row.vertices += comp.len();
            row.unfinished += open;
            if open > 0 {
                row.incomplete += 1;
            }
        }
        ClassStats {
            rows: rows.into_values().collect(),
            vertices: graph.len(),
            classes: components.len(),
        }
    }
}

impl fmt::Display for ClassStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header = [
            "class size",
            "classes",
            "vertices",
            "unfinished",
            "incomplete",
        ];
        let mut table: Vec<Vec<String>> = vec![header.map(String::from).to_vec()];
        for r in &self.rows {
            table.push(vec![
                r.label.clone(),
                r.classes.to_string(),
                r.vertices.to_string(),
                r.unfinished.to_string(),
                r.incomplete.to_string(),
            ]);
        }
        let sum =
            |field: fn(&StatsRow) -> usize| self.rows.iter().map(field).sum::<usize>().to_string();
        table.push(vec![
            "total".into(),
            self.classes.to_string(),
            self.vertices.to_string(),
            sum(|r| r.unfinished),
            sum(|r| r.incomplete),
        ]);
        let widths: Vec<usize> = (0..header.len())
            .map(|c| table.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        for row in &table {
            let mut line = format!("{:<w$}", row[0], w = widths[0]);
            for (cell, w) in row.iter().zip(&widths).skip(1) {
                line.push_str(&format!("  {cell:>w$}"));
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Component-size table of `g`; same as [`ParamodGraph::stats`].
pub fn class_stats(g: &ParamodGraph) -> ClassStats {
    ClassStats::new(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// No expansion starts once the graph has this many vertices.
    pub max_vertices: usize,
    /// Vertices at this depth are recorded but not expanded.
    pub max_depth: usize,
    /// Checked before each expansion.
    pub time_budget: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_vertices: 1000,
            max_depth: usize::MAX,
            time_budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// No unfinished vertex within the depth limit is left.
    Exhausted,
    VertexLimit,
    TimeBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSummary {
    pub expanded: usize,
    pub stop: StopReason,
}

/// Grows a [`ParamodGraph`], optionally persisting it to a [`Catalog`].
pub struct Explorer {
    graph: ParamodGraph,
    designs: BTreeMap<String, Design>,
    cache: CertificateCache,
    catalog: Option<Catalog>,
    symmetry: bool,
}

impl Default for Explorer {
    fn default() -> Explorer {
        Explorer::new()
    }
}

impl Explorer {
    /// An in-memory explorer.
    pub fn new() -> Explorer {
        Explorer {
            graph: ParamodGraph::new(),
            designs: BTreeMap::new(),
            cache: CertificateCache::new(),
            catalog: None,
            symmetry: true,
        }
    }

    /// Opens (or creates) the catalog in `dir` and resumes from what it
    /// has committed.
    pub fn open(dir: impl AsRef<Path>) -> Result<Explorer> {
        let (catalog, graph) = Catalog::open(dir)?;
        let mut designs = BTreeMap::new();
        for v in graph.vertices() {
            if !v.finished {
                designs.insert(v.hash.clone(), catalog.load_design(&v.hash)?);
            }
        }
        Ok(Explorer {
            graph,
            designs,
            cache: CertificateCache::new(),
            catalog: Some(catalog),
            symmetry: true,
        })
    }

    /// Whether expansions use automorphisms to skip equivalent blocks and
    /// resolutions. On by default; the resulting graph is the same.
    pub fn set_symmetry(&mut self, on: bool) {
        self.symmetry = on;
    }

    pub fn graph(&self) -> &ParamodGraph {
        &self.graph
    }

    /// The stored canonical representative, if the vertex is still open or
    /// was added in this session.
    pub fn design(&self, hash: &str) -> Option<&Design> {
        self.designs.get(hash)
    }

    /// Adds a seed at depth 0 and returns its hash. A seed isomorphic to a
    /// known vertex is not added again.
    pub fn add_seed(&mut self, design: &Design, name: &str) -> Result<String> {
        design.ensure_valid()?;
        let cert = self.cache.certificate(design);
        let hash = cert.hash_hex();
        if self.graph.vertex(&hash).is_some() {
            return Ok(hash);
        }
        let canonical =
            parse_design(std::str::from_utf8(&cert.bytes).expect("certificate is text"))?;
        let name: String = name
            .chars()
            .map(|c| if c.is_whitespace() { '_' } else { c })
            .collect();
        let v = Vertex {
            hash: hash.clone(),
            depth: 0,
            finished: false,
            provenance: format!("seed:{name}"),
        };
        if let Some(cat) = &mut self.catalog {
            cat.store_design(&hash, &cert.bytes)?;
            cat.append_batch(&[Record::Vertex {
                vertex: v.clone(),
                degree: 0,
            }])?;
        }
        self.graph.insert_vertex(v);
        self.designs.insert(hash.clone(), canonical);
        Ok(hash)
    }

    fn next_vertex(&self, limits: &Limits) -> Option<String> {
        self.graph
            .vertices()
            .filter(|v| !v.finished && v.depth < limits.max_depth)
            .min_by(|a, b| (a.depth, &a.hash).cmp(&(b.depth, &b.hash)))
            .map(|v| v.hash.clone())
    }

    /// Expands vertices until the limits are hit or nothing is left.
    pub fn run(&mut self, limits: &Limits) -> Result<RunSummary> {
        let start = Instant::now();
        let mut expanded = 0;
        if let Some(cat) = &mut self.catalog {
            cat.append_batch(&[Record::Run(format!(
                "max_vertices={} max_depth={}",
                limits.max_vertices, limits.max_depth
            ))])?;
        }
        loop {
            let Some(hash) = self.next_vertex(limits) else {
                return Ok(RunSummary {
                    expanded,
                    stop: StopReason::Exhausted,
                });
            };
            if self.graph.len() >= limits.max_vertices {
                return Ok(RunSummary {
                    expanded,
                    stop: StopReason::VertexLimit,
                });
            }
            if limits.time_budget.is_some_and(|t| start.elapsed() >= t) {
                return Ok(RunSummary {
                    expanded,
                    stop: StopReason::TimeBudget,
                });
            }
            self.expand_vertex(&hash)?;
            expanded += 1;
        }
    }

    fn expand_vertex(&mut self, hash: &str) -> Result<()> {
        let design = self.designs[hash].clone();
        let depth = self.graph.vertices[hash].depth;
        let neighbors = expand(&design, &self.cache, self.symmetry)?;
        let mut batch = Vec::new();
        let mut touched = BTreeSet::new();
        for nb in &neighbors {
            if self.graph.vertex(&nb.hash).is_none() {
                let v = Vertex {
                    hash: nb.hash.clone(),
                    depth: depth + 1,
                    finished: false,
                    provenance: format!("paramod:{hash}:b{}:r{}", nb.block, nb.resolution),
                };
                if let Some(cat) = &mut self.catalog {
                    cat.store_design(&nb.hash, &nb.certificate.bytes)?;
                }
                let canonical = parse_design(
                    std::str::from_utf8(&nb.certificate.bytes).expect("certificate is text"),
                )?;
                self.designs.insert(nb.hash.clone(), canonical);
                self.graph.insert_vertex(v);
            }
            self.graph.insert_edge(hash, &nb.hash, nb.multiplicity);
            batch.push(Record::Edge {
                from: hash.to_string(),
                to: nb.hash.clone(),
                multiplicity: nb.multiplicity,
            });
            touched.insert(nb.hash.clone());
        }
        self.graph
            .vertices
            .get_mut(hash)
            .expect("known vertex")
            .finished = true;
        touched.insert(hash.to_string());
        for h in &touched {
            batch.push(Record::Vertex {
                vertex: self.graph.vertices[h].clone(),
                degree: self.graph.degree(h),
            });
        }
        if let Some(cat) = &mut self.catalog {
            cat.append_batch(&batch)?;
        }
        // finished vertices are never expanded again
        self.designs.remove(hash);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Record {
    Vertex {
        vertex: Vertex,
        degree: usize,
    },
    Edge {
        from: String,
        to: String,
        multiplicity: u64,
    },
    Run(String),
    Commit(usize),
}

fn checksum(body: &str) -> String {
    hex::encode(&Sha256::digest(body.as_bytes())[..4])
}

impl Record {
    fn body(&self) -> String {
        match self {
            Record::Vertex { vertex: v, degree } => format!(
                "{} {} {} {} {}",
                v.hash, v.depth, v.finished as u8, degree, v.provenance
            ),
            Record::Edge {
                from,
                to,
                multiplicity,
            } => format!("edge {from} {to} {multiplicity}"),
            Record::Run(meta) => format!("run {meta}"),
            Record::Commit(n) => format!("commit {n}"),
        }
    }

    fn line(&self) -> String {
        let body = self.body();
        let ck = checksum(&body);
        format!("{body} {ck}\n")
    }

    fn parse(line: &str) -> Option<Record> {
        let (body, ck) = line.rsplit_once(' ')?;
        if checksum(body) != ck {
            return None;
        }
        let tok: Vec<&str> = body.split(' ').collect();
        match tok[0] {
            "edge" if tok.len() == 4 => Some(Record::Edge {
                from: tok[1].to_string(),
                to: tok[2].to_string(),
                multiplicity: tok[3].parse().ok()?,
            }),
            "run" => Some(Record::Run(tok[1..].join(" "))),
            "commit" if tok.len() == 2 => Some(Record::Commit(tok[1].parse().ok()?)),
            h if tok.len() == 5 && h.len() == 64 => Some(Record::Vertex {
                vertex: Vertex {
                    hash: h.to_string(),
                    depth: tok[1].parse().ok()?,
                    finished: match tok[2] {
                        "0" => false,
                        "1" => true,
                        _ => return None,
                    },
                    provenance: tok[4].to_string(),
                },
                degree: tok[3].parse().ok()?,
            }),
            _ => None,
        }
    }
}

/// On-disk store for an exploration.
///
/// `index.txt` is an append-only UTF-8 log, one record per line, each line
/// ending in a checksum (the first 8 hex digits of the SHA-256 of the rest
/// of the line). Vertex records read `hash depth finished degree provenance`;
/// a later record for the same hash supersedes an earlier one. Records are
/// written in batches closed by a `commit` line, and only committed batches
/// count. `designs/<hash>.txt` holds the canonical representative of each
/// vertex, whose SHA-256 is the hash itself.
#[derive(Debug)]
pub struct Catalog {
    dir: PathBuf,
    index: File,
    commits: usize,
}

pub const INDEX_FILE: &str = "index.txt";

impl Catalog {
    /// Opens or creates the catalog, returning the committed graph. An
    /// uncommitted tail (as left by a crash mid-batch) is cut off; a bad
    /// record followed by committed data is reported as corruption.
    pub fn open(dir: impl AsRef<Path>) -> Result<(Catalog, ParamodGraph)> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(dir.join("designs"))?;
        let path = dir.join(INDEX_FILE);
        let (graph, commits, good_len) = if path.exists() {
            load_index(&fs::read(&path)?)?
        } else {
            (ParamodGraph::new(), 0, 0)
        };
        let index = OpenOptions::new().create(true).append(true).open(&path)?;
        if index.metadata()?.len() != good_len as u64 {
            index.set_len(good_len as u64)?;
        }
        Ok((
            Catalog {
                dir,
                index,
                commits,
            },
            graph,
        ))
    }

    /// Reads the committed graph without opening the index for writing.
    pub fn load(dir: impl AsRef<Path>) -> Result<ParamodGraph> {
        let path = dir.as_ref().join(INDEX_FILE);
        if !path.exists() {
            return Err(Error::Catalog(format!(
                "no {INDEX_FILE} in {}",
                dir.as_ref().display()
            )));
        }
        Ok(load_index(&fs::read(path)?)?.0)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn design_path(&self, hash: &str) -> PathBuf {
        self.dir.join("designs").join(format!("{hash}.txt"))
    }

    pub fn load_design(&self, hash: &str) -> Result<Design> {
        let bytes = fs::read(self.design_path(hash))?;
        if hex::encode(Sha256::digest(&bytes)) != hash {
            return Err(Error::Catalog(format!(
                "design file for {hash} does not match its hash"
            )));
        }
        let text = String::from_utf8(bytes)
            .map_err(|_| Error::Catalog(format!("design file for {hash} is not UTF-8")))?;
        parse_design(&text)
    }

    fn store_design(&self, hash: &str, bytes: &[u8]) -> Result<()> {
        let path = self.design_path(hash);
        if path.exists() {
            return Ok(());
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, bytes)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    fn append_batch(&mut self, records: &[Record]) -> Result<()> {
        let mut text = String::new();
        for r in records {
            text.push_str(&r.line());
        }
        self.commits += 1;
        text.push_str(&Record::Commit(self.commits).line());
        self.index.write_all(text.as_bytes())?;
        self.index.sync_data()?;
        Ok(())
    }
}

fn load_index(bytes: &[u8]) -> Result<(ParamodGraph, usize, usize)> {
    let mut graph = ParamodGraph::new();
    let mut pending: Vec<Record> = Vec::new();
    let mut commits = 0;
    let mut good_len = 0;
    let mut offset = 0;
    let mut bad_line: Option<usize> = None;
    for (lineno, raw) in bytes.split_inclusive(|&b| b == b'\n').enumerate() {
        offset += raw.len();
        let record = raw
            .strip_suffix(b"\n")
            .and_then(|l| std::str::from_utf8(l).ok())
            .and_then(Record::parse);
        match (record, bad_line) {
            (None, None) => bad_line = Some(lineno + 1),
            (None, Some(_)) => {}
            (Some(Record::Commit(_)), Some(line)) => {
                return Err(Error::Catalog(format!(
                    "corrupt record at line {line} of {INDEX_FILE}"
                )));
            }
            (Some(_), Some(_)) => {}
            (Some(Record::Commit(c)), None) => {
                for r in pending.drain(..) {
                    apply(&mut graph, r);
                }
                commits = c;
                good_len = offset;
            }
            (Some(r), None) => pending.push(r),
        }
    }
    Ok((graph, commits, good_len))
}

fn apply(graph: &mut ParamodGraph, r: Record) {
    match r {
        Record::Vertex { vertex, .. } => graph.insert_vertex(vertex),
        Record::Edge {
            from,
            to,
            multiplicity,
        } => graph.insert_edge(&from, &to, multiplicity),
        Record::Run(_) | Record::Commit(_) => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{affine_plane, hermitian_unital, projective_plane};

    #[test]
    fn fano_is_an_isolated_finished_vertex() {
        let mut ex = Explorer::new();
        let h = ex.add_seed(&projective_plane(2).unwrap(), "fano").unwrap();
        let summary = ex.run(&Limits::default()).unwrap();
        assert_eq!(
            summary,
            RunSummary {
                expanded: 1,
                stop: StopReason::Exhausted
            }
        );
        let g = ex.graph();
        assert_eq!(g.len(), 1);
        assert!(g.vertex(&h).unwrap().finished);
        assert_eq!(g.degree(&h), 0);
        // seven blocks, one resolution each
        assert_eq!(g.multiplicity(&h, &h), 7);
    }

    #[test]
    fn ag23_has_only_a_self_loop() {
        let mut ex = Explorer::new();
        let h = ex.add_seed(&affine_plane(3).unwrap(), "AG(2,3)").unwrap();
        ex.run(&Limits::default()).unwrap();
        let g = ex.graph();
        assert_eq!(g.len(), 1);
        assert_eq!(g.multiplicity(&h, &h), 12 * 2);
        assert_eq!(g.vertex(&h).unwrap().provenance, "seed:AG(2,3)");
    }

    #[test]
    fn symmetry_does_not_change_multiplicities() {
        let d = projective_plane(3).unwrap();
        let cache = CertificateCache::new();
        let with: Vec<(String, u64)> = expand(&d, &cache, true)
            .unwrap()
            .into_iter()
            .map(|n| (n.hash, n.multiplicity))
            .collect();
        let without: Vec<(String, u64)> = expand(&d, &cache, false)
            .unwrap()
            .into_iter()
            .map(|n| (n.hash, n.multiplicity))
            .collect();
        assert_eq!(with, without);
        assert_eq!(with[0].1, 13);
    }

    #[test]
    fn block_orbits_of_transitive_planes() {
        assert_eq!(block_orbits(&projective_plane(3).unwrap()).len(), 1);
        let sts13 =
            crate::io::parse_design(include_str!("../tests/fixtures/sts13_noncyclic.txt")).unwrap();
        let orbits = block_orbits(&sts13);
        assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), 26);
        assert!(orbits.len() > 1);
    }

    #[test]
    fn stats_buckets() {
        let mut g = ParamodGraph::new();
        let v = |h: &str, finished| Vertex {
            hash: h.to_string(),
            depth: 0,
            finished,
            provenance: "seed:x".into(),
        };
        for (h, f) in [
            ("a", true),
            ("b", true),
            ("c", true),
            ("d", false),
            ("e", true),
        ] {
            g.insert_vertex(v(h, f));
        }
        g.insert_edge("b", "c", 1);
        g.insert_edge("c", "d", 2);
        g.insert_edge("e", "e", 3);
        let s = g.stats();
        assert_eq!(s.classes, 3);
        let labels: Vec<&str> = s.rows.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, ["isolated vertex", "2-5"]);
        let r = &s.rows[0];
        assert_eq!(
            (r.classes, r.vertices, r.unfinished, r.incomplete),
            (2, 2, 0, 0)
        );
        let r = &s.rows[1];
        assert_eq!(
            (r.classes, r.vertices, r.unfinished, r.incomplete),
            (1, 3, 1, 1)
        );
        let text = s.to_string();
        assert!(text.lines().next().unwrap().starts_with("class size"));
        assert!(text.contains("isolated vertex"));
        assert_eq!(bucket(1001).1, "1001");
    }

    #[test]
    fn record_lines_round_trip() {
        let rs = [
            Record::Vertex {
                vertex: Vertex {
                    hash: "ab".repeat(32),
                    depth: 3,
                    finished: true,
                    provenance: "seed:fano".into(),
                },
                degree: 4,
            },
            Record::Edge {
                from: "x".into(),
                to: "y".into(),
                multiplicity: 9,
            },
            Record::Commit(2),
        ];
        for r in rs {
            let line = r.line();
            assert_eq!(Record::parse(line.trim_end()), Some(r));
            let (body, ck) = line.trim_end().rsplit_once(' ').unwrap();
            let tampered = format!("{body}0 {ck}");
            assert_eq!(Record::parse(&tampered), None);
        }
    }

    #[test]
    fn hermitian_unital_leaves_its_class() {
        let mut ex = Explorer::new();
        let h = ex
            .add_seed(&hermitian_unital(3).unwrap(), "unital")
            .unwrap();
        ex.run(&Limits {
            max_vertices: 1000,
            max_depth: 1,
            time_budget: None,
        })
        .unwrap();
        let g = ex.graph();
        assert!(g.vertex(&h).unwrap().finished);
        assert!(g.degree(&h) >= 1);
        // everything found at depth 1 stays open
        assert!(g
            .vertices()
            .filter(|v| v.hash != h)
            .all(|v| !v.finished && v.depth == 1));
    }
}
