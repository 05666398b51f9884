use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use paramod::canon::{canonical_certificate, isomorphism};
use paramod::coloring::{
    anchor_assignment, coloring_from_resolution, enumerate_resolutions, enumerate_resolutions_with,
    PencilSymmetry,
};
use paramod::explore::{Catalog, Explorer, Limits};
use paramod::generators::{affine_plane, hermitian_unital, projective_plane};
use paramod::io::{content_hash, write_design_with_header};
use paramod::paramod::{
    enumerate_switchings, paramodify, pasch_configurations, switching_threshold,
};
use paramod::{write_design, Design, Error};

/// Paramodification of Steiner 2-designs.
#[derive(Parser)]
#[command(name = "paramod-cli", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Affine plane AG(2,q)
    Ag,
    /// Projective plane PG(2,q)
    Pg,
    /// Classical Hermitian unital of order q
    Hermitian,
}

#[derive(Subcommand)]
enum Command {
    /// Print a classical design.
    Generate { family: Family, q: usize },
    /// Check the Steiner axioms.
    Validate { file: PathBuf },
    /// List the resolutions of a block's derived system, one per line.
    Colorings {
        file: PathBuf,
        #[arg(long)]
        block: usize,
        /// Print only the summary.
        #[arg(long)]
        count_only: bool,
        /// List every resolution instead of one per symmetry orbit.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Apply one paramodification and print the result.
    Paramod {
        file: PathBuf,
        #[arg(long)]
        block: usize,
        /// Index into the full list printed by `colorings --no-symmetry`.
        #[arg(long)]
        resolution: usize,
        /// Base point for each class, comma separated.
        #[arg(long, value_delimiter = ',')]
        assignment: Option<Vec<usize>>,
    },
    /// List the switchings: colorings with exactly two non-trivial classes.
    Switchings { file: PathBuf },
    /// Count Pasch configurations.
    Pasch { file: PathBuf },
    /// Print the canonical certificate hash.
    Canon { file: PathBuf },
    /// Print a point bijection from the first design onto the second.
    Iso { first: PathBuf, second: PathBuf },
    /// Grow the paramodification graph from seed designs into a catalog.
    Explore {
        #[arg(long = "seed", required = true, num_args = 1..)]
        seeds: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1000)]
        max_vertices: usize,
        #[arg(long, default_value_t = usize::MAX)]
        max_depth: usize,
        /// Stop starting new expansions after this many seconds.
        #[arg(long)]
        time_budget: Option<u64>,
    },
    /// Summarize a catalog by component size.
    Stats { dir: PathBuf },
}

/// Bad arguments rather than bad data.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// A check whose answer is "no" (invalid design, non-isomorphic pair).
#[derive(Debug)]
struct Negative;

impl std::fmt::Display for Negative {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("check failed")
    }
}

impl std::error::Error for Negative {}

fn load(path: &Path) -> anyhow::Result<Design> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    paramod::parse_design(&text).with_context(|| format!("{}", path.display()))
}

fn load_valid(path: &Path) -> anyhow::Result<Design> {
    let d = load(path)?;
    d.ensure_valid()
        .with_context(|| format!("{}", path.display()))?;
    Ok(d)
}

fn check_block(d: &Design, block: usize) -> anyhow::Result<()> {
    if block >= d.num_blocks() {
        return Err(usage(format!(
            "block {block} out of range (design has {} blocks)",
            d.num_blocks()
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Generate { family, q } => {
            let d = match family {
                Family::Ag => affine_plane(q),
                Family::Pg => projective_plane(q),
                Family::Hermitian => hermitian_unital(q),
            }
            .map_err(|e| usage(e.to_string()))?;
            print!("{}", write_design(&d));
        }
        Command::Validate { file } => {
            let d = load(&file)?;
            let report = d.validate();
            if report.is_valid() {
                println!(
                    "valid 2-({},{},1) design with {} blocks",
                    d.n(),
                    d.k(),
                    d.num_blocks()
                );
            } else {
                print!("{report}");
                return Err(Negative.into());
            }
        }
        Command::Colorings {
            file,
            block,
            count_only,
            no_symmetry,
        } => {
            let d = load_valid(&file)?;
            check_block(&d, block)?;
            let ds = d.derived_system(block)?;
            if no_symmetry {
                let all = enumerate_resolutions(&ds);
                if !count_only {
                    for r in &all {
                        println!("{}", r.to_line());
                    }
                }
                println!("# {} resolutions", all.len());
            } else {
                let sym = PencilSymmetry::new(&d, block)?;
                let reps = enumerate_resolutions_with(&ds, sym.as_ref());
                if !count_only {
                    for (r, _) in &reps {
                        println!("{}", r.to_line());
                    }
                }
                let total: u64 = reps.iter().map(|(_, s)| s).sum();
                println!("# {total} resolutions in {} orbits", reps.len());
            }
        }
        Command::Paramod {
            file,
            block,
            resolution,
            assignment,
        } => {
            let d = load_valid(&file)?;
            check_block(&d, block)?;
            let ds = d.derived_system(block)?;
            let all = enumerate_resolutions(&ds);
            let res = all.get(resolution).ok_or_else(|| {
                usage(format!(
                    "resolution {resolution} out of range ({} available)",
                    all.len()
                ))
            })?;
            let assignment = assignment.unwrap_or_else(|| anchor_assignment(&ds.pencil, res));
            let coloring = coloring_from_resolution(&ds.pencil, res, &assignment)?;
            let result = paramodify(&d, block, &coloring)?;
            let header = format!(
                "paramod of {} at block {block}, resolution {resolution}",
                content_hash(&d)
            );
            print!("{}", write_design_with_header(&result, &[header]));
        }
        Command::Switchings { file } => {
            let d = load_valid(&file)?;
            let found = enumerate_switchings(&d);
            for (b, c) in &found {
                println!("{b} {}", c.partition().to_line());
            }
            println!(
                "# {} switchings; anti-Pasch threshold for k={} is {}",
                found.len(),
                d.k(),
                switching_threshold(d.k())
            );
        }
        Command::Pasch { file } => {
            let d = load_valid(&file)?;
            let confs = pasch_configurations(&d);
            if confs.is_empty() && paramod::paramod::find_pasch(&d).is_some() {
                println!(
                    "more than {} Pasch configurations",
                    paramod::paramod::PASCH_LIMIT
                );
            } else if confs.is_empty() {
                println!("anti-Pasch");
            } else {
                for c in &confs {
                    let blocks: Vec<String> = c.blocks.iter().map(ToString::to_string).collect();
                    println!("{}", blocks.join(" "));
                }
                println!("# {} Pasch configurations", confs.len());
            }
        }
        Command::Canon { file } => {
            let d = load_valid(&file)?;
            println!("{}", canonical_certificate(&d).hash_hex());
        }
        Command::Iso { first, second } => {
            let a = load_valid(&first)?;
            let b = load_valid(&second)?;
            match isomorphism(&a, &b) {
                Some(f) => {
                    let pairs: Vec<String> = f
                        .iter()
                        .enumerate()
                        .map(|(p, q)| format!("{p}->{q}"))
                        .collect();
                    println!("{}", pairs.join(" "));
                }
                None => {
                    println!("non-isomorphic");
                    return Err(Negative.into());
                }
            }
        }
        Command::Explore {
            seeds,
            out,
            max_vertices,
            max_depth,
            time_budget,
        } => {
            let designs = seeds
                .iter()
                .map(|p| load_valid(p).map(|d| (p, d)))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let mut ex = Explorer::open(&out)?;
            for (path, d) in &designs {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                ex.add_seed(d, &name)?;
            }
            let summary = ex.run(&Limits {
                max_vertices,
                max_depth,
                time_budget: time_budget.map(Duration::from_secs),
            })?;
            let g = ex.graph();
            let open = g.vertices().filter(|v| !v.finished).count();
            println!(
                "expanded {} vertices; catalog has {} vertices, {} unfinished ({:?})",
                summary.expanded,
                g.len(),
                open,
                summary.stop
            );
        }
        Command::Stats { dir } => {
            if !dir.join(paramod::explore::INDEX_FILE).exists() {
                return Err(usage(format!("{} is not a catalog", dir.display())));
            }
            print!("{}", Catalog::load(&dir)?.stats());
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<Usage>() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Io(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.is::<Negative>() {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
