//! Benchmark campaigns: graph classes, job expansion, parallel runs with
//! ordered collection, summaries, CSV records and SVG arc diagrams.

mod records;
mod svg;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::assign::AssignHeuristic;
use crate::conflict::count_conflicts;
use crate::error::{Error, Result};
use crate::gen;
use crate::graph::Graph;
use crate::layout::PageSpec;
use crate::order::OrderHeuristic;
use crate::rng::GenSeed;

pub use records::{read_csv, write_csv, RunRecord, CSV_HEADER};
pub use svg::{render_arc_svg, SvgOptions};

/// Benchmark graph classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphClass {
    Complete,
    /// Connected random graph with `m = 3n`.
    Gnm3,
    /// Connected random graph with `m = 6n`.
    Gnm6,
    Delaunay,
    /// Maximal planar bipartite graph.
    Bipartite,
    Tree2,
    Tree3,
}

impl GraphClass {
    pub const ALL: [GraphClass; 7] = [
        GraphClass::Complete,
        GraphClass::Gnm3,
        GraphClass::Gnm6,
        GraphClass::Delaunay,
        GraphClass::Bipartite,
        GraphClass::Tree2,
        GraphClass::Tree3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Complete => "complete",
            GraphClass::Gnm3 => "gnm3",
            GraphClass::Gnm6 => "gnm6",
            GraphClass::Delaunay => "delaunay",
            GraphClass::Bipartite => "bipartite",
            GraphClass::Tree2 => "tree2",
            GraphClass::Tree3 => "tree3",
        }
    }

    /// Stable key mixed into job seeds.
    fn key(self) -> u64 {
        self as u64
    }

    pub fn generate(self, n: usize, seed: GenSeed) -> Result<Graph> {
        match self {
            GraphClass::Complete => Ok(gen::complete(n)),
            GraphClass::Gnm3 => gen::random_gnm_connected(n, 3 * n, seed),
            GraphClass::Gnm6 => gen::random_gnm_connected(n, 6 * n, seed),
            GraphClass::Delaunay => gen::delaunay(n, seed),
            GraphClass::Bipartite => gen::max_planar_bipartite(n, seed).map(|b| b.graph),
            GraphClass::Tree2 => gen::k_tree(n, 2, seed),
            GraphClass::Tree3 => gen::k_tree(n, 3, seed),
        }
    }

    /// Preset order heuristic of the class. Every order of a complete graph
    /// is equivalent, so complete graphs use the identity.
    pub fn best_order(self) -> OrderHeuristic {
        match self {
            GraphClass::Complete => OrderHeuristic::Identity,
            GraphClass::Gnm3 | GraphClass::Gnm6 | GraphClass::Tree3 => OrderHeuristic::ConGreedy,
            GraphClass::Delaunay => OrderHeuristic::Rbfs,
            GraphClass::Bipartite | GraphClass::Tree2 => OrderHeuristic::Avsdf,
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown graph class {s:?}"))
    }
}

/// Order heuristic of a campaign, or `Auto` for [`GraphClass::best_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderChoice {
    Auto,
    Fixed(OrderHeuristic),
}

impl OrderChoice {
    pub fn resolve(self, class: GraphClass) -> OrderHeuristic {
        match self {
            OrderChoice::Auto => class.best_order(),
            OrderChoice::Fixed(h) => h,
        }
    }
}

impl FromStr for OrderChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" | "best" => Ok(OrderChoice::Auto),
            other => other.parse().map(OrderChoice::Fixed),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub class: GraphClass,
    pub sizes: Vec<usize>,
    pub instances: usize,
    pub seed: u64,
    pub order: OrderChoice,
    pub assign: Vec<AssignHeuristic>,
    pub spec: PageSpec,
    /// Record assignment wall time; off by default so that output files are
    /// byte-identical across runs.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(class: GraphClass, sizes: Vec<usize>, instances: usize, seed: u64) -> Self {
        ExperimentConfig {
            class,
            sizes,
            instances,
            seed,
            order: OrderChoice::Auto,
            assign: AssignHeuristic::ALL.to_vec(),
            spec: PageSpec::ONE_ONE,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.instances == 0 {
            return Err(Error::InvalidConfig("instances must be at least 1".into()));
        }
        if self.sizes.is_empty() || self.assign.is_empty() {
            return Err(Error::InvalidConfig(
                "need at least one size and one heuristic".into(),
            ));
        }
        Ok(())
    }

    /// Jobs in output order: sizes as listed, then instance index.
    pub fn jobs(&self) -> Vec<Job> {
        let base = GenSeed(self.seed);
        self.sizes
            .iter()
            .flat_map(|&n| {
                (0..self.instances).map(move |i| Job {
                    class: self.class,
                    n,
                    index: i,
                    seed: base.derive_all(&[self.class.key(), n as u64, i as u64]).0,
                })
            })
            .collect()
    }
}

/// One generated instance of a campaign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Job {
    pub class: GraphClass,
    pub n: usize,
    pub index: usize,
    /// Seed of the graph; the order uses the child stream 1 of it.
    pub seed: u64,
}

impl fmt::Display for Job {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} #{} seed={}",
            self.class, self.n, self.index, self.seed
        )
    }
}

impl Job {
    pub fn graph(&self) -> Result<Graph> {
        self.class.generate(self.n, GenSeed(self.seed))
    }

    pub fn order_seed(&self) -> GenSeed {
        GenSeed(self.seed).derive(1)
    }
}

fn run_job(cfg: &ExperimentConfig, job: &Job) -> Result<Vec<RunRecord>> {
    let g = job.graph()?;
    let heuristic = cfg.order.resolve(job.class);
    let order = heuristic.run(&g, job.order_seed())?;
    cfg.assign
        .iter()
        .map(|&a| {
            let started = Instant::now();
            let layout = a.run(&g, &order, cfg.spec)?;
            let millis = if cfg.timing {
                started.elapsed().as_secs_f64() * 1e3
            } else {
                0.0
            };
            let report = count_conflicts(&g, &layout)?;
            Ok(RunRecord {
                class: job.class.name().to_string(),
                n: job.n,
                seed: job.seed,
                order: heuristic.name().to_string(),
                assign: a.name().to_string(),
                s: cfg.spec.stacks,
                q: cfg.spec.queues,
                m: g.edge_count(),
                conflicts: report.total,
                conflicts_per_edge: report.per_edge(),
                millis,
            })
        })
        .collect()
}

/// Runs every job in parallel; records come back in job order, one per
/// assignment heuristic.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let per_job: Vec<Vec<RunRecord>> = cfg
        .jobs()
        .par_iter()
        .map(|job| {
            run_job(cfg, job).map_err(|e| Error::Job {
                job: job.to_string(),
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    Ok(per_job.into_iter().flatten().collect())
}

/// Mean conflicts per edge and wins of one heuristic on one `(class, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub class: String,
    pub n: usize,
    pub assign: String,
    pub instances: usize,
    pub mean_conflicts_per_edge: f64,
    /// Instances on which no heuristic had fewer conflicts; ties count as a
    /// win for every tied heuristic.
    pub wins: usize,
}

impl SummaryRow {
    pub fn win_percent(&self) -> f64 {
        100.0 * self.wins as f64 / self.instances as f64
    }
}

/// Groups records by `(class, n)` and instance (`seed`, `order`, spec).
/// Rows are sorted by class, n and heuristic name.
pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    type Instance<'a> = (&'a str, u64, usize, usize);
    let mut cells: BTreeMap<(&str, usize), BTreeMap<Instance, Vec<&RunRecord>>> = BTreeMap::new();
    for r in records {
        cells
            .entry((&r.class, r.n))
            .or_default()
            .entry((&r.order, r.seed, r.s, r.q))
            .or_default()
            .push(r);
    }
    let mut rows = Vec::new();
    for ((class, n), instances) in cells {
        let mut acc: BTreeMap<&str, (usize, f64, usize)> = BTreeMap::new();
        for runs in instances.values() {
            let best = runs.iter().map(|r| r.conflicts).min().unwrap();
            for r in runs {
                let e = acc.entry(&r.assign).or_default();
                e.0 += 1;
                e.1 += r.conflicts_per_edge;
                e.2 += (r.conflicts == best) as usize;
            }
        }
        for (assign, (count, sum, wins)) in acc {
            rows.push(SummaryRow {
                class: class.to_string(),
                n,
                assign: assign.to_string(),
                instances: count,
                mean_conflicts_per_edge: sum / count as f64,
                wins,
            });
        }
    }
    rows
}

/// Plain-text table of a summary.
pub fn format_summary(rows: &[SummaryRow]) -> String {
    let mut out = format!(
        "{:<10} {:>6} {:<12} {:>9} {:>12} {:>8}\n",
        "class", "n", "assign", "instances", "conflicts/e", "wins%"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<10} {:>6} {:<12} {:>9} {:>12.4} {:>8.1}\n",
            r.class,
            r.n,
            r.assign,
            r.instances,
            r.mean_conflicts_per_edge,
            r.win_percent()
        ));
    }
    out
}
