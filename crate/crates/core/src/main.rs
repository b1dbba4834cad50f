use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use linlay::assign::AssignHeuristic;
use linlay::exact::{
    decide_assignment, decide_layout, enumerate_layouts, verify_double_k8_observations,
    verify_k8_observations, Decision, ObservationReport, Outcome, SearchBudget,
};
use linlay::gadgets::{self, GadgetLabels};
use linlay::io::{
    parse_edge_list, parse_layout, parse_order, write_edge_list, write_layout, write_order,
};
use linlay::lab::{
    format_summary, render_arc_svg, run_experiment, summarize, write_csv, ExperimentConfig,
    GraphClass, OrderChoice, SvgOptions,
};
use linlay::order::OrderHeuristic;
use linlay::{count_conflicts, gen, GenSeed, Graph, PageSpec, Result, VertexOrder};

#[derive(Parser)]
#[command(
    name = "linlay",
    version,
    about = "Mixed stack/queue linear graph layouts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph as an edge list.
    Gen(GenArgs),
    /// Compute a vertex order of a graph.
    Order {
        /// identity, random, rbfs, avsdf or congreedy
        heuristic: OrderHeuristic,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assign edges to pages on a fixed order and count conflicts.
    Assign {
        /// stack-queue, elen or ceilfloor
        heuristic: AssignHeuristic,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count the conflicts of a layout.
    Conflicts {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        layout: PathBuf,
    },
    /// Exact search on small instances.
    Exact {
        #[command(subcommand)]
        command: ExactCommand,
    },
    /// Build a hardness gadget.
    Gadget {
        #[command(subcommand)]
        command: GadgetCommand,
    },
    /// Run a benchmark campaign and write per-run records as CSV.
    Bench(BenchArgs),
    /// Draw a layout as an SVG arc diagram.
    Render {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        layout: PathBuf,
        /// Emphasize edges in a same-page conflict.
        #[arg(long)]
        highlight: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    /// complete, gnm, gnm3, gnm6, delaunay, bipartite, ktree, tree2 or tree3
    class: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge count for gnm.
    #[arg(short, long)]
    m: Option<usize>,
    /// Clique size for ktree.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct SpecArgs {
    #[arg(long, default_value_t = 1)]
    stacks: usize,
    #[arg(long, default_value_t = 1)]
    queues: usize,
}

impl SpecArgs {
    fn spec(self) -> Result<PageSpec> {
        PageSpec::new(self.stacks, self.queues)
    }
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_seconds: Option<f64>,
}

impl BudgetArgs {
    fn budget(self) -> SearchBudget {
        SearchBudget::new(self.budget_nodes, self.budget_seconds)
    }
}

#[derive(Subcommand)]
enum ExactCommand {
    /// Decide whether a conflict-free layout exists, over all orders or on
    /// the given one.
    Decide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the certificate layout here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every conflict-free layout on a fixed order.
    Enumerate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Check the K8 clauses over every (2,1) layout of K8.
    VerifyK8 {
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check the double-K8 placement claims over every (2,1) layout order.
    VerifyDoubleK8 {
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Subcommand)]
enum GadgetCommand {
    DoubleK8 {
        /// Also emit a (2,1) witness layout.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    Positioning {
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Wrap a graph into the positioning gadget.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Add one forced queue page on top of a fixed order.
    AugmentQueue {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Add one forced stack page on top of a fixed order.
    AugmentStack {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    class: GraphClass,
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// auto (per-class preset), identity, random, rbfs, avsdf or congreedy
    #[arg(long, default_value = "auto")]
    order: OrderChoice,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "stack-queue,elen,ceilfloor"
    )]
    assign: Vec<AssignHeuristic>,
    #[command(flatten)]
    spec: SpecArgs,
    /// Record wall time per run (makes the CSV non-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_edge_list(&read(path)?)
}

fn read_order(path: &Path) -> Result<VertexOrder> {
    parse_order(&read(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn generate(a: &GenArgs) -> Result<Graph> {
    let seed = GenSeed(a.seed);
    let missing = |flag: &str| linlay::Error::InvalidConfig(format!("{} needs {flag}", a.class));
    match a.class.as_str() {
        "gnm" => gen::random_gnm_connected(a.n, a.m.ok_or_else(|| missing("-m"))?, seed),
        "ktree" => gen::k_tree(a.n, a.k.ok_or_else(|| missing("--k"))?, seed),
        other => other
            .parse::<GraphClass>()
            .map_err(linlay::Error::InvalidConfig)?
            .generate(a.n, seed),
    }
}

fn labels_comment(labels: &GadgetLabels) -> String {
    let list = |v: &[usize]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = format!(
        "# shared {}\n# outer {}\n",
        list(&[labels.shared.0, labels.shared.1]),
        list(&[labels.outer.0, labels.outer.1])
    );
    if let Some(a) = labels.anchor {
        out.push_str(&format!("# anchor {a}\n"));
    }
    if let Some(c) = labels.connectors {
        out.push_str(&format!("# connectors x1 x2 y1 y2 w1 w2: {}\n", list(&c)));
    }
    out
}

fn print_report(report: &ObservationReport) -> ExitCode {
    println!("{report}");
    match report.outcome {
        Outcome::Pass => ExitCode::SUCCESS,
        Outcome::Fail => ExitCode::from(1),
        Outcome::Inconclusive => ExitCode::from(2),
    }
}

fn exact(cmd: ExactCommand) -> Result<ExitCode> {
    match cmd {
        ExactCommand::Decide {
            graph,
            order,
            spec,
            budget,
            out,
        } => {
            let g = read_graph(&graph)?;
            let spec = spec.spec()?;
            let started = Instant::now();
            let decision = match order {
                Some(o) => decide_assignment(&g, &read_order(&o)?, spec, budget.budget())?,
                None => decide_layout(&g, spec, budget.budget())?,
            };
            let seconds = started.elapsed().as_secs_f64();
            let (answer, nodes) = match &decision {
                Decision::Yes(l) => {
                    print!("{}", write_layout(&g, l));
                    if let Some(p) = &out {
                        fs::write(p, write_layout(&g, l))?;
                    }
                    ("yes", None)
                }
                Decision::No => ("no", None),
                Decision::Inconclusive { nodes } => ("inconclusive", Some(*nodes)),
            };
            let nodes = nodes.map(|n| format!(" nodes={n}")).unwrap_or_default();
            println!(
                "summary decision={answer} s={} q={}{nodes} seconds={seconds:.3}",
                spec.stacks, spec.queues
            );
            Ok(match decision {
                Decision::Inconclusive { .. } => ExitCode::from(2),
                _ => ExitCode::SUCCESS,
            })
        }
        ExactCommand::Enumerate {
            graph,
            order,
            spec,
            count,
        } => {
            let g = read_graph(&graph)?;
            let layouts = enumerate_layouts(&g, spec.spec()?, &read_order(&order)?)?;
            if !count {
                for l in &layouts {
                    println!("{}", write_layout(&g, l));
                }
            }
            println!("summary layouts={}", layouts.len());
            Ok(ExitCode::SUCCESS)
        }
        ExactCommand::VerifyK8 { budget } => {
            Ok(print_report(&verify_k8_observations(budget.budget())))
        }
        ExactCommand::VerifyDoubleK8 { budget } => Ok(print_report(
            &verify_double_k8_observations(budget.budget()),
        )),
    }
}

fn gadget(cmd: GadgetCommand) -> Result<()> {
    let text = match cmd {
        GadgetCommand::DoubleK8 { witness } => {
            let (g, labels) = gadgets::double_k8();
            if let Some(p) = witness {
                fs::write(p, write_layout(&g, &gadgets::double_k8_witness()))?;
            }
            labels_comment(&labels) + &write_edge_list(&g)
        }
        GadgetCommand::Positioning { witness } => {
            let (g, labels) = gadgets::positioning_gadget();
            if let Some(p) = witness {
                fs::write(p, write_layout(&g, &gadgets::positioning_witness()))?;
            }
            labels_comment(&labels) + &write_edge_list(&g)
        }
        GadgetCommand::Reduce { graph } => {
            let g = read_graph(&graph)?;
            let (_, labels) = gadgets::positioning_gadget();
            labels_comment(&labels) + &write_edge_list(&gadgets::reduce_subhamiltonian(&g))
        }
        GadgetCommand::AugmentQueue { graph, order, spec } => {
            let (h, o) = gadgets::augment_queue_page(
                &read_graph(&graph)?,
                &read_order(&order)?,
                spec.spec()?,
            )?;
            format!("# order {}", write_order(&o)) + &write_edge_list(&h)
        }
        GadgetCommand::AugmentStack { graph, order, spec } => {
            let a = gadgets::augment_stack_page(
                &read_graph(&graph)?,
                &read_order(&order)?,
                spec.spec()?,
            )?;
            format!("# order {}# center {}\n", write_order(&a.order), a.center)
                + &write_edge_list(&a.graph)
        }
    };
    emit(None, &text)
}

fn bench(a: BenchArgs) -> Result<()> {
    let cfg = ExperimentConfig {
        class: a.class,
        sizes: a.sizes,
        instances: a.instances,
        seed: a.seed,
        order: a.order,
        assign: a.assign,
        spec: a.spec.spec()?,
        timing: a.timing,
    };
    let records = run_experiment(&cfg)?;
    match &a.out {
        Some(p) => write_csv(fs::File::create(p)?, &records)?,
        None => write_csv(io::stdout().lock(), &records)?,
    }
    eprint!("{}", format_summary(&summarize(&records)));
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(a) => emit(a.out.as_deref(), &write_edge_list(&generate(&a)?))?,
        Command::Order {
            heuristic,
            graph,
            seed,
            out,
        } => {
            let o = heuristic.run(&read_graph(&graph)?, GenSeed(seed))?;
            emit(out.as_deref(), &write_order(&o))?;
        }
        Command::Assign {
            heuristic,
            graph,
            order,
            spec,
            out,
        } => {
            let g = read_graph(&graph)?;
            let layout = heuristic.run(&g, &read_order(&order)?, spec.spec()?)?;
            let report = count_conflicts(&g, &layout)?;
            emit(out.as_deref(), &write_layout(&g, &layout))?;
            eprintln!(
                "conflicts={} per_edge={} crossings={:?} nestings={:?}",
                report.total,
                report.per_edge(),
                report.crossings_per_stack_page,
                report.nestings_per_queue_page
            );
        }
        Command::Conflicts { graph, layout } => {
            let g = read_graph(&graph)?;
            let report = count_conflicts(&g, &parse_layout(&g, &read(&layout)?)?)?;
            println!(
                "conflicts={} per_edge={} crossings={:?} nestings={:?}",
                report.total,
                report.per_edge(),
                report.crossings_per_stack_page,
                report.nestings_per_queue_page
            );
        }
        Command::Exact { command } => return exact(command),
        Command::Gadget { command } => gadget(command)?,
        Command::Bench(a) => bench(a)?,
        Command::Render {
            graph,
            layout,
            highlight,
            out,
        } => {
            let g = read_graph(&graph)?;
            let l = parse_layout(&g, &read(&layout)?)?;
            let opts = SvgOptions {
                highlight_conflicts: highlight,
            };
            emit(out.as_deref(), &render_arc_svg(&g, &l, &opts))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
