use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use contagion::experiments::{self, ExperimentConfig, Format, Mode};
use contagion::graph::{read_edge_list, write_edge_list};
use contagion::{
    construct_contagious, min_contagious_exact, percolate, sample_gnp, GnpParams, Graph,
    PercolationParams, StageParams, VertexSet,
};

#[derive(Parser)]
#[command(
    name = "contagion",
    version,
    about = "Bootstrap percolation experiments on G(n, p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and write it as an edge list.
    Generate(GraphArgs),
    /// Run the process from a seed set and print the trace as JSON.
    Percolate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Comma-separated seed vertices.
        #[arg(long, value_delimiter = ',', conflicts_with = "random_seeds")]
        seeds: Vec<u32>,
        /// Use this many uniformly random seeds instead.
        #[arg(long)]
        random_seeds: Option<usize>,
    },
    /// Build a contagious set with the staged construction.
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Compute m(G, r) exactly (small graphs only).
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = contagion::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Constructed contagious-set sizes over a grid of n and d.
    Sweep(BatchArgs),
    /// Locate the edge probability where r-sets become contagious.
    Threshold(BatchArgs),
    /// Random seed sets above and below the critical size, and constructed sets.
    Compare(BatchArgs),
    /// Rounds needed by contagious r-sets, with the one-round growth check.
    Generations(BatchArgs),
    /// Activate a random half and count what stays inactive.
    Partial(BatchArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Read the graph from an edge-list file instead of sampling.
    #[arg(long, conflicts_with_all = ["n", "d", "p"])]
    graph: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Average degree; p = d / n.
    #[arg(long, conflicts_with = "p")]
    d: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BatchArgs {
    /// TOML config; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    d: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    threads: Option<usize>,
    /// Record wall-clock time per trial (output is then not reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    k_target: Option<usize>,
    #[arg(long)]
    probe_trials: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Returns whether a statistical check was flagged.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Generate(args) => {
            let graph = load_graph(&args)?;
            let mut out = output(&args.out)?;
            write_edge_list(&graph, &mut out)?;
            out.flush()?;
        }
        Command::Percolate {
            graph: args,
            r,
            seeds,
            random_seeds,
        } => {
            let graph = load_graph(&args)?;
            let seeds = match random_seeds {
                Some(k) => experiments::random_subset(graph.vertex_count(), k, args.seed ^ 0x5eed),
                None => VertexSet::from_vec(seeds),
            };
            let res = percolate(&graph, &seeds, PercolationParams::new(r)?)?;
            write_json(&args.out, &serde_json::to_value(&res)?)?;
        }
        Command::Construct { graph: args, r } => {
            let graph = load_graph(&args)?;
            let (seeds, trace) =
                construct_contagious(&graph, &StageParams::for_threshold(r), args.seed)?;
            let body = serde_json::json!({ "size": seeds.len(), "seeds": seeds, "trace": trace });
            write_json(&args.out, &body)?;
        }
        Command::Solve {
            graph: args,
            r,
            budget,
        } => {
            let graph = load_graph(&args)?;
            let res = min_contagious_exact(&graph, r, budget)?;
            write_json(&args.out, &serde_json::to_value(&res)?)?;
        }
        Command::Sweep(a) => return batch(Mode::Sweep, a),
        Command::Threshold(a) => return batch(Mode::Threshold, a),
        Command::Compare(a) => return batch(Mode::Compare, a),
        Command::Generations(a) => return batch(Mode::Generations, a),
        Command::Partial(a) => return batch(Mode::Partial, a),
    }
    Ok(false)
}

fn batch(mode: Mode, a: BatchArgs) -> Result<bool> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            ExperimentConfig::from_toml(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if a.config.is_some() && cfg.mode != mode {
        bail!(
            "config file is for mode {}, not {}",
            cfg.mode.name(),
            mode.name()
        );
    }
    cfg.mode = mode;
    if !a.n.is_empty() {
        cfg.n = a.n;
    }
    if !a.d.is_empty() {
        cfg.d = a.d;
        cfg.p.clear();
    }
    if !a.p.is_empty() {
        cfg.p = a.p;
        cfg.d.clear();
    }
    macro_rules! set {
        ($($field:ident <- $value:expr),* $(,)?) => {$(
            if let Some(v) = $value {
                cfg.$field = v;
            }
        )*};
    }
    set!(
        r <- a.r,
        trials <- a.trials,
        master_seed <- a.seed,
        c1 <- a.c1,
        probe_trials <- a.probe_trials,
        bisection_tolerance <- a.tolerance,
    );
    if let Some(out) = a.out {
        cfg.output_path = Some(out);
    }
    if let Some(f) = a.format {
        cfg.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if a.threads.is_some() {
        cfg.threads = a.threads;
    }
    if a.k_target.is_some() {
        cfg.k_target = a.k_target;
    }
    cfg.timing |= a.timing;

    let outcome = experiments::run(&cfg)?;
    let stdout = io::stdout();
    experiments::write_outcome(&cfg, &outcome, stdout.lock())?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    for f in &outcome.flags {
        eprintln!("flagged: {f}");
    }
    Ok(outcome.flagged())
}

fn load_graph(args: &GraphArgs) -> Result<Graph> {
    if let Some(path) = &args.graph {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        return Ok(read_edge_list(BufReader::new(file))?);
    }
    let Some(n) = args.n else {
        bail!("give --graph or --n with --d or --p");
    };
    let params = match (args.d, args.p) {
        (Some(d), None) => GnpParams::with_degree(n, d, args.seed)?,
        (None, Some(p)) => GnpParams::new(n, p, args.seed)?,
        _ => bail!("give exactly one of --d and --p"),
    };
    Ok(sample_gnp(&params))
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<()> {
    let mut out = output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
