use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use gvm::convergence::{StateCode, StateGraph};
use gvm::engine::{simulate_mc, Evaluator};
use gvm::experiment::{parse_methods, ConvergenceSweep, ExperimentConfig};
use gvm::generators::{
    gen_exp_period, gen_exp_time, gen_hrg, gen_reduction, hrg_colouring, random_max_coverage,
    HrgColouring, HrgParams,
};
use gvm::graph::{
    is_strongly_connected, period_classes, single_source_distances,
    strongly_connected_components, WeightedDigraph, UNREACHABLE,
};
use gvm::io::{self, KeyValues, ResultRow, WeightMode};
use gvm::maximize::run_strategy;
use gvm::model::{SeedSet, System};
use gvm::{Error, Result};

#[derive(Parser)]
#[command(name = "gvm", version, about = "Generalised voter model on weighted digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo trajectory statistics of the blue count per round.
    Simulate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        runs: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seed selection by greedy and centrality methods over budgets 0..=N.
    Maximize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        rounds: usize,
        /// Comma-separated methods, or `all`.
        #[arg(long, default_value = "greedy")]
        method: String,
        /// marginal, exact[:CAP] or montecarlo[:RUNS].
        #[arg(long, default_value = "marginal")]
        evaluator: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Structural summary of a graph.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "as_given")]
        weight_mode: WeightMode,
    },
    /// Absorbing classes of the colouring chain by exhaustive enumeration.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = gvm::convergence::DEFAULT_EXACT_CAP)]
        max_nodes: usize,
        /// Enumerate every colouring, not only those reachable from the input.
        #[arg(long)]
        full: bool,
    },
    /// Writes a generated graph and colouring under a path prefix.
    Generate(GenerateArgs),
    /// Runs a key=value experiment configuration.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colours: PathBuf,
    #[arg(long, default_value = "as_given")]
    weight_mode: WeightMode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    ExpPeriod,
    ExpTime,
    McReduction,
    Hrg,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    coverage_spec: Option<PathBuf>,
    #[arg(long = "R")]
    radius: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Initial colouring strategy for hyperbolic graphs, 1 to 4.
    #[arg(long, default_value_t = 3)]
    colouring: u8,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out_prefix: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Simulate { input, rounds, runs, seed, out } => simulate(&input, rounds, runs, seed, &out),
        Command::Maximize { input, budget, rounds, method, evaluator, seed, out } => {
            maximize(&input, budget, rounds, &method, &evaluator, seed, &out)
        }
        Command::Analyze { graph, weight_mode } => analyze(&io::load_graph(&graph, weight_mode)?),
        Command::Enumerate { input, max_nodes, full } => enumerate(&input, max_nodes, full),
        Command::Generate(args) => generate(&args),
        Command::Bench { config, out } => bench(&config, &out),
    }
}

fn load(input: &Input) -> Result<(WeightedDigraph, System)> {
    let g = io::load_graph(&input.graph, input.weight_mode)?;
    let c = io::load_colours(&input.colours, &g)?;
    let sys = System::from_weighted(&g, c)?;
    Ok((g, sys))
}

fn simulate(input: &Input, rounds: usize, runs: usize, seed: u64, out: &Path) -> Result<()> {
    if runs == 0 {
        return Err(Error::InvalidParameter("--runs must be positive".into()));
    }
    let (_, sys) = load(input)?;
    let est = simulate_mc(&sys, &SeedSet::empty(), rounds, runs, seed)?;
    let rows = est
        .trace
        .iter()
        .zip(&est.trace_stderr)
        .enumerate()
        .map(|(t, (m, s))| vec![t.to_string(), m.to_string(), s.to_string()]);
    io::write_csv(out, &io::SIMULATION_HEADER, rows)
}

fn maximize(
    input: &Input,
    budget: usize,
    rounds: usize,
    methods: &str,
    evaluator: &str,
    seed: u64,
    out: &Path,
) -> Result<()> {
    let (g, sys) = load(input)?;
    let methods = parse_methods(methods)?;
    let evaluator = evaluator.parse::<Evaluator>()?.with_seed(seed);
    let n = g.node_count();
    let mut rows = Vec::new();
    let mut picks = Vec::new();
    for m in methods {
        let r = run_strategy(&sys, m, budget, rounds, evaluator)?;
        for b in 0..=budget {
            let f = r.value_at(b);
            rows.push(ResultRow {
                method: r.method.clone(),
                budget: b,
                expected_blue: f,
                expected_blue_fraction: f / n as f64,
                evaluator: evaluator.name().to_owned(),
                rounds,
                seed,
            });
        }
        for (i, &v) in r.selected.iter().enumerate() {
            picks.push(vec![r.method.clone(), (i + 1).to_string(), v.to_string(), g.label(v).to_owned()]);
        }
    }
    io::write_results(out, &rows)?;
    io::write_csv(&sidecar(out, "seeds"), &["method", "rank", "node_id", "label"], picks)
}

/// `results.csv` becomes `results.seeds.csv`.
fn sidecar(out: &Path, tag: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{tag}.csv"))
}

fn analyze(g: &WeightedDigraph) -> Result<()> {
    let n = g.node_count();
    let sc = is_strongly_connected(g);
    let cond = strongly_connected_components(g);
    println!("n: {n}");
    println!("m: {}", g.edge_count());
    println!("strongly_connected: {sc}");
    println!("scc_count: {}", cond.len());
    println!("leaf_scc_count: {}", cond.leaves().count());
    if sc {
        let p = period_classes(g)?;
        let sizes: Vec<String> = p.classes.iter().map(|c| c.len().to_string()).collect();
        println!("gamma: {}", p.gamma);
        println!("class_sizes: {}", sizes.join(" "));
    }
    let diameter = (0..n)
        .into_par_iter()
        .map(|v| single_source_distances(g, v).into_iter().filter(|&d| d != UNREACHABLE).max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    println!("diameter: {diameter}");
    Ok(())
}

fn enumerate(input: &Input, max_nodes: usize, full: bool) -> Result<()> {
    let (_, sys) = load(input)?;
    let sg = if full {
        StateGraph::full(sys.graph(), max_nodes)?
    } else {
        StateGraph::reachable(&sys, max_nodes)?
    };
    let report = sg.leaf_report();
    let n = sys.node_count();
    println!("states: {}", report.state_count);
    println!("leaves: {}", report.leaves.len());
    for (i, leaf) in report.leaves.iter().enumerate() {
        const SHOWN: usize = 8;
        let mut shown: Vec<String> =
            leaf.states.iter().take(SHOWN).map(|s| s.decode(n).to_string()).collect();
        if leaf.size() > SHOWN {
            shown.push("...".into());
        }
        println!(
            "leaf {}: size {} deterministic_cycle {} states {}",
            i + 1,
            leaf.size(),
            leaf.deterministic_cycle,
            shown.join(" ")
        );
    }
    let start = StateCode::encode(sys.initial());
    if let Some(i) = sg.index_of(start) {
        println!("expected_rounds_to_leaf: {}", sg.expected_absorption_time(i));
    }
    Ok(())
}

fn generate(a: &GenerateArgs) -> Result<()> {
    let prefix = &a.out_prefix;
    let path = |suffix: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(suffix);
        PathBuf::from(s)
    };
    let (g, sys) = match a.family {
        Family::ExpPeriod => gen_exp_period(a.n)?,
        Family::ExpTime => gen_exp_time(a.n)?,
        Family::McReduction => {
            let mut inst = match &a.coverage_spec {
                Some(p) => io::load_coverage_spec(p)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
                    random_max_coverage(a.n, a.epsilon.unwrap_or(0.25), &mut rng)?
                }
            };
            if let Some(e) = a.epsilon {
                inst.epsilon = e;
            }
            let red = gen_reduction(&inst)?;
            let meta = format!(
                "rounds = {}\nbudget = {}\nepsilon = {}\nsatellites_per_object = {}\n",
                red.rounds, inst.budget, inst.epsilon, red.satellites_per_object
            );
            io::write_atomic(&path(".meta.txt"), |w| {
                w.write_all(meta.as_bytes()).map_err(|e| Error::Io { path: path(".meta.txt"), source: e })
            })?;
            (red.graph, red.system)
        }
        Family::Hrg => {
            let mut p = HrgParams::new(a.n, a.seed);
            p.radius = a.radius.unwrap_or(p.radius);
            p.alpha = a.alpha.unwrap_or(p.alpha);
            let hrg = gen_hrg(&p)?;
            let strategy = HrgColouring::from_number(a.colouring)?;
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            rng.set_stream(1);
            let c = hrg_colouring(a.n, Some(&hrg.coords), strategy, &mut rng)?;
            let coords = hrg.coords.iter().enumerate().map(|(v, q)| vec![v.to_string(), q.r.to_string(), q.theta.to_string()]);
            io::write_csv(&path(".coords.csv"), &["node", "r", "theta"], coords)?;
            let sys = System::from_weighted(&hrg.graph, c)?;
            (hrg.graph, sys)
        }
    };
    io::save_graph(&g, &path(".edges"))?;
    io::save_colours(&g, sys.initial(), &path(".colours.csv"))
}

fn bench(config: &Path, out: &Path) -> Result<()> {
    let kv = KeyValues::load(config)?;
    match kv.get("experiment").unwrap_or("budget") {
        "budget" => io::write_results(out, &ExperimentConfig::from_key_values(&kv)?.run()?),
        "convergence" => io::write_convergence(out, &ConvergenceSweep::from_key_values(&kv)?.run()?),
        other => Err(Error::InvalidParameter(format!("unknown experiment `{other}`"))),
    }
}
