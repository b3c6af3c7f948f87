//! Command-line front end: counting, expression synthesis and evaluation,
//! graph generation, isomorphism checks, and the self-verification harness.
//!
//! Counts are printed as plain decimal, one value per line. Graphs and
//! expressions travel as JSON. The default work budget can be overridden
//! by the `HOMCOUNT_BUDGET` environment variable or the `--budget` flag.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use homcount::{
    brute_hom, count_hom_kneser, count_hom_subdivided, count_hom_via_expr, gadget_reduce,
    gen_clique, gen_hypercube, gen_kneser, graph_iso, labeled_iso, run_verification,
    subdivide_clique, synthesize, ExtExpr, Graph, KneserInstance, LabeledGraph,
    SubdividedInstance, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "homcount", version, about = "Exact graph homomorphism counting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count homomorphisms from a source graph into a target
    Count(CountArgs),
    /// Search for an expression that builds a given graph
    Synth(SynthArgs),
    /// Evaluate an expression file to the labeled graph it denotes
    Eval(EvalArgs),
    /// Emit a graph from a named family as JSON
    Gen(GenArgs),
    /// Decide whether two graphs are isomorphic
    Iso(IsoArgs),
    /// Run the randomized self-verification suites
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Bruteforce,
    Expression,
    Subdivided,
    Kneser,
}

#[derive(Args)]
struct CountArgs {
    /// Source graph file
    #[arg(short = 'G', long = "source", value_name = "FILE")]
    source: PathBuf,

    /// Target graph file, for the brute-force method
    #[arg(short = 'H', long = "target", value_name = "FILE")]
    target: Option<PathBuf>,

    /// Expression file describing the target
    #[arg(long, value_name = "FILE")]
    expr: Option<PathBuf>,

    /// Kneser target: ground set size and subset size
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    kneser: Option<Vec<usize>>,

    /// Subdivided-clique target: clique size and subdivider graph file
    #[arg(long, num_args = 2, value_names = ["N", "UFILE"])]
    subdivided: Option<Vec<String>>,

    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,

    /// Cap on enumeration and table sizes
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    /// Write the count here instead of standard output
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Graph file to find an expression for
    #[arg(short = 'G', long = "source", value_name = "FILE")]
    source: PathBuf,

    /// Number of labels the expression may use
    #[arg(short, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,

    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,

    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Expression file to evaluate
    #[arg(long, value_name = "FILE")]
    expr: PathBuf,

    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Complete graph on n vertices
    Clique {
        n: usize,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Hypercube of the given dimension
    Hypercube {
        n: usize,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Kneser graph of k-subsets of an n-set
    Kneser {
        n: usize,
        k: usize,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Clique on n vertices with every edge subdivided by a graph file
    SubdividedClique {
        n: usize,
        ufile: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct IsoArgs {
    /// First graph file
    #[arg(short = 'G', long = "first", value_name = "FILE")]
    first: PathBuf,

    /// Second graph file
    #[arg(short = 'H', long = "second", value_name = "FILE")]
    second: PathBuf,

    /// Decide through the reduction to unlabeled isomorphism and dump the
    /// reduced pair (inputs must be labeled)
    #[arg(long)]
    gadget: bool,

    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for all randomized cases
    #[arg(long, default_value_t = 1)]
    seed: u64,

    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run(cli: Cli) -> Result<ExitCode, AnyError> {
    match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Iso(args) => cmd_iso(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn budget_from(flag: Option<u64>) -> Result<u128, AnyError> {
    if let Some(b) = flag {
        return Ok(b as u128);
    }
    match std::env::var("HOMCOUNT_BUDGET") {
        Ok(text) => {
            let b: u128 = text.parse().map_err(|_| {
                format!("HOMCOUNT_BUDGET is not a positive integer: {text:?}")
            })?;
            if b == 0 {
                return Err("HOMCOUNT_BUDGET must be positive".into());
            }
            Ok(b)
        }
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read_graph(path: &Path) -> Result<Graph, AnyError> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(Graph::from_json(&text)?)
}

fn read_labeled(path: &Path) -> Result<LabeledGraph, AnyError> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(LabeledGraph::from_json(&text)?)
}

fn read_expr(path: &Path) -> Result<ExtExpr, AnyError> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(ExtExpr::from_json(&text)?)
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), AnyError> {
    match output {
        Some(path) => {
            fs::write(path, format!("{text}\n"))
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_count(args: CountArgs) -> Result<ExitCode, AnyError> {
    let g = read_graph(&args.source)?;
    let budget = budget_from(args.budget)?;
    let method = match args.method {
        Method::Auto => {
            if args.expr.is_some() {
                Method::Expression
            } else if args.subdivided.is_some() {
                Method::Subdivided
            } else if args.kneser.is_some() {
                Method::Kneser
            } else {
                Method::Bruteforce
            }
        }
        m => m,
    };
    let count = match method {
        Method::Auto => unreachable!(),
        Method::Bruteforce => {
            let path = args.target.as_ref().ok_or("method bruteforce needs a target file (-H)")?;
            let h = read_graph(path)?;
            brute_hom(&g, &h, budget)?
        }
        Method::Expression => {
            let path = args.expr.as_ref().ok_or("method expression needs --expr FILE")?;
            count_hom_via_expr(&g, &read_expr(path)?, budget)?
        }
        Method::Subdivided => {
            let params = args.subdivided.as_ref().ok_or("method subdivided needs --subdivided N UFILE")?;
            let n: usize = params[0]
                .parse()
                .map_err(|_| format!("clique size is not a number: {:?}", params[0]))?;
            let u = read_graph(Path::new(&params[1]))?;
            let inst = SubdividedInstance::new(&g, n, &u);
            count_hom_subdivided(&inst, budget)?
        }
        Method::Kneser => {
            let params = args.kneser.as_ref().ok_or("method kneser needs --kneser N K")?;
            count_hom_kneser(&KneserInstance { g: &g, n: params[0], k: params[1] })?
        }
    };
    emit(args.output.as_ref(), &count.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_synth(args: SynthArgs) -> Result<ExitCode, AnyError> {
    let g = read_graph(&args.source)?;
    let budget = budget_from(args.budget)?;
    match synthesize(&g, args.k as usize, budget)? {
        Some(e) => {
            emit(args.output.as_ref(), &e.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        None => {
            eprintln!("no expression with {} labels found", args.k);
            Ok(ExitCode::FAILURE)
        }
    }
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, AnyError> {
    let value = read_expr(&args.expr)?.eval()?;
    emit(args.output.as_ref(), &value.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode, AnyError> {
    let (graph, output) = match args.family {
        GenFamily::Clique { n, output } => (gen_clique(n), output),
        GenFamily::Hypercube { n, output } => (gen_hypercube(n)?, output),
        GenFamily::Kneser { n, k, output } => (gen_kneser(n, k)?, output),
        GenFamily::SubdividedClique { n, ufile, output } => {
            let u = read_graph(&ufile)?;
            (subdivide_clique(n, &u)?.graph, output)
        }
    };
    emit(output.as_ref(), &graph.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_iso(args: IsoArgs) -> Result<ExitCode, AnyError> {
    let mut lines = Vec::new();
    let verdict = if args.gadget {
        let a = read_labeled(&args.first)?;
        let b = read_labeled(&args.second)?;
        let inst = gadget_reduce(&a, &b)?;
        let iso = graph_iso(&inst.g_prime, &inst.h_prime).is_some();
        lines.push(inst.g_prime.to_json());
        lines.push(inst.h_prime.to_json());
        iso
    } else {
        // read each file once so pipes work; labels are respected when
        // both files carry them
        let first = fs::read_to_string(&args.first)
            .map_err(|e| format!("cannot read {}: {e}", args.first.display()))?;
        let second = fs::read_to_string(&args.second)
            .map_err(|e| format!("cannot read {}: {e}", args.second.display()))?;
        match (LabeledGraph::from_json(&first), LabeledGraph::from_json(&second)) {
            (Ok(a), Ok(b)) => labeled_iso(&a, &b).is_some(),
            _ => graph_iso(&Graph::from_json(&first)?, &Graph::from_json(&second)?).is_some(),
        }
    };
    let mut text = String::from(if verdict { "iso" } else { "non-iso" });
    for line in lines {
        text.push('\n');
        text.push_str(&line);
    }
    emit(args.output.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, AnyError> {
    let budget = budget_from(args.budget)?;
    let report = run_verification(args.seed, budget);
    println!("{report}");
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}
