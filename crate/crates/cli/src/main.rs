//! `sm`: subtree mode queries, document retrieval and algorithm benchmarks.

mod alloc;
mod bench;
mod docs;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subtree_mode::baselines::{
    ba1_all_modes_with_budget, ba2_all_modes_with_budget, ba3_all_modes, brute_all_modes,
    brute_anti_modes, brute_top_k, MemoryBudget,
};
use subtree_mode::dag::{bmm_via_dm, format_matrix, parse_matrices, BmmInstance};
use subtree_mode::forest::split_forest;
use subtree_mode::lca::LcaIndex;
use subtree_mode::mode::{scm_all_modes, scm_anti_modes, scm_top_k, write_answer_table, ModeTable};
use subtree_mode::{Error, LeafColoredTree};

#[global_allocator]
static GLOBAL: alloc::Tracking = alloc::Tracking;

#[derive(Parser)]
#[command(
    name = "sm",
    version,
    about = "Subtree mode queries, document retrieval and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Most frequent leaf color below every node: `node_id color freq`
    Mode(TreeArgs),
    /// Least frequent color (zero counts included) below every node
    Antimode(TreeArgs),
    /// The k most frequent colors below every node: `node_id c1 f1 c2 f2 ...`
    Ksm(TreeArgs),
    /// Document retrieval on a generalized suffix tree
    Docs {
        #[command(subcommand)]
        command: docs::DocsCommand,
    },
    /// Time algorithms on generated trees and print CSV
    Bench(bench::BenchArgs),
    /// Multiply two boolean matrices through descendant-mode queries
    Bmm {
        matrix: PathBuf,
        /// Also write the reduction DAG as an edge list
        #[arg(long)]
        dump_dag: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random leaf-colored tree
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_arity: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the single-color trees of a tree
    Forest {
        tree: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(hide = true)]
    BenchOne(bench::BenchOneArgs),
}

#[derive(Args)]
struct TreeArgs {
    tree: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Scm)]
    algo: Algo,
    /// List length for `ksm`
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Table cells BA1/BA2 may allocate before refusing
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Scm,
    Ba1,
    Ba2,
    Ba3,
    Brute,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Scm => "scm",
            Algo::Ba1 => "ba1",
            Algo::Ba2 => "ba2",
            Algo::Ba3 => "ba3",
            Algo::Brute => "brute",
        }
    }
}

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub const USAGE: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const RESOURCE: u8 = 3;

    pub fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: Self::USAGE,
            msg: msg.into(),
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: Self::INPUT,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MemoryGuard { .. } => Self::RESOURCE,
            Error::InvalidParameter(_) => Self::USAGE,
            _ => Self::INPUT,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // A closed downstream pipe (`sm ... | head`) ends output early.
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure {
                code: 0,
                msg: String::new(),
            };
        }
        Failure::input(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn read_tree(path: &Path) -> CliResult<LeafColoredTree> {
    LeafColoredTree::parse(&read_file(path)?)
        .map_err(|e| Failure::from(e).with_context(&path.display().to_string()))
}

impl Failure {
    fn with_context(mut self, ctx: &str) -> Self {
        self.msg = format!("{ctx}: {}", self.msg);
        self
    }
}

/// Buffered writer to `path`, or to standard output.
pub fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn compute_modes(t: &LeafColoredTree, algo: Algo, budget: Option<u64>) -> CliResult<ModeTable> {
    let budget = budget.map(MemoryBudget::new).unwrap_or_default();
    Ok(match algo {
        Algo::Scm => scm_all_modes(t),
        Algo::Ba1 => ba1_all_modes_with_budget(t, budget)?,
        Algo::Ba2 => ba2_all_modes_with_budget(t, budget)?,
        Algo::Ba3 => ba3_all_modes(t),
        Algo::Brute => brute_all_modes(t),
    })
}

fn cmd_tree(kind: &str, args: TreeArgs) -> CliResult {
    let t = read_tree(&args.tree)?;
    let unsupported =
        |a: Algo| Failure::usage(format!("{kind} supports scm and brute, not {}", a.name()));
    let mut text = Vec::new();
    match kind {
        "mode" => {
            if args.k.is_some() {
                return Err(Failure::usage("--k applies to `ksm` only"));
            }
            let modes = compute_modes(&t, args.algo, args.budget)?;
            write_answer_table(&mut text, &modes, None)?;
        }
        "antimode" => {
            let anti = match args.algo {
                Algo::Scm => scm_anti_modes(&t),
                Algo::Brute => brute_anti_modes(&t),
                a => return Err(unsupported(a)),
            };
            for v in 0..anti.len() {
                let (c, f) = anti.get(v);
                writeln!(text, "{v} {c} {f}")?;
            }
        }
        _ => {
            let k = args.k.ok_or_else(|| Failure::usage("ksm requires --k"))?;
            let table = match args.algo {
                Algo::Scm => scm_top_k(&t, k)?,
                Algo::Brute => brute_top_k(&t, k)?,
                a => return Err(unsupported(a)),
            };
            table.write_to(&mut text)?;
        }
    }
    let mut w = output(args.out.as_deref())?;
    w.write_all(&text)?;
    w.flush()?;
    Ok(())
}

fn cmd_bmm(matrix: &Path, dump_dag: Option<&Path>, out: Option<&Path>) -> CliResult {
    let (a, b) = parse_matrices(&read_file(matrix)?)?;
    if let Some(p) = dump_dag {
        let mut w = output(Some(p))?;
        BmmInstance::new(&a, &b)?.dag().write_edges(&mut w)?;
        w.flush()?;
    }
    let mut w = output(out)?;
    w.write_all(format_matrix(&bmm_via_dm(&a, &b)?).as_bytes())?;
    w.flush()?;
    Ok(())
}

fn cmd_gen(n: usize, delta: usize, seed: u64, max_arity: usize, out: Option<&Path>) -> CliResult {
    let t = bench::generate(n, delta, seed, max_arity)?;
    let mut w = output(out)?;
    t.write_to(&mut w)?;
    w.flush()?;
    Ok(())
}

fn cmd_forest(tree: &Path, out: Option<&Path>) -> CliResult {
    let t = read_tree(tree)?;
    let forest = split_forest(&t, &LcaIndex::new(&t));
    let mut w = output(out)?;
    w.write_all(forest.dump().as_bytes())?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Mode(a) => cmd_tree("mode", a),
        Command::Antimode(a) => cmd_tree("antimode", a),
        Command::Ksm(a) => cmd_tree("ksm", a),
        Command::Docs { command } => docs::run(command),
        Command::Bench(a) => bench::run(a),
        Command::BenchOne(a) => bench::run_one(a),
        Command::Bmm {
            matrix,
            dump_dag,
            out,
        } => cmd_bmm(&matrix, dump_dag.as_deref(), out.as_deref()),
        Command::Gen {
            n,
            delta,
            seed,
            max_arity,
            out,
        } => cmd_gen(n, delta, seed, max_arity, out.as_deref()),
        Command::Forest { tree, out } => cmd_forest(&tree, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Failure::USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sm: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
