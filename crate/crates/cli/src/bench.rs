//! Benchmark driver. Every (algorithm, size) cell runs in a child process so
//! a run past its time budget can be killed and its memory is measured in
//! isolation.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subtree_mode::generate::random_tree;
use subtree_mode::retrieval::DocRetrievalIndex;
use subtree_mode::suffix::parse_documents;
use subtree_mode::{Error, LeafColoredTree};

use crate::{alloc, compute_modes, output, read_file, Algo, CliResult, Failure};

#[derive(Args)]
pub struct BenchArgs {
    /// Comma-separated algorithms
    #[arg(long, value_enum, value_delimiter = ',', default_value = "scm,ba3")]
    algos: Vec<Algo>,
    /// Comma-separated node counts; `2.5e5` style is accepted
    #[arg(long, value_delimiter = ',', value_parser = parse_count, required_unless_present = "docs")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    delta: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    max_arity: usize,
    /// Per-run wall-clock budget; slower runs are reported as `timeout`
    #[arg(long, default_value_t = 60_000)]
    timeout_ms: u64,
    /// Table cells BA1/BA2 may allocate before refusing
    #[arg(long)]
    budget: Option<u64>,
    /// Benchmark on the suffix tree of this document file instead
    #[arg(long, conflicts_with = "sizes")]
    docs: Option<PathBuf>,
    /// Run all cells at once; timings are then only indicative
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BenchOneArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    max_arity: usize,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    docs: Option<PathBuf>,
}

fn parse_count(s: &str) -> Result<usize, String> {
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x <= u32::MAX as f64 => Ok(x as usize),
        _ => Err(format!("{s:?} is not a node count")),
    }
}

pub fn generate(n: usize, delta: usize, seed: u64, max_arity: usize) -> CliResult<LeafColoredTree> {
    if n < 1 || delta < 1 || max_arity < 1 {
        return Err(Failure::usage("n, delta and max-arity must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_tree(&mut rng, n, delta, max_arity))
}

/// FNV-1a over the frequency column.
fn checksum(freqs: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for f in freqs {
        for b in f.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Child side: build one instance, time one algorithm, print one line
/// `n delta build_ms peak_bytes checksum status`.
pub fn run_one(a: BenchOneArgs) -> CliResult {
    let t = match &a.docs {
        Some(p) => {
            let (coll, _) = parse_documents(&read_file(p)?)?;
            DocRetrievalIndex::new(&coll)?.gst().tree().clone()
        }
        None => generate(a.n, a.delta, a.seed, a.max_arity)?,
    };
    let base = alloc::reset_peak();
    let start = Instant::now();
    let result = compute_modes(&t, a.algo, a.budget);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let peak = alloc::peak().saturating_sub(base);
    let mut w = output(None)?;
    match result {
        Ok(m) => writeln!(
            w,
            "{} {} {ms:.3} {peak} {:016x} ok",
            t.len(),
            t.num_colors(),
            checksum(m.freqs())
        )?,
        Err(f) if f.code == Failure::RESOURCE => {
            writeln!(w, "{} {} - - - refused", t.len(), t.num_colors())?
        }
        Err(f) => return Err(f),
    }
    w.flush()?;
    Ok(())
}

struct Cell {
    algo: Algo,
    n: usize,
}

fn run_cell(args: &BenchArgs, cell: &Cell) -> CliResult<String> {
    let exe = std::env::current_exe()?;
    let mut cmd = Command::new(exe);
    cmd.arg("bench-one")
        .args(["--algo", cell.algo.name()])
        .args(["--n", &cell.n.to_string()])
        .args(["--delta", &args.delta.to_string()])
        .args(["--seed", &args.seed.to_string()])
        .args(["--max-arity", &args.max_arity.to_string()]);
    if let Some(b) = args.budget {
        cmd.args(["--budget", &b.to_string()]);
    }
    if let Some(d) = &args.docs {
        cmd.arg("--docs").arg(d);
    }
    let mut child = cmd.stdout(Stdio::piped()).stderr(Stdio::piped()).spawn()?;
    let budget = Duration::from_millis(args.timeout_ms);
    let start = Instant::now();
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break Some(status);
        }
        if start.elapsed() > budget {
            child.kill()?;
            child.wait()?;
            break None;
        }
        thread::sleep(Duration::from_millis(2));
    };
    let algo = cell.algo.name();
    let fallback = |status: &str| format!("{algo},{},{},,,,{status}", cell.n, args.delta);
    let Some(status) = status else {
        return Ok(fallback("timeout"));
    };
    let mut stdout = String::new();
    child
        .stdout
        .take()
        .expect("piped")
        .read_to_string(&mut stdout)?;
    if !status.success() {
        let mut stderr = String::new();
        child
            .stderr
            .take()
            .expect("piped")
            .read_to_string(&mut stderr)?;
        eprintln!("sm bench: {algo} n={}: {}", cell.n, stderr.trim());
        return Ok(fallback("error"));
    }
    let f: Vec<&str> = stdout.split_whitespace().collect();
    if f.len() != 6 {
        return Ok(fallback("error"));
    }
    let blank = |s: &str| {
        if s == "-" {
            String::new()
        } else {
            s.to_string()
        }
    };
    Ok(format!(
        "{algo},{},{},{},{},{},{}",
        f[0],
        f[1],
        blank(f[2]),
        blank(f[3]),
        blank(f[4]),
        f[5]
    ))
}

pub fn run(args: BenchArgs) -> CliResult {
    if args.timeout_ms == 0 {
        return Err(Error::InvalidParameter("--timeout-ms must be positive".into()).into());
    }
    let sizes = if args.docs.is_some() {
        vec![0]
    } else {
        args.sizes.clone()
    };
    let cells: Vec<Cell> = sizes
        .iter()
        .flat_map(|&n| args.algos.iter().map(move |&algo| Cell { algo, n }))
        .collect();
    let rows: Vec<CliResult<String>> = if args.parallel {
        thread::scope(|s| {
            let handles: Vec<_> = cells
                .iter()
                .map(|c| s.spawn(|| run_cell(&args, c)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("bench thread"))
                .collect()
        })
    } else {
        cells.iter().map(|c| run_cell(&args, c)).collect()
    };
    let mut w = output(args.out.as_deref())?;
    writeln!(w, "algo,n,delta,build_ms,peak_mem_bytes,checksum,status")?;
    for row in rows {
        writeln!(w, "{}", row?)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("1000"), Ok(1000));
        assert_eq!(parse_count("2.5e5"), Ok(250_000));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("x").is_err());
    }

    #[test]
    fn checksum_depends_on_order() {
        assert_ne!(checksum(&[1, 2]), checksum(&[2, 1]));
        assert_eq!(checksum(&[]), 0xcbf2_9ce4_8422_2325);
    }
}
