use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use subtree_mode::retrieval::DocRetrievalIndex;
use subtree_mode::suffix::{parse_documents, Alphabet, DocumentCollection};

use crate::{output, read_file, CliResult, Failure};

#[derive(Subcommand)]
pub enum DocsCommand {
    /// Build the index and print its statistics
    Index {
        docs: PathBuf,
        /// Write the suffix tree as a tree file (leaf color = document)
        #[arg(long)]
        tree_out: Option<PathBuf>,
    },
    /// Document with the most occurrences: `doc freq`, or `-1` if absent
    Dr1 {
        #[command(flatten)]
        query: QueryArgs,
        /// Report the document with the fewest occurrences instead
        #[arg(long)]
        bottom: bool,
    },
    /// Up to k documents by occurrences: `doc freq doc freq ...`, or `-1`
    Kdr {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        k: usize,
    },
    /// Patterns whose per-document counts differ by at most epsilon:
    /// `pattern f_max f_min`, tab-separated, in lexicographic order
    Upm {
        docs: PathBuf,
        #[arg(long)]
        epsilon: usize,
        /// Stop after this many output lines
        #[arg(long)]
        limit: Option<usize>,
        /// One line per node: `node lo hi f_max f_min label`
        #[arg(long)]
        compact: bool,
    },
    /// Count the pattern's q-grams whose count is consistent with the collection
    Cqs {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        epsilon: usize,
    },
}

#[derive(Args)]
pub struct QueryArgs {
    docs: PathBuf,
    /// Pattern to query; repeatable
    #[arg(short = 'p', long = "pattern")]
    pattern: Vec<String>,
    /// File with one pattern per line
    #[arg(long)]
    patterns: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(path: &Path) -> CliResult<(DocumentCollection, Alphabet)> {
    parse_documents(&read_file(path)?)
        .map_err(|e| Failure::from(e).with_context(&path.display().to_string()))
}

impl QueryArgs {
    fn patterns(&self) -> CliResult<Vec<String>> {
        if self.pattern.is_empty() && self.patterns.is_none() {
            return Err(Failure::usage(
                "give at least one --pattern or a --patterns file",
            ));
        }
        let mut out = self.pattern.clone();
        if let Some(p) = &self.patterns {
            out.extend(
                read_file(p)?
                    .lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(str::to_owned),
            );
        }
        Ok(out)
    }
}

fn write_pairs(w: &mut dyn Write, pairs: &[(usize, usize)]) -> CliResult {
    if pairs.is_empty() {
        writeln!(w, "-1")?;
    } else {
        let cells: Vec<String> = pairs.iter().map(|(d, f)| format!("{d} {f}")).collect();
        writeln!(w, "{}", cells.join(" "))?;
    }
    Ok(())
}

pub fn run(cmd: DocsCommand) -> CliResult {
    match cmd {
        DocsCommand::Index { docs, tree_out } => {
            let (coll, _) = load(&docs)?;
            let idx = DocRetrievalIndex::new(&coll)?;
            let gst = idx.gst();
            let mut w = output(None)?;
            writeln!(w, "documents\t{}", coll.num_docs())?;
            writeln!(w, "alphabet\t{}", coll.sigma())?;
            writeln!(w, "text_length\t{}", gst.len())?;
            writeln!(w, "nodes\t{}", gst.tree().len())?;
            writeln!(w, "leaves\t{}", gst.tree().num_leaves())?;
            w.flush()?;
            if let Some(p) = tree_out {
                let mut t = output(Some(&p))?;
                gst.tree().write_to(&mut t)?;
                t.flush()?;
            }
        }
        DocsCommand::Dr1 { query, bottom } => {
            let pats = query.patterns()?;
            let (coll, alpha) = load(&query.docs)?;
            let idx = DocRetrievalIndex::new(&coll)?;
            let mut w = output(query.out.as_deref())?;
            for p in pats {
                let p = alpha.encode(&p);
                let hit = if bottom {
                    // An absent pattern has no occurrences to rank.
                    idx.dr1(&p).map(|_| idx.dr_bottom1(&p))
                } else {
                    idx.dr1(&p)
                };
                write_pairs(&mut w, hit.as_slice())?;
            }
            w.flush()?;
        }
        DocsCommand::Kdr { query, k } => {
            let pats = query.patterns()?;
            let (coll, alpha) = load(&query.docs)?;
            if k < 1 {
                return Err(Failure::usage("--k must be at least 1"));
            }
            let idx = DocRetrievalIndex::with_top_k(&coll, k.min(coll.num_docs()))?;
            let mut w = output(query.out.as_deref())?;
            for p in pats {
                let list = idx.dr_topk(&alpha.encode(&p), k.min(coll.num_docs()))?;
                write_pairs(&mut w, &list)?;
            }
            w.flush()?;
        }
        DocsCommand::Upm {
            docs,
            epsilon,
            limit,
            compact,
        } => {
            let (coll, alpha) = load(&docs)?;
            let idx = DocRetrievalIndex::new(&coll)?;
            let gst = idx.gst();
            let limit = limit.unwrap_or(usize::MAX);
            let mut w = output(None)?;
            let mut written = 0usize;
            let mut err = None;
            idx.upm_mine(epsilon, |u| {
                if err.is_some() || written >= limit {
                    return;
                }
                let res = if compact {
                    written += 1;
                    let label = alpha.decode(&gst.label(u.node)[..u.hi]);
                    writeln!(
                        w,
                        "{}\t{}\t{}\t{}\t{}\t{label}",
                        u.node, u.lo, u.hi, u.f_max, u.f_min
                    )
                } else {
                    u.expand(gst).take(limit - written).try_for_each(|p| {
                        written += 1;
                        writeln!(w, "{}\t{}\t{}", alpha.decode(p), u.f_max, u.f_min)
                    })
                };
                if let Err(e) = res {
                    err = Some(e);
                }
            });
            if let Some(e) = err {
                return Err(e.into());
            }
            w.flush()?;
        }
        DocsCommand::Cqs { query, q, epsilon } => {
            let pats = query.patterns()?;
            let (coll, alpha) = load(&query.docs)?;
            let idx = DocRetrievalIndex::new(&coll)?;
            let mut w = output(query.out.as_deref())?;
            for p in pats {
                writeln!(w, "{}", idx.cqs(&alpha.encode(&p), q, epsilon)?)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
