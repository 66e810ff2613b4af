//! Per-node color histograms by independent subtree walks. Quadratic; meant
//! as ground truth for small instances.

use crate::error::{Error, Result};
use crate::mode::{AntiModeTable, ModeTable, TopKTable};
use crate::tree::{ColorId, LeafColoredTree, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistogramTable {
    delta: usize,
    counts: Vec<u32>,
}

impl HistogramTable {
    pub fn num_colors(&self) -> usize {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.counts.len() / self.delta.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn row(&self, v: NodeId) -> &[u32] {
        &self.counts[v * self.delta..(v + 1) * self.delta]
    }

    pub fn count(&self, v: NodeId, c: ColorId) -> usize {
        self.row(v)[c] as usize
    }

    pub fn max_freq(&self, v: NodeId) -> usize {
        self.row(v).iter().copied().max().unwrap_or(0) as usize
    }

    /// Minimum over all colors, zero included.
    pub fn min_freq(&self, v: NodeId) -> usize {
        self.row(v).iter().copied().min().unwrap_or(0) as usize
    }

    /// All per-color counts of `v`, sorted non-increasing.
    pub fn sorted_desc(&self, v: NodeId) -> Vec<usize> {
        let mut f: Vec<usize> = self.row(v).iter().map(|&c| c as usize).collect();
        f.sort_unstable_by(|a, b| b.cmp(a));
        f
    }
}

pub fn brute_histograms(t: &LeafColoredTree) -> HistogramTable {
    let n = t.len();
    let delta = t.num_colors();
    let mut counts = vec![0u32; n * delta];
    let mut stack = Vec::new();
    for v in 0..n {
        let row = &mut counts[v * delta..(v + 1) * delta];
        stack.clear();
        stack.push(v);
        while let Some(x) = stack.pop() {
            match t.color(x) {
                Some(c) => row[c] += 1,
                None => stack.extend(t.children(x)),
            }
        }
    }
    HistogramTable { delta, counts }
}

/// Modes read off the histograms, ties to the smallest color.
pub fn brute_all_modes(t: &LeafColoredTree) -> ModeTable {
    let h = brute_histograms(t);
    let (mut color, mut freq) = (Vec::with_capacity(t.len()), Vec::with_capacity(t.len()));
    for v in 0..t.len() {
        let row = h.row(v);
        let mut best = 0;
        for c in 1..row.len() {
            if row[c] > row[best] {
                best = c;
            }
        }
        color.push(best as u32);
        freq.push(row[best]);
    }
    ModeTable::from_parts(color, freq)
}

/// Anti-modes over all declared colors, ties to the smallest color.
pub fn brute_anti_modes(t: &LeafColoredTree) -> AntiModeTable {
    let h = brute_histograms(t);
    let (mut color, mut freq) = (Vec::with_capacity(t.len()), Vec::with_capacity(t.len()));
    for v in 0..t.len() {
        let row = h.row(v);
        let mut best = 0;
        for c in 1..row.len() {
            if row[c] < row[best] {
                best = c;
            }
        }
        color.push(best as u32);
        freq.push(row[best]);
    }
    AntiModeTable::from_parts(color, freq)
}

/// Top-`k` lists of present colors, frequency non-increasing, ties by color.
pub fn brute_top_k(t: &LeafColoredTree, k: usize) -> Result<TopKTable> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let h = brute_histograms(t);
    let lists = (0..t.len()).map(|v| {
        let mut list: Vec<(ColorId, usize)> = h
            .row(v)
            .iter()
            .enumerate()
            .filter(|&(_, &f)| f > 0)
            .map(|(c, &f)| (c, f as usize))
            .collect();
        list.sort_by_key(|&(c, f)| (std::cmp::Reverse(f), c));
        list.truncate(k);
        list
    });
    Ok(TopKTable::from_lists(k, lists))
}
