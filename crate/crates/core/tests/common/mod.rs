#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subtree_mode::generate::random_tree;
use subtree_mode::LeafColoredTree;

pub const EXAMPLE: &str = include_str!("../fixtures/example.tree");

pub const A: usize = 0;
pub const B: usize = 1;
pub const D: usize = 2;
pub const H: usize = 5;
pub const E: usize = 8;
pub const C: usize = 11;
pub const F: usize = 12;
pub const G: usize = 15;
/// Node ids of leaves 0..=10 in in-order.
pub const LEAF: [usize; 11] = [3, 4, 6, 7, 9, 10, 13, 14, 16, 17, 18];

pub const GREEN: usize = 0;
pub const RED: usize = 1;
pub const BLUE: usize = 2;
pub const ORANGE: usize = 3;

pub fn example_tree() -> LeafColoredTree {
    LeafColoredTree::parse(EXAMPLE).expect("fixture parses")
}

/// Random tree with N <= max_n, Δ <= max_delta and a random arity cap.
pub fn random_instance(seed: u64, max_n: usize, max_delta: usize) -> LeafColoredTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let delta = rng.gen_range(1..=max_delta);
    let arity = rng.gen_range(1..=5);
    random_tree(&mut rng, n, delta, arity)
}

/// Random documents over `[0, sigma)`; total length at most `max_total`.
pub fn random_docs(
    seed: u64,
    max_docs: usize,
    max_total: usize,
    max_sigma: u32,
) -> (Vec<Vec<u32>>, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=max_docs);
    let sigma = rng.gen_range(1..=max_sigma);
    let total = rng.gen_range(m..=max_total.max(m));
    let mut docs = vec![Vec::new(); m];
    for _ in 0..total {
        let d = rng.gen_range(0..m);
        docs[d].push(rng.gen_range(0..sigma));
    }
    (docs, sigma)
}

/// Overlapping occurrences of `p` in `s`.
pub fn count_occ(s: &[u32], p: &[u32]) -> usize {
    if p.is_empty() || p.len() > s.len() {
        return 0;
    }
    s.windows(p.len()).filter(|w| *w == p).count()
}

pub fn per_doc_counts(docs: &[Vec<u32>], p: &[u32]) -> Vec<usize> {
    docs.iter().map(|d| count_occ(d, p)).collect()
}

/// Index of the largest count, ties to the smallest index.
pub fn naive_top1(counts: &[usize]) -> (usize, usize) {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    (best, counts[best])
}

pub fn naive_bottom1(counts: &[usize]) -> (usize, usize) {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c < counts[best] {
            best = i;
        }
    }
    (best, counts[best])
}

/// Every distinct nonempty substring of the documents, sorted.
pub fn all_substrings(docs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = docs
        .iter()
        .flat_map(|d| {
            (0..d.len()).flat_map(move |i| (i + 1..=d.len()).map(move |j| d[i..j].to_vec()))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Substrings whose per-document counts differ by at most `eps`, sorted.
pub fn naive_uniform(docs: &[Vec<u32>], eps: usize) -> Vec<Vec<u32>> {
    let mut counts: std::collections::HashMap<&[u32], Vec<usize>> =
        std::collections::HashMap::new();
    for (k, d) in docs.iter().enumerate() {
        for i in 0..d.len() {
            for j in i + 1..=d.len() {
                counts
                    .entry(&d[i..j])
                    .or_insert_with(|| vec![0; docs.len()])[k] += 1;
            }
        }
    }
    let mut out: Vec<Vec<u32>> = counts
        .into_iter()
        .filter(|(_, c)| c.iter().max().unwrap() - c.iter().min().unwrap() <= eps)
        .map(|(p, _)| p.to_vec())
        .collect();
    out.sort();
    out
}

/// Distinct q-grams of `p` occurring in the documents whose count in `p`
/// lies in `[f_min - eps, f_max + eps]`.
pub fn naive_cqs(docs: &[Vec<u32>], p: &[u32], q: usize, eps: usize) -> usize {
    if q == 0 || q > p.len() {
        return 0;
    }
    let mut grams: Vec<&[u32]> = p.windows(q).collect();
    grams.sort();
    grams.dedup();
    grams
        .into_iter()
        .filter(|g| {
            let c = per_doc_counts(docs, g);
            let (lo, hi) = (*c.iter().min().unwrap(), *c.iter().max().unwrap());
            let occ = count_occ(p, g);
            hi > 0 && lo.saturating_sub(eps) <= occ && occ <= hi + eps
        })
        .count()
}
