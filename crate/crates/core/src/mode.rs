//! Per-node mode, anti-mode and top-k answers in linear time.
//!
//! [`ModeEngine`] contracts unary paths, splits the tree into single-color
//! virtual trees, counts leaves per virtual node and then sweeps `T` once.
//! Modes go bottom-up: a node's answer is the best of its children's answers
//! and of the exact counts of virtual nodes that map onto it. Anti-modes go
//! top-down (see [`ModeEngine::anti_modes`]).
//!
//! Ties on frequency are broken towards the smallest color id for modes and
//! top-k lists.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::forest::{count_colors, split_forest, SingleColorForest, SubtreeCountTable};
use crate::lca::{LcaIndex, LevelAncestorIndex};
use crate::tree::{
    contract_unary_paths, leaf_order, ColorId, ContractionMap, LeafColoredTree, NodeColoredTree,
    NodeId, NIL,
};

/// Per node: the most frequent leaf color and its frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeTable {
    color: Vec<u32>,
    freq: Vec<u32>,
}

impl ModeTable {
    pub fn from_parts(color: Vec<u32>, freq: Vec<u32>) -> Self {
        assert_eq!(color.len(), freq.len());
        ModeTable { color, freq }
    }

    pub fn len(&self) -> usize {
        self.freq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freq.is_empty()
    }

    /// `(c_max, f_max)` of node `v`.
    pub fn get(&self, v: NodeId) -> (ColorId, usize) {
        (self.color[v] as ColorId, self.freq[v] as usize)
    }

    pub fn color(&self, v: NodeId) -> ColorId {
        self.color[v] as ColorId
    }

    pub fn freq(&self, v: NodeId) -> usize {
        self.freq[v] as usize
    }

    pub fn freqs(&self) -> &[u32] {
        &self.freq
    }

    fn expand(&self, map: &ContractionMap) -> Self {
        if map.is_identity() {
            return self.clone();
        }
        ModeTable {
            color: map.expand(&self.color),
            freq: map.expand(&self.freq),
        }
    }
}

/// Per node: the least frequent color over all colors (zero when a color is
/// missing below the node) and its frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiModeTable {
    color: Vec<u32>,
    freq: Vec<u32>,
}

impl AntiModeTable {
    pub fn from_parts(color: Vec<u32>, freq: Vec<u32>) -> Self {
        assert_eq!(color.len(), freq.len());
        AntiModeTable { color, freq }
    }

    pub fn len(&self) -> usize {
        self.freq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freq.is_empty()
    }

    /// `(c_min, f_min)` of node `v`.
    pub fn get(&self, v: NodeId) -> (ColorId, usize) {
        (self.color[v] as ColorId, self.freq[v] as usize)
    }

    pub fn freq(&self, v: NodeId) -> usize {
        self.freq[v] as usize
    }

    pub fn freqs(&self) -> &[u32] {
        &self.freq
    }
}

/// Per node: up to `k` (color, frequency) pairs, frequency non-increasing,
/// equal frequencies by ascending color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopKTable {
    k: usize,
    start: Vec<u32>,
    color: Vec<u32>,
    freq: Vec<u32>,
}

impl TopKTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.start.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, v: NodeId) -> impl ExactSizeIterator<Item = (ColorId, usize)> + '_ {
        let r = self.start[v] as usize..self.start[v + 1] as usize;
        self.color[r.clone()]
            .iter()
            .zip(&self.freq[r])
            .map(|(&c, &f)| (c as ColorId, f as usize))
    }

    pub(crate) fn from_lists(
        k: usize,
        lists: impl IntoIterator<Item = Vec<(ColorId, usize)>>,
    ) -> Self {
        let (mut start, mut color, mut freq) = (vec![0u32], Vec::new(), Vec::new());
        for list in lists {
            for (c, f) in list {
                color.push(c as u32);
                freq.push(f as u32);
            }
            start.push(color.len() as u32);
        }
        TopKTable {
            k,
            start,
            color,
            freq,
        }
    }

    pub fn list(&self, v: NodeId) -> Vec<(ColorId, usize)> {
        self.get(v).collect()
    }

    fn expand(&self, map: &ContractionMap) -> Self {
        if map.is_identity() {
            return self.clone();
        }
        let mut start = Vec::with_capacity(map.original_len() + 1);
        let mut color = Vec::new();
        let mut freq = Vec::new();
        start.push(0u32);
        for v in 0..map.original_len() {
            let u = map.representative(v);
            let r = self.start[u] as usize..self.start[u + 1] as usize;
            color.extend_from_slice(&self.color[r.clone()]);
            freq.extend_from_slice(&self.freq[r]);
            start.push(color.len() as u32);
        }
        TopKTable {
            k: self.k,
            start,
            color,
            freq,
        }
    }

    /// One line per node: `node_id c1 f1 c2 f2 ...`.
    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for v in 0..self.len() {
            write!(w, "{v}")?;
            for (c, f) in self.get(v) {
                write!(w, " {c} {f}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut start = vec![0u32];
        let mut color = Vec::new();
        let mut freq = Vec::new();
        for (idx, line) in data_lines(text) {
            let nums = parse_numbers(line, idx)?;
            if nums.first() != Some(&(start.len() - 1)) || nums.len() % 2 == 0 {
                return Err(Error::parse(
                    idx,
                    "expected `node_id (color freq)*` in node order",
                ));
            }
            for pair in nums[1..].chunks(2) {
                color.push(pair[0] as u32);
                freq.push(pair[1] as u32);
            }
            start.push(color.len() as u32);
        }
        Ok(TopKTable {
            k,
            start,
            color,
            freq,
        })
    }
}

/// A mode table plus optional anti-modes, as read from or written to text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnswerTable {
    pub modes: ModeTable,
    pub anti_modes: Option<AntiModeTable>,
}

/// One line per node: `node_id c_max f_max [c_min f_min]`.
pub fn write_answer_table<W: Write>(
    w: &mut W,
    modes: &ModeTable,
    anti_modes: Option<&AntiModeTable>,
) -> io::Result<()> {
    for v in 0..modes.len() {
        let (c, f) = modes.get(v);
        match anti_modes {
            Some(a) => {
                let (ac, af) = a.get(v);
                writeln!(w, "{v} {c} {f} {ac} {af}")?;
            }
            None => writeln!(w, "{v} {c} {f}")?,
        }
    }
    Ok(())
}

pub fn parse_answer_table(text: &str) -> Result<AnswerTable> {
    let (mut color, mut freq, mut acolor, mut afreq) = (vec![], vec![], vec![], vec![]);
    let mut width = None;
    for (idx, line) in data_lines(text) {
        let nums = parse_numbers(line, idx)?;
        if width.is_some_and(|w| w != nums.len()) || !(nums.len() == 3 || nums.len() == 5) {
            return Err(Error::parse(idx, "expected 3 or 5 columns, consistently"));
        }
        width = Some(nums.len());
        if nums[0] != color.len() {
            return Err(Error::parse(idx, "node ids must be listed in order"));
        }
        color.push(nums[1] as u32);
        freq.push(nums[2] as u32);
        if nums.len() == 5 {
            acolor.push(nums[3] as u32);
            afreq.push(nums[4] as u32);
        }
    }
    Ok(AnswerTable {
        modes: ModeTable { color, freq },
        anti_modes: (width == Some(5)).then_some(AntiModeTable {
            color: acolor,
            freq: afreq,
        }),
    })
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_numbers(line: &str, idx: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(idx, format!("bad number {t:?}")))
        })
        .collect()
}

#[inline]
fn mode_key(freq: u32, color: u32) -> u64 {
    ((freq as u64) << 32) | (u32::MAX - color) as u64
}

#[inline]
fn unpack_mode_key(key: u64) -> (u32, u32) {
    ((key >> 32) as u32, u32::MAX - key as u32)
}

/// Shared preprocessing for all per-node answers on one tree.
#[derive(Debug, Clone)]
pub struct ModeEngine {
    tree: LeafColoredTree,
    map: ContractionMap,
    lca: LcaIndex,
    forest: SingleColorForest,
    counts: SubtreeCountTable,
}

impl ModeEngine {
    pub fn new(t: &LeafColoredTree) -> Self {
        let (tree, map) = contract_unary_paths(t);
        let lca = LcaIndex::new(&tree);
        let forest = split_forest(&tree, &lca);
        let counts = count_colors(&forest);
        ModeEngine {
            tree,
            map,
            lca,
            forest,
            counts,
        }
    }

    /// The contracted tree the engine works on.
    pub fn contracted(&self) -> (&LeafColoredTree, &ContractionMap) {
        (&self.tree, &self.map)
    }

    pub fn forest(&self) -> &SingleColorForest {
        &self.forest
    }

    pub fn counts(&self) -> &SubtreeCountTable {
        &self.counts
    }

    pub fn modes(&self) -> ModeTable {
        let t = &self.tree;
        let n = t.len();
        let count = self.counts.raw();
        let parent = t.parent_raw();
        let mut best = vec![0u64; n];
        for &v in t.pre_slice().iter().rev() {
            let v = v as usize;
            let mut b = best[v];
            for &u in self.forest.at_slice(v) {
                let u = u as usize;
                b = b.max(mode_key(count[u], self.forest.color(u) as u32));
            }
            best[v] = b;
            let p = parent[v];
            if p != NIL && best[p as usize] < b {
                best[p as usize] = b;
            }
        }
        let (freq, color) = best.iter().map(|&k| unpack_mode_key(k)).unzip();
        ModeTable { color, freq }.expand(&self.map)
    }

    /// Least frequent color of every subtree over all colors.
    ///
    /// Nodes missing some color get frequency zero. The number of distinct
    /// colors below `v` is its leaf count minus, over every virtual node in
    /// its subtree, the number of children beyond the first, so these nodes
    /// are found in one pass; an absent color is then read off prefix/suffix
    /// extremes of the next/previous-occurrence arrays over the leaf sequence.
    ///
    /// Nodes with every color present get their answer pushed down from the
    /// parent `p`: the parent's own answer goes to the child holding all of
    /// that color's leaves, if any, and every virtual child of a virtual node
    /// at `p` sends its exact count to the child of `p` above it.
    pub fn anti_modes(&self) -> AntiModeTable {
        let t = &self.tree;
        let n = t.len();
        let delta = self.forest.num_colors() as u32;
        let parent = t.parent_raw();
        let pre = t.pre_slice();
        let count = self.counts.raw();

        let mut distinct: Vec<u32> = t.leaf_counts();
        let mut excess = vec![0u32; n];
        for &v in pre.iter().rev() {
            let v = v as usize;
            let mut e = excess[v];
            for &u in self.forest.at_slice(v) {
                let k = self.forest.num_children(u as usize) as u32;
                e += k.saturating_sub(1);
            }
            excess[v] = e;
            distinct[v] -= e;
            let p = parent[v];
            if p != NIL {
                excess[p as usize] += e;
            }
        }

        let mut f_min = vec![0u32; n];
        let mut c_min = vec![0u32; n];
        let witness = AbsentColor::new(t, &self.forest);
        for v in 0..n {
            if distinct[v] < delta {
                c_min[v] = witness.find(v);
            }
        }

        let la = LevelAncestorIndex::with_lca(t, &self.lca);
        let mut best = vec![u64::MAX; n];
        let mut holder = vec![NIL; n];
        let root = t.root();
        if distinct[root] == delta {
            for i in 0..self.forest.num_colors() {
                let u = self.forest.root(i).expect("every color occurs");
                let key = ((count[u] as u64) << 32) | i as u64;
                if key < best[root] {
                    best[root] = key;
                    holder[root] = u as u32;
                }
            }
        }
        for &p in pre {
            let p = p as usize;
            if distinct[p] < delta || t.is_leaf(p) {
                continue;
            }
            let (u, key_p) = (holder[p] as usize, best[p]);
            let mut offer = |target: NodeId, key: u64, u: u32| {
                if key < best[target] {
                    best[target] = key;
                    holder[target] = u;
                }
            };
            let phi_u = self.forest.phi(u);
            if phi_u != p {
                let w = la.child_toward(p, phi_u).expect("holder lies below p");
                offer(w, key_p, u as u32);
            }
            for &up in self.forest.at_slice(p) {
                let c = self.forest.color(up as usize) as u64;
                for &w in self.forest.child_slice(up as usize) {
                    let target = la
                        .child_toward(p, self.forest.phi(w as usize))
                        .expect("virtual child lies below p");
                    offer(target, ((count[w as usize] as u64) << 32) | c, w);
                }
            }
        }
        for v in 0..n {
            if distinct[v] == delta {
                f_min[v] = (best[v] >> 32) as u32;
                c_min[v] = best[v] as u32;
            }
        }

        let table = AntiModeTable {
            color: c_min,
            freq: f_min,
        };
        if self.map.is_identity() {
            table
        } else {
            AntiModeTable {
                color: self.map.expand(&table.color),
                freq: self.map.expand(&table.freq),
            }
        }
    }

    /// The `k` most frequent colors of every subtree.
    pub fn top_k(&self, k: usize) -> Result<TopKTable> {
        if k < 1 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        let t = &self.tree;
        let n = t.len();
        let count = self.counts.raw();
        let delta = self.forest.num_colors();

        // Lists are filled bottom-up into per-node slots of capacity k.
        let cap = k.min(delta.max(1));
        let mut len = vec![0u32; n];
        let mut color = vec![0u32; n * cap];
        let mut freq = vec![0u32; n * cap];
        let mut slot_of = vec![NIL; delta];
        let mut stamp = vec![NIL; delta];
        let mut cand: Vec<(u32, u32)> = Vec::new();

        for &v in t.pre_slice().iter().rev() {
            let v = v as usize;
            cand.clear();
            let mut push = |c: u32, f: u32, cand: &mut Vec<(u32, u32)>| {
                let ci = c as usize;
                if stamp[ci] == v as u32 {
                    let s = slot_of[ci] as usize;
                    if cand[s].1 < f {
                        cand[s].1 = f;
                    }
                } else {
                    stamp[ci] = v as u32;
                    slot_of[ci] = cand.len() as u32;
                    cand.push((c, f));
                }
            };
            for &u in self.forest.at_slice(v) {
                push(
                    self.forest.color(u as usize) as u32,
                    count[u as usize],
                    &mut cand,
                );
            }
            for &w in t.child_slice(v) {
                let w = w as usize;
                for j in 0..len[w] as usize {
                    push(color[w * cap + j], freq[w * cap + j], &mut cand);
                }
            }
            let order = |a: &(u32, u32), b: &(u32, u32)| b.1.cmp(&a.1).then(a.0.cmp(&b.0));
            if cand.len() > cap {
                cand.select_nth_unstable_by(cap - 1, order);
                cand.truncate(cap);
            }
            for (j, &(c, f)) in cand.iter().enumerate() {
                color[v * cap + j] = c;
                freq[v * cap + j] = f;
            }
            len[v] = cand.len() as u32;
        }

        let table = sort_lists(k, cap, &len, &color, &freq, t.num_leaves(), delta);
        Ok(table.expand(&self.map))
    }
}

/// Orders every node's list by (frequency desc, color asc) with one global
/// pass of counting sorts over all entries.
fn sort_lists(
    k: usize,
    cap: usize,
    len: &[u32],
    color: &[u32],
    freq: &[u32],
    max_freq: usize,
    delta: usize,
) -> TopKTable {
    let n = len.len();
    let mut entries: Vec<u32> = Vec::with_capacity(len.iter().map(|&l| l as usize).sum());
    for v in 0..n {
        entries.extend((0..len[v]).map(|j| (v * cap) as u32 + j));
    }
    let mut buf = vec![0u32; entries.len()];
    counting_sort(&entries, &mut buf, delta, |e| color[e as usize] as usize);
    counting_sort(&buf, &mut entries, max_freq + 1, |e| {
        max_freq - freq[e as usize] as usize
    });
    counting_sort(&entries, &mut buf, n, |e| e as usize / cap);

    let mut start = Vec::with_capacity(n + 1);
    start.push(0u32);
    let mut acc = 0u32;
    for &l in len {
        acc += l;
        start.push(acc);
    }
    TopKTable {
        k,
        start,
        color: buf.iter().map(|&e| color[e as usize]).collect(),
        freq: buf.iter().map(|&e| freq[e as usize]).collect(),
    }
}

fn counting_sort(src: &[u32], dst: &mut [u32], buckets: usize, key: impl Fn(u32) -> usize) {
    let mut pos = vec![0usize; buckets + 1];
    for &e in src {
        pos[key(e) + 1] += 1;
    }
    for b in 0..buckets {
        pos[b + 1] += pos[b];
    }
    for &e in src {
        let b = key(e);
        dst[pos[b]] = e;
        pos[b] += 1;
    }
}

/// Finds, for a node missing at least one color, one such color.
struct AbsentColor {
    unused: Option<u32>,
    lo: Vec<u32>,
    hi: Vec<u32>,
    color_at: Vec<u32>,
    /// `(max next-occurrence, position)` over leaf positions `[0, i)`.
    prefix: Vec<(u32, u32)>,
    /// `(min prev-occurrence + 1, position)` over leaf positions `[i, N_L)`.
    suffix: Vec<(u32, u32)>,
}

impl AbsentColor {
    fn new(t: &LeafColoredTree, forest: &SingleColorForest) -> Self {
        let delta = forest.num_colors();
        let unused = (0..delta)
            .find(|&i| forest.tree_len(i) == 0)
            .map(|i| i as u32);
        let order = leaf_order(t);
        let nl = order.len();
        let color_at: Vec<u32> = order
            .leaf_slice()
            .iter()
            .map(|&v| t.color_raw()[v as usize])
            .collect();
        let (mut lo, mut hi) = (vec![0u32; t.len()], vec![0u32; t.len()]);
        for v in 0..t.len() {
            let (a, b) = order.interval(v);
            lo[v] = a as u32;
            hi[v] = b as u32;
        }
        let mut prefix = Vec::new();
        let mut suffix = Vec::new();
        if unused.is_none() {
            let mut next = vec![nl as u32; nl];
            let mut prev1 = vec![0u32; nl];
            let mut last = vec![NIL; delta];
            for p in 0..nl {
                let c = color_at[p] as usize;
                if last[c] != NIL {
                    next[last[c] as usize] = p as u32;
                    prev1[p] = last[c] + 1;
                }
                last[c] = p as u32;
            }
            prefix.reserve(nl + 1);
            prefix.push((0, NIL));
            for p in 0..nl {
                let top = prefix[p];
                prefix.push(if next[p] > top.0 || top.1 == NIL {
                    (next[p], p as u32)
                } else {
                    top
                });
            }
            suffix = vec![(u32::MAX, NIL); nl + 1];
            for p in (0..nl).rev() {
                let top = suffix[p + 1];
                suffix[p] = if prev1[p] < top.0 {
                    (prev1[p], p as u32)
                } else {
                    top
                };
            }
        }
        AbsentColor {
            unused,
            lo,
            hi,
            color_at,
            prefix,
            suffix,
        }
    }

    fn find(&self, v: NodeId) -> u32 {
        if let Some(c) = self.unused {
            return c;
        }
        let (lo, hi) = (self.lo[v] as usize, self.hi[v] as usize);
        let (next, p) = self.prefix[lo];
        if p != NIL && next as usize >= hi {
            return self.color_at[p as usize];
        }
        let (prev1, q) = self.suffix[hi];
        if q != NIL && (prev1 as usize) <= lo {
            return self.color_at[q as usize];
        }
        unreachable!("node {v} was reported to miss a color")
    }
}

pub fn scm_all_modes(t: &LeafColoredTree) -> ModeTable {
    ModeEngine::new(t).modes()
}

pub fn scm_anti_modes(t: &LeafColoredTree) -> AntiModeTable {
    ModeEngine::new(t).anti_modes()
}

pub fn scm_top_k(t: &LeafColoredTree, k: usize) -> Result<TopKTable> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    ModeEngine::new(t).top_k(k)
}

/// Modes over the colors of all nodes in each subtree, internal ones
/// included. Each internal node gets an extra leaf child carrying its color.
pub fn node_colored_modes(t: &NodeColoredTree) -> ModeTable {
    let n = t.len();
    let mut parents: Vec<Option<NodeId>> = (0..n).map(|v| t.parent(v)).collect();
    let mut colors: Vec<Option<ColorId>> = vec![None; n];
    for v in 0..n {
        if t.children(v).len() == 0 {
            colors[v] = Some(t.color(v));
        } else {
            parents.push(Some(v));
            colors.push(Some(t.color(v)));
        }
    }
    let mut records = Vec::with_capacity(parents.len());
    // Original sibling order first, then the attached leaf last.
    for v in t.preorder() {
        records.push(crate::tree::NodeRecord::new(v, parents[v], colors[v]));
    }
    records
        .extend((n..parents.len()).map(|x| crate::tree::NodeRecord::new(x, parents[x], colors[x])));
    let leafy = LeafColoredTree::from_records(&records, Some(t.num_colors()))
        .expect("attaching leaves keeps the tree valid");
    let full = scm_all_modes(&leafy);
    ModeTable {
        color: full.color[..n].to_vec(),
        freq: full.freq[..n].to_vec(),
    }
}
