//! Generalized suffix tree over a document collection.
//!
//! Documents over the integer alphabet `[0, σ)` are joined as
//! `S_0 $_0 S_1 $_1 ...` with delimiter `$_i` encoded as `σ + i`, so every
//! delimiter is unique and sorts after every letter. The tree is built from
//! the suffix array (prefix doubling) and the LCP array (Kasai et al.) with
//! the same stack construction used for single-color trees: suffixes are the
//! leaves in lexicographic order and adjacent LCP values are the branching
//! depths. Each leaf is colored by the document its suffix starts in.
//!
//! Suffix links follow from `slink(lca(p, q)) = lca(p + 1, q + 1)` for the
//! leaves of two suffixes that branch at an internal node.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::forest::VirtualTreeBuilder;
use crate::lca::LcaIndex;
use crate::tree::{leaf_order, LeafColoredTree, LeafOrder, NodeId, NodeRecord, NIL};

/// Documents over the integer alphabet `[0, sigma)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentCollection {
    docs: Vec<Vec<u32>>,
    sigma: u32,
}

impl DocumentCollection {
    pub fn new(docs: Vec<Vec<u32>>, sigma: u32) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::NoDocuments);
        }
        if (sigma as u64) + (docs.len() as u64) >= NIL as u64 {
            return Err(Error::InvalidParameter(
                "alphabet plus delimiters exceed the symbol range".into(),
            ));
        }
        for (d, doc) in docs.iter().enumerate() {
            if let Some(&symbol) = doc.iter().find(|&&x| x >= sigma) {
                return Err(Error::ReservedSymbol {
                    doc: d,
                    symbol,
                    sigma,
                });
            }
        }
        Ok(DocumentCollection { docs, sigma })
    }

    /// Text documents; the alphabet is the sorted set of characters used.
    pub fn from_texts<S: AsRef<str>>(texts: &[S]) -> Result<(Self, Alphabet)> {
        let mut chars: Vec<char> = texts.iter().flat_map(|t| t.as_ref().chars()).collect();
        chars.sort_unstable();
        chars.dedup();
        let alphabet = Alphabet::Text(chars);
        let docs = texts.iter().map(|t| alphabet.encode(t.as_ref())).collect();
        let sigma = alphabet.sigma();
        Ok((DocumentCollection::new(docs, sigma)?, alphabet))
    }

    pub fn num_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn doc(&self, i: usize) -> &[u32] {
        &self.docs[i]
    }

    pub fn docs(&self) -> &[Vec<u32>] {
        &self.docs
    }

    /// The same documents in a different order; `order[i]` is the old index
    /// of the new document `i`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        DocumentCollection {
            docs: order.iter().map(|&i| self.docs[i].clone()).collect(),
            sigma: self.sigma,
        }
    }
}

/// How letters map to and from text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alphabet {
    /// Sorted distinct characters; letter `i` is `chars[i]`.
    Text(Vec<char>),
    /// Integer letters written as whitespace-separated decimal numbers.
    Integer(u32),
}

impl Alphabet {
    pub fn sigma(&self) -> u32 {
        match self {
            Alphabet::Text(chars) => chars.len() as u32,
            Alphabet::Integer(s) => *s,
        }
    }

    /// Encodes a pattern. Unknown symbols become `u32::MAX`, which never
    /// matches.
    pub fn encode(&self, s: &str) -> Vec<u32> {
        match self {
            Alphabet::Text(chars) => s
                .chars()
                .map(|c| chars.binary_search(&c).map_or(u32::MAX, |i| i as u32))
                .collect(),
            Alphabet::Integer(sigma) => s
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .ok()
                        .filter(|x| x < sigma)
                        .unwrap_or(u32::MAX)
                })
                .collect(),
        }
    }

    pub fn decode(&self, letters: &[u32]) -> String {
        match self {
            Alphabet::Text(chars) => letters.iter().map(|&x| chars[x as usize]).collect(),
            Alphabet::Integer(_) => letters
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

/// Reads documents from text: one per non-empty line, FASTA records when
/// any line starts with `>`, or integer documents after a `#SIGMA=<σ>`
/// header line.
pub fn parse_documents(text: &str) -> Result<(DocumentCollection, Alphabet)> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    if let Some(sigma) = first.and_then(|l| l.strip_prefix("#SIGMA=")) {
        let sigma: u32 = sigma
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, format!("bad alphabet size {sigma:?}")))?;
        let mut docs = Vec::new();
        for (idx, line) in lines.by_ref().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let doc = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::parse(idx + 1, format!("bad symbol {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            docs.push(doc);
        }
        return Ok((
            DocumentCollection::new(docs, sigma)?,
            Alphabet::Integer(sigma),
        ));
    }

    let texts: Vec<String> = if text.lines().any(|l| l.starts_with('>')) {
        let mut out: Vec<String> = Vec::new();
        for line in lines {
            if line.starts_with('>') {
                out.push(String::new());
            } else if let Some(cur) = out.last_mut() {
                cur.push_str(line.trim());
            } else if !line.trim().is_empty() {
                return Err(Error::parse(1, "sequence data before the first `>` header"));
            }
        }
        out
    } else {
        lines.filter(|l| !l.is_empty()).map(str::to_owned).collect()
    };
    DocumentCollection::from_texts(&texts)
}

/// Where a pattern's spelling ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Locus {
    /// The explicit node at the end of the match, or the nearest explicit
    /// descendant when the match ends inside an edge.
    pub node: NodeId,
    /// Letters matched.
    pub matched: usize,
    pub on_edge: bool,
}

#[derive(Debug, Clone)]
pub struct GeneralizedSuffixTree {
    text: Vec<u32>,
    sigma: u32,
    doc_start: Vec<u32>,
    tree: LeafColoredTree,
    order: LeafOrder,
    sd: Vec<u32>,
    label_pos: Vec<u32>,
    suffix_start: Vec<u32>,
    leaf_of_suffix: Vec<u32>,
    slink: Vec<u32>,
    child: HashMap<u64, u32>,
}

impl GeneralizedSuffixTree {
    pub fn new(docs: &DocumentCollection) -> Result<Self> {
        let sigma = docs.sigma();
        let mut text = Vec::new();
        let mut doc_start = Vec::with_capacity(docs.num_docs() + 1);
        for (i, d) in docs.docs().iter().enumerate() {
            doc_start.push(text.len() as u32);
            text.extend_from_slice(d);
            text.push(sigma + i as u32);
        }
        doc_start.push(text.len() as u32);
        if text.len() >= NIL as usize {
            return Err(Error::InvalidParameter("collection too long".into()));
        }
        let n = text.len();
        let sa = suffix_array(&text, (sigma as usize) + docs.num_docs());
        let lcp = lcp_array(&text, &sa);

        let mut builder = VirtualTreeBuilder::new();
        builder.build(n, |i| (sa[i], (n as u32) - sa[i]), |i| (NIL, lcp[i]));
        // A lone suffix still gets an explicit root of string depth zero.
        let (tag, depth, parent, leaf) = if n == 1 {
            (vec![sa[0], NIL], vec![1, 0], vec![1, NIL], vec![0, NIL])
        } else {
            (
                builder.tag.clone(),
                builder.depth.clone(),
                builder.parent.clone(),
                builder.leaf.clone(),
            )
        };
        drop(builder);
        let m = tag.len();

        let mut suffix_start = vec![NIL; m];
        let mut leaf_of_suffix = vec![NIL; n];
        let mut doc_of_pos = vec![0u32; n];
        for d in 0..docs.num_docs() {
            for p in doc_start[d]..doc_start[d + 1] {
                doc_of_pos[p as usize] = d as u32;
            }
        }
        let mut records = Vec::with_capacity(m);
        for k in 0..m {
            let color = if leaf[k] != NIL {
                let p = tag[k];
                suffix_start[k] = p;
                leaf_of_suffix[p as usize] = k as u32;
                Some(doc_of_pos[p as usize] as usize)
            } else {
                None
            };
            let p = parent[k];
            records.push(NodeRecord::new(k, (p != NIL).then_some(p as usize), color));
        }
        let tree = LeafColoredTree::from_records(&records, Some(docs.num_docs()))?;
        let order = leaf_order(&tree);

        // Label of a node: the suffix of its leftmost leaf.
        let mut label_pos = vec![NIL; m];
        for &v in tree.pre_slice().iter().rev() {
            let v = v as usize;
            if suffix_start[v] != NIL {
                label_pos[v] = suffix_start[v];
            } else {
                let first = tree.child_slice(v)[0] as usize;
                label_pos[v] = label_pos[first];
            }
        }

        let mut child = HashMap::with_capacity(m);
        for v in 0..m {
            for &c in tree.child_slice(v) {
                let letter = text[(label_pos[c as usize] + depth[v]) as usize];
                child.insert(((v as u64) << 32) | letter as u64, c);
            }
        }

        let lca = LcaIndex::new(&tree);
        let mut slink = vec![NIL; m];
        let root = tree.root();
        slink[root] = root as u32;
        for v in 0..m {
            if v == root || suffix_start[v] != NIL {
                continue;
            }
            let kids = tree.child_slice(v);
            let p = label_pos[kids[0] as usize] as usize;
            let q = label_pos[kids[1] as usize] as usize;
            let a = leaf_of_suffix[p + 1] as usize;
            let b = leaf_of_suffix[q + 1] as usize;
            slink[v] = lca.lca(a, b) as u32;
        }

        Ok(GeneralizedSuffixTree {
            text,
            sigma,
            doc_start,
            tree,
            order,
            sd: depth,
            label_pos,
            suffix_start,
            leaf_of_suffix,
            slink,
            child,
        })
    }

    /// The tree as a subtree-mode instance: leaves colored by document.
    pub fn tree(&self) -> &LeafColoredTree {
        &self.tree
    }

    pub fn text(&self) -> &[u32] {
        &self.text
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn num_docs(&self) -> usize {
        self.doc_start.len() - 1
    }

    pub fn len(&self) -> usize {
        self.sd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sd.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.tree.root()
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.tree.parent(v)
    }

    /// Children in lexicographic order of their edge labels.
    pub fn children(&self, v: NodeId) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.tree.children(v)
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.tree.is_leaf(v)
    }

    /// String depth.
    pub fn sd(&self, v: NodeId) -> usize {
        self.sd[v] as usize
    }

    /// Path label `str(v)`.
    pub fn label(&self, v: NodeId) -> &[u32] {
        let p = self.label_pos[v] as usize;
        &self.text[p..p + self.sd(v)]
    }

    /// Edge label into `v` as a half-open span of the text.
    pub fn edge(&self, v: NodeId) -> (usize, usize) {
        let p = self.label_pos[v] as usize;
        let above = self.parent(v).map_or(0, |u| self.sd(u));
        (p + above, p + self.sd(v))
    }

    pub fn child(&self, v: NodeId, letter: u32) -> Option<NodeId> {
        self.child
            .get(&(((v as u64) << 32) | letter as u64))
            .map(|&c| c as NodeId)
    }

    /// Suffix link of an internal node; the root links to itself.
    pub fn suffix_link(&self, v: NodeId) -> Option<NodeId> {
        let s = self.slink[v];
        (s != NIL).then_some(s as NodeId)
    }

    /// Text position where the suffix of leaf `v` starts.
    pub fn suffix_start(&self, v: NodeId) -> Option<usize> {
        let s = self.suffix_start[v];
        (s != NIL).then_some(s as usize)
    }

    pub fn leaf_of_suffix(&self, p: usize) -> NodeId {
        self.leaf_of_suffix[p] as NodeId
    }

    /// Document containing text position `p`; a delimiter belongs to the
    /// document it terminates.
    pub fn doc_of(&self, p: usize) -> usize {
        self.doc_start.partition_point(|&s| s as usize <= p) - 1
    }

    /// Text position one past the delimiter-free part of document `d`, i.e.
    /// the position of `$_d`.
    pub fn doc_end(&self, d: usize) -> usize {
        self.doc_start[d + 1] as usize - 1
    }

    /// Range of leaf ranks (suffix-array positions) below `v`.
    pub fn leaf_interval(&self, v: NodeId) -> (usize, usize) {
        self.order.interval(v)
    }

    pub fn leaf_order(&self) -> &LeafOrder {
        &self.order
    }

    /// Longest delimiter-free prefix length of `str(v)`.
    pub fn clean_depth(&self, v: NodeId) -> usize {
        let p = self.label_pos[v] as usize;
        let end = self.doc_end(self.doc_of(p));
        self.sd(v).min(end - p)
    }

    /// Locus of the longest prefix of `pattern` that occurs in the text.
    pub fn spell_prefix(&self, pattern: &[u32]) -> Locus {
        let root = Locus {
            node: self.root(),
            matched: 0,
            on_edge: false,
        };
        self.extend(root, pattern)
    }

    /// Continues a match of `pattern[..loc.matched]` ending at `loc` as far
    /// as the text allows.
    pub fn extend(&self, loc: Locus, pattern: &[u32]) -> Locus {
        let mut i = loc.matched;
        let mut x = loc.node;
        let mut walk_edge = loc.on_edge;
        loop {
            if walk_edge {
                let y = x;
                let base = self.label_pos[y] as usize;
                let mut j = i;
                while j < self.sd(y)
                    && i < pattern.len()
                    && pattern[i] < self.sigma
                    && self.text[base + j] == pattern[i]
                {
                    j += 1;
                    i += 1;
                }
                if j < self.sd(y) {
                    return Locus {
                        node: y,
                        matched: i,
                        on_edge: true,
                    };
                }
            }
            if i == pattern.len() || pattern[i] >= self.sigma {
                break;
            }
            match self.child(x, pattern[i]) {
                Some(y) => {
                    x = y;
                    walk_edge = true;
                }
                None => break,
            }
        }
        Locus {
            node: x,
            matched: i,
            on_edge: false,
        }
    }

    /// Locus of the whole pattern, or `None` when it does not occur.
    pub fn spell(&self, pattern: &[u32]) -> Option<Locus> {
        let l = self.spell_prefix(pattern);
        (l.matched == pattern.len()).then_some(l)
    }

    /// From explicit node `x`, descends along `rest`, which is known to
    /// continue `str(x)` inside the text, counting edge lengths only.
    pub(crate) fn descend_known(&self, mut x: NodeId, rest: &[u32]) -> Locus {
        let base = self.sd(x);
        let target = base + rest.len();
        while self.sd(x) < target {
            let y = self
                .child(x, rest[self.sd(x) - base])
                .expect("rest occurs below x");
            if self.sd(y) > target {
                return Locus {
                    node: y,
                    matched: target,
                    on_edge: true,
                };
            }
            x = y;
        }
        Locus {
            node: x,
            matched: target,
            on_edge: false,
        }
    }
}

/// Suffix array by prefix doubling with two counting-sort passes per round.
pub fn suffix_array(text: &[u32], alphabet: usize) -> Vec<u32> {
    let n = text.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = text.to_vec();
    let mut tmp = vec![0u32; n];
    let mut buf = vec![0u32; n];
    let mut classes = alphabet.max(n) + 1;
    let mut k = 1;
    loop {
        // Sort by second key (rank[i+k], with -1 for past-the-end), then
        // stably by first key.
        let second = |i: u32| -> usize {
            let j = i as usize + k;
            if j < n {
                rank[j] as usize + 1
            } else {
                0
            }
        };
        let mut count = vec![0usize; classes + 2];
        for &i in &sa {
            count[second(i) + 1] += 1;
        }
        for b in 0..=classes {
            count[b + 1] += count[b];
        }
        for &i in &sa {
            let b = second(i);
            buf[count[b]] = i;
            count[b] += 1;
        }
        count.iter_mut().for_each(|c| *c = 0);
        for &i in &buf {
            count[rank[i as usize] as usize + 1] += 1;
        }
        for b in 0..=classes {
            count[b + 1] += count[b];
        }
        for &i in &buf {
            let b = rank[i as usize] as usize;
            sa[count[b]] = i;
            count[b] += 1;
        }

        tmp[sa[0] as usize] = 0;
        let mut r = 0u32;
        for w in 1..n {
            let (a, b) = (sa[w - 1], sa[w]);
            if rank[a as usize] != rank[b as usize] || second(a) != second(b) {
                r += 1;
            }
            tmp[b as usize] = r;
        }
        std::mem::swap(&mut rank, &mut tmp);
        if r as usize == n - 1 {
            return sa;
        }
        classes = r as usize + 1;
        k *= 2;
    }
}

/// `lcp[i]` = longest common prefix of suffixes `sa[i-1]` and `sa[i]`;
/// `lcp[0] = 0`.
pub fn lcp_array(text: &[u32], sa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut rank = vec![0u32; n];
    for (i, &p) in sa.iter().enumerate() {
        rank[p as usize] = i as u32;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for p in 0..n {
        let r = rank[p] as usize;
        if r > 0 {
            let q = sa[r - 1] as usize;
            while p + h < n && q + h < n && text[p + h] == text[q + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}
