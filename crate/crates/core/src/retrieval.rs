//! Document retrieval, uniform pattern mining and consistent q-gram counting
//! on a generalized suffix tree annotated with per-node modes and anti-modes.
//!
//! The number of leaves of color `i` below the locus of a pattern `P` is the
//! number of occurrences of `P` in document `i`, so the mode at the locus
//! answers top-1 retrieval and the anti-mode answers bottom-1 retrieval.
//! Every pattern whose locus lies on the edge into `v` has the leaf set of
//! `v`, which is what makes pattern mining output-sensitive.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::mode::{AntiModeTable, ModeEngine, ModeTable, TopKTable};
use crate::suffix::{DocumentCollection, GeneralizedSuffixTree, Locus};
use crate::tree::NodeId;

#[derive(Debug, Clone)]
pub struct DocRetrievalIndex {
    gst: GeneralizedSuffixTree,
    modes: ModeTable,
    anti_modes: AntiModeTable,
    top_k: Option<TopKTable>,
}

impl DocRetrievalIndex {
    pub fn new(docs: &DocumentCollection) -> Result<Self> {
        Self::build(docs, None)
    }

    /// Also precomputes top-`k_max` lists for [`dr_topk`](Self::dr_topk).
    pub fn with_top_k(docs: &DocumentCollection, k_max: usize) -> Result<Self> {
        if k_max < 1 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Self::build(docs, Some(k_max))
    }

    fn build(docs: &DocumentCollection, k_max: Option<usize>) -> Result<Self> {
        let gst = GeneralizedSuffixTree::new(docs)?;
        let engine = ModeEngine::new(gst.tree());
        let top_k = k_max.map(|k| engine.top_k(k)).transpose()?;
        Ok(DocRetrievalIndex {
            modes: engine.modes(),
            anti_modes: engine.anti_modes(),
            top_k,
            gst,
        })
    }

    pub fn gst(&self) -> &GeneralizedSuffixTree {
        &self.gst
    }

    pub fn modes(&self) -> &ModeTable {
        &self.modes
    }

    pub fn anti_modes(&self) -> &AntiModeTable {
        &self.anti_modes
    }

    pub fn num_docs(&self) -> usize {
        self.gst.num_docs()
    }

    /// Explicit node whose leaves are the occurrences of a nonempty pattern.
    fn locus_node(&self, pattern: &[u32]) -> Option<NodeId> {
        if pattern.is_empty() {
            return None;
        }
        self.gst.spell(pattern).map(|l| l.node)
    }

    /// A document with the most occurrences of `pattern` and that count;
    /// `None` when the pattern occurs nowhere.
    pub fn dr1(&self, pattern: &[u32]) -> Option<(usize, usize)> {
        self.locus_node(pattern).map(|v| self.modes.get(v))
    }

    /// A document with the fewest occurrences of `pattern` (possibly zero).
    pub fn dr_bottom1(&self, pattern: &[u32]) -> (usize, usize) {
        match self.locus_node(pattern) {
            Some(v) => self.anti_modes.get(v),
            None => (0, 0),
        }
    }

    /// Up to `k` documents with the most occurrences, frequency
    /// non-increasing, ties by document id. Documents without an occurrence
    /// are not listed.
    pub fn dr_topk(&self, pattern: &[u32], k: usize) -> Result<Vec<(usize, usize)>> {
        if k < 1 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        let table = self
            .top_k
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("index was built without top-k lists".into()))?;
        if k > table.k() {
            return Err(Error::InvalidParameter(format!(
                "k = {k} exceeds the index's k = {}",
                table.k()
            )));
        }
        Ok(match self.locus_node(pattern) {
            Some(v) => table.get(v).take(k).collect(),
            None => Vec::new(),
        })
    }

    /// Streams every ε-uniform pattern in lexicographic order, in compact
    /// form. Returns the number of compact records emitted.
    pub fn upm_mine(&self, epsilon: usize, mut sink: impl FnMut(UniformPattern)) -> usize {
        let gst = &self.gst;
        let root = gst.root();
        let mut emitted = 0;
        for v in gst.tree().preorder() {
            if v == root {
                continue;
            }
            let (f_max, f_min) = (self.modes.freq(v), self.anti_modes.freq(v));
            if f_max - f_min > epsilon {
                continue;
            }
            let lo = gst.sd(gst.parent(v).expect("non-root")) + 1;
            let hi = gst.clean_depth(v);
            if lo > hi {
                continue;
            }
            sink(UniformPattern {
                node: v,
                lo,
                hi,
                f_max,
                f_min,
            });
            emitted += 1;
        }
        emitted
    }

    /// Number of distinct q-grams of `pattern` that occur in the collection
    /// and whose count in `pattern` lies within ε of the collection's
    /// per-document range `[f_min, f_max]` at their locus.
    ///
    /// The windows are located by a matching-statistics walk with suffix
    /// links. Two q-grams with the same locus node are the same string, so
    /// the node identifies each q-gram when counting its occurrences in
    /// `pattern`.
    pub fn cqs(&self, pattern: &[u32], q: usize, epsilon: usize) -> Result<usize> {
        if q < 1 {
            return Err(Error::InvalidParameter("q must be at least 1".into()));
        }
        if q > pattern.len() {
            return Ok(0);
        }
        let mut occ: HashMap<NodeId, usize> = HashMap::new();
        self.for_each_qgram_locus(pattern, q, |_, v| *occ.entry(v).or_insert(0) += 1);
        Ok(occ
            .into_iter()
            .filter(|&(v, count)| {
                let (f_max, f_min) = (self.modes.freq(v), self.anti_modes.freq(v));
                f_min.saturating_sub(epsilon) <= count && count <= f_max + epsilon
            })
            .count())
    }

    /// Calls `f(i, v)` for every window `pattern[i..i+q]` that occurs in the
    /// collection, with `v` its locus node.
    pub fn for_each_qgram_locus(
        &self,
        pattern: &[u32],
        q: usize,
        mut f: impl FnMut(usize, NodeId),
    ) {
        let gst = &self.gst;
        let root = gst.root();
        let mut loc = Locus {
            node: root,
            matched: 0,
            on_edge: false,
        };
        for i in 0..=pattern.len().saturating_sub(q) {
            let window = &pattern[i..i + q];
            loc = gst.extend(loc, window);
            if loc.matched == q {
                f(i, loc.node);
            }
            if loc.matched == 0 {
                continue;
            }
            // Drop the first letter: jump from the deepest explicit node at
            // or above the match end, then rescan the known remainder.
            let anchor = if loc.on_edge {
                gst.parent(loc.node).expect("edge below the root")
            } else {
                loc.node
            };
            let known = &pattern[i + 1..i + loc.matched];
            loc = if anchor == root {
                gst.descend_known(root, known)
            } else {
                let s = gst.suffix_link(anchor).expect("internal node");
                gst.descend_known(s, &known[gst.sd(s)..])
            };
        }
    }
}

/// All prefixes of `str(node)` with length in `[lo, hi]`: they share the
/// node's leaf set and hence its frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformPattern {
    pub node: NodeId,
    pub lo: usize,
    pub hi: usize,
    pub f_max: usize,
    pub f_min: usize,
}

impl UniformPattern {
    pub fn len(&self) -> usize {
        self.hi + 1 - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    /// The expanded patterns, shortest first.
    pub fn expand<'a>(
        &self,
        gst: &'a GeneralizedSuffixTree,
    ) -> impl Iterator<Item = &'a [u32]> + 'a {
        let label = gst.label(self.node);
        (self.lo..=self.hi).map(move |l| &label[..l])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suffix::Alphabet;

    fn index(texts: &[&str]) -> (DocRetrievalIndex, Alphabet) {
        let (docs, alpha) = DocumentCollection::from_texts(texts).unwrap();
        (DocRetrievalIndex::with_top_k(&docs, 2).unwrap(), alpha)
    }

    #[test]
    fn top_one_and_bottom_one() {
        let (idx, a) = index(&["aaaab", "aab"]);
        assert_eq!(idx.dr1(&a.encode("aa")), Some((0, 3)));
        assert_eq!(idx.dr1(&a.encode("zz")), None);
        assert_eq!(idx.dr_bottom1(&a.encode("aaa")), (1, 0));
        assert_eq!(
            idx.dr_topk(&a.encode("a"), 2).unwrap(),
            vec![(0, 4), (1, 2)]
        );
        assert!(idx.dr_topk(&a.encode("a"), 0).is_err());
        assert!(idx.dr_topk(&a.encode("a"), 3).is_err());
    }

    #[test]
    fn mining_example() {
        let (idx, a) = index(&["aaaab", "aab"]);
        let mut out = Vec::new();
        idx.upm_mine(1, |p| {
            out.extend(p.expand(idx.gst()).map(|s| a.decode(s)));
        });
        assert_eq!(out, vec!["aaaa", "aaaab", "aaab", "aab", "ab", "b"]);
    }

    #[test]
    fn cqs_example() {
        let (idx, a) = index(&["aaaab", "aab"]);
        assert_eq!(idx.cqs(&a.encode("aab"), 2, 0).unwrap(), 2);
        assert_eq!(idx.cqs(&a.encode("aab"), 4, 0).unwrap(), 0);
        assert!(idx.cqs(&a.encode("aab"), 0, 0).is_err());
    }
}
