//! Lowest common ancestors and level-ancestor queries.
//!
//! [`LcaIndex`] answers LCA in O(1) after O(N log N) preprocessing. It works in
//! preorder-rank space: for nodes with ranks `a < b`, the LCA is the node of
//! smallest rank among the parents of the nodes ranked `a+1..=b`, so a sparse
//! table over the parent ranks suffices. That is the Euler-tour RMQ reduction
//! with half the array length.
//!
//! [`LevelAncestorIndex`] is a binary-lifting table used to find the child of a
//! node on the path towards one of its descendants.

use crate::error::{Error, Result};
use crate::tree::{LeafColoredTree, NodeId, NIL};

#[derive(Debug, Clone)]
pub struct LcaIndex {
    /// `table[j][i]` = min parent rank over positions `i .. i + 2^j`.
    table: Vec<Vec<u32>>,
    rank: Vec<u32>,
    by_rank: Vec<u32>,
    depth: Vec<u32>,
    size: Vec<u32>,
}

impl LcaIndex {
    pub fn new(t: &LeafColoredTree) -> Self {
        let n = t.len();
        let pre = t.pre_slice();
        let parent = t.parent_raw();
        let mut rank = vec![0u32; n];
        for (i, &v) in pre.iter().enumerate() {
            rank[v as usize] = i as u32;
        }
        let mut depth = vec![0u32; n];
        for &v in pre.iter().skip(1) {
            depth[v as usize] = depth[parent[v as usize] as usize] + 1;
        }
        let mut size = vec![1u32; n];
        for &v in pre.iter().rev() {
            let p = parent[v as usize];
            if p != NIL {
                size[p as usize] += size[v as usize];
            }
        }

        // Position 0 is the root, whose parent rank is never consulted.
        let base: Vec<u32> = pre
            .iter()
            .map(|&v| {
                let p = parent[v as usize];
                if p == NIL {
                    0
                } else {
                    rank[p as usize]
                }
            })
            .collect();
        let mut table = vec![base];
        let mut span = 1;
        while 2 * span <= n {
            let prev = table.last().expect("table starts non-empty");
            let next: Vec<u32> = (0..=n - 2 * span)
                .map(|i| prev[i].min(prev[i + span]))
                .collect();
            table.push(next);
            span *= 2;
        }

        LcaIndex {
            table,
            rank,
            by_rank: pre.to_vec(),
            depth,
            size,
        }
    }

    pub fn lca(&self, u: NodeId, v: NodeId) -> NodeId {
        if u == v {
            return u;
        }
        let (a, b) = {
            let (ru, rv) = (self.rank[u] as usize, self.rank[v] as usize);
            if ru < rv {
                (ru + 1, rv + 1)
            } else {
                (rv + 1, ru + 1)
            }
        };
        let j = (usize::BITS - 1 - (b - a).leading_zeros()) as usize;
        let row = &self.table[j];
        let r = row[a].min(row[b - (1 << j)]);
        self.by_rank[r as usize] as NodeId
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v] as usize
    }

    pub(crate) fn depth_raw(&self) -> &[u32] {
        &self.depth
    }

    /// Whether `u` is an ancestor of `v` (reflexive).
    pub fn is_ancestor(&self, u: NodeId, v: NodeId) -> bool {
        let (ru, rv) = (self.rank[u], self.rank[v]);
        ru <= rv && rv < ru + self.size[u]
    }

    /// Preorder rank of `v`.
    pub fn preorder_rank(&self, v: NodeId) -> usize {
        self.rank[v] as usize
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct LevelAncestorIndex {
    /// `jump[j][v]` = ancestor of `v` at distance `2^j`, or NIL.
    jump: Vec<Vec<u32>>,
    depth: Vec<u32>,
    rank: Vec<u32>,
    size: Vec<u32>,
}

impl LevelAncestorIndex {
    pub fn new(t: &LeafColoredTree) -> Self {
        let lca = LcaIndex::new(t);
        Self::with_lca(t, &lca)
    }

    pub fn with_lca(t: &LeafColoredTree, lca: &LcaIndex) -> Self {
        let n = t.len();
        let max_depth = lca.depth.iter().copied().max().unwrap_or(0);
        let levels = (u32::BITS - max_depth.leading_zeros()).max(1) as usize;
        let mut jump = Vec::with_capacity(levels);
        jump.push(t.parent_raw().to_vec());
        for j in 1..levels {
            let prev = &jump[j - 1];
            let next: Vec<u32> = (0..n)
                .map(|v| {
                    let mid = prev[v];
                    if mid == NIL {
                        NIL
                    } else {
                        prev[mid as usize]
                    }
                })
                .collect();
            jump.push(next);
        }
        LevelAncestorIndex {
            jump,
            depth: lca.depth.clone(),
            rank: lca.rank.clone(),
            size: lca.size.clone(),
        }
    }

    /// Ancestor of `v` that is `dist` levels above it.
    pub fn ancestor(&self, mut v: NodeId, mut dist: usize) -> Option<NodeId> {
        if dist > self.depth[v] as usize {
            return None;
        }
        let mut j = 0;
        while dist > 0 {
            if dist & 1 == 1 {
                v = self.jump[j][v] as NodeId;
            }
            dist >>= 1;
            j += 1;
        }
        Some(v)
    }

    /// The child of `v` whose subtree contains `descendant`.
    pub fn child_toward(&self, v: NodeId, descendant: NodeId) -> Result<NodeId> {
        let (rv, rd) = (self.rank[v], self.rank[descendant]);
        if !(rv < rd && rd < rv + self.size[v]) {
            return Err(Error::NotStrictDescendant {
                ancestor: v,
                descendant,
            });
        }
        let dist = (self.depth[descendant] - self.depth[v] - 1) as usize;
        Ok(self
            .ancestor(descendant, dist)
            .expect("descendant is deeper than v"))
    }
}
