//! Splitting a leaf-colored tree into one virtual tree per color.
//!
//! For color `i`, the tree `T_i` has the color-`i` leaves of `T` as leaves and
//! the LCAs of pairs of them as internal nodes, with `phi(u)` mapping each
//! node back to `T`. `T_i` is built left to right from the in-order leaf list
//! and the LCA of each adjacent pair, by the same stack discipline that builds
//! a suffix tree from a suffix array and its LCP array: node depth in `T` plays
//! the role of the LCP value. [`VirtualTreeBuilder`] is that engine; the
//! generalized suffix tree reuses it.
//!
//! All trees live in one flat arena. Nodes of each tree are numbered in
//! postorder, so the root of every nonempty tree is its last node.

use std::fmt::Write as _;
use std::ops::Range;

use crate::lca::LcaIndex;
use crate::tree::{leaf_order, ColorId, LeafColoredTree, NodeId, NIL};

/// Stack-based construction of a tree from leaves in left-to-right order and
/// the (depth, identity) of the branching point between each adjacent pair.
///
/// Buffers are reused across calls so that building many small trees costs
/// no allocation after warm-up. After [`build`](Self::build), the output
/// arrays hold the nodes in postorder, root last.
#[derive(Debug, Default)]
pub(crate) struct VirtualTreeBuilder {
    stack: Vec<u32>,
    slot_depth: Vec<u32>,
    slot_tag: Vec<u32>,
    slot_leaf: Vec<u32>,
    slot_parent: Vec<u32>,
    slot_post: Vec<u32>,
    order: Vec<u32>,
    /// Per postorder node: identity tag (the node of `T` for virtual trees).
    pub(crate) tag: Vec<u32>,
    pub(crate) depth: Vec<u32>,
    /// Parent in postorder numbering, NIL at the root.
    pub(crate) parent: Vec<u32>,
    /// Index into the input leaf sequence, NIL for internal nodes.
    pub(crate) leaf: Vec<u32>,
}

impl VirtualTreeBuilder {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    fn new_slot(&mut self, tag: u32, depth: u32, leaf: u32) -> u32 {
        let s = self.slot_tag.len() as u32;
        self.slot_tag.push(tag);
        self.slot_depth.push(depth);
        self.slot_leaf.push(leaf);
        self.slot_parent.push(NIL);
        self.slot_post.push(NIL);
        s
    }

    fn finish(&mut self, s: u32) {
        self.slot_post[s as usize] = self.order.len() as u32;
        self.order.push(s);
    }

    /// `leaf(i)` gives (tag, depth) of the i-th leaf; `key(i)` for `i >= 1`
    /// gives (tag, depth) of the branching node between leaves `i-1` and `i`.
    /// Its depth must be strictly below both leaf depths.
    pub(crate) fn build(
        &mut self,
        n: usize,
        mut leaf: impl FnMut(usize) -> (u32, u32),
        mut key: impl FnMut(usize) -> (u32, u32),
    ) {
        self.stack.clear();
        self.slot_depth.clear();
        self.slot_tag.clear();
        self.slot_leaf.clear();
        self.slot_parent.clear();
        self.slot_post.clear();
        self.order.clear();
        if n == 0 {
            self.tag.clear();
            self.depth.clear();
            self.parent.clear();
            self.leaf.clear();
            return;
        }

        let (t0, d0) = leaf(0);
        let s = self.new_slot(t0, d0, 0);
        self.stack.push(s);
        for i in 1..n {
            let (ktag, kdepth) = key(i);
            let mut last = NIL;
            while let Some(&top) = self.stack.last() {
                if self.slot_depth[top as usize] <= kdepth {
                    break;
                }
                self.stack.pop();
                self.finish(top);
                match self.stack.last() {
                    Some(&below) if self.slot_depth[below as usize] >= kdepth => {
                        self.slot_parent[top as usize] = below;
                    }
                    _ => last = top,
                }
            }
            let open_here = self
                .stack
                .last()
                .is_some_and(|&top| self.slot_depth[top as usize] == kdepth);
            if !open_here {
                let y = self.new_slot(ktag, kdepth, NIL);
                if last != NIL {
                    self.slot_parent[last as usize] = y;
                }
                self.stack.push(y);
            }
            let (lt, ld) = leaf(i);
            let s = self.new_slot(lt, ld, i as u32);
            self.stack.push(s);
        }
        while let Some(top) = self.stack.pop() {
            self.finish(top);
            if let Some(&below) = self.stack.last() {
                self.slot_parent[top as usize] = below;
            }
        }

        let m = self.order.len();
        self.tag.clear();
        self.depth.clear();
        self.parent.clear();
        self.leaf.clear();
        for k in 0..m {
            let s = self.order[k] as usize;
            self.tag.push(self.slot_tag[s]);
            self.depth.push(self.slot_depth[s]);
            self.leaf.push(self.slot_leaf[s]);
            let p = self.slot_parent[s];
            self.parent.push(if p == NIL {
                NIL
            } else {
                self.slot_post[p as usize]
            });
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.tag.len()
    }
}

/// The in-order leaves of `T` grouped by color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafList {
    start: Vec<u32>,
    leaves: Vec<u32>,
}

impl LeafList {
    /// Leaves of color `i` in in-order.
    pub fn list(&self, i: ColorId) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.slice(i).iter().map(|&v| v as NodeId)
    }

    pub fn num_colors(&self) -> usize {
        self.start.len() - 1
    }

    pub(crate) fn slice(&self, i: ColorId) -> &[u32] {
        &self.leaves[self.start[i] as usize..self.start[i + 1] as usize]
    }
}

pub fn build_leaf_lists(t: &LeafColoredTree) -> LeafList {
    let delta = t.num_colors();
    let order = leaf_order(t);
    let color = t.color_raw();
    let mut start = vec![0u32; delta + 1];
    for &v in order.leaf_slice() {
        start[color[v as usize] as usize + 1] += 1;
    }
    for i in 0..delta {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut leaves = vec![0u32; order.len()];
    for &v in order.leaf_slice() {
        let c = color[v as usize] as usize;
        leaves[fill[c] as usize] = v;
        fill[c] += 1;
    }
    LeafList { start, leaves }
}

/// One virtual tree, owned. Nodes are in postorder with the root last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleColorTree {
    pub phi: Vec<NodeId>,
    pub parent: Vec<Option<usize>>,
}

impl SingleColorTree {
    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        self.phi.len().checked_sub(1)
    }

    pub fn children(&self, u: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&w| self.parent[w] == Some(u))
            .collect()
    }
}

/// Builds the virtual tree over `leaves`, which must be sorted by in-order
/// rank. An empty list gives an empty tree.
pub fn build_single_color_tree(lca: &LcaIndex, leaves: &[NodeId]) -> SingleColorTree {
    let mut b = VirtualTreeBuilder::new();
    let depth = lca.depth_raw();
    b.build(
        leaves.len(),
        |i| (leaves[i] as u32, depth[leaves[i]]),
        |i| {
            let w = lca.lca(leaves[i - 1], leaves[i]);
            (w as u32, depth[w])
        },
    );
    SingleColorTree {
        phi: b.tag.iter().map(|&v| v as NodeId).collect(),
        parent: b
            .parent
            .iter()
            .map(|&p| (p != NIL).then_some(p as usize))
            .collect(),
    }
}

/// All virtual trees in one arena, with a reverse index from nodes of `T`.
#[derive(Debug, Clone)]
pub struct SingleColorForest {
    tree_start: Vec<u32>,
    phi: Vec<u32>,
    parent: Vec<u32>,
    color: Vec<u32>,
    child_start: Vec<u32>,
    children: Vec<u32>,
    target_start: Vec<u32>,
    at_target: Vec<u32>,
    leaf_lists: LeafList,
}

pub fn split_forest(t: &LeafColoredTree, lca: &LcaIndex) -> SingleColorForest {
    let lists = build_leaf_lists(t);
    let delta = t.num_colors();
    let depth = lca.depth_raw();
    let mut builder = VirtualTreeBuilder::new();
    let cap = 2 * t.num_leaves();
    let mut tree_start = Vec::with_capacity(delta + 1);
    let mut phi = Vec::with_capacity(cap);
    let mut parent = Vec::with_capacity(cap);
    let mut color = Vec::with_capacity(cap);
    tree_start.push(0u32);
    for i in 0..delta {
        let leaves = lists.slice(i);
        builder.build(
            leaves.len(),
            |j| (leaves[j], depth[leaves[j] as usize]),
            |j| {
                let w = lca.lca(leaves[j - 1] as usize, leaves[j] as usize);
                (w as u32, depth[w])
            },
        );
        let base = phi.len() as u32;
        phi.extend_from_slice(&builder.tag);
        parent.extend(
            builder
                .parent
                .iter()
                .map(|&p| if p == NIL { NIL } else { p + base }),
        );
        color.extend(std::iter::repeat_n(i as u32, builder.len()));
        tree_start.push(phi.len() as u32);
    }

    let m = phi.len();
    let mut child_start = vec![0u32; m + 1];
    for &p in &parent {
        if p != NIL {
            child_start[p as usize + 1] += 1;
        }
    }
    for u in 0..m {
        child_start[u + 1] += child_start[u];
    }
    let mut fill = child_start.clone();
    let mut children = vec![0u32; child_start[m] as usize];
    for (u, &p) in parent.iter().enumerate() {
        if p != NIL {
            children[fill[p as usize] as usize] = u as u32;
            fill[p as usize] += 1;
        }
    }

    let n = t.len();
    let mut target_start = vec![0u32; n + 1];
    for &v in &phi {
        target_start[v as usize + 1] += 1;
    }
    for v in 0..n {
        target_start[v + 1] += target_start[v];
    }
    let mut fill = target_start.clone();
    let mut at_target = vec![0u32; m];
    for (u, &v) in phi.iter().enumerate() {
        at_target[fill[v as usize] as usize] = u as u32;
        fill[v as usize] += 1;
    }

    SingleColorForest {
        tree_start,
        phi,
        parent,
        color,
        child_start,
        children,
        target_start,
        at_target,
        leaf_lists: lists,
    }
}

impl SingleColorForest {
    /// Total number of nodes over all trees.
    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn num_colors(&self) -> usize {
        self.tree_start.len() - 1
    }

    /// Arena ids of the nodes of `T_i`, in postorder.
    pub fn tree_range(&self, i: ColorId) -> Range<usize> {
        self.tree_start[i] as usize..self.tree_start[i + 1] as usize
    }

    pub fn tree_len(&self, i: ColorId) -> usize {
        self.tree_range(i).len()
    }

    pub fn root(&self, i: ColorId) -> Option<usize> {
        let r = self.tree_range(i);
        (!r.is_empty()).then(|| r.end - 1)
    }

    pub fn phi(&self, u: usize) -> NodeId {
        self.phi[u] as NodeId
    }

    pub fn parent(&self, u: usize) -> Option<usize> {
        let p = self.parent[u];
        (p != NIL).then_some(p as usize)
    }

    pub fn color(&self, u: usize) -> ColorId {
        self.color[u] as ColorId
    }

    pub fn children(&self, u: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.child_slice(u).iter().map(|&c| c as usize)
    }

    pub fn num_children(&self, u: usize) -> usize {
        (self.child_start[u + 1] - self.child_start[u]) as usize
    }

    pub fn is_leaf(&self, u: usize) -> bool {
        self.num_children(u) == 0
    }

    /// Forest nodes `u` with `phi(u) == v`, in color order.
    pub fn at(&self, v: NodeId) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.at_slice(v).iter().map(|&u| u as usize)
    }

    pub fn leaf_lists(&self) -> &LeafList {
        &self.leaf_lists
    }

    pub(crate) fn child_slice(&self, u: usize) -> &[u32] {
        &self.children[self.child_start[u] as usize..self.child_start[u + 1] as usize]
    }

    pub(crate) fn at_slice(&self, v: NodeId) -> &[u32] {
        &self.at_target[self.target_start[v] as usize..self.target_start[v + 1] as usize]
    }

    pub(crate) fn parent_raw(&self) -> &[u32] {
        &self.parent
    }

    /// Owned copy of `T_i` with tree-local ids.
    pub fn tree(&self, i: ColorId) -> SingleColorTree {
        let r = self.tree_range(i);
        let base = r.start;
        SingleColorTree {
            phi: r.clone().map(|u| self.phi(u)).collect(),
            parent: r.map(|u| self.parent(u).map(|p| p - base)).collect(),
        }
    }

    /// Text dump for fixture diffs: per tree a `#COLOR` line, then one line
    /// per node `local_id parent_local [color] phi=<node of T>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.num_colors() {
            let r = self.tree_range(i);
            let base = r.start;
            writeln!(out, "#COLOR={i} NODES={}", r.len()).unwrap();
            for u in r {
                let parent = self.parent(u).map_or(-1, |p| (p - base) as i64);
                if self.is_leaf(u) {
                    writeln!(out, "{} {parent} {i} phi={}", u - base, self.phi(u)).unwrap();
                } else {
                    writeln!(out, "{} {parent} phi={}", u - base, self.phi(u)).unwrap();
                }
            }
        }
        out
    }
}

/// Leaf-descendant counts of every forest node within its own tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeCountTable {
    count: Vec<u32>,
}

impl SubtreeCountTable {
    pub fn get(&self, u: usize) -> usize {
        self.count[u] as usize
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.count
    }
}

pub fn count_colors(forest: &SingleColorForest) -> SubtreeCountTable {
    let m = forest.len();
    let mut count = vec![0u32; m];
    let parent = forest.parent_raw();
    // Postorder within each tree: children precede parents.
    for u in 0..m {
        if forest.is_leaf(u) {
            count[u] = 1;
        }
        let p = parent[u];
        if p != NIL {
            count[p as usize] += count[u];
        }
    }
    SubtreeCountTable { count }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_on_lcp_style_input() {
        // Leaves at depth 9 with branching depths 2, 1, 2: ((a b) (c d)) shape.
        let keys = [0, 2, 1, 2];
        let mut b = VirtualTreeBuilder::new();
        b.build(4, |i| (i as u32, 9), |i| (100 + i as u32, keys[i]));
        assert_eq!(b.len(), 7);
        assert_eq!(b.parent[6], NIL);
        assert_eq!(b.depth[6], 1);
        let leaves: Vec<u32> = (0..7)
            .filter(|&k| b.leaf[k] != NIL)
            .map(|k| b.leaf[k])
            .collect();
        assert_eq!(leaves, vec![0, 1, 2, 3]);
        assert_eq!(b.parent[0], b.parent[1]);
        assert_eq!(b.parent[3], b.parent[4]);
        assert_ne!(b.parent[0], b.parent[3]);
    }

    #[test]
    fn builder_merges_repeated_branch_node() {
        let mut b = VirtualTreeBuilder::new();
        b.build(3, |i| (i as u32, 5), |_| (42, 1));
        assert_eq!(b.len(), 4);
        assert_eq!(b.tag[3], 42);
        assert!(b.parent[..3].iter().all(|&p| p == 3));
    }

    #[test]
    fn empty_and_single() {
        let t = LeafColoredTree::parse("0 -1 0").unwrap();
        let lca = LcaIndex::new(&t);
        assert!(build_single_color_tree(&lca, &[]).is_empty());
        let one = build_single_color_tree(&lca, &[0]);
        assert_eq!(one.phi, vec![0]);
        assert_eq!(one.parent, vec![None]);
    }

    #[test]
    fn unused_colors_give_empty_trees() {
        let t = LeafColoredTree::parse("#DELTA=4\n0 -1\n1 0 2\n2 0 2\n").unwrap();
        let lca = LcaIndex::new(&t);
        let f = split_forest(&t, &lca);
        assert_eq!(f.num_colors(), 4);
        assert_eq!(f.tree_len(0), 0);
        assert_eq!(f.tree_len(2), 3);
        assert_eq!(f.root(2).map(|u| f.phi(u)), Some(0));
        assert_eq!(f.root(3), None);
        let counts = count_colors(&f);
        assert_eq!(counts.get(f.root(2).unwrap()), 2);
    }
}
