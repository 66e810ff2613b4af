//! Leaf-colored rooted trees: construction, validation, text I/O, unary-path
//! contraction and the in-order leaf sequence.
//!
//! Trees are stored as flat index arrays: a parent array plus a CSR child
//! adjacency (`child_start`/`children`). Child order is the order in which
//! nodes were supplied, which fixes the in-order leaf sequence and with it
//! every tie-break downstream.
//!
//! Text format, one node per line:
//!
//! ```text
//! #N=3 DELTA=2
//! 0 -1
//! 1 0 0
//! 2 0 1
//! ```
//!
//! `node_id parent_id [color]`, the root uses parent `-1`, and a color is
//! present iff the node is a leaf. The header is optional; `DELTA` allows
//! declaring colors that never occur.

use std::fmt;
use std::io::{self, Write};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type ColorId = usize;

pub(crate) const NIL: u32 = u32::MAX;

/// One input line: a node, its parent and its optional color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeRecord {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    pub color: Option<ColorId>,
}

impl NodeRecord {
    pub fn new(id: NodeId, parent: Option<NodeId>, color: Option<ColorId>) -> Self {
        NodeRecord { id, parent, color }
    }
}

/// Rooted ordered tree topology shared by the leaf- and node-colored variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Shape {
    pub(crate) parent: Vec<u32>,
    pub(crate) child_start: Vec<u32>,
    pub(crate) children: Vec<u32>,
    pub(crate) root: u32,
    pub(crate) preorder: Vec<u32>,
}

impl Shape {
    /// `order` lists node ids in the sequence that defines sibling order.
    fn build(parents: &[Option<NodeId>], order: &[NodeId]) -> Result<Shape> {
        let n = parents.len();
        if n == 0 {
            return Err(Error::EmptyTree);
        }
        if n >= NIL as usize {
            return Err(Error::InvalidParameter(format!(
                "{n} nodes exceed the u32 id space"
            )));
        }
        let mut root = None;
        for &v in order {
            match parents[v] {
                None => match root {
                    None => root = Some(v),
                    Some(r) => return Err(Error::MultipleRoots(r, v)),
                },
                Some(p) if p >= n => return Err(Error::UnknownParent { node: v, parent: p }),
                Some(p) if p == v => return Err(Error::Cycle(v)),
                Some(_) => {}
            }
        }
        let root = root.ok_or(Error::NoRoot)?;

        let mut child_start = vec![0u32; n + 1];
        for p in parents.iter().flatten() {
            child_start[p + 1] += 1;
        }
        for i in 0..n {
            child_start[i + 1] += child_start[i];
        }
        let mut fill = child_start.clone();
        let mut children = vec![0u32; n - 1];
        for &v in order {
            if let Some(p) = parents[v] {
                children[fill[p] as usize] = v as u32;
                fill[p] += 1;
            }
        }

        let parent: Vec<u32> = parents
            .iter()
            .map(|p| p.map_or(NIL, |p| p as u32))
            .collect();

        let mut shape = Shape {
            parent,
            child_start,
            children,
            root: root as u32,
            preorder: Vec::with_capacity(n),
        };
        shape.preorder = shape.compute_preorder();
        if shape.preorder.len() != n {
            // Nodes unreachable from the root sit on a parent cycle.
            let mut seen = vec![false; n];
            for &v in &shape.preorder {
                seen[v as usize] = true;
            }
            let first = seen.iter().position(|s| !s).unwrap_or(0);
            return Err(Error::Cycle(first));
        }
        Ok(shape)
    }

    fn compute_preorder(&self) -> Vec<u32> {
        let n = self.parent.len();
        let mut out = Vec::with_capacity(n);
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            if out.len() > n {
                break;
            }
            stack.extend(self.child_slice(v as usize).iter().rev());
        }
        out
    }

    #[inline]
    pub(crate) fn child_slice(&self, v: NodeId) -> &[u32] {
        &self.children[self.child_start[v] as usize..self.child_start[v + 1] as usize]
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn siblings_sorted_by_id(&self) -> bool {
        (0..self.len()).all(|v| self.child_slice(v).windows(2).all(|w| w[0] < w[1]))
    }

    /// Node order for serialization: id order when that reproduces sibling
    /// order, preorder otherwise.
    fn serialization_order(&self) -> Vec<u32> {
        if self.siblings_sorted_by_id() {
            (0..self.len() as u32).collect()
        } else {
            self.preorder.clone()
        }
    }
}

/// A rooted ordered tree whose leaves, and only leaves, carry colors in
/// `[0, num_colors)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafColoredTree {
    pub(crate) shape: Shape,
    pub(crate) color: Vec<u32>,
    num_leaves: usize,
    num_colors: usize,
}

impl LeafColoredTree {
    /// Builds a tree whose child order follows node ids.
    pub fn from_parents(
        parents: &[Option<NodeId>],
        colors: &[Option<ColorId>],
        num_colors: Option<usize>,
    ) -> Result<Self> {
        if parents.len() != colors.len() {
            return Err(Error::InvalidParameter(
                "parent and color arrays differ in length".into(),
            ));
        }
        let order: Vec<NodeId> = (0..parents.len()).collect();
        Self::assemble(parents, colors, &order, num_colors)
    }

    /// Builds a tree from records; the record sequence fixes sibling order.
    pub fn from_records(records: &[NodeRecord], num_colors: Option<usize>) -> Result<Self> {
        let (parents, colors, order) = gather(records)?;
        Self::assemble(&parents, &colors, &order, num_colors)
    }

    fn assemble(
        parents: &[Option<NodeId>],
        colors: &[Option<ColorId>],
        order: &[NodeId],
        num_colors: Option<usize>,
    ) -> Result<Self> {
        let shape = Shape::build(parents, order)?;
        let n = shape.len();
        let mut color = vec![NIL; n];
        let mut num_leaves = 0;
        let mut max_color = None::<usize>;
        for v in 0..n {
            let leaf = shape.child_slice(v).is_empty();
            match (leaf, colors[v]) {
                (true, Some(c)) => {
                    if c >= NIL as usize {
                        return Err(Error::ColorOutOfRange {
                            color: c,
                            delta: NIL as usize,
                        });
                    }
                    color[v] = c as u32;
                    num_leaves += 1;
                    max_color = Some(max_color.map_or(c, |m: usize| m.max(c)));
                }
                (true, None) => return Err(Error::UncoloredLeaf(v)),
                (false, Some(_)) => return Err(Error::ColoredInternal(v)),
                (false, None) => {}
            }
        }
        let observed = max_color.map_or(0, |m| m + 1);
        let num_colors = match num_colors {
            Some(d) if d < observed => {
                return Err(Error::ColorOutOfRange {
                    color: observed - 1,
                    delta: d,
                })
            }
            Some(d) => d,
            None => observed,
        };
        Ok(LeafColoredTree {
            shape,
            color,
            num_leaves,
            num_colors,
        })
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let doc = parse_document(text)?;
        let tree = Self::from_records(&doc.records, doc.delta)?;
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_leaves(&self) -> usize {
        self.num_leaves
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn root(&self) -> NodeId {
        self.shape.root as NodeId
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let p = self.shape.parent[v];
        (p != NIL).then_some(p as NodeId)
    }

    pub fn children(&self, v: NodeId) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.shape.child_slice(v).iter().map(|&c| c as NodeId)
    }

    pub fn num_children(&self, v: NodeId) -> usize {
        (self.shape.child_start[v + 1] - self.shape.child_start[v]) as usize
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.num_children(v) == 0
    }

    pub fn color(&self, v: NodeId) -> Option<ColorId> {
        let c = self.color[v];
        (c != NIL).then_some(c as ColorId)
    }

    /// Nodes in depth-first preorder, respecting child order.
    pub fn preorder(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator + '_ {
        self.shape.preorder.iter().map(|&v| v as NodeId)
    }

    pub(crate) fn pre_slice(&self) -> &[u32] {
        &self.shape.preorder
    }

    pub(crate) fn child_slice(&self, v: NodeId) -> &[u32] {
        self.shape.child_slice(v)
    }

    pub(crate) fn parent_raw(&self) -> &[u32] {
        &self.shape.parent
    }

    pub(crate) fn color_raw(&self) -> &[u32] {
        &self.color
    }

    /// Leaf-descendant count of every node.
    pub fn leaf_counts(&self) -> Vec<u32> {
        let mut count = vec![0u32; self.len()];
        for &v in self.shape.preorder.iter().rev() {
            let v = v as usize;
            if self.color[v] != NIL {
                count[v] += 1;
            }
            let p = self.shape.parent[v];
            if p != NIL {
                count[p as usize] += count[v];
            }
        }
        count
    }

    pub fn has_unary_nodes(&self) -> bool {
        (0..self.len()).any(|v| self.num_children(v) == 1)
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "#N={} DELTA={}", self.len(), self.num_colors)?;
        for v in self.shape.serialization_order() {
            let v = v as usize;
            let parent = self.parent(v).map_or(-1, |p| p as i64);
            match self.color(v) {
                Some(c) => writeln!(w, "{v} {parent} {c}")?,
                None => writeln!(w, "{v} {parent}")?,
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("tree text is ASCII")
    }
}

impl fmt::Display for LeafColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A tree in which every node, internal or leaf, carries a color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeColoredTree {
    pub(crate) shape: Shape,
    pub(crate) color: Vec<u32>,
    num_colors: usize,
}

impl NodeColoredTree {
    pub fn from_parents(
        parents: &[Option<NodeId>],
        colors: &[Option<ColorId>],
        num_colors: Option<usize>,
    ) -> Result<Self> {
        if parents.len() != colors.len() {
            return Err(Error::InvalidParameter(
                "parent and color arrays differ in length".into(),
            ));
        }
        let order: Vec<NodeId> = (0..parents.len()).collect();
        Self::assemble(parents, colors, &order, num_colors)
    }

    pub fn from_records(records: &[NodeRecord], num_colors: Option<usize>) -> Result<Self> {
        let (parents, colors, order) = gather(records)?;
        Self::assemble(&parents, &colors, &order, num_colors)
    }

    fn assemble(
        parents: &[Option<NodeId>],
        colors: &[Option<ColorId>],
        order: &[NodeId],
        num_colors: Option<usize>,
    ) -> Result<Self> {
        let shape = Shape::build(parents, order)?;
        let mut color = Vec::with_capacity(colors.len());
        for (v, c) in colors.iter().enumerate() {
            match c {
                Some(c) if *c < NIL as usize => color.push(*c as u32),
                Some(c) => {
                    return Err(Error::ColorOutOfRange {
                        color: *c,
                        delta: NIL as usize,
                    })
                }
                None => return Err(Error::UncoloredNode(v)),
            }
        }
        let observed = color.iter().max().map_or(0, |&m| m as usize + 1);
        let num_colors = match num_colors {
            Some(d) if d < observed => {
                return Err(Error::ColorOutOfRange {
                    color: observed - 1,
                    delta: d,
                })
            }
            Some(d) => d,
            None => observed,
        };
        Ok(NodeColoredTree {
            shape,
            color,
            num_colors,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc = parse_document(text)?;
        Self::from_records(&doc.records, doc.delta)
    }

    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn root(&self) -> NodeId {
        self.shape.root as NodeId
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let p = self.shape.parent[v];
        (p != NIL).then_some(p as NodeId)
    }

    pub fn children(&self, v: NodeId) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.shape.child_slice(v).iter().map(|&c| c as NodeId)
    }

    pub fn color(&self, v: NodeId) -> ColorId {
        self.color[v] as ColorId
    }

    pub fn preorder(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator + '_ {
        self.shape.preorder.iter().map(|&v| v as NodeId)
    }
}

fn gather(
    records: &[NodeRecord],
) -> Result<(Vec<Option<NodeId>>, Vec<Option<ColorId>>, Vec<NodeId>)> {
    let n = records.len();
    let mut parents = vec![None; n];
    let mut colors = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for r in records {
        if r.id >= n {
            return Err(Error::NodeIdOutOfRange { id: r.id, n });
        }
        if seen[r.id] {
            return Err(Error::DuplicateNode(r.id));
        }
        seen[r.id] = true;
        parents[r.id] = r.parent;
        colors[r.id] = r.color;
        order.push(r.id);
    }
    Ok((parents, colors, order))
}

struct TreeDocument {
    records: Vec<NodeRecord>,
    delta: Option<usize>,
}

fn parse_document(text: &str) -> Result<TreeDocument> {
    let mut records = Vec::new();
    let mut declared_n = None;
    let mut delta = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            for tok in rest.split_whitespace() {
                if let Some(v) = tok.strip_prefix("N=") {
                    declared_n = Some(parse_usize(v, line_no, "N")?);
                } else if let Some(v) = tok.strip_prefix("DELTA=") {
                    delta = Some(parse_usize(v, line_no, "DELTA")?);
                }
            }
            continue;
        }
        let mut tokens = line.split_whitespace();
        let id = parse_usize(tokens.next().unwrap_or_default(), line_no, "node id")?;
        let parent_tok = tokens
            .next()
            .ok_or_else(|| Error::parse(line_no, "missing parent id"))?;
        let parent: i64 = parent_tok
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad parent id {parent_tok:?}")))?;
        let parent = match parent {
            -1 => None,
            p if p < 0 => return Err(Error::parse(line_no, format!("bad parent id {p}"))),
            p => Some(p as usize),
        };
        let color = tokens
            .next()
            .map(|c| parse_usize(c, line_no, "color"))
            .transpose()?;
        if let Some(extra) = tokens.next() {
            return Err(Error::parse(line_no, format!("unexpected token {extra:?}")));
        }
        records.push(NodeRecord { id, parent, color });
    }
    if let Some(n) = declared_n {
        if n != records.len() {
            return Err(Error::parse(
                0,
                format!("header declares {n} nodes, found {}", records.len()),
            ));
        }
    }
    Ok(TreeDocument { records, delta })
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} {tok:?}")))
}

/// Per original node, its representative in the contracted tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    to_contracted: Vec<u32>,
    to_original: Vec<u32>,
}

impl ContractionMap {
    pub fn identity(n: usize) -> Self {
        let ids: Vec<u32> = (0..n as u32).collect();
        ContractionMap {
            to_contracted: ids.clone(),
            to_original: ids,
        }
    }

    /// Contracted-tree id of the node representing original node `v`.
    pub fn representative(&self, v: NodeId) -> NodeId {
        self.to_contracted[v] as NodeId
    }

    /// Original id of contracted node `u`.
    pub fn original(&self, u: NodeId) -> NodeId {
        self.to_original[u] as NodeId
    }

    pub fn original_len(&self) -> usize {
        self.to_contracted.len()
    }

    pub fn contracted_len(&self) -> usize {
        self.to_original.len()
    }

    pub fn is_identity(&self) -> bool {
        self.to_contracted.len() == self.to_original.len()
    }

    /// Lifts a per-contracted-node table back to original nodes.
    pub fn expand<T: Clone>(&self, values: &[T]) -> Vec<T> {
        self.to_contracted
            .iter()
            .map(|&u| values[u as usize].clone())
            .collect()
    }
}

/// Dissolves every node with exactly one child. Each dissolved node is
/// represented by the bottom node of its maximal unary upward path, which has
/// the same leaf set. Surviving nodes keep their relative id order.
pub fn contract_unary_paths(t: &LeafColoredTree) -> (LeafColoredTree, ContractionMap) {
    if !t.has_unary_nodes() {
        return (t.clone(), ContractionMap::identity(t.len()));
    }
    let n = t.len();
    let mut rep = vec![NIL; n];
    for &v in t.pre_slice().iter().rev() {
        let v = v as usize;
        let kids = t.child_slice(v);
        rep[v] = if kids.len() == 1 {
            rep[kids[0] as usize]
        } else {
            v as u32
        };
    }
    let mut new_id = vec![NIL; n];
    let mut to_original = Vec::new();
    for v in 0..n {
        if t.num_children(v) != 1 {
            new_id[v] = to_original.len() as u32;
            to_original.push(v as u32);
        }
    }
    let m = to_original.len();
    let mut parents = vec![None; m];
    let mut colors = vec![None; m];
    let mut order = Vec::with_capacity(m);
    let root = new_id[rep[t.root()] as usize] as usize;
    order.push(root);
    for &v in t.pre_slice() {
        let v = v as usize;
        if new_id[v] == NIL {
            continue;
        }
        let nv = new_id[v] as usize;
        colors[nv] = t.color(v);
        for &c in t.child_slice(v) {
            let b = new_id[rep[c as usize] as usize] as usize;
            parents[b] = Some(nv);
            order.push(b);
        }
    }
    let tree = LeafColoredTree::assemble(&parents, &colors, &order, Some(t.num_colors()))
        .expect("contraction of a valid tree is valid");
    let to_contracted = rep.iter().map(|&r| new_id[r as usize]).collect();
    (
        tree,
        ContractionMap {
            to_contracted,
            to_original,
        },
    )
}

/// The in-order (depth-first, left-to-right) leaf sequence with ranks and
/// per-node leaf intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafOrder {
    leaves: Vec<u32>,
    rank: Vec<u32>,
    lo: Vec<u32>,
    hi: Vec<u32>,
}

impl LeafOrder {
    pub fn leaves(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.leaves.iter().map(|&v| v as NodeId)
    }

    pub fn leaf_at(&self, rank: usize) -> NodeId {
        self.leaves[rank] as NodeId
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    /// In-order rank of leaf `v`; `None` for internal nodes.
    pub fn rank(&self, v: NodeId) -> Option<usize> {
        let r = self.rank[v];
        (r != NIL).then_some(r as usize)
    }

    /// Half-open rank interval `[lo, hi)` holding exactly the leaves below `v`.
    pub fn interval(&self, v: NodeId) -> (usize, usize) {
        (self.lo[v] as usize, self.hi[v] as usize)
    }

    pub(crate) fn leaf_slice(&self) -> &[u32] {
        &self.leaves
    }
}

pub fn leaf_order(t: &LeafColoredTree) -> LeafOrder {
    let n = t.len();
    let mut leaves = Vec::with_capacity(t.num_leaves());
    let mut rank = vec![NIL; n];
    let mut lo = vec![0u32; n];
    for &v in t.pre_slice() {
        let v = v as usize;
        lo[v] = leaves.len() as u32;
        if t.is_leaf(v) {
            rank[v] = leaves.len() as u32;
            leaves.push(v as u32);
        }
    }
    let counts = t.leaf_counts();
    let hi = lo.iter().zip(&counts).map(|(l, c)| l + c).collect();
    LeafOrder {
        leaves,
        rank,
        lo,
        hi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = "0 -1\n1 0\n2 1 0\n";

    #[test]
    fn single_node_tree() {
        let t = LeafColoredTree::parse("0 -1 5").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.num_leaves(), 1);
        assert_eq!(t.num_colors(), 6);
        assert_eq!(t.root(), 0);
        assert_eq!(t.color(0), Some(5));
        let order = leaf_order(&t);
        assert_eq!(order.leaves().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn self_parent_is_a_cycle() {
        let err = LeafColoredTree::parse("0 -1\n1 1 0\n").unwrap_err();
        assert_eq!(err, Error::Cycle(1));
        assert!(err.to_string().contains("cycle detected"));
    }

    #[test]
    fn detached_cycle_is_detected() {
        let err = LeafColoredTree::parse("0 -1 0\n1 2\n2 1\n").unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            LeafColoredTree::parse("0 -1 0\n1 -1 0\n"),
            Err(Error::MultipleRoots(0, 1))
        ));
        assert!(matches!(
            LeafColoredTree::parse("0 -1 3\n1 0 0\n"),
            Err(Error::ColoredInternal(0))
        ));
        assert!(matches!(
            LeafColoredTree::parse("0 -1\n1 0\n"),
            Err(Error::UncoloredLeaf(1))
        ));
        assert!(matches!(
            LeafColoredTree::parse("0 -1\n0 0 1\n"),
            Err(Error::DuplicateNode(0))
        ));
        assert!(matches!(
            LeafColoredTree::parse("0 -1\n5 0 1\n"),
            Err(Error::NodeIdOutOfRange { id: 5, n: 2 })
        ));
        assert!(matches!(LeafColoredTree::parse(""), Err(Error::EmptyTree)));
        assert!(matches!(
            LeafColoredTree::parse("0 x 1"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn color_gaps_are_allowed_and_header_sets_delta() {
        let t = LeafColoredTree::parse("0 -1\n1 0 0\n2 0 4\n").unwrap();
        assert_eq!(t.num_colors(), 5);
        let t = LeafColoredTree::parse("#N=3 DELTA=9\n0 -1\n1 0 0\n2 0 4\n").unwrap();
        assert_eq!(t.num_colors(), 9);
        assert!(LeafColoredTree::parse("#DELTA=2\n0 -1\n1 0 0\n2 0 4\n").is_err());
        assert!(LeafColoredTree::parse("#N=4\n0 -1\n1 0 0\n2 0 4\n").is_err());
    }

    #[test]
    fn child_order_follows_input_order() {
        let t = LeafColoredTree::parse("0 -1\n2 0 1\n1 0 0\n").unwrap();
        assert_eq!(t.children(0).collect::<Vec<_>>(), vec![2, 1]);
        assert_eq!(leaf_order(&t).leaves().collect::<Vec<_>>(), vec![2, 1]);
        let back = LeafColoredTree::parse(&t.to_text()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn chain_contracts_to_its_leaf() {
        let t = LeafColoredTree::parse(CHAIN).unwrap();
        let (c, map) = contract_unary_paths(&t);
        assert_eq!(c.len(), 1);
        assert_eq!(c.color(0), Some(0));
        for v in 0..3 {
            assert_eq!(map.representative(v), 0);
        }
        assert_eq!(map.original(0), 2);
    }

    #[test]
    fn contraction_is_identity_without_unary_nodes() {
        let t = LeafColoredTree::parse("0 -1\n1 0 0\n2 0 1\n").unwrap();
        let (c, map) = contract_unary_paths(&t);
        assert_eq!(c, t);
        assert!(map.is_identity());
        assert_eq!(
            (0..3).map(|v| map.representative(v)).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn contraction_keeps_sibling_order() {
        // 0 -> {1 -> 3 -> {4, 5}, 2}
        let t = LeafColoredTree::parse("0 -1\n1 0\n2 0 1\n3 1\n4 3 0\n5 3 2\n").unwrap();
        let (c, map) = contract_unary_paths(&t);
        assert_eq!(c.len(), 5);
        assert_eq!(map.representative(1), map.representative(3));
        let leaves: Vec<_> = leaf_order(&c)
            .leaves()
            .map(|u| c.color(u).unwrap())
            .collect();
        assert_eq!(leaves, vec![0, 2, 1]);
        assert!(!c.has_unary_nodes());
    }

    #[test]
    fn intervals_are_contiguous() {
        let t = LeafColoredTree::parse("0 -1\n1 0\n2 0 1\n3 1 0\n4 1 2\n").unwrap();
        let order = leaf_order(&t);
        assert_eq!(order.interval(0), (0, 3));
        assert_eq!(order.interval(1), (0, 2));
        assert_eq!(order.interval(2), (2, 3));
        assert_eq!(order.rank(4), Some(1));
        assert_eq!(order.rank(1), None);
    }

    #[test]
    fn node_colored_requires_every_color() {
        assert!(matches!(
            NodeColoredTree::parse("0 -1\n1 0 1\n"),
            Err(Error::UncoloredNode(0))
        ));
        let t = NodeColoredTree::parse("0 -1 0\n1 0 1\n2 0 1\n").unwrap();
        assert_eq!(t.num_colors(), 2);
        assert_eq!(t.color(0), 0);
    }
}
