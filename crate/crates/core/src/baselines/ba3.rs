//! Tournament over single-color trees, O(N log Δ).
//!
//! Colors start as singleton groups, each with its virtual tree annotated by
//! per-node leaf counts. Each round merges adjacent groups: the two in-order
//! leaf lists are merged, the virtual tree over the union is rebuilt with the
//! stack construction, and each node of the merged tree takes the best
//! (frequency, color) of the group nodes mapped onto the same node of `T` and
//! of its own children. Every node of either input tree reappears in the
//! merged tree, so no annotation is lost. After the last round a bottom-up
//! pass over `T` fills in the nodes that are not in the final virtual tree.

use crate::forest::{build_leaf_lists, VirtualTreeBuilder};
use crate::lca::LcaIndex;
use crate::mode::ModeTable;
use crate::tree::{leaf_order, LeafColoredTree, NIL};

struct Group {
    leaves: Vec<u32>,
    phi: Vec<u32>,
    best: Vec<u64>,
}

#[inline]
fn key(freq: u32, color: u32) -> u64 {
    ((freq as u64) << 32) | (u32::MAX - color) as u64
}

struct Ctx<'a> {
    lca: &'a LcaIndex,
    depth: &'a [u32],
    rank: Vec<u32>,
    builder: VirtualTreeBuilder,
    slot: Vec<u64>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl Ctx<'_> {
    fn build(&mut self, leaves: &[u32]) {
        let (lca, depth) = (self.lca, self.depth);
        self.builder.build(
            leaves.len(),
            |i| (leaves[i], depth[leaves[i] as usize]),
            |i| {
                let w = lca.lca(leaves[i - 1] as usize, leaves[i] as usize);
                (w as u32, depth[w])
            },
        );
    }

    fn singleton(&mut self, color: u32, leaves: &[u32]) -> Group {
        self.build(leaves);
        let b = &self.builder;
        let mut count = vec![0u32; b.len()];
        for k in 0..b.len() {
            if b.leaf[k] != NIL {
                count[k] += 1;
            }
            if b.parent[k] != NIL {
                count[b.parent[k] as usize] += count[k];
            }
        }
        Group {
            leaves: leaves.to_vec(),
            phi: b.tag.clone(),
            best: count.iter().map(|&f| key(f, color)).collect(),
        }
    }

    fn merge(&mut self, a: Group, b: Group) -> Group {
        let mut leaves = Vec::with_capacity(a.leaves.len() + b.leaves.len());
        let (mut i, mut j) = (0, 0);
        while i < a.leaves.len() && j < b.leaves.len() {
            if self.rank[a.leaves[i] as usize] < self.rank[b.leaves[j] as usize] {
                leaves.push(a.leaves[i]);
                i += 1;
            } else {
                leaves.push(b.leaves[j]);
                j += 1;
            }
        }
        leaves.extend_from_slice(&a.leaves[i..]);
        leaves.extend_from_slice(&b.leaves[j..]);

        self.epoch += 1;
        for g in [&a, &b] {
            for (&v, &k) in g.phi.iter().zip(&g.best) {
                let v = v as usize;
                if self.stamp[v] != self.epoch {
                    self.stamp[v] = self.epoch;
                    self.slot[v] = k;
                } else if self.slot[v] < k {
                    self.slot[v] = k;
                }
            }
        }
        drop((a, b));

        self.build(&leaves);
        let bld = &self.builder;
        let mut best = vec![0u64; bld.len()];
        for k in 0..bld.len() {
            let v = bld.tag[k] as usize;
            if self.stamp[v] == self.epoch && best[k] < self.slot[v] {
                best[k] = self.slot[v];
            }
            let p = bld.parent[k];
            if p != NIL && best[p as usize] < best[k] {
                best[p as usize] = best[k];
            }
        }
        Group {
            leaves,
            phi: bld.tag.clone(),
            best,
        }
    }
}

pub fn ba3_all_modes(t: &LeafColoredTree) -> ModeTable {
    let n = t.len();
    let lca = LcaIndex::new(t);
    let order = leaf_order(t);
    let lists = build_leaf_lists(t);
    let mut ctx = Ctx {
        lca: &lca,
        depth: lca.depth_raw(),
        rank: (0..n)
            .map(|v| order.rank(v).map_or(NIL, |r| r as u32))
            .collect(),
        builder: VirtualTreeBuilder::new(),
        slot: vec![0; n],
        stamp: vec![0; n],
        epoch: 0,
    };

    let mut groups: Vec<Group> = (0..lists.num_colors())
        .filter(|&c| !lists.slice(c).is_empty())
        .map(|c| ctx.singleton(c as u32, lists.slice(c)))
        .collect();
    while groups.len() > 1 {
        let mut next = Vec::with_capacity(groups.len().div_ceil(2));
        let mut it = groups.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(ctx.merge(a, b)),
                None => next.push(a),
            }
        }
        groups = next;
    }
    let last = groups.pop().expect("a tree has at least one leaf");

    let mut best = vec![0u64; n];
    for (&v, &k) in last.phi.iter().zip(&last.best) {
        best[v as usize] = k;
    }
    let parent = t.parent_raw();
    for &v in t.pre_slice().iter().rev() {
        let p = parent[v as usize];
        if p != NIL && best[p as usize] < best[v as usize] {
            best[p as usize] = best[v as usize];
        }
    }
    let (freq, color) = best
        .iter()
        .map(|&k| ((k >> 32) as u32, u32::MAX - k as u32))
        .unzip();
    ModeTable::from_parts(color, freq)
}
