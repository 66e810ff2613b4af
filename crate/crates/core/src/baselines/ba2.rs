//! Every subtree owns an interval of the in-order leaf sequence, so one range
//! mode query per node answers the whole tree.

use super::{MemoryBudget, RangeModeIndex};
use crate::error::Result;
use crate::mode::ModeTable;
use crate::tree::{leaf_order, LeafColoredTree};

pub fn ba2_all_modes(t: &LeafColoredTree) -> Result<ModeTable> {
    ba2_all_modes_with_budget(t, MemoryBudget::default())
}

/// The guard bounds the block-span scans, `N_L * s` cells for `s = ⌈√N_L⌉`
/// blocks.
pub fn ba2_all_modes_with_budget(t: &LeafColoredTree, budget: MemoryBudget) -> Result<ModeTable> {
    let order = leaf_order(t);
    let nl = order.len();
    let s = (nl as f64).sqrt().ceil() as usize;
    let s = s.clamp(1, nl);
    budget.check(nl as u64 * s as u64)?;

    let a: Vec<usize> = order.leaves().map(|v| t.color(v).expect("leaf")).collect();
    let idx = RangeModeIndex::new(&a, s)?;
    let n = t.len();
    let (mut color, mut freq) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for v in 0..n {
        let (lo, hi) = order.interval(v);
        let (c, f) = idx.query(lo, hi - 1)?;
        color.push(c as u32);
        freq.push(f as u32);
    }
    Ok(ModeTable::from_parts(color, freq))
}
