//! Bottom-up accumulation of a length-Δ histogram per node.
//!
//! A finished node hands its array to its parent when the parent has none yet
//! and is otherwise added into the parent's array and recycled, so the number
//! of live arrays stays near the number of partially finished nodes.

use super::MemoryBudget;
use crate::error::Result;
use crate::mode::ModeTable;
use crate::tree::{LeafColoredTree, NIL};

pub fn ba1_all_modes(t: &LeafColoredTree) -> Result<ModeTable> {
    ba1_all_modes_with_budget(t, MemoryBudget::default())
}

pub fn ba1_all_modes_with_budget(t: &LeafColoredTree, budget: MemoryBudget) -> Result<ModeTable> {
    let n = t.len();
    let delta = t.num_colors();
    budget.check(n as u64 * delta as u64)?;

    let parent = t.parent_raw();
    let colors = t.color_raw();
    let mut hist: Vec<Option<Vec<u32>>> = vec![None; n];
    let mut pool: Vec<Vec<u32>> = Vec::new();
    let mut color = vec![0u32; n];
    let mut freq = vec![0u32; n];
    for &v in t.pre_slice().iter().rev() {
        let v = v as usize;
        let a = hist[v].take().unwrap_or_else(|| {
            let mut a = pool.pop().unwrap_or_else(|| vec![0; delta]);
            a[colors[v] as usize] += 1;
            a
        });
        let mut best = 0;
        for c in 1..delta {
            if a[c] > a[best] {
                best = c;
            }
        }
        color[v] = best as u32;
        freq[v] = a[best];

        let p = parent[v];
        if p == NIL {
            continue;
        }
        match &mut hist[p as usize] {
            slot @ None => *slot = Some(a),
            Some(pa) => {
                for (x, y) in pa.iter_mut().zip(&a) {
                    *x += y;
                }
                let mut a = a;
                a.fill(0);
                pool.push(a);
            }
        }
    }
    Ok(ModeTable::from_parts(color, freq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn one_leaf() {
        let t = LeafColoredTree::parse("0 -1 3").unwrap();
        assert_eq!(ba1_all_modes(&t).unwrap().get(0), (3, 1));
    }

    #[test]
    fn guard_refuses_large_tables() {
        let t = LeafColoredTree::parse("0 -1\n1 0 0\n2 0 9\n").unwrap();
        let err = ba1_all_modes_with_budget(&t, MemoryBudget::new(29)).unwrap_err();
        assert_eq!(
            err,
            Error::MemoryGuard {
                required: 30,
                budget: 29
            }
        );
        assert!(ba1_all_modes_with_budget(&t, MemoryBudget::new(30)).is_ok());
    }
}
