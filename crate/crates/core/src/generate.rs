//! Seeded random instance generators for tests and benchmarks.

use rand::Rng;

use crate::tree::{LeafColoredTree, NodeColoredTree, NodeId};

/// Parent array of a random tree on `n` nodes rooted at 0. Each new node picks
/// its parent uniformly among earlier nodes that still have fewer than
/// `max_arity` children.
pub fn random_parents<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_arity: usize,
) -> Vec<Option<NodeId>> {
    assert!(n >= 1, "a tree needs at least one node");
    assert!(max_arity >= 1, "max_arity must be positive");
    let mut parents = Vec::with_capacity(n);
    parents.push(None);
    let mut open: Vec<NodeId> = vec![0];
    let mut arity = vec![0usize; n];
    for v in 1..n {
        let slot = rng.gen_range(0..open.len());
        let p = open[slot];
        parents.push(Some(p));
        arity[p] += 1;
        if arity[p] == max_arity {
            open.swap_remove(slot);
        }
        open.push(v);
    }
    parents
}

/// Random leaf-colored tree on `n` nodes with leaf colors uniform in
/// `[0, delta)`. The tree declares `delta` colors even if some go unused.
pub fn random_tree<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    delta: usize,
    max_arity: usize,
) -> LeafColoredTree {
    assert!(delta >= 1, "delta must be positive");
    let parents = random_parents(rng, n, max_arity);
    let mut internal = vec![false; n];
    for p in parents.iter().flatten() {
        internal[*p] = true;
    }
    let colors: Vec<_> = internal
        .iter()
        .map(|&i| (!i).then(|| rng.gen_range(0..delta)))
        .collect();
    LeafColoredTree::from_parents(&parents, &colors, Some(delta)).expect("generated tree is valid")
}

/// Random node-colored tree: every node gets a uniform color in `[0, delta)`.
pub fn random_node_colored_tree<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    delta: usize,
    max_arity: usize,
) -> NodeColoredTree {
    assert!(delta >= 1, "delta must be positive");
    let parents = random_parents(rng, n, max_arity);
    let colors: Vec<_> = (0..n).map(|_| Some(rng.gen_range(0..delta))).collect();
    NodeColoredTree::from_parents(&parents, &colors, Some(delta)).expect("generated tree is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_arity_and_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_tree(&mut rng, 500, 5, 3);
        assert_eq!(t.len(), 500);
        assert!((0..t.len()).all(|v| t.num_children(v) <= 3));
        assert_eq!(t.num_colors(), 5);
    }

    #[test]
    fn same_seed_same_tree() {
        let a = random_tree(&mut ChaCha8Rng::seed_from_u64(9), 200, 4, 4);
        let b = random_tree(&mut ChaCha8Rng::seed_from_u64(9), 200, 4, 4);
        assert_eq!(a, b);
    }
}
