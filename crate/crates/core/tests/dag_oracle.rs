mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subtree_mode::baselines::brute_all_modes;
use subtree_mode::dag::{bmm_via_dm, bool_product, BmmInstance, BoolMatrix, SinkColoredDag};

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, density: f64) -> BoolMatrix {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_bool(density)).collect())
        .collect()
}

#[test]
fn worked_instance() {
    let a = vec![vec![true, false], vec![false, true]];
    let b = vec![vec![false, true], vec![true, false]];
    let inst = BmmInstance::new(&a, &b).unwrap();
    assert_eq!(inst.dag().dm_query(inst.y(0, 1)), (1, 2));
    assert_eq!(
        bmm_via_dm(&a, &b).unwrap(),
        vec![vec![false, true], vec![true, false]]
    );
}

#[test]
fn random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(1..=16);
        let density = rng.gen_range(0.0..0.6);
        let a = random_matrix(&mut rng, n, density);
        let b = random_matrix(&mut rng, n, density);
        assert_eq!(bmm_via_dm(&a, &b).unwrap(), bool_product(&a, &b));
    }
}

#[test]
fn gadget_is_layered() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_matrix(&mut rng, 6, 0.3);
    let b = random_matrix(&mut rng, 6, 0.3);
    let inst = BmmInstance::new(&a, &b).unwrap();
    let dag = inst.dag();
    for v in 0..dag.len() {
        for w in dag.successors(v) {
            assert_eq!(inst.layer(w), inst.layer(v) + 1);
        }
        assert_eq!(dag.color(v).is_some(), inst.layer(v) == 2);
    }
    let pos: Vec<usize> = {
        let mut pos = vec![0; dag.len()];
        for (i, v) in dag.topological_order().enumerate() {
            pos[v] = i;
        }
        pos
    };
    for v in 0..dag.len() {
        assert!(dag.successors(v).all(|w| pos[v] < pos[w]));
    }
}

#[test]
fn trees_agree_with_subtree_modes() {
    for seed in 0..200 {
        let t = random_instance(seed, 60, 5);
        let dag = SinkColoredDag::from_tree(&t);
        let want = brute_all_modes(&t);
        for v in 0..t.len() {
            assert_eq!(dag.dm_query(v), want.get(v), "seed {seed} node {v}");
        }
    }
}

#[test]
fn shared_sinks_count_once() {
    // 0 -> {1, 2}, both -> 3 (color 0); 2 -> 4 (color 1), 2 -> 5 (color 1)
    let edges = [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (2, 5)];
    let colors = [None, None, None, Some(0), Some(1), Some(1)];
    let dag = SinkColoredDag::new(6, &edges, &colors).unwrap();
    assert_eq!(dag.dm_query(0), (1, 2));
    assert_eq!(dag.dm_query(1), (0, 1));
    let mut out = Vec::new();
    dag.write_edges(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(
        text.lines().filter(|l| !l.starts_with('#')).count(),
        edges.len()
    );
}
