mod common;

use common::random_instance;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subtree_mode::baselines::{
    ba1_all_modes, ba2_all_modes, ba3_all_modes, brute_histograms, HistogramTable,
};
use subtree_mode::generate::random_node_colored_tree;
use subtree_mode::mode::{node_colored_modes, ModeEngine, ModeTable};
use subtree_mode::tree::contract_unary_paths;
use subtree_mode::LeafColoredTree;

fn assert_modes(t: &LeafColoredTree, h: &HistogramTable, m: &ModeTable, name: &str) {
    for v in 0..t.len() {
        let (c, f) = m.get(v);
        assert_eq!(f, h.max_freq(v), "{name}: f_max at node {v}");
        assert_eq!(h.count(v, c), f, "{name}: witness at node {v}");
    }
}

fn check_all(t: &LeafColoredTree) {
    let h = brute_histograms(t);
    let e = ModeEngine::new(t);
    let m = e.modes();
    assert_modes(t, &h, &m, "scm");
    // Smallest color among maximizers.
    for v in 0..t.len() {
        let first = h
            .row(v)
            .iter()
            .position(|&x| x as usize == h.max_freq(v))
            .unwrap();
        assert_eq!(m.color(v), first);
    }
    assert_modes(t, &h, &ba1_all_modes(t).unwrap(), "ba1");
    assert_modes(t, &h, &ba2_all_modes(t).unwrap(), "ba2");
    assert_modes(t, &h, &ba3_all_modes(t), "ba3");

    let a = e.anti_modes();
    for v in 0..t.len() {
        let (c, f) = a.get(v);
        assert_eq!(f, h.min_freq(v), "f_min at node {v}");
        assert_eq!(h.count(v, c), f, "anti-mode witness at node {v}");
    }

    let delta = t.num_colors();
    for k in [1, 2, delta] {
        let top = e.top_k(k).unwrap();
        for v in 0..t.len() {
            let list = top.list(v);
            let mut expect: Vec<usize> = h.sorted_desc(v).into_iter().filter(|&f| f > 0).collect();
            expect.truncate(k);
            let freqs: Vec<usize> = list.iter().map(|&(_, f)| f).collect();
            assert_eq!(freqs, expect, "top-{k} at node {v}");
            for &(c, f) in &list {
                assert_eq!(h.count(v, c), f);
            }
            let mut colors: Vec<_> = list.iter().map(|&(c, _)| c).collect();
            colors.dedup();
            assert_eq!(colors.len(), list.len());
            if k == 1 {
                assert_eq!(list[0], m.get(v));
            }
        }
    }
}

#[test]
fn seeded_random_trees() {
    for seed in 0..300 {
        check_all(&random_instance(seed, 200, 8));
    }
}

#[test]
fn invariants_on_random_trees() {
    for seed in 1000..1100 {
        let t = random_instance(seed, 150, 6);
        let e = ModeEngine::new(&t);
        let (m, a) = (e.modes(), e.anti_modes());
        let counts = t.leaf_counts();
        for v in 0..t.len() {
            assert!(a.freq(v) <= m.freq(v));
            assert!(m.freq(v) * t.num_colors() >= counts[v] as usize);
            if let Some(p) = t.parent(v) {
                assert!(m.freq(p) >= m.freq(v));
                assert!(a.freq(p) >= a.freq(v));
            }
        }
    }
}

#[test]
fn dissolved_nodes_share_representative_answers() {
    for seed in 2000..2100 {
        let t = random_instance(seed, 120, 5);
        let (_, map) = contract_unary_paths(&t);
        let h = brute_histograms(&t);
        let m = ModeEngine::new(&t).modes();
        for v in 0..t.len() {
            let r = map.original(map.representative(v));
            assert_eq!(h.row(v), h.row(r));
            assert_eq!(m.get(v), m.get(r));
        }
    }
}

#[test]
fn node_colored_against_full_histograms() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..200 {
        let n = rng.gen_range(1..=80);
        let delta = rng.gen_range(1..=6);
        let arity = rng.gen_range(1..=4);
        let t = random_node_colored_tree(&mut rng, n, delta, arity);
        let m = node_colored_modes(&t);
        for v in 0..n {
            let mut hist = vec![0usize; delta];
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                hist[t.color(x)] += 1;
                stack.extend(t.children(x));
            }
            let max = *hist.iter().max().unwrap();
            assert_eq!(m.freq(v), max);
            assert_eq!(hist[m.color(v)], max);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scm_matches_oracle(seed in any::<u64>(), n in 1usize..120, delta in 1usize..10, arity in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = subtree_mode::generate::random_tree(&mut rng, n, delta, arity);
        check_all(&t);
    }
}

#[test]
fn brute_lists_match_engine() {
    for seed in 0..200 {
        let t = random_instance(seed, 80, 6);
        let engine = subtree_mode::mode::ModeEngine::new(&t);
        for k in [1, 3, t.num_colors()] {
            assert_eq!(
                subtree_mode::baselines::brute_top_k(&t, k).unwrap(),
                engine.top_k(k).unwrap(),
                "seed {seed} k={k}"
            );
        }
        assert_eq!(
            subtree_mode::baselines::brute_anti_modes(&t).freqs(),
            engine.anti_modes().freqs(),
            "seed {seed}"
        );
    }
}
