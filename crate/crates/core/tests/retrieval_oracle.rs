mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subtree_mode::retrieval::DocRetrievalIndex;
use subtree_mode::suffix::DocumentCollection;

fn build(docs: &[Vec<u32>], sigma: u32) -> DocRetrievalIndex {
    let coll = DocumentCollection::new(docs.to_vec(), sigma).unwrap();
    DocRetrievalIndex::with_top_k(&coll, docs.len()).unwrap()
}

fn mined(idx: &DocRetrievalIndex, eps: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    idx.upm_mine(eps, |p| {
        out.extend(p.expand(idx.gst()).map(<[u32]>::to_vec))
    });
    out
}

#[test]
fn retrieval_matches_counting() {
    for seed in 0..150 {
        let (docs, sigma) = random_docs(seed, 5, 60, 3);
        let idx = build(&docs, sigma);
        for p in all_substrings(&docs) {
            let counts = per_doc_counts(&docs, &p);
            assert_eq!(idx.dr1(&p), Some(naive_top1(&counts)), "seed {seed} {p:?}");
            let (d, f) = idx.dr_bottom1(&p);
            assert_eq!(f, naive_bottom1(&counts).1, "seed {seed} {p:?}");
            assert_eq!(counts[d], f, "witness attains the minimum");
            let mut ranked: Vec<(usize, usize)> = counts
                .iter()
                .copied()
                .enumerate()
                .filter(|&(_, c)| c > 0)
                .collect();
            ranked.sort_by_key(|&(d, c)| (std::cmp::Reverse(c), d));
            for k in 1..=docs.len() {
                let want: Vec<_> = ranked.iter().copied().take(k).collect();
                assert_eq!(idx.dr_topk(&p, k).unwrap(), want, "seed {seed} {p:?} k={k}");
            }
        }
        let absent = vec![sigma.saturating_sub(1); 61];
        assert_eq!(idx.dr1(&absent), None);
        assert_eq!(idx.dr_bottom1(&absent), (0, 0));
        assert!(idx.dr_topk(&absent, 1).unwrap().is_empty());
    }
}

#[test]
fn mining_matches_enumeration() {
    for seed in 0..200 {
        let (docs, sigma) = random_docs(1000 + seed, 4, 40, 3);
        let idx = build(&docs, sigma);
        for eps in 0..=2 {
            assert_eq!(
                mined(&idx, eps),
                naive_uniform(&docs, eps),
                "seed {seed} eps {eps}"
            );
        }
    }
}

#[test]
fn mining_is_monotone_in_epsilon() {
    for seed in 0..50 {
        let (docs, sigma) = random_docs(2000 + seed, 4, 80, 2);
        let idx = build(&docs, sigma);
        let mut prev = mined(&idx, 0);
        for eps in 1..4 {
            let cur = mined(&idx, eps);
            assert!(
                prev.iter().all(|p| cur.binary_search(p).is_ok()),
                "seed {seed}"
            );
            prev = cur;
        }
    }
}

#[test]
fn compact_records_respect_document_boundaries() {
    for seed in 0..50 {
        let (docs, sigma) = random_docs(3000 + seed, 4, 80, 3);
        let idx = build(&docs, sigma);
        let gst = idx.gst();
        let mut nodes = Vec::new();
        let n = idx.upm_mine(2, |p| {
            assert!(p.lo >= 1 && p.lo <= p.hi && p.hi <= gst.clean_depth(p.node));
            assert!(p.f_max - p.f_min <= 2);
            nodes.push(p.node);
        });
        assert_eq!(n, nodes.len());
        nodes.sort_unstable();
        nodes.dedup();
        assert_eq!(n, nodes.len(), "each node appears at most once");
    }
}

#[test]
fn cqs_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..200 {
        let (docs, sigma) = random_docs(4000 + seed, 4, 60, 3);
        let idx = build(&docs, sigma);
        for _ in 0..10 {
            let len = rng.gen_range(1..=20);
            let p: Vec<u32> = (0..len).map(|_| rng.gen_range(0..sigma)).collect();
            for q in 1..=len.min(6) {
                for eps in 0..=2 {
                    assert_eq!(
                        idx.cqs(&p, q, eps).unwrap(),
                        naive_cqs(&docs, &p, q, eps),
                        "seed {seed} {p:?} q={q} eps={eps}"
                    );
                }
            }
        }
    }
}

#[test]
fn qgram_walk_finds_exactly_the_occurring_windows() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..100 {
        let (docs, sigma) = random_docs(5000 + seed, 3, 50, 2);
        let idx = build(&docs, sigma);
        let p: Vec<u32> = (0..30).map(|_| rng.gen_range(0..sigma)).collect();
        for q in 1..=8 {
            let mut seen = Vec::new();
            idx.for_each_qgram_locus(&p, q, |i, v| {
                assert_eq!(idx.gst().spell(&p[i..i + q]).map(|l| l.node), Some(v));
                seen.push(i);
            });
            let want: Vec<usize> = (0..=p.len() - q)
                .filter(|&i| docs.iter().any(|d| count_occ(d, &p[i..i + q]) > 0))
                .collect();
            assert_eq!(seen, want, "seed {seed} q={q}");
        }
    }
}

#[test]
fn permuting_documents_permutes_answers() {
    for seed in 0..30 {
        let (docs, sigma) = random_docs(6000 + seed, 4, 60, 3);
        let coll = DocumentCollection::new(docs.clone(), sigma).unwrap();
        let order: Vec<usize> = (0..docs.len()).rev().collect();
        let perm = coll.permuted(&order);
        let a = DocRetrievalIndex::new(&coll).unwrap();
        let b = DocRetrievalIndex::new(&perm).unwrap();
        for p in all_substrings(&docs) {
            let (da, fa) = a.dr1(&p).unwrap();
            let (db, fb) = b.dr1(&p).unwrap();
            assert_eq!(fa, fb);
            assert_eq!(count_occ(perm.doc(db), &p), fb);
            assert_eq!(count_occ(coll.doc(da), &p), fa);
            assert_eq!(a.dr_bottom1(&p).1, b.dr_bottom1(&p).1);
        }
        for eps in 0..=1 {
            let (mut x, mut y) = (Vec::new(), Vec::new());
            a.upm_mine(eps, |u| x.extend(u.expand(a.gst()).map(<[u32]>::to_vec)));
            b.upm_mine(eps, |u| y.extend(u.expand(b.gst()).map(<[u32]>::to_vec)));
            assert_eq!(x, y);
        }
    }
}
