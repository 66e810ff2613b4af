mod common;

use common::*;
use proptest::prelude::*;
use subtree_mode::suffix::{lcp_array, suffix_array, DocumentCollection, GeneralizedSuffixTree};

fn gst(docs: &[Vec<u32>], sigma: u32) -> GeneralizedSuffixTree {
    GeneralizedSuffixTree::new(&DocumentCollection::new(docs.to_vec(), sigma).unwrap()).unwrap()
}

fn check_structure(docs: &[Vec<u32>], sigma: u32) {
    let g = gst(docs, sigma);
    let text = g.text().to_vec();
    let n = text.len();
    assert_eq!(n, docs.iter().map(|d| d.len() + 1).sum::<usize>());
    assert_eq!(g.tree().num_leaves(), n);

    for p in 0..n {
        let v = g.leaf_of_suffix(p);
        assert!(g.is_leaf(v));
        assert_eq!(g.suffix_start(v), Some(p));
        assert_eq!(g.label(v), &text[p..]);
        assert_eq!(g.tree().color(v), Some(g.doc_of(p)));
    }

    let root = g.root();
    let counts = g.tree().leaf_counts();
    assert_eq!(g.sd(root), 0);
    for v in 0..g.len() {
        if let Some(u) = g.parent(v) {
            assert!(g.sd(u) < g.sd(v));
            assert_eq!(&g.label(v)[..g.sd(u)], g.label(u));
            let (a, b) = g.edge(v);
            assert_eq!(b - a, g.sd(v) - g.sd(u));
            assert_eq!(g.child(u, text[a]), Some(v));
        }
        if !g.is_leaf(v) {
            let kids: Vec<_> = g.children(v).collect();
            assert!(v == root || kids.len() >= 2, "internal nodes branch");
            let first: Vec<u32> = kids.iter().map(|&c| g.label(c)[g.sd(v)]).collect();
            assert!(
                first.windows(2).all(|w| w[0] < w[1]),
                "children sorted by letter"
            );
            let s = g.suffix_link(v).unwrap();
            if v == root {
                assert_eq!(s, root);
            } else {
                assert_eq!(g.label(s), &g.label(v)[1..], "suffix link of {v}");
            }
            let clean = g.clean_depth(v);
            assert!(g.label(v)[..clean].iter().all(|&x| x < sigma));
        }
        let (lo, hi) = g.leaf_interval(v);
        assert_eq!(hi - lo, counts[v] as usize);
    }

    let mut pats = all_substrings(docs);
    pats.truncate(200);
    for p in pats {
        let loc = g.spell(&p).expect("substring occurs");
        assert!(g.label(loc.node).starts_with(&p));
        let below = g.leaf_interval(loc.node);
        let total: usize = docs.iter().map(|d| count_occ(d, &p)).sum();
        assert_eq!(below.1 - below.0, total);
    }
}

#[test]
fn random_collections() {
    for seed in 0..300 {
        let (docs, sigma) = random_docs(seed, 5, 80, 4);
        check_structure(&docs, sigma);
    }
}

#[test]
fn degenerate_collections() {
    check_structure(&[vec![]], 1);
    check_structure(&[vec![], vec![]], 2);
    check_structure(&[vec![0; 20]], 1);
    check_structure(&[vec![0; 7], vec![0; 3], vec![]], 1);
}

#[test]
fn delimiters_are_never_matched() {
    let g = gst(&[vec![0, 1], vec![1, 0]], 2);
    assert!(g.spell(&[1, 2]).is_none());
    assert!(g.spell(&[2]).is_none());
    assert_eq!(g.spell_prefix(&[0, 1, 2, 0]).matched, 2);
}

proptest! {
    #[test]
    fn suffix_array_sorts_suffixes(text in proptest::collection::vec(0u32..4, 1..60)) {
        let mut t = text.clone();
        t.push(4);
        let sa = suffix_array(&t, 5);
        let mut naive: Vec<u32> = (0..t.len() as u32).collect();
        naive.sort_by(|&a, &b| t[a as usize..].cmp(&t[b as usize..]));
        prop_assert_eq!(&sa, &naive);
        let lcp = lcp_array(&t, &sa);
        for i in 1..sa.len() {
            let (a, b) = (&t[sa[i - 1] as usize..], &t[sa[i] as usize..]);
            let l = a.iter().zip(b).take_while(|(x, y)| x == y).count();
            prop_assert_eq!(lcp[i] as usize, l);
        }
    }
}
