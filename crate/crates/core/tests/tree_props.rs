mod common;

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use tanglegram::rng;
use tanglegram::tree::{enumerate_shapes, h_exact, h_formula, random_plane_expr, Tree};

fn shape_count_recurrence(n: usize) -> u64 {
    let mut s = vec![0u64; n + 1];
    s[1] = 1;
    for m in 2..=n {
        let mut total = 0;
        for k in 1..m {
            if 2 * k < m {
                total += s[k] * s[m - k];
            }
        }
        if m % 2 == 0 {
            let h = s[m / 2];
            total += h * (h + 1) / 2;
        }
        s[m] = total;
    }
    s[n]
}

#[test]
fn shape_counts_match_dedup_and_recurrence() {
    for n in 1..=8 {
        let dedup: HashSet<String> = common::plane_trees(n)
            .iter()
            .map(|e| Tree::from_expr(e).unwrap().0.shape_key())
            .collect();
        let listed = enumerate_shapes(n).unwrap().count();
        assert_eq!(listed, dedup.len(), "n = {n}");
        assert_eq!(listed as u64, shape_count_recurrence(n), "n = {n}");
    }
    assert_eq!(shape_count_recurrence(8), 23);
    for n in 9..=14 {
        assert_eq!(enumerate_shapes(n).unwrap().count() as u64, shape_count_recurrence(n));
    }
}

#[test]
fn shapes_are_canonical_and_distinct() {
    for n in 1..=10 {
        let trees: Vec<Tree> = enumerate_shapes(n).unwrap().collect();
        let keys: BTreeSet<String> = trees.iter().map(|t| t.shape_key()).collect();
        assert_eq!(keys.len(), trees.len());
        for t in &trees {
            // the listed tree is written in canonical order: serialising it
            // with its labels gives the shape key back
            let written: String = t.to_string().chars().map(|c| if c.is_ascii_digit() { '*' } else { c }).collect();
            let collapsed = collapse_digits(&written);
            assert_eq!(collapsed, t.shape_key());
        }
    }
}

fn collapse_digits(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        if c == '*' && out.ends_with('*') {
            continue;
        }
        out.push(c);
    }
    out
}

#[test]
fn h_formula_holds_exhaustively() {
    assert_eq!(h_exact(1).unwrap().0, 0);
    for n in 2..=12 {
        let (h, realizer) = h_exact(n).unwrap();
        assert_eq!(h, h_formula(n).unwrap(), "n = {n}");
        assert_eq!(realizer.special_report().psi_total, h);
        for t in enumerate_shapes(n).unwrap() {
            let rep = t.special_report();
            assert!(rep.special.len() > n / 4);
            assert_eq!(rep.special.len(), rep.psi_total);
        }
    }
}

#[test]
fn special_set_definition() {
    for n in 1..=9 {
        for t in enumerate_shapes(n).unwrap() {
            let rep = t.special_report();
            for v in 0..t.vertex_count() {
                let in_a = t.has_leaf_child(v);
                let even = t.leaf_descendant_count(v).unwrap() % 2 == 0;
                assert_eq!(rep.psi[v] == 1, in_a && even);
                assert_eq!(rep.special.contains(&v), in_a && even);
            }
        }
    }
}

fn is_group(perms: &[Vec<usize>]) -> bool {
    let set: HashSet<&Vec<usize>> = perms.iter().collect();
    for p in perms {
        let mut inv = vec![0; p.len()];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        if !set.contains(&inv) {
            return false;
        }
        for q in perms {
            let comp: Vec<usize> = (0..p.len()).map(|i| p[q[i]]).collect();
            if !set.contains(&comp) {
                return false;
            }
        }
    }
    true
}

#[test]
fn automorphisms_form_groups_of_expected_size() {
    for n in 1..=8 {
        for t in enumerate_shapes(n).unwrap() {
            let auts = t.automorphisms();
            let keys = t.shape_keys();
            let k = t
                .internal_vertices()
                .filter(|&v| {
                    let [a, b] = t.children(v).unwrap();
                    keys[a] == keys[b]
                })
                .count();
            assert_eq!(auts.len(), 1 << k);
            let distinct: HashSet<&Vec<usize>> = auts.iter().collect();
            assert_eq!(distinct.len(), auts.len());
            assert!(is_group(&auts));
            // every automorphism preserves the leaf-pair lca depths
            for p in &auts {
                for a in 0..n {
                    for b in 0..n {
                        let x = t.lca(a, b).unwrap();
                        let y = t.lca(p[a], p[b]).unwrap();
                        assert_eq!(t.depth(x), t.depth(y));
                        assert_eq!(keys[x], keys[y]);
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn random_trees_appear_among_shapes(n in 1usize..=11, seed in any::<u64>()) {
        let expr = random_plane_expr(n, &mut rng::from_seed(seed));
        let (t, _) = Tree::from_expr(&expr).unwrap();
        let keys: HashSet<String> = enumerate_shapes(n).unwrap().map(|s| s.shape_key()).collect();
        prop_assert!(keys.contains(&t.shape_key()));
    }

    #[test]
    fn lca_is_symmetric_common_ancestor(n in 1usize..40, seed in any::<u64>()) {
        let (t, _) = Tree::from_expr(&random_plane_expr(n, &mut rng::from_seed(seed))).unwrap();
        for a in 0..n {
            for b in 0..n {
                let x = t.lca(a, b).unwrap();
                prop_assert_eq!(x, t.lca(b, a).unwrap());
                prop_assert!(t.is_ancestor(x, t.leaf(a)));
                prop_assert!(t.is_ancestor(x, t.leaf(b)));
                // no child of x is a common ancestor
                if let Some(ch) = t.children(x) {
                    for c in ch {
                        prop_assert!(!(t.is_ancestor(c, t.leaf(a)) && t.is_ancestor(c, t.leaf(b))));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_write_round_trip(n in 1usize..30, seed in any::<u64>()) {
        let expr = random_plane_expr(n, &mut rng::from_seed(seed));
        let text = expr.to_string();
        let (t, o) = tanglegram::tree::parse_tree(&text).unwrap();
        prop_assert_eq!(t.write(&o), text);
        prop_assert_eq!(t.leaf_descendant_count(t.root()).unwrap(), n);
    }
}
