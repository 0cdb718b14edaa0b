mod common;

use std::collections::{BTreeMap, HashSet};

use tanglegram::construct::fig4_tanglegram;
use tanglegram::extremal::{bound_check, enumerate_tanglegrams, max_crt, orbit_representatives};
use tanglegram::tree::Tree;
use tanglegram::Tanglegram;

#[test]
fn class_counts_match_dedup_of_all_labelled() {
    for n in 1..=5 {
        let forms: HashSet<Vec<u8>> = common::all_labelled(n).iter().map(Tanglegram::canonical_form).collect();
        let reps: Vec<Tanglegram> = enumerate_tanglegrams(n).unwrap().collect();
        assert_eq!(reps.len(), forms.len(), "n = {n}");
        let rep_forms: HashSet<Vec<u8>> = reps.iter().map(Tanglegram::canonical_form).collect();
        assert_eq!(rep_forms, forms);
    }
}

#[test]
fn class_counts_match_brute_keys() {
    for n in 1..=4 {
        let keys: HashSet<_> = common::all_labelled(n).iter().map(common::brute_iso_key).collect();
        assert_eq!(enumerate_tanglegrams(n).unwrap().count(), keys.len(), "n = {n}");
    }
}

#[test]
fn representatives_are_orbit_minimal() {
    for n in 2..=6 {
        for t in enumerate_tanglegrams(n).unwrap().take(300) {
            let reps = orbit_representatives(t.left(), t.right());
            assert!(reps.contains(&t.sigma().to_vec()));
            for g in t.left().automorphisms() {
                for h in t.right().automorphisms() {
                    let mut tau = vec![0; n];
                    for i in 0..n {
                        tau[g[i]] = h[t.sigma()[i]];
                    }
                    assert!(t.sigma() <= &tau[..]);
                }
            }
        }
    }
}

#[test]
fn histogram_independent_of_jobs() {
    for n in 1..=6 {
        let a = max_crt(n, 1).unwrap();
        let b = max_crt(n, 4).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.histogram.values().sum::<u64>(), a.tanglegram_count);
    }
}

#[test]
fn maxima_are_monotone_and_match_naive() {
    let mut prev = 0;
    for n in 1..=5 {
        let r = max_crt(n, 2).unwrap();
        let mut hist = BTreeMap::new();
        for t in enumerate_tanglegrams(n).unwrap() {
            *hist.entry(common::naive_crt(&t)).or_insert(0u64) += 1;
        }
        assert_eq!(r.histogram, hist);
        assert!(r.max_value >= prev);
        prev = r.max_value;
        let v = bound_check(&r);
        assert_eq!(v.below_half, n > 1);
    }
}

#[test]
fn fig4_form_is_in_the_size_8_enumeration() {
    // the shape pair of fig4 alone: its class must be one of the representatives
    let f = fig4_tanglegram();
    let t = f.tanglegram();
    let reps = orbit_representatives(t.left(), t.right());
    let form = t.canonical_form();
    let hit = reps
        .into_iter()
        .map(|s| Tanglegram::new(Tree::complete(3), Tree::complete(3), s).unwrap())
        .filter(|r| r.canonical_form() == form)
        .count();
    assert_eq!(hit, 1);
}
