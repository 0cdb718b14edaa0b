#![allow(dead_code)]

use tanglegram::tree::{Expr, Orientation, Tree};
use tanglegram::{Layout, Side, Tanglegram};

/// Crossings by checking every pair of edges.
pub fn quadratic_crossings(d: &Layout) -> u64 {
    let lp = d.leaf_positions(Side::Left);
    let rp = d.leaf_positions(Side::Right);
    let sigma = d.tanglegram().sigma();
    let n = d.n();
    let mut c = 0;
    for e in 0..n {
        for f in e + 1..n {
            if (lp[e] < lp[f]) != (rp[sigma[e]] < rp[sigma[f]]) {
                c += 1;
            }
        }
    }
    c
}

fn plane_shape(t: &Tree, o: &Orientation) -> String {
    fn go(e: &Expr, out: &mut String) {
        match e {
            Expr::Leaf(_) => out.push('*'),
            Expr::Node(a, b) => {
                out.push('(');
                go(a, out);
                out.push(',');
                go(b, out);
                out.push(')');
            }
        }
    }
    let mut s = String::new();
    go(&t.to_expr(o), &mut s);
    s
}

/// Complete isomorphism invariant computed without automorphism groups: the
/// smallest (left plane shape, right plane shape, pi) over all layouts.
pub fn brute_iso_key(t: &Tanglegram) -> (String, String, Vec<usize>) {
    let k = t.n() - 1;
    let mut best = None;
    for a in 0..1u64 << k {
        for b in 0..1u64 << k {
            let lo = Orientation::from_index(k, a);
            let ro = Orientation::from_index(k, b);
            let key = (plane_shape(t.left(), &lo), plane_shape(t.right(), &ro), {
                Layout::new(t.clone(), lo.clone(), ro.clone()).unwrap().pi()
            });
            if best.as_ref().is_none_or(|x| &key < x) {
                best = Some(key);
            }
        }
    }
    best.unwrap()
}

/// Every plane binary tree expression with `n` leaves, labelled top to bottom.
pub fn plane_trees(n: usize) -> Vec<Expr> {
    fn go(n: usize, offset: usize) -> Vec<Expr> {
        if n == 1 {
            return vec![Expr::Leaf(offset)];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for a in go(k, offset) {
                for b in go(n - k, offset + k) {
                    out.push(Expr::node(a.clone(), b));
                }
            }
        }
        out
    }
    go(n, 0)
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn pairs(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

/// Smallest pairwise crossing count over every pair of orientations.
pub fn naive_crt(t: &Tanglegram) -> u64 {
    let k = t.n().saturating_sub(1);
    let mut best = u64::MAX;
    for a in 0..1u64 << k {
        for b in 0..1u64 << k {
            let d = Layout::new(t.clone(), Orientation::from_index(k, a), Orientation::from_index(k, b)).unwrap();
            best = best.min(quadratic_crossings(&d));
        }
    }
    best
}

/// Every tanglegram on every pair of plane trees of size `n`, one per matching.
pub fn all_labelled(n: usize) -> Vec<Tanglegram> {
    let trees: Vec<Tree> = plane_trees(n).iter().map(|e| Tree::from_expr(e).unwrap().0).collect();
    let perms = permutations(n);
    let mut out = Vec::new();
    for l in &trees {
        for r in &trees {
            for p in &perms {
                out.push(Tanglegram::new(l.clone(), r.clone(), p.clone()).unwrap());
            }
        }
    }
    out
}
