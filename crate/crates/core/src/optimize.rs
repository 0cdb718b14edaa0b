//! Exact and heuristic tanglegram crossing numbers.
//!
//! With the left orientation fixed, the right orientation decomposes: pairs of
//! edges whose right lca is `v` cross either `c_v` or `|A||B| - c_v` times
//! depending only on the bit of `v`, where `A`, `B` are the leaf sets of the
//! children of `v`. The exact solver enumerates left orientations and takes
//! the per-vertex minimum on the right.

use std::fmt;

use rayon::prelude::*;

use crate::rng;
use crate::tangle::{decomposition, random_orientations, Layout, Side, Tanglegram};
use crate::tree::{h_formula, Orientation, Tree, VertexId};
use crate::{pairs, Error, Result};

pub const EXACT_LIMIT: usize = 24;
pub const BRUTE_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    BruteForce,
    Heuristic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::BruteForce => "bruteforce",
            Method::Heuristic => "heuristic",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CrtResult {
    pub value: u64,
    pub witness: Layout,
    pub method: Method,
    /// Size of the searched space: left orientations for the exact solver
    /// (the search stops early at zero), orientation pairs for brute force,
    /// switches applied for the heuristic.
    pub nodes_explored: u64,
}

/// Counts, for every internal vertex of a drawn tree, the pairs (top-child
/// leaf `x`, bottom-child leaf `y`) with `key[x] > key[y]`. Each vertex covers
/// a contiguous run of the leaf sequence, so a bottom-up merge sort over those
/// runs counts all vertices in `O(n * height)`.
pub(crate) struct SplitCounter {
    start: Vec<usize>,
    arr: Vec<usize>,
    scratch: Vec<usize>,
}

impl SplitCounter {
    pub(crate) fn new(tree: &Tree) -> Self {
        SplitCounter {
            start: vec![0; tree.vertex_count()],
            arr: vec![0; tree.n()],
            scratch: vec![0; tree.n()],
        }
    }

    /// `out[v]` receives the count for internal vertex `v`. `key` is indexed by leaf label.
    pub(crate) fn count(&mut self, tree: &Tree, orient: &Orientation, key: &[usize], out: &mut [u64]) {
        let n = tree.n();
        if n == 1 {
            return;
        }
        self.start[0] = 0;
        for v in tree.internal_vertices() {
            let [top, bottom] = tree.displayed_children(v, orient);
            self.start[top] = self.start[v];
            self.start[bottom] = self.start[v] + tree.leaves_below(top);
        }
        for (l, &k) in key.iter().enumerate() {
            self.arr[self.start[n - 1 + l]] = k;
        }
        for v in tree.internal_vertices().rev() {
            let [top, _] = tree.displayed_children(v, orient);
            let lo = self.start[v];
            let mid = lo + tree.leaves_below(top);
            let hi = lo + tree.leaves_below(v);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            let mut cross = 0u64;
            while i < mid && j < hi {
                if self.arr[j] < self.arr[i] {
                    cross += (mid - i) as u64;
                    self.scratch[k] = self.arr[j];
                    j += 1;
                } else {
                    self.scratch[k] = self.arr[i];
                    i += 1;
                }
                k += 1;
            }
            self.scratch[k..k + (mid - i)].copy_from_slice(&self.arr[i..mid]);
            k += mid - i;
            self.scratch[k..k + (hi - j)].copy_from_slice(&self.arr[j..hi]);
            self.arr[lo..hi].copy_from_slice(&self.scratch[lo..hi]);
            out[v] = cross;
        }
    }
}

fn check_orientation(tree: &Tree, o: &Orientation) -> Result<()> {
    if o.len() != tree.internal_count() {
        return Err(Error::OrientationLength { expected: tree.internal_count(), got: o.len() });
    }
    Ok(())
}

/// Reusable buffers for [`best_right_given_left`].
struct RightSolver<'a> {
    t: &'a Tanglegram,
    counter: SplitCounter,
    left_pos: Vec<usize>,
    key: Vec<usize>,
    cross: Vec<u64>,
    zeros: Orientation,
}

impl<'a> RightSolver<'a> {
    fn new(t: &'a Tanglegram) -> Self {
        let n = t.n();
        RightSolver {
            t,
            counter: SplitCounter::new(t.right()),
            left_pos: vec![0; n],
            key: vec![0; n],
            cross: vec![0; n.saturating_sub(1)],
            zeros: Orientation::zeros(n - 1),
        }
    }

    /// Optimal right crossing total for a left orientation; bits are written
    /// into `bits` when given.
    fn solve(&mut self, left: &Orientation, bits: Option<&mut Orientation>) -> u64 {
        let t = self.t;
        t.left().fill_leaf_positions(left, &mut self.left_pos);
        for (r, k) in self.key.iter_mut().enumerate() {
            *k = self.left_pos[t.sigma_inv()[r]];
        }
        self.counter.count(t.right(), &self.zeros, &self.key, &mut self.cross);
        let right = t.right();
        let mut total = 0;
        let mut bits = bits;
        for v in right.internal_vertices() {
            let [a, b] = right.children(v).unwrap();
            let span = (right.leaves_below(a) * right.leaves_below(b)) as u64;
            let c = self.cross[v];
            let flip = 2 * c > span;
            total += if flip { span - c } else { c };
            if let Some(o) = bits.as_deref_mut() {
                o.set(v, flip);
            }
        }
        total
    }
}

/// Minimum crossings over all right orientations for a fixed left orientation,
/// with a minimising right orientation (ties keep the stored order).
pub fn best_right_given_left(t: &Tanglegram, left: &Orientation) -> Result<(u64, Orientation)> {
    check_orientation(t.left(), left)?;
    let mut solver = RightSolver::new(t);
    let mut right = Orientation::zeros(t.n() - 1);
    let value = solver.solve(left, Some(&mut right));
    Ok((value, right))
}

fn search_block(t: &Tanglegram, from: u64, to: u64) -> Option<(u64, u64)> {
    let k = t.n() - 1;
    let mut solver = RightSolver::new(t);
    let mut best: Option<(u64, u64)> = None;
    for m in from..to {
        let left = Orientation::from_index(k, m);
        let v = solver.solve(&left, None);
        if best.is_none_or(|(b, _)| v < b) {
            best = Some((v, m));
            if v == 0 {
                break;
            }
        }
    }
    best
}

/// Exact crossing number without a witness.
pub(crate) fn crt_value(t: &Tanglegram) -> u64 {
    match t.n() {
        1 => 0,
        n => search_block(t, 0, 1u64 << (n - 2)).unwrap().0,
    }
}

/// Exact crossing number, single-threaded.
pub fn crt_exact(t: &Tanglegram) -> Result<CrtResult> {
    crt_exact_jobs(t, 1)
}

/// Exact crossing number. Left orientations are visited in lexicographic
/// order with the root bit fixed to `0` (mirroring both trees reverses both
/// leaf sequences and keeps every crossing). The witness is the first optimal
/// left orientation in that order, independent of `jobs`.
pub fn crt_exact_jobs(t: &Tanglegram, jobs: usize) -> Result<CrtResult> {
    let n = t.n();
    if n > EXACT_LIMIT {
        return Err(Error::SizeLimit { what: "size", got: n, limit: EXACT_LIMIT });
    }
    if n == 1 {
        return Ok(CrtResult {
            value: 0,
            witness: Layout::unswitched(t.clone()),
            method: Method::Exact,
            nodes_explored: 1,
        });
    }
    let total = 1u64 << (n - 2);
    let (value, m) = if jobs <= 1 || total < 64 {
        search_block(t, 0, total).unwrap()
    } else {
        let blocks = (jobs * 8) as u64;
        let size = total.div_ceil(blocks);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?;
        let results: Vec<Option<(u64, u64)>> = pool.install(|| {
            (0..blocks)
                .into_par_iter()
                .map(|b| search_block(t, (b * size).min(total), ((b + 1) * size).min(total)))
                .collect()
        });
        results.into_iter().flatten().min().unwrap()
    };
    let left = Orientation::from_index(n - 1, m);
    let (check, right) = best_right_given_left(t, &left)?;
    debug_assert_eq!(check, value);
    Ok(CrtResult {
        value,
        witness: Layout::new(t.clone(), left, right)?,
        method: Method::Exact,
        nodes_explored: total,
    })
}

/// Exhaustive minimum over every pair of orientations; a test oracle.
pub fn crt_bruteforce(t: &Tanglegram) -> Result<CrtResult> {
    let n = t.n();
    if n > BRUTE_LIMIT {
        return Err(Error::SizeLimit { what: "size", got: n, limit: BRUTE_LIMIT });
    }
    let k = n - 1;
    let count = 1u64 << k;
    let mut best: Option<(u64, u64, u64)> = None;
    let mut pi = vec![0; n];
    for a in 0..count {
        let left_order = t.left().leaf_order(&Orientation::from_index(k, a));
        for b in 0..count {
            let right_pos = t.right().leaf_positions(&Orientation::from_index(k, b));
            for (i, &l) in left_order.iter().enumerate() {
                pi[i] = right_pos[t.sigma()[l]];
            }
            let v = crate::fenwick::inversions(&pi);
            if best.is_none_or(|(bv, _, _)| v < bv) {
                best = Some((v, a, b));
            }
        }
    }
    let (value, a, b) = best.unwrap();
    Ok(CrtResult {
        value,
        witness: Layout::new(t.clone(), Orientation::from_index(k, a), Orientation::from_index(k, b))?,
        method: Method::BruteForce,
        nodes_explored: count * count,
    })
}

/// Crossing change of every single switch, scanned left tree first, each in
/// vertex order.
fn switch_deltas(d: &Layout, left: &mut SplitCounter, right: &mut SplitCounter) -> Vec<(Side, VertexId, i64)> {
    let t = d.tanglegram();
    let n = t.n();
    let lp = d.leaf_positions(Side::Left);
    let rp = d.leaf_positions(Side::Right);
    let mut out = Vec::with_capacity(2 * (n - 1));
    let mut cross = vec![0u64; n - 1];
    for (side, counter) in [(Side::Left, left), (Side::Right, right)] {
        let tree = t.tree(side);
        let key: Vec<usize> = match side {
            Side::Left => (0..n).map(|l| rp[t.sigma()[l]]).collect(),
            Side::Right => (0..n).map(|r| lp[t.sigma_inv()[r]]).collect(),
        };
        counter.count(tree, d.orientation(side), &key, &mut cross);
        for v in tree.internal_vertices() {
            let [a, b] = tree.children(v).unwrap();
            let span = (tree.leaves_below(a) * tree.leaves_below(b)) as i64;
            out.push((side, v, span - 2 * cross[v] as i64));
        }
    }
    out
}

/// Steepest descent over single switches until none decreases the crossing
/// count. Ties go to the first switch in scan order (left tree, then right
/// tree, vertices ascending). Returns the layout and the number of switches made.
pub fn local_search_counted(d: &Layout) -> (Layout, u64) {
    let t = d.tanglegram();
    let mut cur = d.clone();
    if t.n() < 2 {
        return (cur, 0);
    }
    let mut lc = SplitCounter::new(t.left());
    let mut rc = SplitCounter::new(t.right());
    let mut steps = 0;
    loop {
        let best = switch_deltas(&cur, &mut lc, &mut rc)
            .into_iter()
            .fold(None::<(Side, VertexId, i64)>, |acc, c| match acc {
                Some(a) if a.2 <= c.2 => Some(a),
                _ => Some(c),
            })
            .unwrap();
        if best.2 >= 0 {
            return (cur, steps);
        }
        cur.switch_in_place(best.0, best.1);
        steps += 1;
    }
}

pub fn local_search(d: &Layout) -> Layout {
    local_search_counted(d).0
}

/// True if no single switch lowers the crossing count.
pub fn is_locally_optimal(d: &Layout) -> bool {
    let t = d.tanglegram();
    if t.n() < 2 {
        return true;
    }
    let mut lc = SplitCounter::new(t.left());
    let mut rc = SplitCounter::new(t.right());
    switch_deltas(d, &mut lc, &mut rc).iter().all(|c| c.2 >= 0)
}

#[derive(Debug, Clone)]
#[derive(Default)]
pub struct ChainOptions {
    /// Extra local-search runs from random orientations; the best local optimum is kept.
    pub restarts: usize,
    pub seed: u64,
    /// Also run the chain with the roles of the trees exchanged.
    pub both_sides: bool,
}


/// Crossing counts of one pass of the chain `D0 -> D1 -> D2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPass {
    /// Tree whose special vertices are switched in the last step.
    pub side: Side,
    pub cr_d1: u64,
    pub cr_d2: u64,
    /// Special vertices with their row sums in the decomposition matrix of `D0`.
    pub special: Vec<(VertexId, i64)>,
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub n: usize,
    pub cr_d0: u64,
    pub right_pass: ChainPass,
    pub left_pass: Option<ChainPass>,
    pub best: u64,
    /// `floor((C(n,2) - |S|) / 2)`, where `S` are the special vertices of the right tree.
    pub guarantee: u64,
    /// `floor((C(n,2) - h(n)) / 2)`, the guarantee in terms of the size alone.
    pub size_guarantee: u64,
    /// Whether `best <= C(n,2)/2 - |S|` held for this instance.
    pub stronger_bound_held: bool,
    pub local_search_steps: u64,
}

impl ChainReport {
    pub fn special_count(&self) -> usize {
        self.right_pass.special.len()
    }
}

fn chain_pass(d0: &Layout, side: Side) -> Result<(ChainPass, Layout)> {
    let t = d0.tanglegram();
    let special = t.tree(side).special_report().special;
    let d1 = d0.flip_all(side.other());
    let d2 = d1.flip_set(side, &special)?;
    let sums = match side {
        Side::Right => {
            let m = decomposition(d0);
            special.iter().map(|&x| (x, m.row_sum(x))).collect()
        }
        Side::Left => {
            // column sums: the same matrix with the trees' roles exchanged
            let m = decomposition(d0);
            special
                .iter()
                .map(|&u| (u, (0..m.dim()).map(|x| m.get(x, u)).sum()))
                .collect()
        }
    };
    let pass = ChainPass { side, cr_d1: d1.crossings(), cr_d2: d2.crossings(), special: sums };
    Ok((pass, d2))
}

/// Switching chain from the unswitched layout of `t`.
pub fn switching_chain(t: &Tanglegram) -> Result<(Layout, ChainReport)> {
    switching_chain_from(&Layout::unswitched(t.clone()), &ChainOptions::default())
}

/// `D0` = local optimum from `start`; `D1` = `D0` with every left vertex
/// switched; `D2` = `D1` with every special vertex of the right tree switched.
/// Returns the better of `D0` and `D2` (and of the mirrored pass when enabled).
pub fn switching_chain_from(start: &Layout, opts: &ChainOptions) -> Result<(Layout, ChainReport)> {
    let t = start.tanglegram();
    let n = t.n();
    if n < 2 {
        return Err(Error::Invalid("the switching chain needs at least two leaves".into()));
    }
    let (mut d0, mut steps) = local_search_counted(start);
    let mut cr0 = d0.crossings();
    let mut rng = rng::from_seed(opts.seed);
    for _ in 0..opts.restarts {
        let (cand, s) = local_search_counted(&random_orientations(t.clone(), &mut rng));
        steps += s;
        let c = cand.crossings();
        if c < cr0 {
            d0 = cand;
            cr0 = c;
        }
    }

    let (right_pass, d2) = chain_pass(&d0, Side::Right)?;
    let mut best_layout = if right_pass.cr_d2 < cr0 { d2 } else { d0.clone() };
    let mut best = cr0.min(right_pass.cr_d2);
    let left_pass = if opts.both_sides {
        let (pass, d2l) = chain_pass(&d0, Side::Left)?;
        if pass.cr_d2 < best {
            best = pass.cr_d2;
            best_layout = d2l;
        }
        Some(pass)
    } else {
        None
    };

    let c = pairs(n);
    let s = right_pass.special.len() as u64;
    let h = h_formula(n)? as u64;
    let report = ChainReport {
        n,
        cr_d0: cr0,
        guarantee: (c - s) / 2,
        size_guarantee: (c - h) / 2,
        stronger_bound_held: 2 * best + 2 * s <= c,
        best,
        right_pass,
        left_pass,
        local_search_steps: steps,
    };
    Ok((best_layout, report))
}
