//! Exhaustive enumeration of tanglegrams up to isomorphism and the largest
//! crossing number `M_n` among them.
//!
//! For each ordered pair of tree shapes, matchings are scanned in
//! lexicographic order and one is kept iff it is the smallest element of its
//! orbit under `Aut(L) x Aut(R)`, which acts by `sigma -> h . sigma . g^-1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::construct::crt_formula;
use crate::optimize::crt_value;
use crate::tangle::Tanglegram;
use crate::tree::{enumerate_shapes, Tree};
use crate::{pairs, Error, Result};

pub const MAX_SIZE: usize = 8;

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("size must be at least 1".into()));
    }
    if n > MAX_SIZE {
        return Err(Error::SizeLimit { what: "size", got: n, limit: MAX_SIZE });
    }
    Ok(())
}

fn factorials(n: usize) -> Vec<usize> {
    let mut f = vec![1usize; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k;
    }
    f
}

/// Index of `p` in the lexicographic order of permutations of `0..p.len()`.
fn lex_rank(p: &[usize], fact: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&q| q < p[i]).count();
        rank += smaller * fact[n - 1 - i];
    }
    rank
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Orbit-minimal matchings between two fixed trees, in lexicographic order.
pub fn orbit_representatives(left: &Tree, right: &Tree) -> Vec<Vec<usize>> {
    let n = left.n();
    let fact = factorials(n);
    let aut_l = left.automorphisms();
    let aut_r = right.automorphisms();
    let mut seen = vec![false; fact[n]];
    let mut reps = Vec::new();
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut tau = vec![0usize; n];
    let mut rank = 0;
    loop {
        if !seen[rank] {
            reps.push(sigma.clone());
            for g in &aut_l {
                for h in &aut_r {
                    for i in 0..n {
                        tau[g[i]] = h[sigma[i]];
                    }
                    seen[lex_rank(&tau, &fact)] = true;
                }
            }
        }
        if !next_permutation(&mut sigma) {
            break;
        }
        rank += 1;
    }
    reps
}

fn shape_pairs(n: usize) -> Result<Vec<(Tree, Tree)>> {
    let shapes: Vec<Tree> = enumerate_shapes(n)?.collect();
    let mut out = Vec::with_capacity(shapes.len() * shapes.len());
    for l in &shapes {
        for r in &shapes {
            out.push((l.clone(), r.clone()));
        }
    }
    Ok(out)
}

/// One tanglegram per isomorphism class of size `n`, grouped by shape pair in
/// shape order and by matching in lexicographic order within a pair.
pub fn enumerate_tanglegrams(n: usize) -> Result<impl Iterator<Item = Tanglegram>> {
    check_size(n)?;
    Ok(shape_pairs(n)?.into_iter().flat_map(|(l, r)| {
        orbit_representatives(&l, &r)
            .into_iter()
            .map(move |sigma| Tanglegram::new(l.clone(), r.clone(), sigma).unwrap())
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalReport {
    pub n: usize,
    pub tanglegram_count: u64,
    /// `M_n`.
    pub max_value: u64,
    /// Canonical forms of the classes attaining `M_n`, in enumeration order.
    pub witnesses: Vec<String>,
    /// Crossing number -> number of classes.
    pub histogram: BTreeMap<u64, u64>,
    pub wall_time: Duration,
}

impl ExtremalReport {
    /// Deterministic key-value text (wall time excluded).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n {}", self.n).unwrap();
        writeln!(s, "classes {}", self.tanglegram_count).unwrap();
        writeln!(s, "max {}", self.max_value).unwrap();
        writeln!(s, "witnesses {}", self.witnesses.len()).unwrap();
        for w in &self.witnesses {
            writeln!(s, "witness {w}").unwrap();
        }
        s.push_str(&self.histogram_text());
        s
    }

    /// One `hist <crt> <count>` line per crossing number.
    pub fn histogram_text(&self) -> String {
        self.histogram.iter().map(|(v, c)| format!("hist {v} {c}\n")).collect()
    }
}

struct PairResult {
    count: u64,
    max: u64,
    witnesses: Vec<String>,
    histogram: BTreeMap<u64, u64>,
}

fn solve_pair(left: &Tree, right: &Tree) -> PairResult {
    let mut res = PairResult { count: 0, max: 0, witnesses: Vec::new(), histogram: BTreeMap::new() };
    for sigma in orbit_representatives(left, right) {
        let t = Tanglegram::new(left.clone(), right.clone(), sigma).unwrap();
        let v = crt_value(&t);
        res.count += 1;
        *res.histogram.entry(v).or_default() += 1;
        if v > res.max || res.witnesses.is_empty() {
            res.max = v;
            res.witnesses.clear();
        }
        if v == res.max {
            res.witnesses.push(String::from_utf8(t.canonical_form()).unwrap());
        }
    }
    res
}

/// Exact crossing number of every class of size `n`; the report does not
/// depend on `jobs`.
pub fn max_crt(n: usize, jobs: usize) -> Result<ExtremalReport> {
    check_size(n)?;
    let started = Instant::now();
    let work = shape_pairs(n)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let results: Vec<PairResult> = pool.install(|| work.par_iter().map(|(l, r)| solve_pair(l, r)).collect());

    let max_value = results.iter().filter(|r| r.count > 0).map(|r| r.max).max().unwrap_or(0);
    let mut report = ExtremalReport {
        n,
        tanglegram_count: 0,
        max_value,
        witnesses: Vec::new(),
        histogram: BTreeMap::new(),
        wall_time: Duration::ZERO,
    };
    for r in results {
        report.tanglegram_count += r.count;
        for (v, c) in r.histogram {
            *report.histogram.entry(v).or_default() += c;
        }
        if r.max == max_value {
            report.witnesses.extend(r.witnesses);
        }
    }
    report.wall_time = started.elapsed();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundVerdicts {
    /// `M_n < C(n,2) / 2`.
    pub below_half: bool,
    /// `M_n <= C(n,2) / 2 - n / 4`.
    pub claimed_upper: bool,
    /// For `n = 2^i`: `M_n >= C(n,2) / 2 - i * 2^(i-2)`.
    pub family_lower: Option<bool>,
}

pub fn bound_check(report: &ExtremalReport) -> BoundVerdicts {
    let n = report.n as u64;
    let m = report.max_value;
    let c = pairs(report.n);
    let family_lower = report
        .n
        .is_power_of_two()
        .then(|| m as u128 >= crt_formula(report.n.trailing_zeros()));
    BoundVerdicts { below_half: 2 * m < c, claimed_upper: 4 * m + n <= 2 * c, family_lower }
}
