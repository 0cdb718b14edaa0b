//! Tanglegrams, layouts, switches and crossing counts.
//!
//! Matching edges are named by their left leaf label. For a layout, `pi[i]` is
//! the position on the right of the partner of the `i`-th left leaf from the
//! top; the crossing count is the inversion count of `pi`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fenwick::inversions;
use crate::rng;
use crate::tree::{parse_tree, random_plane_expr, Orientation, Tree, VertexId};
use crate::{pairs, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Two trees with equally many leaves and a matching `sigma` from left leaf
/// labels to right leaf labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tanglegram {
    left: Tree,
    right: Tree,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
}

impl Tanglegram {
    pub fn new(left: Tree, right: Tree, sigma: Vec<usize>) -> Result<Self> {
        if left.n() != right.n() {
            return Err(Error::SizeMismatch { left: left.n(), right: right.n() });
        }
        let n = left.n();
        if sigma.len() != n {
            return Err(Error::NotBijection(format!("{} pairs for {n} leaves", sigma.len())));
        }
        let mut sigma_inv = vec![usize::MAX; n];
        for (l, &r) in sigma.iter().enumerate() {
            if r >= n {
                return Err(Error::NotBijection(format!("right label {r} out of range")));
            }
            if sigma_inv[r] != usize::MAX {
                return Err(Error::NotBijection(format!("right label {r} matched twice")));
            }
            sigma_inv[r] = l;
        }
        Ok(Tanglegram { left, right, sigma, sigma_inv })
    }

    pub fn n(&self) -> usize {
        self.left.n()
    }

    pub fn left(&self) -> &Tree {
        &self.left
    }

    pub fn right(&self) -> &Tree {
        &self.right
    }

    pub fn tree(&self, side: Side) -> &Tree {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// Right leaf label matched to each left leaf label.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_inv(&self) -> &[usize] {
        &self.sigma_inv
    }

    /// Canonical invariant: equal for two tanglegrams iff they are isomorphic.
    ///
    /// Both trees are read in every shape-canonical order their automorphism
    /// groups allow; the matching is written as right positions in left order
    /// and the lexicographically smallest such code is kept.
    pub fn canonical_form(&self) -> Vec<u8> {
        let n = self.n();
        let left_orders = self.left.orbit_orders();
        let right_orders = self.right.orbit_orders();
        let mut best: Option<Vec<usize>> = None;
        let mut code = vec![0usize; n];
        let mut pos_r = vec![0usize; n];
        for ro in &right_orders {
            for (i, &l) in ro.iter().enumerate() {
                pos_r[l] = i;
            }
            for lo in &left_orders {
                for (i, &l) in lo.iter().enumerate() {
                    code[i] = pos_r[self.sigma[l]];
                }
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code.clone());
                }
            }
        }
        let codes: Vec<String> = best.unwrap().iter().map(|c| c.to_string()).collect();
        format!("{}|{}|{}", self.left.shape_key(), self.right.shape_key(), codes.join(","))
            .into_bytes()
    }

    pub fn is_isomorphic(&self, other: &Tanglegram) -> bool {
        self.n() == other.n()
            && self.left.shape_key() == other.left.shape_key()
            && self.right.shape_key() == other.right.shape_key()
            && self.canonical_form() == other.canonical_form()
    }
}

/// A tanglegram with a child order chosen at every internal vertex of both trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Layout {
    tanglegram: Tanglegram,
    left: Orientation,
    right: Orientation,
}

impl Layout {
    pub fn new(tanglegram: Tanglegram, left: Orientation, right: Orientation) -> Result<Self> {
        let expected = tanglegram.n() - 1;
        for o in [&left, &right] {
            if o.len() != expected {
                return Err(Error::OrientationLength { expected, got: o.len() });
            }
        }
        Ok(Layout { tanglegram, left, right })
    }

    /// The layout drawing every stored child order unchanged.
    pub fn unswitched(tanglegram: Tanglegram) -> Self {
        let k = tanglegram.n() - 1;
        Layout { tanglegram, left: Orientation::zeros(k), right: Orientation::zeros(k) }
    }

    pub fn tanglegram(&self) -> &Tanglegram {
        &self.tanglegram
    }

    pub fn n(&self) -> usize {
        self.tanglegram.n()
    }

    pub fn orientation(&self, side: Side) -> &Orientation {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    fn orientation_mut(&mut self, side: Side) -> &mut Orientation {
        match side {
            Side::Left => &mut self.left,
            Side::Right => &mut self.right,
        }
    }

    pub fn leaf_order(&self, side: Side) -> Vec<usize> {
        self.tanglegram.tree(side).leaf_order(self.orientation(side))
    }

    pub fn leaf_positions(&self, side: Side) -> Vec<usize> {
        self.tanglegram.tree(side).leaf_positions(self.orientation(side))
    }

    /// `pi[i]` = right position of the partner of the `i`-th left leaf.
    pub fn pi(&self) -> Vec<usize> {
        let right_pos = self.leaf_positions(Side::Right);
        self.leaf_order(Side::Left)
            .into_iter()
            .map(|l| right_pos[self.tanglegram.sigma[l]])
            .collect()
    }

    /// Number of crossing pairs of matching edges.
    pub fn crossings(&self) -> u64 {
        inversions(&self.pi())
    }

    /// Crossing status: `+1` if edges `e` and `f` cross, `-1` otherwise.
    pub fn chi(&self, e: usize, f: usize) -> Result<i8> {
        let n = self.n();
        for x in [e, f] {
            if x >= n {
                return Err(Error::UnknownLeaf(x));
            }
        }
        if e == f {
            return Err(Error::Invalid("crossing status needs two distinct edges".into()));
        }
        let lp = self.leaf_positions(Side::Left);
        let rp = self.leaf_positions(Side::Right);
        Ok(chi_from_positions(&lp, &rp, self.tanglegram.sigma(), e, f))
    }

    fn check_internal(&self, side: Side, v: VertexId) -> Result<()> {
        if v < self.n() - 1 {
            Ok(())
        } else if self.tanglegram.tree(side).contains(v) {
            Err(Error::NotInternal(v))
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Flips the child order at internal vertex `v` of `side`.
    pub fn switch(&self, side: Side, v: VertexId) -> Result<Layout> {
        self.check_internal(side, v)?;
        let mut d = self.clone();
        d.orientation_mut(side).flip(v);
        Ok(d)
    }

    pub(crate) fn switch_in_place(&mut self, side: Side, v: VertexId) {
        self.orientation_mut(side).flip(v);
    }

    /// Switches every internal vertex of `side`, reversing its leaf sequence.
    pub fn flip_all(&self, side: Side) -> Layout {
        let mut d = self.clone();
        let o = d.orientation_mut(side);
        for v in 0..o.len() {
            o.flip(v);
        }
        d
    }

    /// Switches each vertex of `set` once.
    pub fn flip_set(&self, side: Side, set: &[VertexId]) -> Result<Layout> {
        let mut d = self.clone();
        for &v in set {
            self.check_internal(side, v)?;
            d.orientation_mut(side).flip(v);
        }
        Ok(d)
    }

    /// Switches every vertex whose sign in `s` is `-1`.
    pub fn apply(&self, s: &SwitchVector) -> Result<Layout> {
        s.check_dim(self.n() - 1)?;
        let mut d = self.clone();
        for (v, &a) in s.alpha.iter().enumerate() {
            if a < 0 {
                d.right.flip(v);
            }
        }
        for (u, &b) in s.beta.iter().enumerate() {
            if b < 0 {
                d.left.flip(u);
            }
        }
        Ok(d)
    }

    /// Serializes in the `.tgl` text format.
    pub fn to_tgl(&self) -> String {
        let t = &self.tanglegram;
        let matching: Vec<String> =
            t.sigma.iter().enumerate().map(|(l, r)| format!("{l}-{r}")).collect();
        format!(
            "TGL 1\nn {}\nL {}\nR {}\nM {}\n",
            t.n(),
            t.left.write(&self.left),
            t.right.write(&self.right),
            matching.join(" ")
        )
    }
}

pub(crate) fn chi_from_positions(lp: &[usize], rp: &[usize], sigma: &[usize], e: usize, f: usize) -> i8 {
    let left_before = lp[e] < lp[f];
    let right_before = rp[sigma[e]] < rp[sigma[f]];
    if left_before == right_before {
        -1
    } else {
        1
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tgl())
    }
}

impl FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tanglegram(s)
    }
}

fn field<'a>(line: Option<&'a str>, no: usize, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::Format { line: no, msg: format!("missing '{key}' line") })?;
    let line = line.strip_suffix('\r').unwrap_or(line);
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| Error::Format { line: no, msg: format!("expected '{key} ...', got '{line}'") })
}

/// Parses the `.tgl` format; orientations are the written child orders.
pub fn parse_tanglegram(text: &str) -> Result<Layout> {
    let mut lines = text.lines();
    if field(lines.next(), 1, "TGL")?.trim() != "1" {
        return Err(Error::Format { line: 1, msg: "unsupported version".into() });
    }
    let n_text = field(lines.next(), 2, "n")?;
    let n: usize = n_text
        .trim()
        .parse()
        .map_err(|_| Error::Format { line: 2, msg: format!("bad size '{n_text}'") })?;
    let (left, lo) = parse_tree(field(lines.next(), 3, "L")?)?;
    let (right, ro) = parse_tree(field(lines.next(), 4, "R")?)?;
    if left.n() != right.n() {
        return Err(Error::SizeMismatch { left: left.n(), right: right.n() });
    }
    if left.n() != n {
        return Err(Error::SizeMismatch { left: n, right: left.n() });
    }
    let mut sigma = vec![usize::MAX; n];
    let mut count = 0;
    for pair in field(lines.next(), 5, "M")?.split_whitespace() {
        let (a, b) = pair
            .split_once('-')
            .ok_or_else(|| Error::Format { line: 5, msg: format!("bad pair '{pair}'") })?;
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Format { line: 5, msg: format!("bad pair '{pair}'") })
        };
        let (l, r) = (parse(a)?, parse(b)?);
        if l >= n {
            return Err(Error::NotBijection(format!("left label {l} out of range")));
        }
        if sigma[l] != usize::MAX {
            return Err(Error::NotBijection(format!("left label {l} matched twice")));
        }
        sigma[l] = r;
        count += 1;
    }
    if count != n {
        return Err(Error::NotBijection(format!("{count} pairs for {n} leaves")));
    }
    if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
        return Err(Error::Format { line: 6, msg: format!("unexpected trailing line '{extra}'") });
    }
    Layout::new(Tanglegram::new(left, right, sigma)?, lo, ro)
}

/// Sign per internal vertex: `alpha` on the right tree, `beta` on the left
/// tree; `-1` marks a switch relative to a base layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchVector {
    pub alpha: Vec<i8>,
    pub beta: Vec<i8>,
}

impl SwitchVector {
    pub fn new(alpha: Vec<i8>, beta: Vec<i8>) -> Result<Self> {
        if alpha.iter().chain(&beta).any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid("switch signs must be +1 or -1".into()));
        }
        Ok(SwitchVector { alpha, beta })
    }

    pub fn ones(internal: usize) -> Self {
        SwitchVector { alpha: vec![1; internal], beta: vec![1; internal] }
    }

    pub fn random<R: Rng + ?Sized>(internal: usize, rng: &mut R) -> Self {
        let mut sign = || if rng.gen::<bool>() { 1 } else { -1 };
        let alpha = (0..internal).map(|_| sign()).collect();
        let beta = (0..internal).map(|_| sign()).collect();
        SwitchVector { alpha, beta }
    }

    fn check_dim(&self, internal: usize) -> Result<()> {
        if self.alpha.len() != internal || self.beta.len() != internal {
            return Err(Error::IncompleteSwitch(format!(
                "need {internal} signs per side, got {} right and {} left",
                self.alpha.len(),
                self.beta.len()
            )));
        }
        Ok(())
    }
}

/// `a[x][u]`: sum of the base layout's crossing status over the pairs of
/// matching edges whose right lca is `x` and left lca is `u`. Rows are right
/// internal vertices, columns left internal vertices.
#[derive(Debug, Clone)]
pub struct DecompositionMatrix {
    base: Layout,
    dim: usize,
    entries: Vec<i64>,
}

impl DecompositionMatrix {
    pub fn new(base: &Layout) -> Self {
        let t = base.tanglegram();
        let n = t.n();
        let dim = n - 1;
        let mut entries = vec![0i64; dim * dim];
        let lp = base.leaf_positions(Side::Left);
        let rp = base.leaf_positions(Side::Right);
        let sigma = t.sigma();
        for e in 0..n {
            for f in e + 1..n {
                let x = t.right().lca_vertices(t.right().leaf(sigma[e]), t.right().leaf(sigma[f]));
                let u = t.left().lca_vertices(t.left().leaf(e), t.left().leaf(f));
                entries[x * dim + u] += chi_from_positions(&lp, &rp, sigma, e, f) as i64;
            }
        }
        DecompositionMatrix { base: base.clone(), dim, entries }
    }

    pub fn base(&self) -> &Layout {
        &self.base
    }

    /// Number of internal vertices per side.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, x: VertexId, u: VertexId) -> i64 {
        self.entries[x * self.dim + u]
    }

    pub fn row(&self, x: VertexId) -> &[i64] {
        &self.entries[x * self.dim..(x + 1) * self.dim]
    }

    pub fn row_sum(&self, x: VertexId) -> i64 {
        self.row(x).iter().sum()
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Crossings of the base layout switched by `s`:
    /// `(C(n,2) + sum_x sum_u alpha(x) beta(u) a[x][u]) / 2`.
    pub fn evaluate(&self, s: &SwitchVector) -> Result<u64> {
        s.check_dim(self.dim)?;
        let mut acc: i64 = pairs(self.dim + 1) as i64;
        for x in 0..self.dim {
            let row = self.row(x);
            let inner: i64 = row.iter().zip(&s.beta).map(|(&a, &b)| a * b as i64).sum();
            acc += s.alpha[x] as i64 * inner;
        }
        debug_assert!(acc >= 0 && acc % 2 == 0);
        Ok((acc / 2) as u64)
    }
}

pub fn decomposition(d0: &Layout) -> DecompositionMatrix {
    DecompositionMatrix::new(d0)
}

pub fn cr_via_decomposition(m: &DecompositionMatrix, s: &SwitchVector) -> Result<u64> {
    m.evaluate(s)
}

/// Random tanglegram layout: both trees uniform plane binary trees, a uniform
/// matching, and independent fair orientation bits.
pub fn random_instance(n: usize, seed: u64) -> Layout {
    assert!(n >= 1, "a tanglegram needs at least one leaf");
    let mut rng = rng::from_seed(seed);
    let (left, _) = Tree::from_expr(&random_plane_expr(n, &mut rng)).unwrap();
    let (right, _) = Tree::from_expr(&random_plane_expr(n, &mut rng)).unwrap();
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(&mut rng);
    let t = Tanglegram::new(left, right, sigma).unwrap();
    random_orientations(t, &mut rng)
}

/// Layout of `t` with independent fair orientation bits.
pub fn random_orientations<R: Rng + ?Sized>(t: Tanglegram, rng: &mut R) -> Layout {
    let k = t.n() - 1;
    let left = Orientation::from_bits((0..k).map(|_| rng.gen()).collect());
    let right = Orientation::from_bits((0..k).map(|_| rng.gen()).collect());
    Layout { tanglegram: t, left, right }
}
