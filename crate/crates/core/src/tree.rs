//! Rooted binary trees with labelled leaves.
//!
//! A [`Tree`] is unordered: its stored child order is canonical (the child
//! holding the smaller leaf label comes first), so two expressions that differ
//! only by child swaps parse to equal trees. The written child order is kept
//! separately as an [`Orientation`], one bit per internal vertex.
//!
//! Vertex ids: internal vertices are `0..n-1` in preorder of the canonical
//! order (the root is `0`), and the leaf labelled `l` has id `n - 1 + l`. The
//! single-vertex tree has the one vertex `0`, which is both root and leaf.

use std::fmt;
use std::ops::Range;

use rand::Rng;

use crate::{Error, Result};

pub type VertexId = usize;

/// A tree expression as written, with leaf labels and child order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Leaf(usize),
    Node(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn node(a: Expr, b: Expr) -> Expr {
        Expr::Node(Box::new(a), Box::new(b))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Expr::Leaf(_) => 1,
            Expr::Node(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    fn collect_labels(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Leaf(l) => out.push(*l),
            Expr::Node(a, b) => {
                a.collect_labels(out);
                b.collect_labels(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Leaf(l) => write!(f, "{l}"),
            Expr::Node(a, b) => write!(f, "({a},{b})"),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn subtree(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let mut items = vec![self.subtree()?];
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            items.push(self.subtree()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(c) => return Err(self.err(format!("unexpected '{}'", c as char))),
                        None => return Err(self.err("unbalanced '('")),
                    }
                }
                match items.len() {
                    1 => Err(Error::SingleChild { pos: open }),
                    2 => {
                        let b = items.pop().unwrap();
                        let a = items.pop().unwrap();
                        Ok(Expr::node(a, b))
                    }
                    k => Err(Error::Parse { pos: open, msg: format!("vertex with {k} children") }),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                text.parse::<usize>()
                    .map(Expr::Leaf)
                    .map_err(|_| Error::Parse { pos: start, msg: format!("bad label '{text}'") })
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `leaf = integer`, `internal = "(" subtree "," subtree ")"`. Whitespace is ignored.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    let e = p.subtree()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a tree expression; the written child order is returned as the orientation.
pub fn parse_tree(text: &str) -> Result<(Tree, Orientation)> {
    Tree::from_expr(&parse_expr(text)?)
}

/// One bit per internal vertex: `false` draws the stored child order, `true` swaps it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Orientation(Vec<bool>);

impl Orientation {
    pub fn zeros(internal: usize) -> Self {
        Orientation(vec![false; internal])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Orientation(bits)
    }

    /// Bit `k` is bit `len - 1 - k` of `index`, so numeric order of `index`
    /// is lexicographic order of the bit vector.
    pub fn from_index(len: usize, index: u64) -> Self {
        Orientation((0..len).map(|k| (index >> (len - 1 - k)) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> bool {
        self.0[v]
    }

    pub fn set(&mut self, v: VertexId, bit: bool) {
        self.0[v] = bit;
    }

    pub fn flip(&mut self, v: VertexId) {
        self.0[v] = !self.0[v];
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    n: usize,
    children: Vec<[VertexId; 2]>,
    parent: Vec<Option<VertexId>>,
    depth: Vec<u32>,
    leaves_below: Vec<usize>,
}

/// Special vertices and the per-vertex indicator `psi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialVertexReport {
    /// Internal vertices with a leaf child and an even number of leaf descendants, ascending.
    pub special: Vec<VertexId>,
    /// Indexed by vertex id; zero for every vertex without a leaf child.
    pub psi: Vec<u8>,
    pub psi_total: usize,
}

impl Tree {
    /// Builds the tree and records the written child order as an orientation.
    pub fn from_expr(expr: &Expr) -> Result<(Tree, Orientation)> {
        let mut labels = Vec::new();
        expr.collect_labels(&mut labels);
        let n = labels.len();
        let mut seen = vec![false; n];
        for &l in &labels {
            if l >= n {
                return Err(Error::Labels { n, msg: format!("label {l} out of range") });
            }
            if seen[l] {
                return Err(Error::Labels { n, msg: format!("label {l} repeated") });
            }
            seen[l] = true;
        }

        // Flatten post-order so each node knows its minimum label.
        struct Flat {
            kids: Option<[usize; 2]>,
            min: usize,
            count: usize,
        }
        fn flatten(e: &Expr, arena: &mut Vec<Flat>) -> usize {
            let node = match e {
                Expr::Leaf(l) => Flat { kids: None, min: *l, count: 1 },
                Expr::Node(a, b) => {
                    let ia = flatten(a, arena);
                    let ib = flatten(b, arena);
                    Flat {
                        kids: Some([ia, ib]),
                        min: arena[ia].min.min(arena[ib].min),
                        count: arena[ia].count + arena[ib].count,
                    }
                }
            };
            arena.push(node);
            arena.len() - 1
        }
        let mut arena = Vec::with_capacity(2 * n);
        let top = flatten(expr, &mut arena);

        let total = 2 * n - 1;
        let mut tree = Tree {
            n,
            children: vec![[0, 0]; n - 1],
            parent: vec![None; total],
            depth: vec![0; total],
            leaves_below: vec![0; total],
        };
        let mut bits = vec![false; n - 1];
        let mut next_internal = 0;
        // (arena index, parent vertex, depth)
        let mut stack = vec![(top, None::<VertexId>, 0u32)];
        let mut slot: Vec<Option<(VertexId, usize)>> = vec![None];
        while let Some((idx, parent, depth)) = stack.pop() {
            let fill = slot.pop().unwrap();
            let node = &arena[idx];
            let id = match node.kids {
                None => n - 1 + node.min,
                Some(_) => {
                    next_internal += 1;
                    next_internal - 1
                }
            };
            if let Some((p, k)) = fill {
                tree.children[p][k] = id;
            }
            tree.parent[id] = parent;
            tree.depth[id] = depth;
            tree.leaves_below[id] = node.count;
            if let Some([a, b]) = node.kids {
                let swapped = arena[b].min < arena[a].min;
                bits[id] = swapped;
                let (first, second) = if swapped { (b, a) } else { (a, b) };
                stack.push((second, Some(id), depth + 1));
                slot.push(Some((id, 1)));
                stack.push((first, Some(id), depth + 1));
                slot.push(Some((id, 0)));
            }
        }
        Ok((tree, Orientation(bits)))
    }

    /// The single-vertex tree.
    pub fn single() -> Tree {
        Tree::from_expr(&Expr::Leaf(0)).unwrap().0
    }

    /// Complete binary tree of the given height; leaves labelled left to right.
    pub fn complete(height: u32) -> Tree {
        Tree::from_expr(&complete_expr(height, 0)).unwrap().0
    }

    /// Caterpillar: every internal vertex has a leaf child, labels from the top.
    pub fn caterpillar(n: usize) -> Tree {
        assert!(n >= 1);
        let mut e = Expr::Leaf(n - 1);
        for l in (0..n - 1).rev() {
            e = Expr::node(Expr::Leaf(l), e);
        }
        Tree::from_expr(&e).unwrap().0
    }

    /// Number of leaves.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n - 1
    }

    pub fn internal_count(&self) -> usize {
        self.n - 1
    }

    pub fn internal_vertices(&self) -> Range<VertexId> {
        0..self.n - 1
    }

    pub fn root(&self) -> VertexId {
        0
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        v >= self.n - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.vertex_count()
    }

    /// Vertex id of the leaf labelled `label` (unchecked range).
    pub fn leaf(&self, label: usize) -> VertexId {
        self.n - 1 + label
    }

    pub fn leaf_vertex(&self, label: usize) -> Result<VertexId> {
        if label < self.n {
            Ok(self.leaf(label))
        } else {
            Err(Error::UnknownLeaf(label))
        }
    }

    pub fn label(&self, v: VertexId) -> Option<usize> {
        (self.is_leaf(v) && self.contains(v)).then(|| v - (self.n - 1))
    }

    /// Children in stored (canonical) order.
    pub fn children(&self, v: VertexId) -> Option<[VertexId; 2]> {
        (!self.is_leaf(v)).then(|| self.children[v])
    }

    /// Children in drawing order, top first.
    pub fn displayed_children(&self, v: VertexId, orient: &Orientation) -> [VertexId; 2] {
        let [a, b] = self.children[v];
        if orient.get(v) {
            [b, a]
        } else {
            [a, b]
        }
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn depth(&self, v: VertexId) -> u32 {
        self.depth[v]
    }

    /// Number of leaves in the subtree rooted at `v`.
    pub fn leaf_descendant_count(&self, v: VertexId) -> Result<usize> {
        if self.contains(v) {
            Ok(self.leaves_below[v])
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub(crate) fn leaves_below(&self, v: VertexId) -> usize {
        self.leaves_below[v]
    }

    pub fn has_leaf_child(&self, v: VertexId) -> bool {
        !self.is_leaf(v) && self.children[v].iter().any(|&c| self.is_leaf(c))
    }

    pub fn is_cherry(&self, v: VertexId) -> bool {
        !self.is_leaf(v) && self.children[v].iter().all(|&c| self.is_leaf(c))
    }

    /// Deepest common ancestor of two vertices.
    pub fn lca_vertices(&self, mut a: VertexId, mut b: VertexId) -> VertexId {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    /// Deepest common ancestor of the leaves labelled `a` and `b`.
    pub fn lca(&self, a: usize, b: usize) -> Result<VertexId> {
        Ok(self.lca_vertices(self.leaf_vertex(a)?, self.leaf_vertex(b)?))
    }

    pub fn is_ancestor(&self, anc: VertexId, mut v: VertexId) -> bool {
        loop {
            if v == anc {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Leaf labels from top to bottom under `orient`.
    pub fn leaf_order(&self, orient: &Orientation) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n);
        let mut stack = vec![self.root()];
        while let Some(v) = stack.pop() {
            if self.is_leaf(v) {
                out.push(v - (self.n - 1));
            } else {
                let [top, bottom] = self.displayed_children(v, orient);
                stack.push(bottom);
                stack.push(top);
            }
        }
        out
    }

    /// Position (top = 0) of each leaf label under `orient`.
    pub fn leaf_positions(&self, orient: &Orientation) -> Vec<usize> {
        let mut pos = vec![0; self.n];
        self.fill_leaf_positions(orient, &mut pos);
        pos
    }

    /// Writes leaf positions into `pos` without allocating. Ids increase from
    /// parent to child, so one pass in id order places every subtree.
    pub(crate) fn fill_leaf_positions(&self, orient: &Orientation, pos: &mut [usize]) {
        if self.n == 1 {
            pos[0] = 0;
            return;
        }
        let mut start = vec![0usize; self.vertex_count()];
        for v in self.internal_vertices() {
            let [top, bottom] = self.displayed_children(v, orient);
            start[top] = start[v];
            start[bottom] = start[v] + self.leaves_below[top];
        }
        for (l, p) in pos.iter_mut().enumerate() {
            *p = start[self.n - 1 + l];
        }
    }

    pub fn to_expr(&self, orient: &Orientation) -> Expr {
        fn go(t: &Tree, v: VertexId, o: &Orientation) -> Expr {
            if t.is_leaf(v) {
                Expr::Leaf(v - (t.n - 1))
            } else {
                let [a, b] = t.displayed_children(v, o);
                Expr::node(go(t, a, o), go(t, b, o))
            }
        }
        go(self, self.root(), orient)
    }

    /// Serialization under `orient`.
    pub fn write(&self, orient: &Orientation) -> String {
        self.to_expr(orient).to_string()
    }

    /// Unlabelled shape key of every vertex: a leaf is `*`, an internal vertex
    /// is `(a,b)` with `a <= b` lexicographically.
    pub fn shape_keys(&self) -> Vec<String> {
        let mut keys = vec![String::new(); self.vertex_count()];
        for v in self.n - 1..self.vertex_count() {
            keys[v] = "*".to_string();
        }
        for v in self.internal_vertices().rev() {
            let [a, b] = self.children[v];
            let (x, y) = if keys[a] <= keys[b] { (a, b) } else { (b, a) };
            keys[v] = format!("({},{})", keys[x], keys[y]);
        }
        keys
    }

    pub fn shape_key(&self) -> String {
        self.shape_keys().swap_remove(self.root())
    }

    /// All leaf sequences obtained by reading the tree with children sorted by
    /// shape, where children of equal shape may appear in either order. The
    /// first entry is the base reading; there are `2^k` entries where `k`
    /// counts the vertices whose child subtrees are isomorphic.
    pub fn orbit_orders(&self) -> Vec<Vec<usize>> {
        let keys = self.shape_keys();
        self.orbit_orders_at(self.root(), &keys)
    }

    fn orbit_orders_at(&self, v: VertexId, keys: &[String]) -> Vec<Vec<usize>> {
        if self.is_leaf(v) {
            return vec![vec![v - (self.n - 1)]];
        }
        let [a, b] = self.children[v];
        let (first, second) = if keys[b] < keys[a] { (b, a) } else { (a, b) };
        let p = self.orbit_orders_at(first, keys);
        let q = self.orbit_orders_at(second, keys);
        let mut out = Vec::with_capacity(p.len() * q.len() * 2);
        for x in &p {
            for y in &q {
                out.push(x.iter().chain(y).copied().collect());
            }
        }
        if keys[a] == keys[b] {
            for x in &p {
                for y in &q {
                    out.push(y.iter().chain(x).copied().collect());
                }
            }
        }
        out
    }

    /// Leaf-label permutations induced by shape automorphisms, identity first.
    /// `perm[l]` is the image of leaf `l`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let orders = self.orbit_orders();
        let base = &orders[0];
        orders
            .iter()
            .map(|seq| {
                let mut perm = vec![0; self.n];
                for (i, &l) in base.iter().enumerate() {
                    perm[l] = seq[i];
                }
                perm
            })
            .collect()
    }

    pub fn special_report(&self) -> SpecialVertexReport {
        let mut psi = vec![0u8; self.vertex_count()];
        let mut special = Vec::new();
        for v in self.internal_vertices() {
            if self.has_leaf_child(v) && self.leaves_below[v].is_multiple_of(2) {
                psi[v] = 1;
                special.push(v);
            }
        }
        SpecialVertexReport { psi_total: special.len(), special, psi }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.write(&Orientation::zeros(self.internal_count())))
    }
}

pub(crate) fn complete_expr(height: u32, offset: usize) -> Expr {
    if height == 0 {
        Expr::Leaf(offset)
    } else {
        let half = 1usize << (height - 1);
        Expr::node(complete_expr(height - 1, offset), complete_expr(height - 1, offset + half))
    }
}

/// Turns a shape key into an expression labelling leaves left to right.
fn shape_to_expr(key: &str) -> Expr {
    let mut counter = 0;
    let mut labelled = String::with_capacity(key.len() * 2);
    for c in key.chars() {
        if c == '*' {
            labelled.push_str(&counter.to_string());
            counter += 1;
        } else {
            labelled.push(c);
        }
    }
    parse_expr(&labelled).expect("shape keys are well formed")
}

/// Largest leaf count accepted by shape enumeration (293547 shapes).
pub const SHAPE_LIMIT: usize = 20;

/// Sorted shape keys for `1..=n` leaves.
fn shape_key_table(n: usize) -> Vec<Vec<String>> {
    let mut table: Vec<Vec<String>> = vec![Vec::new(), vec!["*".to_string()]];
    for m in 2..=n {
        let mut keys = Vec::new();
        for k in 1..=m / 2 {
            for (i, a) in table[k].iter().enumerate() {
                let from = if k == m - k { i } else { 0 };
                for b in &table[m - k][from..] {
                    let (x, y) = if a <= b { (a, b) } else { (b, a) };
                    keys.push(format!("({x},{y})"));
                }
            }
        }
        keys.sort();
        table.push(keys);
    }
    table
}

/// One representative per unordered shape with `n` leaves, in sorted key order.
/// Leaves are labelled left to right in the canonical reading.
pub fn enumerate_shapes(n: usize) -> Result<std::vec::IntoIter<Tree>> {
    if n == 0 {
        return Err(Error::Invalid("a tree needs at least one leaf".into()));
    }
    if n > SHAPE_LIMIT {
        return Err(Error::SizeLimit { what: "shape size", got: n, limit: SHAPE_LIMIT });
    }
    let table = shape_key_table(n);
    let trees: Vec<Tree> = table[n]
        .iter()
        .map(|key| Tree::from_expr(&shape_to_expr(key)).unwrap().0)
        .collect();
    Ok(trees.into_iter())
}

/// Minimum of `psi_total` over all shapes with `n` leaves, with the first
/// minimising shape (a realizer).
pub fn h_exact(n: usize) -> Result<(usize, Tree)> {
    let mut best: Option<(usize, Tree)> = None;
    for t in enumerate_shapes(n)? {
        let psi = t.special_report().psi_total;
        if best.as_ref().is_none_or(|(b, _)| psi < *b) {
            best = Some((psi, t));
        }
    }
    Ok(best.unwrap())
}

/// `0` for a single leaf, otherwise `floor(n / 4) + 1`.
pub fn h_formula(n: usize) -> Result<usize> {
    match n {
        0 => Err(Error::Invalid("a tree needs at least one leaf".into())),
        1 => Ok(0),
        _ => Ok(n / 4 + 1),
    }
}

/// Uniformly random plane binary tree with `n` leaves, labelled top to bottom.
/// A subtree with `m` leaves splits as `k + (m - k)` with probability
/// proportional to `Cat(k - 1) * Cat(m - k - 1)`.
pub fn random_plane_expr<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Expr {
    assert!(n >= 1);
    let mut log_cat = vec![0.0f64; n];
    for m in 1..n {
        let k = (m - 1) as f64;
        log_cat[m] = log_cat[m - 1] + (2.0 * (2.0 * k + 1.0) / (k + 2.0)).ln();
    }
    fn build<R: Rng + ?Sized>(m: usize, next: &mut usize, log_cat: &[f64], rng: &mut R) -> Expr {
        if m == 1 {
            *next += 1;
            return Expr::Leaf(*next - 1);
        }
        let weights: Vec<f64> = (1..m)
            .map(|k| (log_cat[k - 1] + log_cat[m - k - 1] - log_cat[m - 1]).exp())
            .collect();
        let total: f64 = weights.iter().sum();
        let mut u = rng.gen::<f64>() * total;
        let mut k = m - 1;
        for (i, w) in weights.iter().enumerate() {
            if u < *w {
                k = i + 1;
                break;
            }
            u -= w;
        }
        let a = build(k, next, log_cat, rng);
        let b = build(m - k, next, log_cat, rng);
        Expr::node(a, b)
    }
    let mut next = 0;
    build(n, &mut next, &log_cat, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_degenerate_and_small() {
        let (t, o) = parse_tree("0").unwrap();
        assert_eq!(t.n(), 1);
        assert_eq!(t.root(), 0);
        assert!(t.is_leaf(0));
        assert!(o.is_empty());

        let (t, _) = parse_tree("(0,1)").unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.children(0), Some([1, 2]));

        let (t, _) = parse_tree(" ( (0, 1),\n(2,3) ) ").unwrap();
        assert_eq!(t, Tree::complete(2));
    }

    #[test]
    fn written_order_is_orientation_not_identity() {
        let (a, oa) = parse_tree("((0,1),(2,3))").unwrap();
        let (b, ob) = parse_tree("((3,2),(1,0))").unwrap();
        assert_eq!(a, b);
        assert_eq!(oa.bits(), &[false, false, false]);
        assert_eq!(ob.bits(), &[true, true, true]);
        assert_eq!(b.write(&ob), "((3,2),(1,0))");
        assert_eq!(b.to_string(), "((0,1),(2,3))");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_tree("((0,1),2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree("(0,1))"), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree("((0),1)"), Err(Error::SingleChild { pos: 1 })));
        assert!(matches!(parse_tree("(0,0)"), Err(Error::Labels { .. })));
        assert!(matches!(parse_tree("(0,2)"), Err(Error::Labels { .. })));
        assert!(matches!(parse_tree("(0,1,2)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree("(a,1)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn structure_invariants() {
        let t = Tree::caterpillar(6);
        assert_eq!(t.vertex_count(), 11);
        assert_eq!(t.internal_count(), 5);
        for v in t.internal_vertices() {
            let [a, b] = t.children(v).unwrap();
            assert_eq!(t.parent(a), Some(v));
            assert_eq!(t.parent(b), Some(v));
            assert!(a > v && b > v);
        }
        assert_eq!(t.leaf_descendant_count(t.root()).unwrap(), 6);
        assert!(t.leaf_descendant_count(11).is_err());
    }

    #[test]
    fn lca_examples() {
        let t = Tree::complete(2);
        assert_eq!(t.lca(2, 2).unwrap(), t.leaf(2));
        let [left, _] = t.children(0).unwrap();
        assert_eq!(t.lca(0, 1).unwrap(), left);
        assert_eq!(t.lca(0, 3).unwrap(), t.root());
        assert_eq!(t.lca(0, 4), Err(Error::UnknownLeaf(4)));
    }

    #[test]
    fn leaf_counts_on_caterpillar() {
        // ((0,1),2),3): root -> middle -> bottom cherry (0,1)
        let (t, _) = parse_tree("(((0,1),2),3)").unwrap();
        let middle = t.parent(t.leaf(2)).unwrap();
        assert_eq!(t.leaf_descendant_count(middle).unwrap(), 3);
        assert_eq!(t.leaf_descendant_count(t.leaf(0)).unwrap(), 1);
        assert_eq!(t.leaf_descendant_count(t.root()).unwrap(), 4);
    }

    #[test]
    fn special_examples() {
        assert_eq!(Tree::complete(2).special_report().psi_total, 2);
        let cat = Tree::caterpillar(4);
        let rep = cat.special_report();
        assert_eq!(rep.psi_total, 2);
        assert!(rep.special.contains(&cat.root()));
        assert_eq!(Tree::single().special_report().psi_total, 0);
        assert_eq!(rep.psi.iter().map(|&x| x as usize).sum::<usize>(), rep.psi_total);
    }

    #[test]
    fn h_values() {
        assert_eq!(h_exact(1).unwrap().0, 0);
        assert_eq!(h_exact(2).unwrap().0, 1);
        assert_eq!(h_exact(3).unwrap().0, 1);
        assert_eq!(h_exact(8).unwrap().0, 3);
        assert_eq!(h_formula(1).unwrap(), 0);
        assert_eq!(h_formula(4).unwrap(), 2);
        assert_eq!(h_formula(12).unwrap(), 4);
        assert!(h_formula(0).is_err());
        assert!(h_exact(0).is_err());
        let (h, realizer) = h_exact(9).unwrap();
        assert_eq!(realizer.special_report().psi_total, h);
    }

    #[test]
    fn shape_counts_small() {
        let counts: Vec<usize> = (1..=8).map(|n| enumerate_shapes(n).unwrap().count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
        assert!(enumerate_shapes(0).is_err());
    }

    #[test]
    fn automorphism_group_sizes() {
        assert_eq!(Tree::caterpillar(4).automorphisms().len(), 2);
        assert_eq!(Tree::complete(2).automorphisms().len(), 8);
        assert_eq!(Tree::single().automorphisms(), vec![vec![0]]);
        let id: Vec<usize> = (0..4).collect();
        assert_eq!(Tree::complete(2).automorphisms()[0], id);
    }

    #[test]
    fn orientation_index_order() {
        let o = Orientation::from_index(3, 0b100);
        assert_eq!(o.bits(), &[true, false, false]);
    }
}
