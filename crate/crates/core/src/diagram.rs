//! Walled Brauer diagrams and formal linear combinations of them.
//!
//! Nodes are numbered `0..n` along the north row and `n..2n` along the south
//! row, `n = r + s`; the wall sits between positions `r` and `r + 1`
//! (1-based). A diagram is stored as its partner array, which is already a
//! canonical form. In a product `a·b` the diagram `a` is drawn on top.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// Largest `r + s` accepted by [`enumerate_basis`].
pub const DEFAULT_BASIS_BOUND: usize = 8;

/// A node, 1-indexed within its row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    North(usize),
    South(usize),
}

impl Node {
    fn index(self, n: usize) -> Result<usize> {
        let (k, off) = match self {
            Node::North(k) => (k, 0),
            Node::South(k) => (k, n),
        };
        if k == 0 || k > n {
            return Err(Error::InvalidDiagram(format!("node {self} out of range 1..={n}")));
        }
        Ok(k - 1 + off)
    }

    fn from_index(i: usize, n: usize) -> Node {
        if i < n {
            Node::North(i + 1)
        } else {
            Node::South(i - n + 1)
        }
    }

    pub fn position(self) -> usize {
        match self {
            Node::North(k) | Node::South(k) => k,
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::North(k) => write!(f, "N{k}"),
            Node::South(k) => write!(f, "S{k}"),
        }
    }
}

impl std::str::FromStr for Node {
    type Err = Error;

    fn from_str(s: &str) -> Result<Node> {
        let bad = || Error::Parse(format!("bad node tag {s:?}"));
        let (tag, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let k: usize = rest.parse().map_err(|_| bad())?;
        match tag {
            "N" => Ok(Node::North(k)),
            "S" => Ok(Node::South(k)),
            _ => Err(bad()),
        }
    }
}

/// A basis diagram of `B_{r,s}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalledDiagram {
    r: usize,
    s: usize,
    partner: Vec<u8>,
}

impl WalledDiagram {
    fn from_partner(r: usize, s: usize, partner: Vec<u8>) -> Self {
        debug_assert_eq!(partner.len(), 2 * (r + s));
        Self { r, s, partner }
    }

    fn n(&self) -> usize {
        self.r + self.s
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    /// Validates a perfect matching against the wall rules.
    pub fn from_edges(r: usize, s: usize, edges: &[(Node, Node)]) -> Result<Self> {
        let n = r + s;
        if n > 120 {
            return Err(Error::BoundExceeded {
                what: "r + s",
                value: n,
                bound: 120,
            });
        }
        let mut partner = vec![u8::MAX; 2 * n];
        for &(a, b) in edges {
            let (i, j) = (a.index(n)?, b.index(n)?);
            if i == j || partner[i] != u8::MAX || partner[j] != u8::MAX {
                return Err(Error::InvalidDiagram(format!("node reused in edge {a}-{b}")));
            }
            partner[i] = j as u8;
            partner[j] = i as u8;
        }
        if partner.contains(&u8::MAX) {
            return Err(Error::InvalidDiagram("not a perfect matching".into()));
        }
        let d = Self::from_partner(r, s, partner);
        d.check_wall()?;
        Ok(d)
    }

    fn check_wall(&self) -> Result<()> {
        let n = self.n();
        for i in 0..2 * n {
            let j = self.partner[i] as usize;
            let (a, b) = (Node::from_index(i, n), Node::from_index(j, n));
            let left = |x: Node| x.position() <= self.r;
            let same_row = (i < n) == (j < n);
            let ok = if same_row { left(a) != left(b) } else { left(a) == left(b) };
            if !ok {
                return Err(Error::InvalidDiagram(format!("edge {a}-{b} violates the wall")));
            }
        }
        Ok(())
    }

    pub fn identity(r: usize, s: usize) -> Self {
        let n = r + s;
        let partner = (0..2 * n).map(|i| ((i + n) % (2 * n)) as u8).collect();
        Self::from_partner(r, s, partner)
    }

    /// `E_{i,j}`: arcs `i–j` on both rows, lines elsewhere. Needs `i ≤ r < j`.
    pub fn e(r: usize, s: usize, i: usize, j: usize) -> Result<Self> {
        if !(1 <= i && i <= r && r < j && j <= r + s) {
            return Err(Error::InvalidDiagram(format!("E_{{{i},{j}}} is not a walled arc in B_({r},{s})")));
        }
        Ok(Self::with_arcs(r, s, &[(i, j)], &[(i, j)]))
    }

    /// Diagram with the given north and south arcs; free nodes joined in order.
    fn with_arcs(r: usize, s: usize, north: &[(usize, usize)], south: &[(usize, usize)]) -> Self {
        let n = r + s;
        let v = PartialOneRow::new(r, s, north.to_vec()).expect("valid arcs");
        let w = PartialOneRow::new(r, s, south.to_vec()).expect("valid arcs");
        let m = n - 2 * v.t();
        Self::assemble(&v, &w, &(0..m).collect::<Vec<_>>()).expect("identity matching")
    }

    /// Adjacent transposition `s_i` swapping strands `i` and `i + 1`.
    pub fn transposition(r: usize, s: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= r + s || i == r {
            return Err(Error::WallCrossing(vec![i, i + 1]));
        }
        let mut g: Vec<usize> = (0..r + s).collect();
        g.swap(i - 1, i);
        Self::from_permutation(r, s, &g)
    }

    /// Diagram of the group element `g` (0-based images, `g[k] = g(k)`):
    /// north `k` is joined to south `g⁻¹(k)`, which makes the map
    /// multiplicative for the top-first product.
    pub fn from_permutation(r: usize, s: usize, g: &[usize]) -> Result<Self> {
        let n = r + s;
        check_permutation(g, n)?;
        if (0..n).any(|k| (k < r) != (g[k] < r)) {
            return Err(Error::WallCrossing(g.to_vec()));
        }
        let mut partner = vec![0u8; 2 * n];
        for (k, &gk) in g.iter().enumerate() {
            // north g(k) -> south k
            partner[gk] = (n + k) as u8;
            partner[n + k] = gk as u8;
        }
        Ok(Self::from_partner(r, s, partner))
    }

    /// Sorted edge list in the fixed node order.
    pub fn edges(&self) -> Vec<(Node, Node)> {
        let n = self.n();
        (0..2 * n)
            .filter(|&i| i < self.partner[i] as usize)
            .map(|i| (Node::from_index(i, n), Node::from_index(self.partner[i] as usize, n)))
            .collect()
    }

    pub fn partner_of(&self, node: Node) -> Result<Node> {
        let n = self.n();
        Ok(Node::from_index(self.partner[node.index(n)?] as usize, n))
    }

    /// Top-first product: returns the number of closed loops and the diagram.
    pub fn multiply(&self, other: &WalledDiagram) -> Result<(usize, WalledDiagram)> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.r, self.s, other.r, other.s));
        }
        Ok(self.compose(other))
    }

    fn compose(&self, other: &WalledDiagram) -> (usize, WalledDiagram) {
        let n = self.n();
        // top 0..n, middle n..2n, bottom 2n..3n
        let mut uf = UnionFind::new(3 * n);
        for i in 0..n {
            uf.union(i, self.partner[i] as usize);
            uf.union(n + i, self.partner[n + i] as usize);
            let lift = |x: usize| x + n;
            uf.union(lift(i), lift(other.partner[i] as usize));
            uf.union(lift(n + i), lift(other.partner[n + i] as usize));
        }
        let mut first: Vec<Option<usize>> = vec![None; 3 * n];
        let mut partner = vec![0u8; 2 * n];
        let mut exterior_roots = vec![false; 3 * n];
        for x in (0..n).chain(2 * n..3 * n) {
            let root = uf.find(x);
            exterior_roots[root] = true;
            let ext = if x < n { x } else { x - n };
            match first[root] {
                None => first[root] = Some(ext),
                Some(y) => {
                    partner[ext] = y as u8;
                    partner[y] = ext as u8;
                }
            }
        }
        let mut seen = vec![false; 3 * n];
        let mut loops = 0;
        for x in n..2 * n {
            let root = uf.find(x);
            if !exterior_roots[root] && !seen[root] {
                seen[root] = true;
                loops += 1;
            }
        }
        (loops, WalledDiagram::from_partner(self.r, self.s, partner))
    }

    /// Swaps the two rows.
    pub fn involution(&self) -> WalledDiagram {
        let n = self.n();
        let flip = |x: usize| (x + n) % (2 * n);
        let mut partner = vec![0u8; 2 * n];
        for i in 0..2 * n {
            partner[flip(i)] = flip(self.partner[i] as usize) as u8;
        }
        WalledDiagram::from_partner(self.r, self.s, partner)
    }

    /// Numbers of propagating lines left and right of the wall.
    pub fn propagating_vector(&self) -> (usize, usize) {
        let n = self.n();
        let mut a = 0;
        let mut b = 0;
        for i in 0..n {
            if self.partner[i] as usize >= n {
                if i < self.r {
                    a += 1;
                } else {
                    b += 1;
                }
            }
        }
        (a, b)
    }

    /// Number of arcs on each row, i.e. the ideal in which the diagram sits.
    pub fn ideal_layer(&self) -> usize {
        self.r - self.propagating_vector().0
    }

    pub fn north_arcs(&self) -> PartialOneRow {
        self.row_arcs(0)
    }

    pub fn south_arcs(&self) -> PartialOneRow {
        self.row_arcs(self.n())
    }

    fn row_arcs(&self, off: usize) -> PartialOneRow {
        let n = self.n();
        let arcs = (0..self.r)
            .filter_map(|i| {
                let j = self.partner[off + i] as usize;
                (j >= off && j < off + n).then(|| (i + 1, j - off + 1))
            })
            .collect();
        PartialOneRow::new(self.r, self.s, arcs).expect("diagram arcs are valid")
    }

    /// Splits into north arcs, south arcs and the matching `σ` of free nodes:
    /// the `k`-th free north node joins the `σ[k]`-th free south node.
    pub fn factor_one_row(&self) -> (PartialOneRow, PartialOneRow, Vec<usize>) {
        let n = self.n();
        let v = self.north_arcs();
        let w = self.south_arcs();
        let north_free = v.free_nodes();
        let south_free = w.free_nodes();
        let mut south_rank = vec![usize::MAX; n + 1];
        for (k, &p) in south_free.iter().enumerate() {
            south_rank[p] = k;
        }
        let sigma = north_free
            .iter()
            .map(|&p| south_rank[self.partner[p - 1] as usize - n + 1])
            .collect();
        (v, w, sigma)
    }

    /// Inverse of [`factor_one_row`](Self::factor_one_row).
    pub fn assemble(v: &PartialOneRow, w: &PartialOneRow, sigma: &[usize]) -> Result<WalledDiagram> {
        if (v.r, v.s) != (w.r, w.s) {
            return Err(Error::AmbientMismatch(v.r, v.s, w.r, w.s));
        }
        if v.t() != w.t() {
            return Err(Error::InvalidDiagram("north and south arc counts differ".into()));
        }
        let (r, s, t) = (v.r, v.s, v.t());
        let n = r + s;
        let m = n - 2 * t;
        check_permutation(sigma, m)?;
        if (0..m).any(|k| (k < r - t) != (sigma[k] < r - t)) {
            return Err(Error::WallCrossing(sigma.to_vec()));
        }
        let mut partner = vec![0u8; 2 * n];
        for &(a, b) in &v.arcs {
            partner[a - 1] = (b - 1) as u8;
            partner[b - 1] = (a - 1) as u8;
        }
        for &(a, b) in &w.arcs {
            partner[n + a - 1] = (n + b - 1) as u8;
            partner[n + b - 1] = (n + a - 1) as u8;
        }
        let nf = v.free_nodes();
        let sf = w.free_nodes();
        for (k, &p) in nf.iter().enumerate() {
            let q = sf[sigma[k]];
            partner[p - 1] = (n + q - 1) as u8;
            partner[n + q - 1] = (p - 1) as u8;
        }
        Ok(WalledDiagram::from_partner(r, s, partner))
    }

    /// Inserts a propagating line at 1-based position `pos` of the enlarged
    /// row; `left` decides which side of the wall the new strand joins.
    fn insert_line(&self, pos: usize, left: bool) -> WalledDiagram {
        let n = self.n();
        let (r2, s2) = if left { (self.r + 1, self.s) } else { (self.r, self.s + 1) };
        let n2 = n + 1;
        let shift = |i: usize| -> usize {
            let (row, k) = if i < n { (0, i) } else { (n2, i - n) };
            row + if k + 1 >= pos { k + 1 } else { k }
        };
        let mut partner = vec![0u8; 2 * n2];
        for i in 0..2 * n {
            partner[shift(i)] = shift(self.partner[i] as usize) as u8;
        }
        partner[pos - 1] = (n2 + pos - 1) as u8;
        partner[n2 + pos - 1] = (pos - 1) as u8;
        WalledDiagram::from_partner(r2, s2, partner)
    }

    /// `Ψ_L`: new strand immediately left of the wall, `B_{r,s} → B_{r+1,s}`.
    pub fn psi_left(&self) -> WalledDiagram {
        self.insert_line(self.r + 1, true)
    }

    /// `Ψ_R`: new strand immediately right of the wall, `B_{r,s} → B_{r,s+1}`.
    pub fn psi_right(&self) -> WalledDiagram {
        self.insert_line(self.r + 1, false)
    }

    /// Two new strands either side of the wall, `B_{r,s} → B_{r+1,s+1}`.
    pub fn widen(&self) -> WalledDiagram {
        self.psi_left().psi_right()
    }

    /// Uniformly random basis diagram.
    pub fn random<G: rand::Rng + ?Sized>(r: usize, s: usize, rng: &mut G) -> WalledDiagram {
        let mut perm: Vec<usize> = (0..r + s).collect();
        perm.shuffle(rng);
        from_flipped(r, s, &perm)
    }
}

impl fmt::Debug for WalledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{})[", self.r, self.s)?;
        for (i, (a, b)) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    r: usize,
    s: usize,
    edges: Vec<(String, String)>,
}

impl Serialize for WalledDiagram {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson {
            r: self.r,
            s: self.s,
            edges: self.edges().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for WalledDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = DiagramJson::deserialize(de)?;
        let edges = j
            .edges
            .iter()
            .map(|(a, b)| Ok((a.parse()?, b.parse()?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        WalledDiagram::from_edges(j.r, j.s, &edges).map_err(serde::de::Error::custom)
    }
}

fn check_permutation(g: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if g.len() != n {
        return Err(Error::InvalidPermutation(g.to_vec()));
    }
    for &x in g {
        if x >= n || seen[x] {
            return Err(Error::InvalidPermutation(g.to_vec()));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Reading the right-hand strands upside down turns a walled diagram into a
/// permutation diagram; this inverts that for `perm[i] = j` (top i, bottom j).
fn from_flipped(r: usize, s: usize, perm: &[usize]) -> WalledDiagram {
    let n = r + s;
    let top = |i: usize| if i < r { i } else { n + i };
    let bottom = |j: usize| if j < r { n + j } else { j };
    let mut partner = vec![0u8; 2 * n];
    for (i, &j) in perm.iter().enumerate() {
        let (a, b) = (top(i), bottom(j));
        partner[a] = b as u8;
        partner[b] = a as u8;
    }
    WalledDiagram::from_partner(r, s, partner)
}

/// Every basis diagram of `B_{r,s}` exactly once, for `r + s ≤` [`DEFAULT_BASIS_BOUND`].
pub fn enumerate_basis(r: usize, s: usize) -> Result<Vec<WalledDiagram>> {
    enumerate_basis_bounded(r, s, DEFAULT_BASIS_BOUND)
}

pub fn enumerate_basis_bounded(r: usize, s: usize, bound: usize) -> Result<Vec<WalledDiagram>> {
    let n = r + s;
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "r + s",
            value: n,
            bound,
        });
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(from_flipped(r, s, &perm));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

/// Lexicographic successor; `false` once the last permutation is reached.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A set of `t` disjoint cross-wall arcs on one row of `r + s` nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialOneRow {
    r: usize,
    s: usize,
    /// `(left, right)` with `left ≤ r < right`, sorted by left endpoint.
    arcs: Vec<(usize, usize)>,
}

impl PartialOneRow {
    pub fn new(r: usize, s: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        let n = r + s;
        let mut used = vec![false; n + 1];
        for a in arcs.iter_mut() {
            if a.0 > a.1 {
                *a = (a.1, a.0);
            }
            let (x, y) = *a;
            if x == 0 || y > n || x > r || y <= r || used[x] || used[y] {
                return Err(Error::InvalidDiagram(format!("bad arc ({x},{y}) in one-row diagram")));
            }
            used[x] = true;
            used[y] = true;
        }
        arcs.sort_unstable();
        Ok(Self { r, s, arcs })
    }

    /// No arcs.
    pub fn empty(r: usize, s: usize) -> Self {
        Self { r, s, arcs: Vec::new() }
    }

    /// Nested arcs `(r - k, r + 1 + k)` for `k < t`.
    pub fn nested(r: usize, s: usize, t: usize) -> Result<Self> {
        if t > r.min(s) {
            return Err(Error::InvalidDiagram(format!("{t} arcs do not fit in ({r},{s})")));
        }
        Self::new(r, s, (0..t).map(|k| (r - k, r + 1 + k)).collect())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Positions not on an arc, ascending.
    pub fn free_nodes(&self) -> Vec<usize> {
        let mut used = vec![false; self.r + self.s + 1];
        for &(a, b) in &self.arcs {
            used[a] = true;
            used[b] = true;
        }
        (1..=self.r + self.s).filter(|&i| !used[i]).collect()
    }

    /// All of `𝒱_{r,s,t}`, lexicographic in the sorted arc lists.
    pub fn enumerate(r: usize, s: usize, t: usize) -> Vec<PartialOneRow> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; r + s + 1];
        fill_arcs(r, s, t, 1, &mut cur, &mut used, &mut out);
        out.sort();
        out
    }
}

fn fill_arcs(
    r: usize,
    s: usize,
    t: usize,
    from: usize,
    cur: &mut Vec<(usize, usize)>,
    used: &mut [bool],
    out: &mut Vec<PartialOneRow>,
) {
    if cur.len() == t {
        out.push(PartialOneRow { r, s, arcs: cur.clone() });
        return;
    }
    for a in from..=r {
        for b in r + 1..=r + s {
            if used[b] {
                continue;
            }
            used[b] = true;
            cur.push((a, b));
            fill_arcs(r, s, t, a + 1, cur, used, out);
            cur.pop();
            used[b] = false;
        }
    }
}

/// Finite linear combination of diagrams in one ambient `B_{r,s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramElement<E> {
    r: usize,
    s: usize,
    terms: BTreeMap<WalledDiagram, E>,
}

impl<E: Clone + PartialEq> DiagramElement<E> {
    pub fn zero(r: usize, s: usize) -> Self {
        Self {
            r,
            s,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis<R: Ring<Elem = E>>(ring: &R, d: WalledDiagram) -> Self {
        Self::term(ring, ring.one(), d)
    }

    pub fn term<R: Ring<Elem = E>>(ring: &R, c: E, d: WalledDiagram) -> Self {
        let mut out = Self::zero(d.r, d.s);
        if !ring.is_zero(&c) {
            out.terms.insert(d, c);
        }
        out
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    pub fn terms(&self) -> &BTreeMap<WalledDiagram, E> {
        &self.terms
    }

    pub fn coefficient<R: Ring<Elem = E>>(&self, ring: &R, d: &WalledDiagram) -> E {
        self.terms.get(d).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.r, self.s, other.r, other.s));
        }
        Ok(())
    }

    fn accumulate<R: Ring<Elem = E>>(&mut self, ring: &R, d: WalledDiagram, c: E) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(e) => {
                *e = ring.add(e, &c);
                if ring.is_zero(e) {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.accumulate(ring, d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        let mut out = Self::zero(self.r, self.s);
        for (d, x) in &self.terms {
            out.accumulate(ring, d.clone(), ring.mul(c, x));
        }
        out
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.r, self.s);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (loops, d) = a.compose(b);
                let c = ring.mul(&ring.mul(x, y), &ring.delta_pow(loops));
                out.accumulate(ring, d, c);
            }
        }
        Ok(out)
    }

    pub fn involution<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let mut out = Self::zero(self.r, self.s);
        for (d, c) in &self.terms {
            out.accumulate(ring, d.involution(), c.clone());
        }
        out
    }

    /// Applies a diagram map term by term.
    pub fn map_diagrams<R, F>(&self, ring: &R, r: usize, s: usize, f: F) -> Self
    where
        R: Ring<Elem = E>,
        F: Fn(&WalledDiagram) -> WalledDiagram,
    {
        let mut out = Self::zero(r, s);
        for (d, c) in &self.terms {
            out.accumulate(ring, f(d), c.clone());
        }
        out
    }
}

/// `Φ_{r,s}`: `B_{r-1,s-1} → e B_{r,s} e`, `D ↦ e·D'·e` with `D'` the widened diagram.
pub fn phi<F: Field>(field: &F, x: &DiagramElement<F::Elem>) -> Result<DiagramElement<F::Elem>> {
    let (r, s) = x.ambient();
    let e = idempotent_e(field, r + 1, s + 1, 1)?;
    let widened = x.map_diagrams(field, r + 1, s + 1, WalledDiagram::widen);
    e.mul(field, &widened)?.mul(field, &e)
}

/// The idempotent `e_{r,s,i}`. For `δ ≠ 0` this is `δ^{-i}` times the nested
/// arc diagram; for `δ = 0` the alternative idempotent is used and nested
/// through `Φ`.
pub fn idempotent_e<F: Field>(field: &F, r: usize, s: usize, i: usize) -> Result<DiagramElement<F::Elem>> {
    if i == 0 {
        return Ok(DiagramElement::basis(field, WalledDiagram::identity(r, s)));
    }
    if i > r.min(s) {
        return Err(Error::IdempotentUnavailable(format!("e_({r},{s},{i}) needs i ≤ min(r,s)")));
    }
    let delta = field.delta();
    if let Some(inv) = field.inv(&delta) {
        let v = PartialOneRow::nested(r, s, i)?;
        let d = WalledDiagram::with_arcs(r, s, v.arcs(), v.arcs());
        let c = (0..i).fold(field.one(), |acc, _| field.mul(&acc, &inv));
        return Ok(DiagramElement::term(field, c, d));
    }
    if i == 1 {
        return Ok(DiagramElement::basis(field, tilde_e(r, s)?));
    }
    let inner = idempotent_e(field, r - 1, s - 1, i - 1)?;
    let e = DiagramElement::basis(field, tilde_e(r, s)?);
    let widened = inner.map_diagrams(field, r, s, WalledDiagram::widen);
    e.mul(field, &widened)?.mul(field, &e)
}

/// The `δ = 0` idempotent of `B_{r,s}`: north arc `(r, r+1)`, south arc
/// `(r, r+2)`, north `r+2` to south `r+1`; mirrored when only `r ≥ 2`.
pub fn tilde_e(r: usize, s: usize) -> Result<WalledDiagram> {
    let n = r + s;
    let mut edges: Vec<(Node, Node)> = Vec::new();
    let (skip, extra): (Vec<usize>, Vec<(Node, Node)>) = if r >= 1 && s >= 2 {
        (
            vec![r, r + 1, r + 2],
            vec![
                (Node::North(r), Node::North(r + 1)),
                (Node::South(r), Node::South(r + 2)),
                (Node::North(r + 2), Node::South(r + 1)),
            ],
        )
    } else if r >= 2 && s >= 1 {
        (
            vec![r - 1, r, r + 1],
            vec![
                (Node::North(r), Node::North(r + 1)),
                (Node::South(r - 1), Node::South(r + 1)),
                (Node::North(r - 1), Node::South(r)),
            ],
        )
    } else {
        return Err(Error::IdempotentUnavailable(format!(
            "no idempotent of this kind in B_({r},{s}) at δ = 0"
        )));
    };
    edges.extend(extra);
    for k in (1..=n).filter(|k| !skip.contains(k)) {
        edges.push((Node::North(k), Node::South(k)));
    }
    WalledDiagram::from_edges(r, s, &edges)
}
