//! Partitions, boxes, bipartitions and standard tableaux.
//!
//! Boxes are indexed from 1 in both coordinates and the content of the box in
//! row `i`, column `j` is `j - i`. The empty partition is an ordinary value and
//! every operation here is total on it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A box of a Young diagram, 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungBox {
    pub row: usize,
    pub col: usize,
}

impl YoungBox {
    pub fn new(row: usize, col: usize) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Self { row, col }
    }

    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Self { parts })
    }

    /// Builds a partition, dropping trailing zero parts.
    pub fn from_padded(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `i` (1-indexed), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn contains_box(&self, b: YoungBox) -> bool {
        b.col <= self.part(b.row)
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = YoungBox> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| YoungBox::new(i + 1, j)))
    }

    pub fn content_sum(&self) -> i64 {
        self.boxes().map(|b| b.content()).sum()
    }

    /// `self ⊆ other` as Young diagrams.
    pub fn is_subpartition_of(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    pub fn intersection(&self, other: &Partition) -> Partition {
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| *a.min(b))
            .collect();
        Partition { parts }
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Boxes of `self` that are not in `inner`.
    pub fn skew_boxes(&self, inner: &Partition) -> Vec<YoungBox> {
        self.boxes().filter(|b| !inner.contains_box(*b)).collect()
    }

    pub fn add_box(&self, b: YoungBox) -> Result<Partition> {
        let mut parts = self.parts.clone();
        if b.row == parts.len() + 1 {
            parts.push(0);
        }
        if b.row > parts.len() || parts[b.row - 1] + 1 != b.col {
            return Err(Error::InvalidPartition(parts));
        }
        parts[b.row - 1] += 1;
        Partition::new(parts)
    }

    pub fn remove_box(&self, b: YoungBox) -> Result<Partition> {
        if b.row == 0 || b.row > self.len() || self.parts[b.row - 1] != b.col {
            return Err(Error::InvalidPartition(self.parts.clone()));
        }
        let mut parts = self.parts.clone();
        parts[b.row - 1] -= 1;
        Partition::from_padded(parts)
    }

    /// Removes an arbitrary set of boxes; fails unless the result is a partition.
    pub fn remove_boxes(&self, boxes: &[YoungBox]) -> Result<Partition> {
        let mut parts = self.parts.clone();
        for b in boxes {
            if !self.contains_box(*b) {
                return Err(Error::InvalidPartition(parts));
            }
        }
        for (i, part) in parts.iter_mut().enumerate() {
            let removed = boxes.iter().filter(|b| b.row == i + 1).count();
            let min_col = boxes.iter().filter(|b| b.row == i + 1).map(|b| b.col).min();
            if let Some(first) = min_col {
                // removed boxes in a row must be a suffix of that row
                if first + removed != *part + 1 {
                    return Err(Error::InvalidPartition(self.parts.clone()));
                }
            }
            *part -= removed;
        }
        Partition::from_padded(parts)
    }

    /// All partitions of `n`, in reverse lexicographic order starting at `(n)`.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for k in (1..=n.min(max)).rev() {
                prefix.push(k);
                rec(n - k, k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All subpartitions of `self`, including `∅` and `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(outer: &[usize], i: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition {
                parts: prefix.clone(),
            });
            if i >= outer.len() {
                return;
            }
            for k in 1..=outer[i].min(max) {
                prefix.push(k);
                rec(outer, i + 1, k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.parts, 0, usize::MAX, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Pair `(λ^L, λ^R)` of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Bipartition {
    pub left: Partition,
    pub right: Partition,
}

impl Bipartition {
    pub fn new(left: Partition, right: Partition) -> Self {
        Self { left, right }
    }

    pub fn from_parts(left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        Ok(Self::new(Partition::new(left)?, Partition::new(right)?))
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.left.degree(), self.right.degree())
    }

    pub fn content_sum(&self) -> i64 {
        self.left.content_sum() + self.right.content_sum()
    }

    pub fn is_sub_of(&self, other: &Bipartition) -> bool {
        self.left.is_subpartition_of(&other.left) && self.right.is_subpartition_of(&other.right)
    }

    pub fn intersection(&self, other: &Bipartition) -> Bipartition {
        Bipartition::new(
            self.left.intersection(&other.left),
            self.right.intersection(&other.right),
        )
    }

    /// All bipartitions of `(a, b)`, left-major in the order of [`Partition::all`].
    pub fn all(a: usize, b: usize) -> Vec<Bipartition> {
        let rights = Partition::all(b);
        Partition::all(a)
            .into_iter()
            .flat_map(|l| rights.iter().map(move |r| Bipartition::new(l.clone(), r.clone())))
            .collect()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

pub fn removable_boxes(p: &Partition) -> Vec<YoungBox> {
    let parts = p.parts();
    (0..parts.len())
        .filter(|&i| i + 1 == parts.len() || parts[i + 1] < parts[i])
        .map(|i| YoungBox::new(i + 1, parts[i]))
        .collect()
}

pub fn addable_boxes(p: &Partition) -> Vec<YoungBox> {
    let parts = p.parts();
    let mut out = Vec::new();
    for i in 0..=parts.len() {
        let len = parts.get(i).copied().unwrap_or(0);
        if i == 0 || parts[i - 1] > len {
            out.push(YoungBox::new(i + 1, len + 1));
        }
    }
    out
}

/// Number of boxes of content `i`, or of content congruent to `i` when
/// `modulus > 0`.
pub fn content_count(p: &Partition, i: i64, modulus: u64) -> usize {
    if modulus == 0 {
        p.boxes().filter(|b| b.content() == i).count()
    } else {
        let m = modulus as i64;
        let target = i.rem_euclid(m);
        p.boxes().filter(|b| b.content().rem_euclid(m) == target).count()
    }
}

/// Dominance order: `p ⊵ q`.
pub fn dominates(p: &Partition, q: &Partition) -> Result<bool> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    let n = p.len().max(q.len());
    let (mut sp, mut sq) = (0, 0);
    for i in 1..=n {
        sp += p.part(i);
        sq += q.part(i);
        if sp < sq {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f^λ` by the hook length formula.
pub fn specht_dim(p: &Partition) -> u64 {
    let conj = p.conjugate();
    let n = p.degree() as u128;
    let num: u128 = (1..=n).product();
    let hooks: u128 = p
        .boxes()
        .map(|b| ((p.part(b.row) - b.col) + (conj.part(b.col) - b.row) + 1) as u128)
        .product();
    (num / hooks) as u64
}

/// `true` unless some part value repeats at least `prime` times.
pub fn p_regular(p: &Partition, prime: u64) -> bool {
    if prime == 0 {
        return true;
    }
    let parts = p.parts();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        if (j - i) as u64 >= prime {
            return false;
        }
        i = j;
    }
    true
}

/// Littlewood–Richardson coefficient `c^λ_{μν}`, counted by enumerating
/// LR tableaux of shape `λ/μ` and weight `ν`.
pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.degree() + nu.degree() != lam.degree() || !mu.is_subpartition_of(lam) {
        return 0;
    }
    if nu.is_empty() {
        return 1;
    }
    // reading order: rows top to bottom, each row right to left
    let cells: Vec<YoungBox> = (1..=lam.len())
        .flat_map(|row| {
            let start = mu.part(row) + 1;
            let end = lam.part(row);
            (start..=end).rev().map(move |col| YoungBox::new(row, col))
        })
        .collect();
    let width = lam.part(1);
    let mut filling = vec![vec![0usize; width + 2]; lam.len() + 2];
    let mut counts = vec![0usize; nu.len() + 1];
    let mut total = 0;
    lr_fill(&cells, 0, mu, nu, &mut filling, &mut counts, &mut total);
    total
}

fn lr_fill(
    cells: &[YoungBox],
    k: usize,
    mu: &Partition,
    nu: &Partition,
    filling: &mut [Vec<usize>],
    counts: &mut [usize],
    total: &mut u64,
) {
    if k == cells.len() {
        *total += 1;
        return;
    }
    let b = cells[k];
    // weakly increasing rows: bounded above by the box to the right
    let right = filling[b.row][b.col + 1];
    let upper = if right > 0 { right } else { nu.len() };
    // strictly increasing columns: bounded below by the box above, if in the skew
    let above = if b.row > 1 && b.col > mu.part(b.row - 1) {
        filling[b.row - 1][b.col]
    } else {
        0
    };
    for v in (above + 1)..=upper {
        if counts[v] >= nu.part(v) {
            continue;
        }
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        filling[b.row][b.col] = v;
        lr_fill(cells, k + 1, mu, nu, filling, counts, total);
        filling[b.row][b.col] = 0;
        counts[v] -= 1;
    }
}

/// Row-and-column-increasing bijective filling by `1..=degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.degree();
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &e in row {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::InvalidPartition(shape.parts().to_vec()));
                }
                seen[e] = true;
            }
        }
        let t = Self { shape, rows };
        if !t.is_standard() {
            return Err(Error::InvalidPartition(t.shape.parts().to_vec()));
        }
        Ok(t)
    }

    fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.rows.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(b, a)| a < b));
        rows_ok && cols_ok
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Row (0-indexed) containing each letter; index 0 is unused.
    pub fn row_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.shape.degree() + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for &e in row {
                out[e] = i;
            }
        }
        out
    }
}

/// Standard tableaux of shape `p` in last-letter order.
pub fn standard_tableaux(p: &Partition) -> Vec<StandardTableau> {
    let n = p.degree();
    if n == 0 {
        return vec![StandardTableau {
            shape: p.clone(),
            rows: Vec::new(),
        }];
    }
    let mut out = Vec::new();
    for b in removable_boxes(p) {
        let smaller = p.remove_box(b).expect("removable box");
        for t in standard_tableaux(&smaller) {
            let mut rows = t.rows;
            if rows.len() < b.row {
                rows.push(Vec::new());
            }
            rows[b.row - 1].push(n);
            out.push(StandardTableau {
                shape: p.clone(),
                rows,
            });
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn boxes(v: &[(usize, usize)]) -> Vec<YoungBox> {
        v.iter().map(|&(r, c)| YoungBox::new(r, c)).collect()
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_padded(vec![2, 1, 0, 0]).unwrap(), part(&[2, 1]));
    }

    #[test]
    fn removable_examples() {
        assert!(removable_boxes(&Partition::empty()).is_empty());
        assert_eq!(removable_boxes(&part(&[2, 2])), boxes(&[(2, 2)]));
        assert_eq!(removable_boxes(&part(&[3, 2, 1])), boxes(&[(1, 3), (2, 2), (3, 1)]));
    }

    #[test]
    fn removable_by_deletion_oracle() {
        // delete each box in turn and keep those that leave a partition
        for n in 0..=7 {
            for p in Partition::all(n) {
                let oracle: Vec<YoungBox> = p.boxes().filter(|b| p.remove_boxes(&[*b]).is_ok()).collect();
                assert_eq!(removable_boxes(&p), oracle, "{p}");
            }
        }
    }

    #[test]
    fn addable_examples() {
        assert_eq!(addable_boxes(&Partition::empty()), boxes(&[(1, 1)]));
        assert_eq!(addable_boxes(&part(&[1])), boxes(&[(1, 2), (2, 1)]));
        assert_eq!(addable_boxes(&part(&[2, 2])), boxes(&[(1, 3), (3, 1)]));
    }

    #[test]
    fn addable_removable_counts() {
        for n in 0..=8 {
            for p in Partition::all(n) {
                let (a, r) = (addable_boxes(&p).len(), removable_boxes(&p).len());
                if p.is_empty() {
                    assert_eq!((a, r), (1, 0));
                } else {
                    assert_eq!(r + 1, a, "{p}");
                }
                for b in addable_boxes(&p) {
                    assert!(p.add_box(b).is_ok());
                }
            }
        }
    }

    #[test]
    fn content_count_examples() {
        assert_eq!(content_count(&part(&[2, 2]), 0, 0), 2);
        assert_eq!(content_count(&Partition::empty(), 3, 0), 0);
        assert_eq!(content_count(&Partition::empty(), -2, 5), 0);
        assert_eq!(content_count(&part(&[3, 1]), 1, 2), 2);
    }

    #[test]
    fn content_count_reduction() {
        for n in 0..=7 {
            for p in Partition::all(n) {
                let span = p.len().max(p.part(1)) as u64;
                for prime in [2u64, 3, 5, 7, 11] {
                    if prime <= span {
                        continue;
                    }
                    for i in -(n as i64)..=(n as i64) {
                        let exact: usize = (-(n as i64)..=(n as i64))
                            .filter(|j| (j - i).rem_euclid(prime as i64) == 0)
                            .map(|j| content_count(&p, j, 0))
                            .sum();
                        assert_eq!(exact, content_count(&p, i, prime));
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap());
        assert!(dominates(&part(&[2, 1]), &part(&[2, 1])).unwrap());
        assert!(!dominates(&part(&[2, 2]), &part(&[3, 1])).unwrap());
        assert_eq!(dominates(&part(&[2]), &part(&[1])), Err(Error::DegreeMismatch(2, 1)));
    }

    #[test]
    fn specht_dim_examples() {
        assert_eq!(specht_dim(&part(&[5])), 1);
        assert_eq!(specht_dim(&part(&[2, 1])), 2);
        assert_eq!(specht_dim(&part(&[3, 2])), 5);
        assert_eq!(specht_dim(&Partition::empty()), 1);
    }

    #[test]
    fn hook_length_matches_tableau_count() {
        for n in 0..=8 {
            for p in Partition::all(n) {
                let tabs = standard_tableaux(&p);
                assert_eq!(specht_dim(&p), tabs.len() as u64, "{p}");
                for t in &tabs {
                    assert!(t.is_standard());
                }
            }
        }
    }

    #[test]
    fn tableaux_are_distinct_and_last_letter_ordered() {
        let tabs = standard_tableaux(&part(&[3, 2]));
        let keys: Vec<Vec<usize>> = tabs
            .iter()
            .map(|t| {
                let rows = t.row_of();
                (1..=5).rev().map(|e| rows[e]).collect()
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&part(&[2]), &part(&[1]), &part(&[1])), 1);
        assert_eq!(lr_coefficient(&part(&[1, 1]), &part(&[1]), &part(&[1])), 1);
        assert_eq!(lr_coefficient(&part(&[2, 1]), &part(&[1]), &part(&[2])), 1);
        assert_eq!(lr_coefficient(&part(&[3, 2, 1]), &part(&[2, 1]), &part(&[2, 1])), 2);
        assert_eq!(lr_coefficient(&part(&[3]), &part(&[1]), &part(&[1])), 0);
    }

    #[test]
    fn lr_induced_dimension_count() {
        for a in 0..=3 {
            for b in 0..=3 {
                for mu in Partition::all(a) {
                    for nu in Partition::all(b) {
                        let lhs: u64 = Partition::all(a + b)
                            .iter()
                            .map(|lam| lr_coefficient(lam, &mu, &nu) * specht_dim(lam))
                            .sum();
                        let rhs = binomial(a + b, a) * specht_dim(&mu) * specht_dim(&nu);
                        assert_eq!(lhs, rhs, "{mu} {nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn p_regular_examples() {
        assert!(!p_regular(&part(&[1, 1]), 2));
        assert!(p_regular(&part(&[1, 1, 1, 1]), 0));
        assert!(p_regular(&part(&[2, 2, 1]), 3));
        assert!(!p_regular(&part(&[2, 2, 2]), 3));
        assert!(p_regular(&Partition::empty(), 2));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn serde_shapes() {
        let bp = Bipartition::from_parts(vec![3, 2, 1], vec![]).unwrap();
        let s = serde_json::to_string(&bp).unwrap();
        assert_eq!(s, r#"{"left":[3,2,1],"right":[]}"#);
        let back: Bipartition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, bp);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
