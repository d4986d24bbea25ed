//! Balanced bipartitions, block classification in the `Σ`-semisimple regime,
//! and the semisimplicity criterion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cell::CellLabel;
use crate::combinatorics::{p_regular, removable_boxes, Bipartition, Partition, YoungBox};
use crate::error::{Error, Result};
use crate::matching::perfect_matching;
use crate::scalar::{is_prime, DeltaValue};

/// `(r, s, δ, p)` for one walled Brauer algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraParams {
    pub r: usize,
    pub s: usize,
    pub delta: DeltaValue,
    pub p: u64,
}

impl AlgebraParams {
    pub fn new(r: usize, s: usize, delta: DeltaValue, p: u64) -> Result<Self> {
        if p != 0 && !is_prime(p) {
            return Err(Error::Unsupported(format!("characteristic {p} is neither 0 nor prime")));
        }
        if let (DeltaValue::Rational(q), true) = (&delta, p != 0) {
            if (q.denom() % BigInt::from(p)).is_zero() {
                return Err(Error::Unsupported(format!("δ = {delta} is undefined modulo {p}")));
            }
        }
        Ok(Self { r, s, delta, p })
    }

    /// Both symmetric group algebras `kΣ_r`, `kΣ_s` are semisimple.
    pub fn sigma_semisimple(&self) -> bool {
        self.p == 0 || self.p > self.r.max(self.s) as u64
    }

    /// `δ` as an integer: itself in characteristic 0, a residue in `0..p`
    /// otherwise. `None` for non-integral rationals in characteristic 0 and
    /// for symbolic `δ`.
    pub fn integral_delta(&self) -> Option<i64> {
        match (&self.delta, self.p) {
            (DeltaValue::Integer(n), _) => Some(*n),
            (DeltaValue::Rational(_), 0) | (DeltaValue::Symbolic, _) => None,
            (DeltaValue::Rational(q), p) => {
                let p = BigInt::from(p);
                let inv = q.denom().modpow(&(&p - 2u32), &p);
                (q.numer() * inv).mod_floor(&p).to_i64()
            }
        }
    }

    fn delta_is_zero(&self) -> bool {
        match self.integral_delta() {
            Some(d) if self.p == 0 => d == 0,
            Some(d) => d.rem_euclid(self.p as i64) == 0,
            None => false,
        }
    }
}

/// Which indexing set [`enumerate_labels`] returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelMode {
    Cell,
    Simple,
}

/// Labels of cell modules, or of simple modules, of `B_{r,s}(δ)`.
pub fn enumerate_labels(params: &AlgebraParams, mode: LabelMode) -> Vec<CellLabel> {
    let (r, s, p) = (params.r, params.s, params.p);
    let all = CellLabel::all(r, s);
    match mode {
        LabelMode::Cell => all,
        LabelMode::Simple => {
            let drop_top = r == s && r > 0 && params.delta_is_zero();
            all.into_iter()
                .filter(|l| p_regular(l.left(), p) && p_regular(l.right(), p))
                .filter(|l| !(drop_top && l.t == r))
                .collect()
        }
    }
}

fn content_residue(c: i64, p: u64) -> i64 {
    if p == 0 {
        c
    } else {
        c.rem_euclid(p as i64)
    }
}

fn count_contents(boxes: impl Iterator<Item = YoungBox>) -> BTreeMap<i64, i64> {
    let mut m = BTreeMap::new();
    for b in boxes {
        *m.entry(b.content()).or_insert(0) += 1;
    }
    m
}

/// Whether the boxes of `left` and `right` pair off with content sums `≡ -δ`.
fn pairs_off(left: &[YoungBox], right: &[YoungBox], delta: i64, p: u64) -> bool {
    if left.len() != right.len() {
        return false;
    }
    let target = content_residue(-delta, p);
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|a| {
            (0..right.len())
                .filter(|&j| content_residue(a.content() + right[j].content(), p) == target)
                .collect()
        })
        .collect();
    perfect_matching(&adj, right.len()).is_some()
}

/// `δ`-balanced test. Characteristic 0 compares content counts; in
/// characteristic `p` the skew boxes are matched explicitly.
pub fn is_balanced(lam: &Bipartition, mu: &Bipartition, delta: i64, p: u64) -> bool {
    let (a, b) = lam.degrees();
    let (c, d) = mu.degrees();
    if a as i64 - b as i64 != c as i64 - d as i64 {
        return false;
    }
    if p == 0 {
        // c_i(λ^L) - c_i(μ^L) = c_{-δ-i}(λ^R) - c_{-δ-i}(μ^R)
        let mut diff: BTreeMap<i64, i64> = BTreeMap::new();
        for (k, v) in count_contents(lam.left.boxes()) {
            *diff.entry(k).or_insert(0) += v;
        }
        for (k, v) in count_contents(mu.left.boxes()) {
            *diff.entry(k).or_insert(0) -= v;
        }
        for (k, v) in count_contents(lam.right.boxes()) {
            *diff.entry(-delta - k).or_insert(0) -= v;
        }
        for (k, v) in count_contents(mu.right.boxes()) {
            *diff.entry(-delta - k).or_insert(0) += v;
        }
        return diff.values().all(|v| *v == 0);
    }
    let tau = lam.intersection(mu);
    pairs_off(&lam.left.skew_boxes(&tau.left), &lam.right.skew_boxes(&tau.right), delta, p)
        && pairs_off(&mu.left.skew_boxes(&tau.left), &mu.right.skew_boxes(&tau.right), delta, p)
}

/// One block: its labels and the unique `⊆`-minimal bipartition among them,
/// if there is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockClass {
    pub labels: Vec<CellLabel>,
    pub minimal: Option<Bipartition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub params: AlgebraParams,
    pub classes: Vec<BlockClass>,
}

impl BlockReport {
    /// Index of the class containing `label`.
    pub fn class_of(&self, label: &CellLabel) -> Option<usize> {
        self.classes.iter().position(|c| c.labels.contains(label))
    }
}

fn unique_minimum(members: &[&Bipartition]) -> Option<Bipartition> {
    members
        .iter()
        .find(|m| members.iter().all(|o| m.is_sub_of(o)))
        .map(|m| (*m).clone())
}

/// Blocks of `B_{r,s}(δ)` over a `Σ`-semisimple field, on cell labels.
pub fn block_partition(params: &AlgebraParams) -> Result<BlockReport> {
    if !params.sigma_semisimple() {
        return Err(Error::Unsupported(format!(
            "blocks in characteristic {} with max(r,s) = {} are not classified",
            params.p,
            params.r.max(params.s)
        )));
    }
    if params.delta == DeltaValue::Symbolic {
        return Err(Error::Unsupported("blocks need a value for δ".into()));
    }
    let labels = enumerate_labels(params, LabelMode::Cell);
    let Some(delta) = params.integral_delta() else {
        // non-integral δ: the algebra is semisimple
        let classes = labels
            .into_iter()
            .map(|l| BlockClass {
                minimal: Some(l.bip.clone()),
                labels: vec![l],
            })
            .collect();
        return Ok(BlockReport {
            params: params.clone(),
            classes,
        });
    };
    let n = labels.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if is_balanced(&labels[i].bip, &labels[j].bip, delta, params.p) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<CellLabel>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(l.clone());
    }
    let classes = groups
        .into_values()
        .map(|labels| {
            let bips: Vec<&Bipartition> = labels.iter().map(|l| &l.bip).collect();
            BlockClass {
                minimal: unique_minimum(&bips),
                labels,
            }
        })
        .collect();
    Ok(BlockReport {
        params: params.clone(),
        classes,
    })
}

/// Sub-bipartitions of `lam` balanced with it.
pub fn balanced_subs(lam: &Bipartition, delta: i64, p: u64) -> Vec<Bipartition> {
    let rights = lam.right.subpartitions();
    let (a, b) = lam.degrees();
    let mut out = Vec::new();
    for l in lam.left.subpartitions() {
        let dl = a - l.degree();
        for r in rights.iter().filter(|r| b - r.degree() == dl) {
            let mu = Bipartition::new(l.clone(), r.clone());
            if is_balanced(lam, &mu, delta, p) {
                out.push(mu);
            }
        }
    }
    out
}

/// The `⊆`-minimal bipartition balanced with `lam`. The intersection of any
/// two balanced sub-bipartitions is checked to be balanced again, and an
/// error is returned if that or uniqueness fails.
pub fn minimal_balanced_weight(lam: &Bipartition, delta: i64, p: u64) -> Result<Bipartition> {
    let subs = balanced_subs(lam, delta, p);
    for (i, x) in subs.iter().enumerate() {
        for y in &subs[i + 1..] {
            let z = x.intersection(y);
            if !is_balanced(lam, &z, delta, p) {
                return Err(Error::NotBalanced(format!(
                    "{x} ∩ {y} = {z} is not balanced with {lam} at δ = {delta}"
                )));
            }
        }
    }
    let refs: Vec<&Bipartition> = subs.iter().collect();
    unique_minimum(&refs).ok_or_else(|| Error::NotBalanced(format!("no unique minimal weight below {lam}")))
}

/// Removes the box `(row, col)` and everything weakly south-east of it.
fn cut(parts: &mut [usize], b: YoungBox) {
    for part in parts.iter_mut().skip(b.row - 1) {
        *part = (*part).min(b.col - 1);
    }
}

/// Largest (lowest) box of content `c` still in `cur` but outside `floor`.
fn largest_with_content(cur: &[usize], floor: &Partition, c: i64) -> Option<YoungBox> {
    (0..cur.len())
        .rev()
        .map(|i| (i + 1, i as i64 + 1 + c))
        .filter(|&(_, col)| col >= 1)
        .map(|(row, col)| YoungBox::new(row, col as usize))
        .find(|b| cur[b.row - 1] >= b.col)
        .filter(|b| !floor.contains_box(*b))
}

fn removed_counts(outer: &Partition, cur: &[usize]) -> BTreeMap<i64, i64> {
    let inner = Partition::from_padded(cur.to_vec()).expect("cut keeps partitions");
    count_contents(outer.skew_boxes(&inner).into_iter())
}

/// The largest sub-bipartition of `lam` balanced with it and missing the
/// removable box `bx` of `lam^L`, grown as a one-box-wide strip inside `lam/mu`.
pub fn i_maximal_sub(lam: &Bipartition, mu: &Bipartition, bx: YoungBox, delta: i64) -> Result<Bipartition> {
    if !removable_boxes(&lam.left).contains(&bx) || mu.left.contains_box(bx) {
        return Err(Error::InvalidLabel(format!(
            "box ({}, {}) is not a removable box of {} outside {}",
            bx.row, bx.col, lam.left, mu.left
        )));
    }
    let mut left = lam.left.parts().to_vec();
    let mut right = lam.right.parts().to_vec();
    cut(&mut left, bx);
    loop {
        let cl = removed_counts(&lam.left, &left);
        let cr = removed_counts(&lam.right, &right);
        let mut changed = false;
        for (&c, &n) in &cl {
            if cr.get(&(-delta - c)).copied().unwrap_or(0) < n {
                let b = largest_with_content(&right, &mu.right, -delta - c)
                    .ok_or_else(|| Error::NotBalanced(format!("strip from {lam} escapes {mu}")))?;
                cut(&mut right, b);
                changed = true;
                break;
            }
        }
        if changed {
            continue;
        }
        for (&c, &n) in &cr {
            if cl.get(&(-delta - c)).copied().unwrap_or(0) < n {
                let b = largest_with_content(&left, &mu.left, -delta - c)
                    .ok_or_else(|| Error::NotBalanced(format!("strip from {lam} escapes {mu}")))?;
                cut(&mut left, b);
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Bipartition::new(
        Partition::from_padded(left)?,
        Partition::from_padded(right)?,
    ))
}

/// Maximal balanced sub-bipartitions between `lam ⊇ mu`: the `i`-maximal
/// ones whose removed strip is minimal under inclusion.
pub fn maximal_balanced_sub(lam: &Bipartition, mu: &Bipartition, delta: i64) -> Result<Vec<Bipartition>> {
    if !mu.is_sub_of(lam) || !is_balanced(lam, mu, delta, 0) {
        return Err(Error::NotBalanced(format!("{mu} ⊆ {lam} is not a balanced pair at δ = {delta}")));
    }
    let mut found = Vec::new();
    for bx in removable_boxes(&lam.left) {
        if !mu.left.contains_box(bx) {
            let nu = i_maximal_sub(lam, mu, bx, delta)?;
            if !found.contains(&nu) {
                found.push(nu);
            }
        }
    }
    let mut out: Vec<Bipartition> = found
        .iter()
        .filter(|nu| !found.iter().any(|o| o != *nu && nu.is_sub_of(o)))
        .cloned()
        .collect();
    out.sort();
    Ok(out)
}

/// Which condition decided [`is_semisimple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemisimpleClause {
    NotSigmaSemisimple,
    NonIntegerDelta,
    LargeDelta,
    OneSided,
    Delta0Exceptional,
    None,
}

impl SemisimpleClause {
    pub fn as_str(&self) -> &'static str {
        match self {
            SemisimpleClause::NotSigmaSemisimple => "not-sigma-semisimple",
            SemisimpleClause::NonIntegerDelta => "non-integer-delta",
            SemisimpleClause::LargeDelta => "large-delta",
            SemisimpleClause::OneSided => "one-sided",
            SemisimpleClause::Delta0Exceptional => "delta0-exceptional",
            SemisimpleClause::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimpleVerdict {
    pub semisimple: bool,
    pub clause: SemisimpleClause,
}

/// Semisimplicity of `B_{r,s}(δ)`. In characteristic `p` the integer
/// conditions are read on residues: `|δ| > r+s-2` means no integer of
/// absolute value at most `r+s-2` is congruent to `δ`.
pub fn is_semisimple(params: &AlgebraParams) -> SemisimpleVerdict {
    let verdict = |semisimple, clause| SemisimpleVerdict { semisimple, clause };
    if !params.sigma_semisimple() {
        return verdict(false, SemisimpleClause::NotSigmaSemisimple);
    }
    let (r, s, p) = (params.r as i64, params.s as i64, params.p as i64);
    let Some(d) = params.integral_delta() else {
        return verdict(true, SemisimpleClause::NonIntegerDelta);
    };
    let bound = r + s - 2;
    let small = if p == 0 {
        d.abs() <= bound
    } else {
        (-bound..=bound).any(|x| (x - d).rem_euclid(p) == 0)
    };
    if !small {
        return verdict(true, SemisimpleClause::LargeDelta);
    }
    if r == 0 || s == 0 {
        return verdict(true, SemisimpleClause::OneSided);
    }
    if params.delta_is_zero() && matches!((r, s), (1, 2) | (1, 3) | (2, 1) | (3, 1)) {
        return verdict(true, SemisimpleClause::Delta0Exceptional);
    }
    verdict(false, SemisimpleClause::None)
}

/// Necessary condition for `Hom(Δ(lam), Δ(mu)) ≠ 0` and for sharing a block:
/// `tδ + Σc(λ) - Σc(μ) = 0` with `t = t_μ - t_λ`.
pub fn content_condition(lam: &CellLabel, mu: &CellLabel, delta: &DeltaValue, p: u64) -> Result<bool> {
    if (lam.r, lam.s) != (mu.r, mu.s) {
        return Err(Error::AmbientMismatch(lam.r, lam.s, mu.r, mu.s));
    }
    let t = mu.t as i64 - lam.t as i64;
    let c = lam.bip.content_sum() - mu.bip.content_sum();
    match delta {
        DeltaValue::Symbolic => Ok(t == 0 && c == 0),
        d => {
            let params = AlgebraParams::new(lam.r, lam.s, d.clone(), p)?;
            if let Some(di) = params.integral_delta() {
                let v = t * di + c;
                return Ok(if p == 0 { v == 0 } else { v.rem_euclid(p as i64) == 0 });
            }
            let q = d.as_rational().expect("non-symbolic");
            Ok((q * BigRational::from_integer(t.into()) + BigRational::from_integer(c.into())).is_zero())
        }
    }
}
