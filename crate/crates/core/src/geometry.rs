//! The weight lattice `X_{r,s}` with coordinates indexed by
//! `-r, ..., -1, 1, ..., s`, the `ρ(δ)`-shifted dot action of `Σ_{r+s}` and of
//! the affine group `W_p`, and orbit tests.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Bipartition, Partition};
use crate::error::{Error, Result};
use crate::matching::perfect_matching;
use crate::scalar::is_prime;

/// An element of `X_{r,s}`. `entries[k]` is the coordinate at signed index
/// `k - r` for `k < r` and `k - r + 1` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub r: usize,
    pub s: usize,
    pub entries: Vec<i64>,
}

impl Weight {
    pub fn new(r: usize, s: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != r + s {
            return Err(Error::InvalidWeight(format!(
                "{} entries for X_({r},{s})",
                entries.len()
            )));
        }
        Ok(Self { r, s, entries })
    }

    pub fn zero(r: usize, s: usize) -> Self {
        Self {
            r,
            s,
            entries: vec![0; r + s],
        }
    }

    /// Signed indices `-r..=-1, 1..=s` in storage order.
    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let r = self.r as i64;
        (-r..0).chain(1..=self.s as i64)
    }

    pub fn position(&self, i: i64) -> Result<usize> {
        let (r, s) = (self.r as i64, self.s as i64);
        match i {
            _ if (-r..0).contains(&i) => Ok((i + r) as usize),
            _ if (1..=s).contains(&i) => Ok((i + r - 1) as usize),
            _ => Err(Error::InvalidWeight(format!("index {i} outside -{r}..={s} without 0"))),
        }
    }

    pub fn get(&self, i: i64) -> Result<i64> {
        Ok(self.entries[self.position(i)?])
    }

    /// `|λ| = Σ λ_i`.
    pub fn degree(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        let (l, r) = self.entries.split_at(self.r);
        l.first().is_none_or(|&x| x <= 0)
            && l.windows(2).all(|w| w[0] >= w[1])
            && r.windows(2).all(|w| w[0] >= w[1])
            && r.last().is_none_or(|&x| x >= 0)
    }

    /// Inverse of [`to_weight`] on dominant weights.
    pub fn to_bipartition(&self) -> Result<Bipartition> {
        if !self.is_dominant() {
            return Err(Error::InvalidWeight(format!("{self} is not dominant")));
        }
        let (l, r) = self.entries.split_at(self.r);
        let left = l.iter().rev().map(|&x| (-x) as usize).collect();
        let right = r.iter().map(|&x| x as usize).collect();
        Ok(Bipartition::new(
            Partition::from_padded(left)?,
            Partition::from_padded(right)?,
        ))
    }

    fn check_ambient(&self, other: &Weight) -> Result<()> {
        if (self.r, self.s) != (other.r, other.s) {
            return Err(Error::AmbientMismatch(self.r, self.s, other.r, other.s));
        }
        Ok(())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = self.entries.split_at(self.r);
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(l), join(r))
    }
}

/// Ambient `(r, s)`, integer `δ`, characteristic `p` and `ρ(δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryContext {
    pub r: usize,
    pub s: usize,
    pub delta: i64,
    pub p: u64,
    pub rho: Weight,
}

impl GeometryContext {
    pub fn new(r: usize, s: usize, delta: i64, p: u64) -> Result<Self> {
        if p != 0 && !is_prime(p) {
            return Err(Error::Unsupported(format!("characteristic {p} is neither 0 nor prime")));
        }
        // (r, r-1, ..., 1; δ, δ-1, ..., δ-s+1)
        let entries = (0..r as i64)
            .map(|k| r as i64 - k)
            .chain((0..s as i64).map(|k| delta - k))
            .collect();
        Ok(Self {
            r,
            s,
            delta,
            p,
            rho: Weight { r, s, entries },
        })
    }

    fn check(&self, w: &Weight) -> Result<()> {
        w.check_ambient(&self.rho)
    }

    fn shifted(&self, w: &Weight) -> Vec<i64> {
        w.entries.iter().zip(&self.rho.entries).map(|(a, b)| a + b).collect()
    }
}

/// `(λ^L, λ^R) ↦ (-λ^L_r, ..., -λ^L_1; λ^R_1, ..., λ^R_s)`.
pub fn to_weight(bp: &Bipartition, ctx: &GeometryContext) -> Result<Weight> {
    if bp.left.len() > ctx.r || bp.right.len() > ctx.s {
        return Err(Error::InvalidWeight(format!(
            "{bp} has too many parts for X_({},{})",
            ctx.r, ctx.s
        )));
    }
    let entries = (1..=ctx.r)
        .rev()
        .map(|k| -(bp.left.part(k) as i64))
        .chain((1..=ctx.s).map(|k| bp.right.part(k) as i64))
        .collect();
    Weight::new(ctx.r, ctx.s, entries)
}

/// Content of the box in signed row `row` and column `col` of a weight diagram.
pub fn box_content(row: i64, col: i64) -> Result<i64> {
    match row {
        0 => Err(Error::InvalidWeight("there is no row 0".into())),
        i if i > 0 => Ok(col - i),
        i => Ok(1 + i - col),
    }
}

/// Image of `w` under the affine reflection in `ε_i - ε_j` through `shift`,
/// for the dot action: `x ↦ x - ((x, β) - shift) β` applied to `w + ρ`.
pub fn dot_reflect(w: &Weight, i: i64, j: i64, shift: i64, ctx: &GeometryContext) -> Result<Weight> {
    ctx.check(w)?;
    if i == j {
        return Err(Error::InvalidWeight(format!("reflection needs distinct indices, got {i} twice")));
    }
    if ctx.p == 0 && shift != 0 {
        return Err(Error::InvalidWeight("affine shift needs positive characteristic".into()));
    }
    if ctx.p != 0 && shift.rem_euclid(ctx.p as i64) != 0 {
        return Err(Error::InvalidWeight(format!("shift {shift} is not a multiple of {}", ctx.p)));
    }
    let (a, b) = (w.position(i)?, w.position(j)?);
    let mut x = ctx.shifted(w);
    let d = x[a] - x[b] - shift;
    x[a] -= d;
    x[b] += d;
    let entries = x.iter().zip(&ctx.rho.entries).map(|(v, r)| v - r).collect();
    Weight::new(w.r, w.s, entries)
}

/// `b ∈ W.a`: the multisets of `a + ρ` and `b + ρ` agree.
pub fn same_w_orbit(a: &Weight, b: &Weight, ctx: &GeometryContext) -> Result<bool> {
    ctx.check(a)?;
    ctx.check(b)?;
    let mut x = ctx.shifted(a);
    let mut y = ctx.shifted(b);
    x.sort_unstable();
    y.sort_unstable();
    Ok(x == y)
}

/// `+1` when `i < 0 < j`, `-1` when `j < 0 < i`, `0` otherwise: the multiple of
/// `δ + 1` separating `ρ_i + i` from `ρ_j + j`.
pub fn swap_sign(i: i64, j: i64) -> i64 {
    match (i < 0, j < 0) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// The swap vector of `σ`, given as `(i, σ(i))` pairs.
pub fn swap_vector(sigma: &[(i64, i64)]) -> Vec<i64> {
    sigma.iter().map(|&(i, j)| swap_sign(i, j)).collect()
}

/// A permutation `σ` (as `(i, σ(i))` pairs) with
/// `b_i - i ≡ a_σ(i) - σ(i) + swap(i, σ(i))(δ+1) (mod p)` for all `i`,
/// if `|a| = |b|` and one exists.
pub fn wp_orbit_matching(a: &Weight, b: &Weight, ctx: &GeometryContext) -> Result<Option<Vec<(i64, i64)>>> {
    ctx.check(a)?;
    ctx.check(b)?;
    if ctx.p == 0 {
        return Err(Error::Unsupported("affine orbits need p > 0; use the W-orbit test".into()));
    }
    if a.degree() != b.degree() {
        return Ok(None);
    }
    let p = ctx.p as i64;
    let idx: Vec<i64> = a.indices().collect();
    let adj: Vec<Vec<usize>> = idx
        .iter()
        .enumerate()
        .map(|(u, &i)| {
            let lhs = b.entries[u] - i;
            idx.iter()
                .enumerate()
                .filter(|&(v, &j)| (lhs - (a.entries[v] - j + swap_sign(i, j) * (ctx.delta + 1))).rem_euclid(p) == 0)
                .map(|(v, _)| v)
                .collect()
        })
        .collect();
    Ok(perfect_matching(&adj, idx.len()).map(|m| m.into_iter().enumerate().map(|(u, v)| (idx[u], idx[v])).collect()))
}

/// `b ∈ W_p.a` by residue matching.
pub fn same_wp_orbit(a: &Weight, b: &Weight, ctx: &GeometryContext) -> Result<bool> {
    Ok(wp_orbit_matching(a, b, ctx)?.is_some())
}

/// Necessary condition for two labels to share a block: same `W_p`-orbit in
/// characteristic `p`, same `W`-orbit in characteristic 0.
pub fn linkage_allows(lam: &Bipartition, mu: &Bipartition, ctx: &GeometryContext) -> Result<bool> {
    let a = to_weight(lam, ctx)?;
    let b = to_weight(mu, ctx)?;
    if ctx.p == 0 {
        same_w_orbit(&a, &b, ctx)
    } else {
        same_wp_orbit(&a, &b, ctx)
    }
}

/// Half-width of the box used by [`bfs_orbit`] for a pair of weights.
pub fn bfs_bound(a: &Weight, b: &Weight, ctx: &GeometryContext) -> i64 {
    let n = (ctx.r + ctx.s) as i64;
    let m = a.entries.iter().chain(&b.entries).map(|x| x.abs()).max().unwrap_or(0);
    ctx.p as i64 * n + m + ctx.delta.abs() + n
}

/// Every weight reachable from `start` by dot reflections `s_{β, kp}`,
/// `k ∈ {-1, 0, 1}`, without leaving the box `|entries| ≤ bound`.
pub fn bfs_orbit(start: &Weight, bound: i64, ctx: &GeometryContext) -> Result<Vec<Weight>> {
    ctx.check(start)?;
    let n = ctx.r + ctx.s;
    if start.entries.iter().any(|x| x.abs() > bound) {
        return Err(Error::InvalidWeight(format!("{start} lies outside the box ±{bound}")));
    }
    let side = (2 * bound + 1) as usize;
    let cells = side
        .checked_pow(n as u32)
        .filter(|&c| c <= 1 << 28)
        .ok_or(Error::BoundExceeded {
            what: "orbit box cells",
            value: usize::MAX,
            bound: 1 << 28,
        })?;
    let encode = |e: &[i64]| e.iter().fold(0usize, |acc, &x| acc * side + (x + bound) as usize);
    let idx: Vec<i64> = start.indices().collect();
    let p = ctx.p as i64;
    let shifts: Vec<i64> = if p == 0 { vec![0] } else { vec![-p, 0, p] };
    let mut seen = vec![false; cells];
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen[encode(&start.entries)] = true;
    queue.push_back(start.clone());
    while let Some(w) = queue.pop_front() {
        for (u, &i) in idx.iter().enumerate() {
            for &j in &idx[u + 1..] {
                for &k in &shifts {
                    let v = dot_reflect(&w, i, j, k, ctx)?;
                    if v.entries.iter().all(|x| x.abs() <= bound) {
                        let key = encode(&v.entries);
                        if !seen[key] {
                            seen[key] = true;
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
        out.push(w);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(l: &[usize], r: &[usize]) -> Bipartition {
        Bipartition::from_parts(l.to_vec(), r.to_vec()).unwrap()
    }

    #[test]
    fn weights_from_bipartitions() {
        let ctx = GeometryContext::new(3, 4, 0, 0).unwrap();
        assert_eq!(to_weight(&Bipartition::default(), &ctx).unwrap(), Weight::zero(3, 4));
        let w = to_weight(&bp(&[3, 2, 1], &[2, 2]), &ctx).unwrap();
        assert_eq!(w.entries, vec![-1, -2, -3, 2, 2, 0, 0]);
        assert_eq!(w.to_bipartition().unwrap(), bp(&[3, 2, 1], &[2, 2]));
        assert!(to_weight(&bp(&[1, 1, 1, 1], &[]), &ctx).is_err());
        assert_eq!(ctx.rho.entries, vec![3, 2, 1, 0, -1, -2, -3]);
        assert_eq!(w.get(-3).unwrap(), -1);
        assert_eq!(w.get(1).unwrap(), 2);
        assert!(w.get(0).is_err());
    }

    #[test]
    fn contents() {
        assert_eq!(box_content(1, 1).unwrap(), 0);
        assert_eq!(box_content(-1, 1).unwrap(), -1);
        assert!(box_content(0, 1).is_err());
        // last box of each row of (5,-1,2;3,2,-3,0)
        let w = Weight::new(3, 4, vec![5, -1, 2, 3, 2, -3, 0]).unwrap();
        let last: Vec<i64> = w.indices().map(|i| box_content(i, w.get(i).unwrap()).unwrap()).collect();
        assert_eq!(last, vec![-7, 0, -2, 2, 0, -6, -4]);
        // boxes of λ^L sit in columns 1-c of row -k with the same content
        let lam = Partition::new(vec![3, 1]).unwrap();
        for b in lam.boxes() {
            assert_eq!(box_content(-(b.row as i64), 1 - b.col as i64).unwrap(), b.content());
        }
    }

    #[test]
    fn reflections() {
        let ctx = GeometryContext::new(1, 1, 0, 0).unwrap();
        let zero = Weight::zero(1, 1);
        let w = dot_reflect(&zero, 1, -1, 0, &ctx).unwrap();
        assert_eq!(w, to_weight(&bp(&[1], &[1]), &ctx).unwrap());
        assert_eq!(dot_reflect(&w, 1, -1, 0, &ctx).unwrap(), zero);
        assert!(dot_reflect(&zero, 1, -1, 2, &ctx).is_err());
        // fixed point: (w + ρ)_{-1} = (w + ρ)_1
        let ctx1 = GeometryContext::new(1, 1, 1, 0).unwrap();
        assert_eq!(dot_reflect(&zero, -1, 1, 0, &ctx1).unwrap(), zero);
        let ctxp = GeometryContext::new(2, 2, 1, 3).unwrap();
        let x = Weight::new(2, 2, vec![-2, 0, 4, 1]).unwrap();
        for (i, j) in [(-2, 1), (-1, 2), (1, 2)] {
            for k in [-3, 0, 6] {
                let y = dot_reflect(&x, i, j, k, &ctxp).unwrap();
                assert_eq!(y.degree(), x.degree());
                assert_eq!(dot_reflect(&y, i, j, k, &ctxp).unwrap(), x);
            }
        }
    }

    #[test]
    fn finite_orbits() {
        let a = to_weight(&bp(&[1], &[1]), &GeometryContext::new(1, 1, 0, 0).unwrap()).unwrap();
        let b = Weight::zero(1, 1);
        assert!(same_w_orbit(&a, &b, &GeometryContext::new(1, 1, 0, 0).unwrap()).unwrap());
        assert!(!same_w_orbit(&a, &b, &GeometryContext::new(1, 1, 1, 0).unwrap()).unwrap());
        assert!(same_w_orbit(&a, &a, &GeometryContext::new(1, 1, 1, 0).unwrap()).unwrap());
    }

    #[test]
    fn affine_orbits() {
        let a = Weight::new(1, 1, vec![-1, 1]).unwrap();
        let b = Weight::zero(1, 1);
        let ctx = GeometryContext::new(1, 1, 2, 2).unwrap();
        let m = wp_orbit_matching(&a, &b, &ctx).unwrap().unwrap();
        assert_eq!(swap_vector(&m).iter().sum::<i64>(), 0);
        assert!(same_wp_orbit(&a, &a, &ctx).unwrap());
        assert!(!same_wp_orbit(&a, &b, &GeometryContext::new(1, 1, 1, 5).unwrap()).unwrap());
        assert!(same_wp_orbit(&a, &b, &GeometryContext::new(1, 1, 0, 0).unwrap()).is_err());
        assert!(linkage_allows(&bp(&[1], &[1]), &Bipartition::default(), &ctx).unwrap());
        let ctx0 = GeometryContext::new(1, 1, 2, 0).unwrap();
        assert!(!linkage_allows(&bp(&[1], &[1]), &Bipartition::default(), &ctx0).unwrap());
        assert!(linkage_allows(&bp(&[1], &[1]), &bp(&[1], &[1]), &ctx0).unwrap());
    }

    #[test]
    fn matching_agrees_with_bfs_on_small_ambients() {
        for (r, s) in [(1, 1), (2, 1), (1, 2)] {
            for p in [2, 3, 5] {
                for delta in -3..=3 {
                    let ctx = GeometryContext::new(r, s, delta, p).unwrap();
                    let ws: Vec<Weight> = crate::cell::CellLabel::all(r, s)
                        .iter()
                        .map(|l| to_weight(&l.bip, &ctx).unwrap())
                        .collect();
                    for a in &ws {
                        let bound = ws.iter().map(|b| bfs_bound(a, b, &ctx)).max().unwrap();
                        let orbit = bfs_orbit(a, bound, &ctx).unwrap();
                        for b in &ws {
                            assert_eq!(
                                same_wp_orbit(a, b, &ctx).unwrap(),
                                orbit.contains(b),
                                "{a} {b} δ={delta} p={p}"
                            );
                        }
                    }
                }
            }
        }
    }

    /// The opposite sign convention for the swap term is refuted by the
    /// orbit search at `(r, s) = (1, 1)`, `δ = 0`, `p = 3`.
    #[test]
    fn swap_sign_is_fixed_by_rho() {
        let ctx = GeometryContext::new(1, 1, 0, 3).unwrap();
        let a = Weight::zero(1, 1);
        let b = Weight::new(1, 1, vec![-1, 1]).unwrap();
        let orbit = bfs_orbit(&a, bfs_bound(&a, &b, &ctx), &ctx).unwrap();
        assert!(orbit.contains(&b));
        assert!(same_wp_orbit(&a, &b, &ctx).unwrap());
        // flipped: b_i - i ≡ a_σ(i) - σ(i) - swap(i, σ(i))(δ+1)
        let flipped = |sigma: [(i64, i64); 2]| {
            sigma.iter().all(|&(i, j)| {
                let lhs = b.get(i).unwrap() - i;
                let rhs = a.get(j).unwrap() - j - swap_sign(i, j) * (ctx.delta + 1);
                (lhs - rhs).rem_euclid(3) == 0
            })
        };
        assert!(!flipped([(-1, -1), (1, 1)]) && !flipped([(-1, 1), (1, -1)]));
    }
}
