//! Cell modules `Δ_{r,s}(λ^L, λ^R)` with explicit action matrices over `Z[δ]`.
//!
//! The basis is `X_{v,1,id} ⊗ x` for `v ∈ 𝒱_{r,s,t}` and `x` running over the
//! standard basis of `S^{λ^L} ⊠ S^{λ^R}`; the fixed south half-diagram carries
//! the nested arcs `(r-k, r+1+k)`. A diagram acts by concatenation on top of
//! `X_{v,1,id}`; products with more than `t` arcs per row are zero, and the
//! matching of free nodes left over is pushed onto the Specht factor.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    addable_boxes, binomial, factorial, lr_coefficient, removable_boxes, specht_dim, Bipartition, Partition,
};
use crate::diagram::{PartialOneRow, WalledDiagram};
use crate::error::{Error, Result};
use crate::linalg::{det_poly, Matrix, RowReducer};
use crate::scalar::{Field, Poly, Ring, ScalarContext, Symbolic};
use crate::specht::ProductRep;

/// Largest `r + s` accepted by [`CellModule::build`].
pub const DEFAULT_CELL_BOUND: usize = 6;

/// Label `(t; λ^L, λ^R)` of a cell module of `B_{r,s}`, `λ^L ⊢ r-t`, `λ^R ⊢ s-t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellLabel {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub bip: Bipartition,
}

impl CellLabel {
    pub fn new(r: usize, s: usize, bip: Bipartition) -> Result<Self> {
        let (a, b) = bip.degrees();
        if a > r || b > s || r - a != s - b {
            return Err(Error::InvalidLabel(format!("{bip} does not label a cell module of B_({r},{s})")));
        }
        Ok(Self { r, s, t: r - a, bip })
    }

    pub fn from_parts(r: usize, s: usize, left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        Self::new(r, s, Bipartition::from_parts(left, right)?)
    }

    /// All cell labels of `B_{r,s}`, by `t` and then bipartition order.
    pub fn all(r: usize, s: usize) -> Vec<CellLabel> {
        (0..=r.min(s))
            .flat_map(|t| {
                Bipartition::all(r - t, s - t)
                    .into_iter()
                    .map(move |bip| CellLabel { r, s, t, bip })
            })
            .collect()
    }

    /// The same bipartition viewed in `B_{r+1,s+1}`.
    pub fn globalize(&self) -> CellLabel {
        CellLabel {
            r: self.r + 1,
            s: self.s + 1,
            t: self.t + 1,
            bip: self.bip.clone(),
        }
    }

    pub fn left(&self) -> &Partition {
        &self.bip.left
    }

    pub fn right(&self) -> &Partition {
        &self.bip.right
    }
}

impl std::fmt::Display for CellLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Δ_({},{}){}", self.r, self.s, self.bip)
    }
}

/// `dim Δ = C(r,t)·C(s,t)·t!·f^{λ^L}·f^{λ^R}`.
pub fn cell_dim(label: &CellLabel) -> u64 {
    let t = label.t;
    binomial(label.r, t) * binomial(label.s, t) * factorial(t) * specht_dim(label.left()) * specht_dim(label.right())
}

/// A cell module with its generator matrices and Gram matrix over `Z[δ]`.
#[derive(Debug)]
pub struct CellModule {
    label: CellLabel,
    arcs: Vec<PartialOneRow>,
    arc_index: HashMap<PartialOneRow, usize>,
    fixed_south: PartialOneRow,
    specht: ProductRep,
    generators: Vec<(WalledDiagram, Matrix<Poly>)>,
    gram: Matrix<Poly>,
    rho_cache: Mutex<HashMap<Vec<usize>, Matrix<BigInt>>>,
}

impl CellModule {
    pub fn build(label: &CellLabel) -> Result<Self> {
        Self::build_bounded(label, DEFAULT_CELL_BOUND)
    }

    pub fn build_bounded(label: &CellLabel, bound: usize) -> Result<Self> {
        let (r, s, t) = (label.r, label.s, label.t);
        if r + s > bound {
            return Err(Error::BoundExceeded {
                what: "r + s",
                value: r + s,
                bound,
            });
        }
        let label = CellLabel::new(r, s, label.bip.clone())?;
        let arcs = PartialOneRow::enumerate(r, s, t);
        let arc_index = arcs.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut m = CellModule {
            specht: ProductRep::build(label.left(), label.right())?,
            fixed_south: PartialOneRow::nested(r, s, t)?,
            label,
            arcs,
            arc_index,
            generators: Vec::new(),
            gram: Matrix::from_vec(0, 0, vec![]),
            rho_cache: Mutex::new(HashMap::new()),
        };
        m.generators = generator_diagrams(r, s)
            .into_iter()
            .map(|d| {
                let a = m.action(&d).expect("same ambient");
                (d, a)
            })
            .collect();
        m.gram = m.compute_gram();
        Ok(m)
    }

    pub fn label(&self) -> &CellLabel {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.arcs.len() * self.specht.dim()
    }

    /// Basis as (north arcs, index into the Specht basis).
    pub fn basis(&self) -> Vec<(PartialOneRow, usize)> {
        self.arcs
            .iter()
            .flat_map(|v| (0..self.specht.dim()).map(move |k| (v.clone(), k)))
            .collect()
    }

    pub fn specht(&self) -> &ProductRep {
        &self.specht
    }

    /// `(diagram, matrix)` for the adjacent transpositions and `E_{r,r+1}`.
    pub fn generators(&self) -> &[(WalledDiagram, Matrix<Poly>)] {
        &self.generators
    }

    pub fn gram(&self) -> &Matrix<Poly> {
        &self.gram
    }

    pub fn gram_det(&self) -> Poly {
        det_poly(&self.gram)
    }

    fn rho(&self, g: &[usize]) -> Matrix<BigInt> {
        let mut cache = self.rho_cache.lock().expect("cache lock");
        cache
            .entry(g.to_vec())
            .or_insert_with(|| self.specht.act_permutation(g).expect("wall-preserving"))
            .clone()
    }

    fn half_diagram(&self, v: &PartialOneRow) -> WalledDiagram {
        let m = self.label.r + self.label.s - 2 * self.label.t;
        WalledDiagram::assemble(v, &self.fixed_south, &(0..m).collect::<Vec<_>>()).expect("valid half diagram")
    }

    /// Matrix of a basis diagram; column `j` is the image of basis vector `j`.
    pub fn action(&self, d: &WalledDiagram) -> Result<Matrix<Poly>> {
        let (r, s, t) = (self.label.r, self.label.s, self.label.t);
        if d.ambient() != (r, s) {
            let (a, b) = d.ambient();
            return Err(Error::AmbientMismatch(a, b, r, s));
        }
        let ds = self.specht.dim();
        let mut out = Matrix::zeros(&Symbolic, self.dim(), self.dim());
        for (vi, v) in self.arcs.iter().enumerate() {
            let (loops, prod) = d.multiply(&self.half_diagram(v))?;
            if prod.ideal_layer() != t {
                continue;
            }
            let (v2, w2, sigma) = prod.factor_one_row();
            debug_assert_eq!(w2, self.fixed_south);
            let g = invert(&sigma);
            let rho = self.rho(&g);
            let row0 = self.arc_index[&v2] * ds;
            let scale = Poly::monomial(1, loops);
            for k in 0..ds {
                for i in 0..ds {
                    let x = rho.get(i, k);
                    if !x.is_zero() {
                        out.set(row0 + i, vi * ds + k, scale.scale(x));
                    }
                }
            }
        }
        Ok(out)
    }

    fn compute_gram(&self) -> Matrix<Poly> {
        let t = self.label.t;
        let ds = self.specht.dim();
        let form = self.specht.form();
        let mut out = Matrix::zeros(&Symbolic, self.dim(), self.dim());
        let halves: Vec<WalledDiagram> = self.arcs.iter().map(|v| self.half_diagram(v)).collect();
        for (vi, xv) in halves.iter().enumerate() {
            let top = xv.involution();
            for (wi, xw) in halves.iter().enumerate() {
                let (loops, prod) = top.multiply(xw).expect("same ambient");
                if prod.ideal_layer() != t {
                    continue;
                }
                let (_, _, tau) = prod.factor_one_row();
                let rho = self.rho(&invert(&tau));
                let block = Matrix::mul(&crate::linalg::Integers, &form, &rho);
                let scale = Poly::monomial(1, loops);
                for i in 0..ds {
                    for j in 0..ds {
                        let x = block.get(i, j);
                        if !x.is_zero() {
                            out.set(vi * ds + i, wi * ds + j, scale.scale(x));
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix of `T_{r,s} = Σ_{i ≤ r < j} E_{i,j}`.
    pub fn t_element_matrix(&self) -> Matrix<Poly> {
        let (r, s) = (self.label.r, self.label.s);
        let mut sum = Matrix::zeros(&Symbolic, self.dim(), self.dim());
        for i in 1..=r {
            for j in r + 1..=r + s {
                let e = WalledDiagram::e(r, s, i, j).expect("walled arc");
                sum = Matrix::add(&Symbolic, &sum, &self.action(&e).expect("same ambient"));
            }
        }
        sum
    }

    /// `tδ − Σc(λ^L) − Σc(λ^R)` plus the transposition sums on each side.
    pub fn t_element_rhs(&self) -> Matrix<Poly> {
        let (r, s, t) = (self.label.r, self.label.s, self.label.t);
        let n = r + s;
        let scalar = Poly::monomial(t as i64, 1).sub(&Poly::constant(self.label.bip.content_sum()));
        let mut sum = Matrix::scale(&Symbolic, &scalar, &Matrix::identity(&Symbolic, self.dim()));
        for i in 0..n {
            for m in i + 1..n {
                if (i < r) != (m < r) {
                    continue;
                }
                let mut g: Vec<usize> = (0..n).collect();
                g.swap(i, m);
                let d = WalledDiagram::from_permutation(r, s, &g).expect("same side");
                sum = Matrix::add(&Symbolic, &sum, &self.action(&d).expect("same ambient"));
            }
        }
        sum
    }

    /// Generator matrices specialized into a ring.
    pub fn generators_in<R: Ring>(&self, ring: &R) -> Vec<Matrix<R::Elem>> {
        self.generators.iter().map(|(_, m)| m.map(|p| ring.from_poly(p))).collect()
    }
}

/// Adjacent transpositions `s_i` (`i ≠ r`) and, when both sides are nonempty, `E_{r,r+1}`.
pub fn generator_diagrams(r: usize, s: usize) -> Vec<WalledDiagram> {
    let mut out: Vec<WalledDiagram> = (1..r + s)
        .filter(|&i| i != r)
        .map(|i| WalledDiagram::transposition(r, s, i).expect("same side"))
        .collect();
    if r > 0 && s > 0 {
        out.push(WalledDiagram::e(r, s, r, r + 1).expect("walled arc"));
    }
    out
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// `dim Hom(src, tgt)`: solves `M·A_src(g) = A_tgt(g)·M` over the generators.
pub fn hom_space_dim<F: Field>(field: &F, src: &CellModule, tgt: &CellModule) -> Result<usize> {
    let (a, b) = (&src.label, &tgt.label);
    if (a.r, a.s) != (b.r, b.s) {
        return Err(Error::AmbientMismatch(a.r, a.s, b.r, b.s));
    }
    let (ds, dt) = (src.dim(), tgt.dim());
    let unknowns = dt * ds;
    let var = |i: usize, j: usize| i * ds + j;
    let mut red = RowReducer::new(field, unknowns);
    let gs = src.generators_in(field);
    let gt = tgt.generators_in(field);
    for (ms, mt) in gs.iter().zip(&gt) {
        for i in 0..dt {
            for j in 0..ds {
                // (M·A_s)[i][j] − (A_t·M)[i][j]
                let mut row = Vec::new();
                for k in 0..ds {
                    let x = ms.get(k, j);
                    if !field.is_zero(x) {
                        row.push((var(i, k), x.clone()));
                    }
                }
                for k in 0..dt {
                    let x = mt.get(i, k);
                    if !field.is_zero(x) {
                        row.push((var(k, j), field.neg(x)));
                    }
                }
                red.insert(row);
                if red.is_full() {
                    return Ok(0);
                }
            }
        }
    }
    Ok(red.nullity())
}

/// [`hom_space_dim`] for a run-time scalar context; symbolic `δ` is rejected.
pub fn hom_space_dim_in(ctx: &ScalarContext, src: &CellModule, tgt: &CellModule) -> Result<usize> {
    match ctx {
        ScalarContext::Symbolic => Err(Error::Unsupported(
            "hom dimensions depend on δ; choose a value".into(),
        )),
        ScalarContext::Rational(q) => hom_space_dim(q, src, tgt),
        ScalarContext::Prime(f) => hom_space_dim(f, src, tgt),
    }
}

/// Which side a strand is removed from when restricting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// Dimension identity for restriction to `B_{r-1,s}` (side L) or `B_{r,s-1}` (side R).
pub fn restriction_dim_check(label: &CellLabel, side: Side) -> Result<bool> {
    let (r, s) = (label.r, label.s);
    let (own, other) = match side {
        Side::L => (label.left(), label.right()),
        Side::R => (label.right(), label.left()),
    };
    let (r2, s2) = match side {
        Side::L if r > 0 => (r - 1, s),
        Side::R if s > 0 => (r, s - 1),
        _ => return Err(Error::InvalidLabel(format!("cannot restrict {label} on side {side:?}"))),
    };
    let make = |own: Partition, other: Partition| -> Result<u64> {
        let bip = match side {
            Side::L => Bipartition::new(own, other),
            Side::R => Bipartition::new(other, own),
        };
        Ok(cell_dim(&CellLabel::new(r2, s2, bip)?))
    };
    let mut total = 0;
    for b in removable_boxes(own) {
        total += make(own.remove_box(b)?, other.clone())?;
    }
    if label.t > 0 {
        for b in addable_boxes(other) {
            total += make(own.clone(), other.add_box(b)?)?;
        }
    }
    Ok(total == cell_dim(label))
}

/// Multiplicity of `S^{λ^L} ⊠ S^{λ^R}` in the restriction of `Δ(μ)` to `Σ_r × Σ_s`.
pub fn halverson_multiplicity(label: &CellLabel, target: &Bipartition) -> Result<u64> {
    if target.degrees() != (label.r, label.s) {
        return Err(Error::InvalidLabel(format!(
            "{target} is not a bipartition of ({}, {})",
            label.r, label.s
        )));
    }
    Ok(Partition::all(label.t)
        .iter()
        .map(|tau| {
            lr_coefficient(&target.left, label.left(), tau) * lr_coefficient(&target.right, label.right(), tau)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::enumerate_basis;
    use crate::scalar::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn label(r: usize, s: usize, l: &[usize], rr: &[usize]) -> CellLabel {
        CellLabel::from_parts(r, s, l.to_vec(), rr.to_vec()).unwrap()
    }

    fn poly_mat(rows: Vec<Vec<Poly>>) -> Matrix<Poly> {
        Matrix::from_rows(rows)
    }

    #[test]
    fn small_modules() {
        let m = CellModule::build(&label(1, 1, &[], &[])).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.generators()[0].1, poly_mat(vec![vec![Poly::delta()]]));
        assert_eq!(m.gram(), &poly_mat(vec![vec![Poly::delta()]]));
        assert_eq!(m.t_element_matrix(), poly_mat(vec![vec![Poly::delta()]]));

        let m = CellModule::build(&label(1, 1, &[1], &[1])).unwrap();
        assert_eq!(m.generators()[0].1, poly_mat(vec![vec![Poly::zero()]]));
        assert_eq!(m.gram(), &poly_mat(vec![vec![Poly::constant(1)]]));
        assert_eq!(m.t_element_matrix(), poly_mat(vec![vec![Poly::zero()]]));

        let m = CellModule::build(&label(2, 1, &[1], &[])).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(CellLabel::from_parts(2, 1, vec![2], vec![1]).is_ok());
        assert!(CellLabel::from_parts(2, 1, vec![1], vec![1]).is_err());
    }

    #[test]
    fn dims_match_formula() {
        for n in 0..=5 {
            for r in 0..=n {
                for l in CellLabel::all(r, n - r) {
                    let m = CellModule::build(&l).unwrap();
                    assert_eq!(m.dim() as u64, cell_dim(&l), "{l}");
                }
            }
        }
    }

    /// Every basis diagram acts, and the action is multiplicative with loop factors.
    #[test]
    fn action_is_a_representation() {
        let ring = Symbolic;
        for (r, s) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let basis = enumerate_basis(r, s).unwrap();
            for l in CellLabel::all(r, s) {
                let m = CellModule::build(&l).unwrap();
                let mats: Vec<Matrix<Poly>> = basis.iter().map(|d| m.action(d).unwrap()).collect();
                for (i, a) in basis.iter().enumerate() {
                    for (j, b) in basis.iter().enumerate() {
                        let (loops, c) = a.multiply(b).unwrap();
                        let k = basis.iter().position(|x| *x == c).unwrap();
                        let lhs = Matrix::mul(&ring, &mats[i], &mats[j]);
                        let rhs = Matrix::scale(&ring, &Poly::monomial(1, loops), &mats[k]);
                        assert_eq!(lhs, rhs, "{l}: {a:?} * {b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn gram_is_contravariant_and_symmetric() {
        let ring = Symbolic;
        for (r, s) in [(2, 2), (3, 1), (2, 3)] {
            let basis = enumerate_basis(r, s).unwrap();
            for l in CellLabel::all(r, s) {
                let m = CellModule::build(&l).unwrap();
                let g = m.gram();
                assert_eq!(&g.transpose(), g, "{l}");
                for d in &basis {
                    let a = m.action(d).unwrap();
                    let ai = m.action(&d.involution()).unwrap();
                    let lhs = Matrix::mul(&ring, &a.transpose(), g);
                    let rhs = Matrix::mul(&ring, g, &ai);
                    assert_eq!(lhs, rhs, "{l}: {d:?}");
                }
            }
        }
    }

    #[test]
    fn e_squares_to_delta_e() {
        let ring = Symbolic;
        for l in CellLabel::all(2, 3) {
            let m = CellModule::build(&l).unwrap();
            let (_, e) = m.generators().last().unwrap();
            assert_eq!(Matrix::mul(&ring, e, e), Matrix::scale(&ring, &Poly::delta(), e));
        }
    }

    #[test]
    fn key_scalar_identity_small() {
        for (r, s) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            for l in CellLabel::all(r, s) {
                let m = CellModule::build(&l).unwrap();
                assert_eq!(m.t_element_matrix(), m.t_element_rhs(), "{l}");
            }
        }
    }

    #[test]
    fn gram_det_of_two_one() {
        // Δ_{2,1}((1),∅): det vanishes exactly where a two-box hom exists
        let m = CellModule::build(&label(2, 1, &[1], &[])).unwrap();
        let det = m.gram_det();
        let roots = det.integer_roots().unwrap();
        let src = CellModule::build(&label(2, 1, &[2], &[1])).unwrap();
        let src2 = CellModule::build(&label(2, 1, &[1, 1], &[1])).unwrap();
        for x in -4..=4 {
            let f = Rationals::with_int(x);
            let homs = hom_space_dim(&f, &src, &m).unwrap() + hom_space_dim(&f, &src2, &m).unwrap();
            assert_eq!(roots.contains(&x), homs > 0, "δ = {x}, det {det}");
        }
    }

    #[test]
    fn hom_examples() {
        let a = CellModule::build(&label(1, 1, &[1], &[1])).unwrap();
        let b = CellModule::build(&label(1, 1, &[], &[])).unwrap();
        assert_eq!(hom_space_dim(&Rationals::with_int(0), &a, &b).unwrap(), 1);
        assert_eq!(hom_space_dim(&Rationals::with_int(1), &a, &b).unwrap(), 0);
        assert_eq!(hom_space_dim(&PrimeField::new(3, 3).unwrap(), &a, &b).unwrap(), 1);
        for l in CellLabel::all(2, 2) {
            let m = CellModule::build(&l).unwrap();
            assert!(hom_space_dim(&Rationals::new(BigRational::new(1.into(), 2.into())), &m, &m).unwrap() >= 1);
        }
        assert!(hom_space_dim_in(&ScalarContext::Symbolic, &a, &b).is_err());
        let c = CellModule::build(&label(2, 1, &[1], &[])).unwrap();
        assert!(matches!(hom_space_dim(&Rationals::with_int(0), &a, &c), Err(Error::AmbientMismatch(..))));
    }

    #[test]
    fn generators_generate() {
        for (r, s) in [(1, 1), (2, 1), (1, 3), (2, 2), (3, 1)] {
            let gens = generator_diagrams(r, s);
            let mut seen = vec![WalledDiagram::identity(r, s)];
            let mut frontier = seen.clone();
            while let Some(d) = frontier.pop() {
                for g in &gens {
                    let (_, p) = d.multiply(g).unwrap();
                    if !seen.contains(&p) {
                        seen.push(p.clone());
                        frontier.push(p);
                    }
                }
            }
            assert_eq!(seen.len() as u64, factorial(r + s), "({r},{s})");
        }
    }

    #[test]
    fn restriction_examples() {
        assert!(restriction_dim_check(&label(1, 1, &[], &[]), Side::L).unwrap());
        assert!(restriction_dim_check(&label(2, 2, &[1], &[1]), Side::L).unwrap());
        assert!(restriction_dim_check(&label(0, 2, &[], &[2]), Side::L).is_err());
    }

    #[test]
    fn halverson_examples() {
        let l = label(1, 1, &[], &[]);
        assert_eq!(halverson_multiplicity(&l, &Bipartition::from_parts(vec![1], vec![1]).unwrap()).unwrap(), 1);
        let l = label(2, 1, &[1], &[]);
        assert_eq!(halverson_multiplicity(&l, &Bipartition::from_parts(vec![2], vec![1]).unwrap()).unwrap(), 1);
        assert!(halverson_multiplicity(&l, &Bipartition::from_parts(vec![1], vec![1]).unwrap()).is_err());
    }
}
