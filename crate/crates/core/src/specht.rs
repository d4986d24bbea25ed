//! Integral Specht modules realized inside the tabloid permutation module.
//!
//! The basis is the set of standard polytabloids, in last-letter order of the
//! standard tableaux. A vector of the tabloid module lying in the Specht
//! module is expressed in that basis through its coordinates on the standard
//! tabloids, where the polytabloid matrix is unitriangular.
//!
//! Permutations are 0-based image vectors, `g[x] = g(x)`, composed as
//! functions: `(gh)(x) = g(h(x))`. They act on tableaux by relabelling entries.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{standard_tableaux, Partition, StandardTableau};
use crate::error::{Error, Result};
use crate::linalg::{inverse_field, to_integer, to_rational, Integers, Matrix};
use crate::scalar::{Poly, Rationals, Ring};

/// Largest degree accepted by [`SpechtRep::build`].
pub const DEFAULT_SPECHT_BOUND: usize = 7;

type Tabloid = Vec<u8>;

/// A Specht module with integral generator matrices and its invariant form.
#[derive(Debug, Clone)]
pub struct SpechtRep {
    shape: Partition,
    basis: Vec<StandardTableau>,
    generators: Vec<Matrix<BigInt>>,
    form: Matrix<BigInt>,
    /// `(P⁻¹)` on standard tabloid coordinates; kept to express arbitrary
    /// polytabloids in the basis.
    solve: Matrix<BigInt>,
    standard_tabloids: Vec<Tabloid>,
}

impl SpechtRep {
    pub fn build(shape: &Partition) -> Result<Self> {
        Self::build_bounded(shape, DEFAULT_SPECHT_BOUND)
    }

    pub fn build_bounded(shape: &Partition, bound: usize) -> Result<Self> {
        let n = shape.degree();
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "partition degree",
                value: n,
                bound,
            });
        }
        let basis = standard_tableaux(shape);
        let rows: Vec<Vec<Vec<usize>>> = basis.iter().map(|t| rows_zero_based(t.rows())).collect();
        let standard_tabloids: Vec<Tabloid> = rows.iter().map(|r| tabloid_of(r, n)).collect();
        let polys: Vec<HashMap<Tabloid, i64>> = rows.iter().map(|r| polytabloid(r, n)).collect();

        let dim = basis.len();
        let mut p = Matrix::zeros(&Integers, dim, dim);
        for (j, e) in polys.iter().enumerate() {
            for (i, t) in standard_tabloids.iter().enumerate() {
                if let Some(&c) = e.get(t) {
                    p.set(i, j, BigInt::from(c));
                }
            }
        }
        let q = Rationals::with_int(0);
        let inv = inverse_field(&q, &to_rational(&p)).expect("standard polytabloids are independent");
        let solve = to_integer(&inv).expect("polytabloid matrix is unimodular");

        let mut form = Matrix::zeros(&Integers, dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let v: i64 = polys[i]
                    .iter()
                    .map(|(t, a)| a * polys[j].get(t).copied().unwrap_or(0))
                    .sum();
                form.set(i, j, BigInt::from(v));
            }
        }

        let mut rep = SpechtRep {
            shape: shape.clone(),
            basis,
            generators: Vec::new(),
            form,
            solve,
            standard_tabloids,
        };
        rep.generators = (1..n.max(1))
            .map(|i| {
                let mut g: Vec<usize> = (0..n).collect();
                g.swap(i - 1, i);
                rep.act_direct(&g)
            })
            .collect();
        Ok(rep)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        self.shape.degree()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[StandardTableau] {
        &self.basis
    }

    /// Matrix of `s_i` (1-based `i`), swapping letters `i` and `i + 1`.
    pub fn generator(&self, i: usize) -> &Matrix<BigInt> {
        &self.generators[i - 1]
    }

    pub fn generators(&self) -> &[Matrix<BigInt>] {
        &self.generators
    }

    /// Gram matrix of the tabloid pairing on the basis.
    pub fn form(&self) -> &Matrix<BigInt> {
        &self.form
    }

    /// `ρ(g)` as a product of generator matrices along a reduced word.
    pub fn act(&self, g: &[usize]) -> Result<Matrix<BigInt>> {
        let n = self.degree();
        check_perm(g, n)?;
        let mut m = Matrix::identity(&Integers, self.dim());
        for k in reduced_word(g) {
            m = Matrix::mul(&Integers, &m, &self.generators[k]);
        }
        Ok(m)
    }

    /// `ρ(g)` computed straight from the polytabloids `e_{gT}`.
    pub fn act_direct(&self, g: &[usize]) -> Matrix<BigInt> {
        let n = self.degree();
        let dim = self.dim();
        let mut out = Matrix::zeros(&Integers, dim, dim);
        for (j, t) in self.basis.iter().enumerate() {
            let rows: Vec<Vec<usize>> = rows_zero_based(t.rows())
                .into_iter()
                .map(|row| row.into_iter().map(|x| g[x]).collect())
                .collect();
            let e = polytabloid(&rows, n);
            let restricted: Vec<BigInt> = self
                .standard_tabloids
                .iter()
                .map(|t| BigInt::from(e.get(t).copied().unwrap_or(0)))
                .collect();
            for i in 0..dim {
                let mut acc = BigInt::zero();
                for (k, x) in restricted.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.solve.get(i, k) * x;
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

fn rows_zero_based(rows: &[Vec<usize>]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| r.iter().map(|x| x - 1).collect()).collect()
}

fn tabloid_of(rows: &[Vec<usize>], n: usize) -> Tabloid {
    let mut t = vec![0u8; n];
    for (i, row) in rows.iter().enumerate() {
        for &x in row {
            t[x] = i as u8;
        }
    }
    t
}

/// `e_T = Σ_{c ∈ C_T} sgn(c) {cT}` as a sparse tabloid vector.
fn polytabloid(rows: &[Vec<usize>], n: usize) -> HashMap<Tabloid, i64> {
    let width = rows.first().map_or(0, Vec::len);
    let columns: Vec<Vec<usize>> = (0..width)
        .map(|j| rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect())
        .collect();
    let mut out: HashMap<Tabloid, i64> = HashMap::new();
    let base = tabloid_of(rows, n);
    let mut acc = vec![(base, 1i64)];
    for col in &columns {
        let mut next = Vec::new();
        let perms = permutations_with_sign(col.len());
        for (t, sg) in &acc {
            for (perm, s) in &perms {
                let mut u = t.clone();
                for (k, &pk) in perm.iter().enumerate() {
                    // entry col[k] moves to the row of col[pk]
                    u[col[k]] = t[col[pk]];
                }
                next.push((u, sg * s));
            }
        }
        acc = next;
    }
    for (t, c) in acc {
        *out.entry(t).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn permutations_with_sign(m: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    loop {
        out.push((p.clone(), perm_sign(&p)));
        if !crate::diagram::next_permutation(&mut p) {
            break;
        }
    }
    out
}

pub(crate) fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_perm(g: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if g.len() != n || g.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
        return Err(Error::InvalidPermutation(g.to_vec()));
    }
    Ok(())
}

/// 0-based generator indices `k` (for `s_{k+1}`) with `g = s_{k_1} ⋯ s_{k_m}`.
pub fn reduced_word(g: &[usize]) -> Vec<usize> {
    let mut w = g.to_vec();
    let mut word = Vec::new();
    while let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
        w.swap(k, k + 1);
        word.push(k);
    }
    word.reverse();
    word
}

/// Outer tensor product `S^{λ^L} ⊠ S^{λ^R}` for `Σ_a × Σ_b`; the right
/// factor acts on letters `a..a+b`. Basis index is `i·dim_R + j`.
#[derive(Debug, Clone)]
pub struct ProductRep {
    left: SpechtRep,
    right: SpechtRep,
}

impl ProductRep {
    pub fn build(left: &Partition, right: &Partition) -> Result<Self> {
        Ok(Self {
            left: SpechtRep::build(left)?,
            right: SpechtRep::build(right)?,
        })
    }

    pub fn left(&self) -> &SpechtRep {
        &self.left
    }

    pub fn right(&self) -> &SpechtRep {
        &self.right
    }

    pub fn offset(&self) -> usize {
        self.left.degree()
    }

    pub fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    /// `ρ(g)` for a wall-preserving permutation of `a + b` letters.
    pub fn act_permutation(&self, g: &[usize]) -> Result<Matrix<BigInt>> {
        let a = self.left.degree();
        let n = a + self.right.degree();
        check_perm(g, n)?;
        if (0..n).any(|k| (k < a) != (g[k] < a)) {
            return Err(Error::WallCrossing(g.to_vec()));
        }
        let gl = &g[..a];
        let gr: Vec<usize> = g[a..].iter().map(|x| x - a).collect();
        Ok(kron(&self.left.act(gl)?, &self.right.act(&gr)?))
    }

    pub fn form(&self) -> Matrix<BigInt> {
        kron(self.left.form(), self.right.form())
    }
}

pub fn kron(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Matrix<BigInt> {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = Matrix::zeros(&Integers, ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out.set(i * br + k, j * bc + l, x * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Specializes an integer matrix into any ring.
pub fn specialize<R: Ring>(ring: &R, m: &Matrix<BigInt>) -> Matrix<R::Elem> {
    m.map(|x| {
        if x.is_zero() {
            ring.zero()
        } else if x.is_one() {
            ring.one()
        } else {
            ring.from_poly(&Poly::constant(x.clone()))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::specht_dim;
    use crate::linalg::{det_field, is_identity};

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_examples() {
        let triv = SpechtRep::build(&part(&[3])).unwrap();
        assert_eq!(triv.dim(), 1);
        for g in triv.generators() {
            assert!(is_identity(&Integers, g));
        }
        let sign = SpechtRep::build(&part(&[1, 1])).unwrap();
        assert_eq!(sign.generator(1), &Matrix::from_rows(vec![vec![int(-1)]]));
        let empty = SpechtRep::build(&Partition::empty()).unwrap();
        assert_eq!(empty.dim(), 1);
        assert!(empty.act(&[]).is_ok());
        assert!(SpechtRep::build(&part(&[4, 4])).is_err());
    }

    fn coxeter_relations_hold(rep: &SpechtRep) {
        let z = Integers;
        let n = rep.degree();
        for i in 1..n {
            let si = rep.generator(i);
            assert!(is_identity(&z, &Matrix::mul(&z, si, si)), "{} s_{i}^2", rep.shape());
            for j in i + 1..n {
                let sj = rep.generator(j);
                let (a, b) = (Matrix::mul(&z, si, sj), Matrix::mul(&z, sj, si));
                if j == i + 1 {
                    assert_eq!(Matrix::mul(&z, &a, si), Matrix::mul(&z, &b, sj), "braid {i}");
                } else {
                    assert_eq!(a, b, "commute {i} {j}");
                }
            }
        }
    }

    #[test]
    fn coxeter_relations_and_invariant_form() {
        let z = Integers;
        let q = Rationals::with_int(0);
        for n in 0..=6 {
            for p in Partition::all(n) {
                let rep = SpechtRep::build(&p).unwrap();
                assert_eq!(rep.dim() as u64, specht_dim(&p));
                coxeter_relations_hold(&rep);
                for g in rep.generators() {
                    let lhs = Matrix::mul(&z, &Matrix::mul(&z, &g.transpose(), rep.form()), g);
                    assert_eq!(&lhs, rep.form());
                }
                assert_ne!(det_field(&q, &to_rational(rep.form())), BigInt::zero().into());
            }
        }
    }

    #[test]
    fn dims_to_degree_seven() {
        for p in Partition::all(7) {
            assert_eq!(SpechtRep::build(&p).unwrap().dim() as u64, specht_dim(&p));
        }
    }

    #[test]
    fn words_agree_with_direct_action() {
        let rep = SpechtRep::build(&part(&[3, 2])).unwrap();
        let mut g: Vec<usize> = (0..5).collect();
        loop {
            assert_eq!(rep.act(&g).unwrap(), rep.act_direct(&g));
            if !crate::diagram::next_permutation(&mut g) {
                break;
            }
        }
        // homomorphism
        let g = [2, 0, 1, 4, 3];
        let h = [1, 3, 0, 2, 4];
        let gh: Vec<usize> = (0..5).map(|x| g[h[x]]).collect();
        let z = Integers;
        assert_eq!(Matrix::mul(&z, &rep.act(&g).unwrap(), &rep.act(&h).unwrap()), rep.act(&gh).unwrap());
    }

    #[test]
    fn product_rep_examples() {
        let rep = ProductRep::build(&part(&[2]), &part(&[1])).unwrap();
        assert!(is_identity(&Integers, &rep.act_permutation(&[1, 0, 2]).unwrap()));
        assert!(matches!(rep.act_permutation(&[2, 1, 0]), Err(Error::WallCrossing(_))));
        let rep = ProductRep::build(&part(&[2, 1]), &part(&[1, 1])).unwrap();
        assert_eq!(rep.dim(), 2);
        assert!(is_identity(&Integers, &rep.act_permutation(&[0, 1, 2, 3, 4]).unwrap()));
        let sw = rep.act_permutation(&[0, 1, 2, 4, 3]).unwrap();
        assert_eq!(Matrix::add(&Integers, &sw, &Matrix::identity(&Integers, 2)), Matrix::zeros(&Integers, 2, 2));
    }

    #[test]
    fn transposition_sum_is_content_scalar() {
        let z = Integers;
        for p in [part(&[2, 1]), part(&[3]), part(&[2, 2])] {
            let rep = SpechtRep::build(&p).unwrap();
            let n = rep.degree();
            let mut sum = Matrix::zeros(&z, rep.dim(), rep.dim());
            for i in 0..n {
                for m in i + 1..n {
                    let mut g: Vec<usize> = (0..n).collect();
                    g.swap(i, m);
                    sum = Matrix::add(&z, &sum, &rep.act(&g).unwrap());
                }
            }
            let c = BigInt::from(p.content_sum());
            assert_eq!(sum, Matrix::scale(&z, &c, &Matrix::identity(&z, rep.dim())), "{p}");
        }
    }
}
