//! Dense matrices over a [`Ring`] context, fraction-free determinants over
//! `Z[δ]`, and sparse row reduction over fields.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{Field, Poly, Ring};

/// Row-major dense matrix. Arithmetic goes through a ring context.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<E> = rows.into_iter().flatten().collect();
        Self::from_vec(r, c, data)
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self::from_vec(rows, cols, vec![value; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self::from_vec(self.cols, self.rows, data)
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: FnMut(&E) -> T,
    {
        Matrix::from_vec(self.rows, self.cols, self.data.iter().map(f).collect())
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn mul<R: Ring<Elem = E>>(ring: &R, a: &Self, b: &Self) -> Self {
        assert_eq!(a.cols, b.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(ring, a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k);
                if ring.is_zero(x) {
                    continue;
                }
                for j in 0..b.cols {
                    let y = b.get(k, j);
                    if ring.is_zero(y) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = ring.add(&out.data[idx], &ring.mul(x, y));
                }
            }
        }
        out
    }

    pub fn add<R: Ring<Elem = E>>(ring: &R, a: &Self, b: &Self) -> Self {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        let data = a.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect();
        Self::from_vec(a.rows, a.cols, data)
    }

    pub fn sub<R: Ring<Elem = E>>(ring: &R, a: &Self, b: &Self) -> Self {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        let data = a.data.iter().zip(&b.data).map(|(x, y)| ring.sub(x, y)).collect();
        Self::from_vec(a.rows, a.cols, data)
    }

    pub fn scale<R: Ring<Elem = E>>(ring: &R, c: &E, a: &Self) -> Self {
        a.map(|x| ring.mul(c, x))
    }

    pub fn is_zero_in<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|x| ring.is_zero(x))
    }
}

/// Determinant over `Z[δ]` by Bareiss fraction-free elimination.
pub fn det_poly(m: &Matrix<Poly>) -> Poly {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Poly::constant(1);
    }
    let mut a = m.to_rows();
    let mut sign = false;
    let mut prev = Poly::constant(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Poly::zero();
            };
            a.swap(k, piv);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Determinant over a field by Gaussian elimination.
pub fn det_field<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.to_rows();
    let mut det = field.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !field.is_zero(&a[i][k])) else {
            return field.zero();
        };
        if piv != k {
            a.swap(k, piv);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[k][k]);
        let inv = field.inv(&a[k][k]).expect("pivot is nonzero");
        for i in k + 1..n {
            if field.is_zero(&a[i][k]) {
                continue;
            }
            let f = field.mul(&a[i][k], &inv);
            for j in k..n {
                let t = field.mul(&f, &a[k][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    det
}

/// Inverse over a field, `None` when singular.
pub fn inverse_field<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows;
    let mut a = m.to_rows();
    let mut b = Matrix::identity(field, n).to_rows();
    for k in 0..n {
        let piv = (k..n).find(|&i| !field.is_zero(&a[i][k]))?;
        a.swap(k, piv);
        b.swap(k, piv);
        let inv = field.inv(&a[k][k])?;
        for j in 0..n {
            a[k][j] = field.mul(&a[k][j], &inv);
            b[k][j] = field.mul(&b[k][j], &inv);
        }
        for i in 0..n {
            if i == k || field.is_zero(&a[i][k]) {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let t = field.mul(&f, &a[k][j]);
                a[i][j] = field.sub(&a[i][j], &t);
                let t = field.mul(&f, &b[k][j]);
                b[i][j] = field.sub(&b[i][j], &t);
            }
        }
    }
    Some(Matrix::from_rows(b))
}

/// Incremental row echelon form over a field for sparse rows.
/// Each stored pivot row is monic in its leading column.
pub struct RowReducer<'a, F: Field> {
    field: &'a F,
    ncols: usize,
    pivots: BTreeMap<usize, BTreeMap<usize, F::Elem>>,
}

impl<'a, F: Field> RowReducer<'a, F> {
    pub fn new(field: &'a F, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    /// Adds a row given as `(column, value)` pairs; returns whether the rank grew.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, F::Elem)>) -> bool {
        let f = self.field;
        let mut row: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (c, v) in entries {
            debug_assert!(c < self.ncols);
            if f.is_zero(&v) {
                continue;
            }
            let e = row.entry(c).or_insert_with(|| f.zero());
            *e = f.add(e, &v);
            if f.is_zero(e) {
                row.remove(&c);
            }
        }
        let mut cursor = 0;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, coeff)) = next else { break };
            for (pc, pv) in &self.pivots[&c] {
                let t = f.mul(&coeff, pv);
                let e = row.entry(*pc).or_insert_with(|| f.zero());
                *e = f.sub(e, &t);
                if f.is_zero(e) {
                    row.remove(pc);
                }
            }
            cursor = c + 1;
        }
        let Some((&lead, lv)) = row.iter().next() else {
            return false;
        };
        let inv = f.inv(lv).expect("leading entry is nonzero");
        for v in row.values_mut() {
            *v = f.mul(v, &inv);
        }
        self.pivots.insert(lead, row);
        true
    }
}

/// Rank of a dense matrix over a field.
pub fn rank_field<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut red = RowReducer::new(field, m.cols);
    for i in 0..m.rows {
        red.insert(m.row(i).iter().cloned().enumerate());
    }
    red.rank()
}

/// Converts an integer matrix to rationals.
pub fn to_rational(m: &Matrix<BigInt>) -> Matrix<BigRational> {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// Integer matrix from rationals, `None` if some entry is not integral.
pub fn to_integer(m: &Matrix<BigRational>) -> Option<Matrix<BigInt>> {
    let mut data = Vec::with_capacity(m.rows * m.cols);
    for x in &m.data {
        if !x.is_integer() {
            return None;
        }
        data.push(x.to_integer());
    }
    Some(Matrix::from_vec(m.rows, m.cols, data))
}

/// Is `m` the identity matrix over `ring`?
pub fn is_identity<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> bool {
    m.is_square()
        && (0..m.rows).all(|i| {
            (0..m.cols).all(|j| {
                let x = m.get(i, j);
                if i == j {
                    ring.is_zero(&ring.sub(x, &ring.one()))
                } else {
                    ring.is_zero(x)
                }
            })
        })
}

/// Integers as a ring, used for Specht matrices before specialization.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: i64) -> BigInt {
        n.into()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    /// Integers carry no parameter; `δ` is never used here.
    fn delta(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_poly(&self, p: &Poly) -> BigInt {
        p.coeffs().first().cloned().unwrap_or_default()
    }
}
