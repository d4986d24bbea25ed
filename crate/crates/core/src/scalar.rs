//! Exact coefficient rings.
//!
//! Everything is first computed over `Z[δ]` ([`Poly`]) and then specialized
//! through [`Ring::from_poly`]. A computation fixes one ring context for its
//! whole run; elements never carry their own context tag.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in `δ` with integer coefficients, dense ascending order.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c·δ^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        Self::from_coeffs(coeffs)
    }

    pub fn delta() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = other.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact quotient `self / divisor`; `None` when the division leaves a
    /// remainder or a non-integral coefficient.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(quot))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let mut acc = 0u128;
        let pp = p as u128;
        for c in self.coeffs.iter().rev() {
            acc = (acc * x as u128 + reduce_bigint(c, p) as u128) % pp;
        }
        acc as u64
    }

    /// Distinct integer roots, ascending. `None` for the zero polynomial,
    /// which vanishes everywhere.
    pub fn integer_roots(&self) -> Option<Vec<i64>> {
        if self.is_zero() {
            return None;
        }
        let low = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let mut roots = Vec::new();
        if low > 0 {
            roots.push(0);
        }
        let rest = Poly::from_coeffs(self.coeffs[low..].to_vec());
        let n = rest.degree().unwrap_or(0);
        if n == 0 {
            return Some(roots);
        }
        // Fujiwara bound on root modulus
        let lead = rest.coeffs[n].abs().to_f64().unwrap_or(f64::MAX);
        let bound = (1..=n)
            .map(|k| {
                let a = rest.coeffs[n - k].abs().to_f64().unwrap_or(f64::MAX) / lead;
                a.powf(1.0 / k as f64)
            })
            .fold(0.0f64, f64::max);
        let bound = (2.0 * bound).ceil().min(i64::MAX as f64 / 2.0) as i64 + 1;
        let c0 = &rest.coeffs[0];
        for x in 1..=bound {
            if !(c0 % BigInt::from(x)).is_zero() {
                continue;
            }
            for cand in [x, -x] {
                if rest.eval_rational(&BigRational::from_integer(cand.into())).is_zero() {
                    roots.push(cand);
                }
            }
        }
        roots.sort_unstable();
        Some(roots)
    }

    /// Coefficients as `i64`, for serialization; `None` on overflow.
    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    write!(f, "d")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn reduce_bigint(c: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    c.mod_floor(&m).to_u64().expect("reduced residue fits")
}

/// Commutative ring with a distinguished element `δ`, given by a context value.
pub trait Ring: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn delta(&self) -> Self::Elem;
    /// Specialization `Z[δ] → R` sending the indeterminate to [`Ring::delta`].
    fn from_poly(&self, p: &Poly) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn delta_pow(&self, k: usize) -> Self::Elem {
        let d = self.delta();
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, &d))
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// `Z[δ]` with `δ` an indeterminate.
#[derive(Debug, Clone, Copy, Default)]
pub struct Symbolic;

impl Ring for Symbolic {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(1)
    }
    fn from_int(&self, n: i64) -> Poly {
        Poly::constant(n)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn delta(&self) -> Poly {
        Poly::delta()
    }
    fn from_poly(&self, p: &Poly) -> Poly {
        p.clone()
    }
}

/// `Q` with `δ` specialized to a rational number.
#[derive(Debug, Clone, PartialEq)]
pub struct Rationals {
    pub delta: BigRational,
}

impl Rationals {
    pub fn new(delta: BigRational) -> Self {
        Self { delta }
    }

    pub fn with_int(delta: i64) -> Self {
        Self::new(BigRational::from_integer(delta.into()))
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn delta(&self) -> BigRational {
        self.delta.clone()
    }
    fn from_poly(&self, p: &Poly) -> BigRational {
        p.eval_rational(&self.delta)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// `F_p` with `δ` specialized to a residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    delta: u64,
}

impl PrimeField {
    pub fn new(p: u64, delta: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Unsupported(format!("prime {p} too large")));
        }
        Ok(Self {
            p,
            delta: delta.rem_euclid(p as i64) as u64,
        })
    }

    /// Specializes a rational `δ = a/b`; the denominator must be a unit mod `p`.
    pub fn with_rational(p: u64, delta: &BigRational) -> Result<Self> {
        let base = Self::new(p, 0)?;
        let num = reduce_bigint(delta.numer(), p);
        let den = reduce_bigint(delta.denom(), p);
        let inv = base
            .inv(&den)
            .ok_or_else(|| Error::Unsupported(format!("denominator of δ vanishes mod {p}")))?;
        Ok(Self {
            p,
            delta: base.mul(&num, &inv),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn delta(&self) -> u64 {
        self.delta
    }
    fn from_poly(&self, p: &Poly) -> u64 {
        p.eval_mod(self.delta, self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^(p-2)
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The value of `δ` for a run: an integer, a non-integral rational, or the
/// indeterminate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DeltaValue {
    Integer(i64),
    Rational(BigRational),
    Symbolic,
}

impl DeltaValue {
    pub fn from_rational(q: BigRational) -> Self {
        if q.is_integer() {
            if let Some(n) = q.to_integer().to_i64() {
                return DeltaValue::Integer(n);
            }
        }
        DeltaValue::Rational(q)
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            DeltaValue::Integer(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            DeltaValue::Integer(n) => Some(BigRational::from_integer((*n).into())),
            DeltaValue::Rational(q) => Some(q.clone()),
            DeltaValue::Symbolic => None,
        }
    }
}

impl FromStr for DeltaValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "symbolic" {
            return Ok(DeltaValue::Symbolic);
        }
        let bad = || Error::Parse(format!("bad delta {s:?}: expected integer, a/b, or 'symbolic'"));
        if let Some((a, b)) = s.split_once('/') {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            return Ok(DeltaValue::from_rational(BigRational::new(a, b)));
        }
        s.parse::<i64>().map(DeltaValue::Integer).map_err(|_| bad())
    }
}

impl fmt::Display for DeltaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaValue::Integer(n) => write!(f, "{n}"),
            DeltaValue::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            DeltaValue::Symbolic => write!(f, "symbolic"),
        }
    }
}

impl Serialize for DeltaValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DeltaValue::Integer(n) => s.serialize_i64(*n),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for DeltaValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(DeltaValue::Integer)
                .ok_or_else(|| serde::de::Error::custom("delta must be an integer")),
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            _ => Err(serde::de::Error::custom("delta must be a number or string")),
        }
    }
}

/// One of the three coefficient contexts, chosen at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarContext {
    Symbolic,
    Rational(Rationals),
    Prime(PrimeField),
}

impl ScalarContext {
    /// `p = 0` selects `Q` (or `Z[δ]` for symbolic δ); a prime selects `F_p`.
    pub fn new(delta: &DeltaValue, p: u64) -> Result<Self> {
        match (delta, p) {
            (DeltaValue::Symbolic, 0) => Ok(ScalarContext::Symbolic),
            (DeltaValue::Symbolic, _) => Err(Error::Unsupported(
                "symbolic δ is only available in characteristic 0".into(),
            )),
            (d, 0) => Ok(ScalarContext::Rational(Rationals::new(d.as_rational().unwrap()))),
            (d, p) => Ok(ScalarContext::Prime(PrimeField::with_rational(p, &d.as_rational().unwrap())?)),
        }
    }
}
