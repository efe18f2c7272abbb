//! Exact arithmetic in GF(p^e).
//!
//! Elements are dense coefficient vectors (low degree first) reduced modulo a
//! monic irreducible polynomial. The modulus is the lexicographically least
//! monic irreducible of degree `e`, comparing coefficient lists low-to-high,
//! so a given `(p, e)` always produces the same field.
//!
//! [`FieldTables`] packs elements into small integers and caches the
//! addition and multiplication tables for fields small enough to serve as
//! matrix coefficients.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`].
pub const FIELD_CAP: u64 = 1 << 20;

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

/// Splits a prime power into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    /// Monic modulus, low-to-high, length `e + 1`.
    modulus: Vec<u64>,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// Polynomial helpers over GF(p); vectors are low-to-high and may carry
// trailing zeros.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mod_inv_prime(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let t = r[shift + i] + p - lead * c % p;
            r[shift + i] = t % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Monic polynomials of exact degree `d`, in lexicographic order of their
/// low-to-high coefficient lists.
fn monic_polys(p: u64, d: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d);
    (0..count).map(move |mut k| {
        let mut v = Vec::with_capacity(d as usize + 1);
        // The first coefficient varies slowest to match lexicographic order.
        let mut digits = vec![0; d as usize];
        for slot in digits.iter_mut().rev() {
            *slot = k % p;
            k /= p;
        }
        v.extend(digits);
        v.push(1);
        v
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for g in monic_polys(p, d) {
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e < 1 {
            return Err(Error::InvalidInput(format!("field degree must be >= 1, got {e}")));
        }
        let q = p.checked_pow(e).filter(|&q| q <= FIELD_CAP);
        let Some(_) = q else {
            return Err(Error::CapExceeded {
                what: "field order",
                cap: FIELD_CAP,
                reached: p.saturating_pow(e),
            });
        };
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            monic_polys(p, e)
                .find(|f| is_irreducible(f, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        Ok(FieldSpec { p, e, modulus })
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        Self::new(p, e)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The "GF(p^e)" literal used in group-spec files.
    pub fn literal(&self) -> String {
        format!("GF({}^{})", self.p, self.e)
    }

    /// Parses a "GF(p^e)" or "GF(p)" literal.
    pub fn parse_literal(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad field literal {s:?}"));
        let inner = s
            .trim()
            .strip_prefix("GF(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (p, e) = match inner.split_once('^') {
            Some((p, e)) => (p.trim().parse().map_err(|_| bad())?, e.trim().parse().map_err(|_| bad())?),
            None => (inner.trim().parse().map_err(|_| bad())?, 1),
        };
        Self::new(p, e)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.e as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.e as usize];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    /// The class of the indeterminate `x`; equals the constant 0 when e = 1.
    pub fn generator(&self) -> FieldElement {
        let mut coeffs = vec![0; self.e as usize];
        if self.e > 1 {
            coeffs[1] = 1;
        }
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        let a = FieldElement { coeffs: coeffs.to_vec() };
        self.check(&a)?;
        Ok(a)
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.coeffs.len() != self.e as usize || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch { p: self.p, e: self.e });
        }
        Ok(())
    }

    fn pad(&self, v: Vec<u64>) -> FieldElement {
        let mut coeffs = v;
        coeffs.resize(self.e as usize, 0);
        FieldElement { coeffs }
    }

    /// Base-`p` packing of the coefficient vector, in `0..q`.
    pub fn to_index(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn from_index(&self, mut k: u64) -> FieldElement {
        let mut coeffs = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            coeffs.push(k % self.p);
            k /= self.p;
        }
        FieldElement { coeffs }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|k| self.from_index(k))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.p).collect();
        Ok(FieldElement { coeffs })
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        Ok(FieldElement { coeffs })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        Ok(self.pad(poly_rem(&prod, &self.modulus, self.p)))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// polynomials.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        // Invariant: s * a ≡ r (mod modulus), likewise for the primed pair.
        let (mut r0, mut r1) = (self.modulus.clone(), trim(a.coeffs.clone()));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while r1.len() > 1 {
            let (quot, rem) = poly_divmod(&r0, &r1, p);
            let qs = poly_mul(&quot, &s1, p);
            let next_s = poly_sub(&s0, &qs, p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        // r1 is a nonzero constant.
        let c = mod_inv_prime(r1[0], p);
        let out: Vec<u64> = s1.iter().map(|&x| x * c % p).collect();
        Ok(self.pad(poly_rem(&out, &self.modulus, p)))
    }

    pub fn pow(&self, a: &FieldElement, n: i64) -> Result<FieldElement> {
        self.check(a)?;
        let base = if n < 0 { self.inv(a)? } else { a.clone() };
        let mut exp = n.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &sq)?;
            }
            sq = self.mul(&sq, &sq)?;
            exp >>= 1;
        }
        Ok(acc)
    }
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Quotient and remainder for a nonzero (not necessarily monic) divisor.
fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = mod_inv_prime(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut quot = vec![0; r.len().saturating_sub(db).max(1)];
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() * lead_inv % p;
        quot[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bc % p) % p;
        }
        r = trim(r);
    }
    (trim(quot), r)
}

/// Cached arithmetic tables on packed field indices (`0..q`), for fields
/// with at most 256 elements.
#[derive(Clone, Debug)]
pub struct FieldTables {
    spec: FieldSpec,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FieldTables {
    pub const MAX_ORDER: u64 = 256;

    pub fn new(spec: &FieldSpec) -> Result<Self> {
        let q = spec.order();
        if q > Self::MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "tabulated field order",
                cap: Self::MAX_ORDER,
                reached: q,
            });
        }
        let q = q as usize;
        let elems: Vec<FieldElement> = spec.elements().collect();
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = spec.to_index(&spec.add(a, b)?) as u8;
                mul[i * q + j] = spec.to_index(&spec.mul(a, b)?) as u8;
            }
        }
        let neg = elems.iter().map(|a| spec.to_index(&spec.neg(a).unwrap()) as u8).collect();
        let inv = elems
            .iter()
            .map(|a| if a.is_zero() { 0 } else { spec.to_index(&spec.inv(a).unwrap()) as u8 })
            .collect();
        Ok(FieldTables { spec: spec.clone(), q, add, mul, neg, inv })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero index; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Packed index of the integer constant `c`.
    pub fn constant(&self, c: i64) -> u8 {
        c.rem_euclid(self.spec.characteristic() as i64) as u8
    }

    /// Packed indices of an additive basis `1, x, …, x^{e-1}`.
    pub fn additive_basis(&self) -> Vec<u8> {
        let p = self.spec.characteristic();
        (0..self.spec.degree()).map(|i| p.pow(i) as u8).collect()
    }
}
