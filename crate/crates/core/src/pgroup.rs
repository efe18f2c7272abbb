//! Free class-2 groups of exponent `p`.
//!
//! `W(d, p)` has elements `(u, a)` with `u ∈ GF(p)^d` and `a` an alternating
//! `d × d` matrix over `GF(p)`, stored by its strict upper triangle. The law
//! is `(u, a)(v, b) = (u + v, a + b + u∧v)` with `(u∧v)_{ij} = u_i v_j − u_j v_i`.
//! Commutators are `[(u, a), (v, b)] = (0, 2 u∧v)`, so the commutator width
//! is governed by the rank of alternating matrices.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::group::{enumerate_group, Encoding, Group, GroupHandle, GroupLaw, ORDER_CAP};

/// Coordinate arithmetic in `W(d, p)`; works for any `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FreeClass2 {
    pub d: usize,
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct W2Element {
    pub u: Vec<u64>,
    pub a: Vec<u64>,
}

impl FreeClass2 {
    pub fn new(d: usize, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::Precondition("W(d, p) needs an odd prime p".into()));
        }
        if d == 0 {
            return Err(Error::InvalidInput("rank d must be positive".into()));
        }
        Ok(FreeClass2 { d, p })
    }

    pub fn pair_count(&self) -> usize {
        self.d * (self.d - 1) / 2
    }

    /// `log_p |W(d, p)|`.
    pub fn log_order(&self) -> usize {
        self.d + self.pair_count()
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.d);
        i * self.d - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn identity(&self) -> W2Element {
        W2Element { u: vec![0; self.d], a: vec![0; self.pair_count()] }
    }

    /// The `i`-th free generator `(e_i, 0)`.
    pub fn generator(&self, i: usize) -> W2Element {
        let mut e = self.identity();
        e.u[i] = 1;
        e
    }

    fn wedge_into(&self, u: &[u64], v: &[u64], a: &mut [u64]) {
        let p = self.p;
        for i in 0..self.d {
            for j in i + 1..self.d {
                let k = self.pair_index(i, j);
                a[k] = (a[k] + u[i] * v[j] % p + p - u[j] * v[i] % p) % p;
            }
        }
    }

    pub fn mul(&self, x: &W2Element, y: &W2Element) -> W2Element {
        let p = self.p;
        let u = x.u.iter().zip(&y.u).map(|(s, t)| (s + t) % p).collect();
        let mut a: Vec<u64> = x.a.iter().zip(&y.a).map(|(s, t)| (s + t) % p).collect();
        self.wedge_into(&x.u, &y.u, &mut a);
        W2Element { u, a }
    }

    pub fn inv(&self, x: &W2Element) -> W2Element {
        // u∧u = 0, so the inverse is coordinatewise negation.
        let neg = |v: &Vec<u64>| v.iter().map(|&s| (self.p - s) % self.p).collect();
        W2Element { u: neg(&x.u), a: neg(&x.a) }
    }

    pub fn commutator(&self, x: &W2Element, y: &W2Element) -> W2Element {
        self.mul(&self.mul(&self.inv(x), &self.inv(y)), &self.mul(x, y))
    }

    /// The alternating matrix of the central coordinate.
    #[allow(clippy::needless_range_loop)]
    pub fn alternating_matrix(&self, x: &W2Element) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0; self.d]; self.d];
        for i in 0..self.d {
            for j in i + 1..self.d {
                let v = x.a[self.pair_index(i, j)];
                m[i][j] = v;
                m[j][i] = (self.p - v) % self.p;
            }
        }
        m
    }
}

fn inv_mod(x: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (x % p, p - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rank of a matrix over `GF(p)` by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let s = inv_mod(m[rank][c], p);
        for v in m[rank].iter_mut() {
            *v = *v * s % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p * p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Least number of commutators whose product is `x`, for `x` central.
pub fn alternating_rank_width(w: &FreeClass2, x: &W2Element) -> Result<usize> {
    if x.u.iter().any(|&s| s != 0) {
        return Err(Error::Precondition("element is not central (u ≠ 0)".into()));
    }
    let r = rank_mod_p(w.alternating_matrix(x), w.p);
    debug_assert!(r.is_multiple_of(2));
    Ok(r / 2)
}

/// Product of the commutators `[x_{2i-1}, x_{2i}]`, the element of maximal
/// alternating rank.
pub fn block_commutator_witness(w: &FreeClass2) -> W2Element {
    (0..w.d / 2).fold(w.identity(), |acc, i| {
        let c = w.commutator(&w.generator(2 * i), &w.generator(2 * i + 1));
        w.mul(&acc, &c)
    })
}

/// Commutator width of `W(d, p)`: the witness attains rank `2⌊d/2⌋`, and
/// no `d × d` alternating matrix has larger rank.
pub fn exact_commutator_width(d: usize, p: u64) -> Result<usize> {
    let w = FreeClass2::new(d, p)?;
    let witness = block_commutator_witness(&w);
    let width = alternating_rank_width(&w, &witness)?;
    if width != d / 2 {
        return Err(Error::Precondition(format!("witness rank {} below 2⌊d/2⌋", 2 * width)));
    }
    Ok(width)
}

/// `(d, width)` of the group used as `M_p`: `W(2p + 2, p)`, whose
/// commutator width `p + 1` exceeds `p`.
pub fn mp_witness_params(p: u64) -> Result<(usize, usize)> {
    FreeClass2::new(1, p)?;
    let d = 2 * p as usize + 2;
    Ok((d, d / 2))
}

struct W2Law(FreeClass2);

impl W2Law {
    fn decode(&self, x: &[u8]) -> W2Element {
        let d = self.0.d;
        W2Element { u: x[..d].iter().map(|&b| b as u64).collect(), a: x[d..].iter().map(|&b| b as u64).collect() }
    }
}

impl GroupLaw for W2Law {
    fn width(&self) -> usize {
        self.0.log_order()
    }

    fn identity(&self) -> Encoding {
        Encoding::from_elem(0, self.width())
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let z = self.0.mul(&self.decode(a), &self.decode(b));
        for (o, v) in out.iter_mut().zip(z.u.iter().chain(&z.a)) {
            *o = *v as u8;
        }
    }

    fn inv(&self, a: &[u8], out: &mut [u8]) {
        let p = self.0.p as u8;
        for (o, &v) in out.iter_mut().zip(a) {
            *o = if v == 0 { 0 } else { p - v };
        }
    }
}

/// Explicit `W(d, p)`, available while `p^{d + d(d-1)/2} ≤ ORDER_CAP`.
pub fn free_class2_group(d: usize, p: u64) -> Result<GroupHandle> {
    let w = FreeClass2::new(d, p)?;
    if p > 255 {
        return Err(Error::InvalidInput(format!("explicit W(d, p) stores coordinates in bytes; p = {p} too large")));
    }
    let order =(p as u128).checked_pow(w.log_order() as u32).unwrap_or(u128::MAX);
    if order > ORDER_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "group order",
            cap: ORDER_CAP as u64,
            reached: order.min(u64::MAX as u128) as u64,
        });
    }
    let seeds: Vec<Encoding> = (0..d)
        .map(|i| {
            let mut e = Encoding::from_elem(0, w.log_order());
            e[i] = 1;
            e
        })
        .collect();
    enumerate_group(format!("W({d},{p})"), Arc::new(W2Law(w)), &seeds)
}

/// Reads an element of an explicit `W(d, p)` back into coordinates.
pub fn w2_element(w: &FreeClass2, g: &Group, idx: u32) -> W2Element {
    let enc = g.encoding(idx);
    W2Element {
        u: enc[..w.d].iter().map(|&b| b as u64).collect(),
        a: enc[w.d..].iter().map(|&b| b as u64).collect(),
    }
}

/// Whether every element of `G` is an `m`-th power.
pub fn all_elements_are_mth_powers(g: &Group, m: i64) -> bool {
    let mut image = g.empty_set();
    for x in 0..g.order() as u32 {
        image.insert(g.pow(x, m));
    }
    image.is_full()
}
