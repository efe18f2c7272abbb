//! SL₂(𝔽_q) and the perfect groups K(q, r) = P ⋊ SL₂(𝔽_q).
//!
//! `P` is the class-2 group on pairs `(u, a)` with `u ∈ 𝔽_q^{2r}` (r blocks
//! of the natural module) and `a ∈ 𝔽_q^{r(r+1)/2}`, multiplied by
//!
//! ```text
//! (u, a)(v, b) = (u + v, a + b + β(u, v)),   β(u, v)_{ij} = det(u_i | v_j), i ≤ j.
//! ```
//!
//! Since `det(g u_i | g v_j) = det(g) det(u_i | v_j)`, every `g ∈ SL₂` acting
//! blockwise on `u` (and trivially on `a`) is an automorphism of `P`. The
//! subgroup `N = {(0, a)}` is central and elementary abelian of order
//! `q^{r(r+1)/2}`, and `|P : N| = q^{2r}`.
//!
//! Only odd `q` is built explicitly: in characteristic 2 the diagonal
//! commutator components `2 det(u_i | v_i)` vanish. Orders for arbitrary
//! parameters are available symbolically through [`holt_symbolic`].

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldSpec, FieldTables};
use crate::group::{enumerate_group, Encoding, GroupHandle, GroupLaw, ORDER_CAP};
use crate::set::ElementSet;

/// Largest `q` for which SL₂(𝔽_q) is enumerated.
pub const SL2_MAX_Q: u64 = 32;

/// 2×2 matrices `[[a, b], [c, d]]` of determinant 1, encoded `[a, b, c, d]`
/// as packed field indices.
pub struct Sl2Law {
    f: Arc<FieldTables>,
}

impl Sl2Law {
    pub fn new(f: Arc<FieldTables>) -> Self {
        Sl2Law { f }
    }

    #[inline]
    fn mat_mul(f: &FieldTables, x: &[u8], y: &[u8], out: &mut [u8]) {
        out[0] = f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2]));
        out[1] = f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3]));
        out[2] = f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2]));
        out[3] = f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3]));
    }

    #[inline]
    fn mat_inv(f: &FieldTables, x: &[u8], out: &mut [u8]) {
        out[0] = x[3];
        out[1] = f.neg(x[1]);
        out[2] = f.neg(x[2]);
        out[3] = x[0];
    }

    pub fn det(f: &FieldTables, x: &[u8]) -> u8 {
        f.sub(f.mul(x[0], x[3]), f.mul(x[1], x[2]))
    }
}

impl GroupLaw for Sl2Law {
    fn width(&self) -> usize {
        4
    }

    fn identity(&self) -> Encoding {
        Encoding::from_slice(&[1, 0, 0, 1])
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        Self::mat_mul(&self.f, a, b, out)
    }

    fn inv(&self, a: &[u8], out: &mut [u8]) {
        Self::mat_inv(&self.f, a, out)
    }
}

fn field_tables(q: u64) -> Result<Arc<FieldTables>> {
    Ok(Arc::new(FieldTables::new(&FieldSpec::of_order(q)?)?))
}

/// Transvections `[[1, t], [0, 1]]` and `[[1, 0], [t, 1]]` for `t` in an
/// additive basis; they generate SL₂(𝔽_q).
fn sl2_generators(f: &FieldTables) -> Vec<[u8; 4]> {
    let basis = f.additive_basis();
    let mut gens: Vec<[u8; 4]> = basis.iter().map(|&t| [1, t, 0, 1]).collect();
    gens.extend(basis.iter().map(|&t| [1, 0, t, 1]));
    gens
}

pub fn sl2_order(q: u64) -> u64 {
    q * (q * q - 1)
}

pub fn sl2_group(q: u64) -> Result<GroupHandle> {
    if q > SL2_MAX_Q {
        return Err(Error::CapExceeded { what: "SL2 field order", cap: SL2_MAX_Q, reached: q });
    }
    let f = field_tables(q)?;
    let seeds: Vec<Encoding> = sl2_generators(&f).iter().map(|m| Encoding::from_slice(m)).collect();
    enumerate_group(format!("SL2({q})"), Arc::new(Sl2Law::new(f)), &seeds)
}

/// Index of a 2×2 matrix given by signed integer entries.
pub fn sl2_element(g: &GroupHandle, q: u64, entries: [i64; 4]) -> Result<u32> {
    let f = field_tables(q)?;
    let enc: Vec<u8> = entries.iter().map(|&x| f.constant(x)).collect();
    g.index_of(&enc).ok_or_else(|| Error::InvalidInput(format!("{entries:?} is not in SL2({q})")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HoltParams {
    pub q: u64,
    pub r: u32,
}

impl HoltParams {
    pub fn new(q: u64, r: u32) -> Result<Self> {
        if q <= 3 {
            return Err(Error::Precondition(format!("q must exceed 3, got {q}")));
        }
        if prime_power(q).is_none() {
            return Err(Error::InvalidInput(format!("{q} is not a prime power")));
        }
        if r < 1 {
            return Err(Error::InvalidInput("r must be positive".into()));
        }
        Ok(HoltParams { q, r })
    }

    /// Dimension of the `a` coordinate, `r(r+1)/2`.
    pub fn n_dim(&self) -> usize {
        let r = self.r as usize;
        r * (r + 1) / 2
    }

    pub fn u_dim(&self) -> usize {
        2 * self.r as usize
    }

    fn require_odd(&self) -> Result<()> {
        if self.q.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "explicit K(q,r) is built only for odd q, got q = {}",
                self.q
            )));
        }
        Ok(())
    }
}

/// Coordinates `(u, a)` of the class-2 group `P`.
#[derive(Clone)]
pub struct HoltPLaw {
    f: Arc<FieldTables>,
    r: usize,
}

impl HoltPLaw {
    fn new(f: Arc<FieldTables>, r: usize) -> Self {
        HoltPLaw { f, r }
    }

    fn u_dim(&self) -> usize {
        2 * self.r
    }

    /// `a += β(u, v)`.
    #[inline]
    fn add_beta(&self, u: &[u8], v: &[u8], a: &mut [u8]) {
        let f = &self.f;
        let mut k = 0;
        for i in 0..self.r {
            for j in i..self.r {
                let det = f.sub(f.mul(u[2 * i], v[2 * j + 1]), f.mul(u[2 * i + 1], v[2 * j]));
                a[k] = f.add(a[k], det);
                k += 1;
            }
        }
    }

    /// `(u, a)(v, b)` written into `out`.
    #[inline]
    fn p_mul(&self, x: &[u8], y: &[u8], out: &mut [u8]) {
        let ud = self.u_dim();
        let f = &self.f;
        for k in 0..x.len() {
            out[k] = f.add(x[k], y[k]);
        }
        self.add_beta(&x[..ud], &y[..ud], &mut out[ud..]);
    }

    /// `(u, a)⁻¹ = (−u, −a + β(u, u))`.
    #[inline]
    fn p_inv(&self, x: &[u8], out: &mut [u8]) {
        let ud = self.u_dim();
        for k in 0..x.len() {
            out[k] = self.f.neg(x[k]);
        }
        self.add_beta(&x[..ud], &x[..ud], &mut out[ud..]);
    }
}

impl GroupLaw for HoltPLaw {
    fn width(&self) -> usize {
        2 * self.r + self.r * (self.r + 1) / 2
    }

    fn identity(&self) -> Encoding {
        smallvec::smallvec![0; self.width()]
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        self.p_mul(a, b, out)
    }

    fn inv(&self, a: &[u8], out: &mut [u8]) {
        self.p_inv(a, out)
    }
}

/// Semidirect product `P ⋊ SL₂`; an element `(h, u, a)` stands for the
/// product `(u, a) · h`, so `(p, h)(p', h') = (p · h(p'), h h')`.
pub struct HoltKLaw {
    p: HoltPLaw,
}

impl HoltKLaw {
    /// Applies `h` blockwise to `u`.
    #[inline]
    fn act(&self, h: &[u8], u: &[u8], out: &mut [u8]) {
        let f = &self.p.f;
        for i in 0..self.p.r {
            let (x, y) = (u[2 * i], u[2 * i + 1]);
            out[2 * i] = f.add(f.mul(h[0], x), f.mul(h[1], y));
            out[2 * i + 1] = f.add(f.mul(h[2], x), f.mul(h[3], y));
        }
    }
}

impl GroupLaw for HoltKLaw {
    fn width(&self) -> usize {
        4 + self.p.width()
    }

    fn identity(&self) -> Encoding {
        let mut e: Encoding = smallvec::smallvec![0; self.width()];
        e[0] = 1;
        e[3] = 1;
        e
    }

    fn mul(&self, x: &[u8], y: &[u8], out: &mut [u8]) {
        let ud = self.p.u_dim();
        let pw = self.p.width();
        let mut moved = [0u8; crate::group::MAX_WIDTH];
        self.act(&x[..4], &y[4..4 + ud], &mut moved[..ud]);
        moved[ud..pw].copy_from_slice(&y[4 + ud..]);
        let (oh, op) = out.split_at_mut(4);
        Sl2Law::mat_mul(&self.p.f, &x[..4], &y[..4], oh);
        self.p.p_mul(&x[4..], &moved[..pw], op);
    }

    fn inv(&self, x: &[u8], out: &mut [u8]) {
        let ud = self.p.u_dim();
        let pw = self.p.width();
        let mut hi = [0u8; 4];
        Sl2Law::mat_inv(&self.p.f, &x[..4], &mut hi);
        let mut pinv = [0u8; crate::group::MAX_WIDTH];
        self.p.p_inv(&x[4..], &mut pinv[..pw]);
        out[..4].copy_from_slice(&hi);
        self.act(&hi, &pinv[..ud], &mut out[4..4 + ud]);
        out[4 + ud..].copy_from_slice(&pinv[ud..pw]);
    }
}

/// An explicitly enumerated `K(q, r)` or `P(q, r)` with its distinguished
/// subgroups.
pub struct HoltGroup {
    pub params: HoltParams,
    pub group: GroupHandle,
    /// The central subgroup `N = {(0, a)}`.
    pub n: ElementSet,
    /// The normal subgroup `P`; for the `P` group itself this is everything.
    pub p: ElementSet,
}

fn explicit_order(params: &HoltParams, with_h: bool) -> BigUint {
    let s = holt_symbolic(params).expect("params validated");
    if with_h { s.order_k } else { s.order_k / BigUint::from(sl2_order(params.q)) }
}

fn check_cap(order: &BigUint, what: &'static str) -> Result<()> {
    if *order > BigUint::from(ORDER_CAP as u64) {
        let reached = u64::try_from(order.clone()).unwrap_or(u64::MAX);
        return Err(Error::CapExceeded { what, cap: ORDER_CAP as u64, reached });
    }
    Ok(())
}

fn p_generators(params: &HoltParams, f: &FieldTables) -> Vec<Vec<u8>> {
    let law_width = params.u_dim() + params.n_dim();
    let mut gens = Vec::new();
    for k in 0..params.u_dim() {
        for &t in &f.additive_basis() {
            let mut v = vec![0u8; law_width];
            v[k] = t;
            gens.push(v);
        }
    }
    gens
}

/// Pure `P(q, r)`: order `q^{2r + r(r+1)/2}`.
pub fn holt_p_group(params: &HoltParams) -> Result<HoltGroup> {
    params.require_odd()?;
    check_cap(&explicit_order(params, false), "explicit P(q,r) order")?;
    let f = field_tables(params.q)?;
    let law = HoltPLaw::new(f.clone(), params.r as usize);
    let seeds: Vec<Encoding> = p_generators(params, &f).iter().map(|v| Encoding::from_slice(v)).collect();
    let group = enumerate_group(format!("P({},{})", params.q, params.r), Arc::new(law), &seeds)?;
    let ud = params.u_dim();
    let n = group.set_of((0..group.order() as u32).filter(|&i| group.encoding(i)[..ud].iter().all(|&c| c == 0)));
    let p = group.full_set();
    Ok(HoltGroup { params: *params, group, n, p })
}

/// Checks `det(g u, g v) = det(u, v)` for every generator `g` and all pairs
/// of basis vectors, the condition for `g` to act on `P` by automorphisms.
fn check_equivariance(f: &FieldTables, gens: &[[u8; 4]]) -> Result<()> {
    let det2 = |u: [u8; 2], v: [u8; 2]| f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]));
    let apply = |g: &[u8; 4], u: [u8; 2]| {
        [f.add(f.mul(g[0], u[0]), f.mul(g[1], u[1])), f.add(f.mul(g[2], u[0]), f.mul(g[3], u[1]))]
    };
    let q = f.order() as u8;
    for g in gens {
        for u0 in 0..q {
            for u1 in 0..q {
                for (v0, v1) in [(1, 0), (0, 1)] {
                    let (u, v) = ([u0, u1], [v0, v1]);
                    if det2(apply(g, u), apply(g, v)) != det2(u, v) {
                        return Err(Error::Precondition("SL2 action does not preserve the cocycle".into()));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn holt_k_group(params: &HoltParams) -> Result<HoltGroup> {
    params.require_odd()?;
    check_cap(&explicit_order(params, true), "explicit K(q,r) order")?;
    let f = field_tables(params.q)?;
    let hgens = sl2_generators(&f);
    check_equivariance(&f, &hgens)?;
    let law = HoltKLaw { p: HoltPLaw::new(f.clone(), params.r as usize) };
    let width = law.width();
    let mut seeds: Vec<Encoding> = Vec::new();
    for h in &hgens {
        let mut e: Encoding = smallvec::smallvec![0; width];
        e[..4].copy_from_slice(h);
        seeds.push(e);
    }
    // One vector per block; the SL₂ action spans the rest of P.
    for i in 0..params.r as usize {
        let mut e = law.identity();
        e[4 + 2 * i] = 1;
        seeds.push(e);
    }
    let group = enumerate_group(format!("K({},{})", params.q, params.r), Arc::new(law), &seeds)?;
    let ud = params.u_dim();
    let is_p = |i: u32| group.encoding(i)[..4] == [1, 0, 0, 1];
    let p = group.set_of((0..group.order() as u32).filter(|&i| is_p(i)));
    let n = group.set_of(p.iter().filter(|&i| group.encoding(i)[4..4 + ud].iter().all(|&c| c == 0)));
    Ok(HoltGroup { params: *params, group, n, p })
}

/// Exact orders of `K(q, r)` and its pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicHolt {
    pub q: u64,
    pub r: u32,
    pub order_k: BigUint,
    pub order_n: BigUint,
    pub order_k_mod_n: BigUint,
}

pub fn holt_symbolic(params: &HoltParams) -> Result<SymbolicHolt> {
    let params = HoltParams::new(params.q, params.r)?;
    let q = BigUint::from(params.q);
    let r = params.r as usize;
    let order_n = q.pow((r * (r + 1) / 2) as u32);
    let order_k_mod_n = BigUint::from(sl2_order(params.q)) * q.pow(2 * params.r);
    let order_k = &order_k_mod_n * &order_n;
    Ok(SymbolicHolt { q: params.q, r: params.r, order_k, order_n, order_k_mod_n })
}

/// Least `f ≥ 0` with `base^{k f} ≥ target`, or `None` if no power of
/// `base` reaches `target`.
pub fn least_cover_exponent(base: &BigUint, k: u32, target: &BigUint) -> Option<u64> {
    if *target <= BigUint::one() {
        return Some(0);
    }
    if *base <= BigUint::one() || k == 0 {
        return None;
    }
    let step = base.pow(k);
    let mut acc = BigUint::one();
    let mut f = 0;
    while acc < *target {
        acc *= &step;
        f += 1;
    }
    Some(f)
}

/// Least `f` with `|K/N|^{arity · f} ≥ |K|`, a lower bound on the width of
/// any word whose values are unchanged by `N`-translation of arguments.
pub fn holt_width_lower_bound(params: &HoltParams, word_arity: u32) -> Result<u64> {
    let s = holt_symbolic(params)?;
    least_cover_exponent(&s.order_k_mod_n, word_arity, &s.order_k)
        .ok_or_else(|| Error::Precondition("word arity must be positive".into()))
}

impl SymbolicHolt {
    pub fn is_consistent(&self) -> bool {
        !self.order_n.is_zero() && self.order_k == &self.order_k_mod_n * &self.order_n
    }
}
