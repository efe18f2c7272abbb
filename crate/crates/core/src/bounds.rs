//! Upper bounds on the order of a finite group of exponent dividing `m`
//! whose subgroup growth is dominated by a function `f`.
//!
//! A group of height `h` is split along a chain of normal subgroups into
//! nilpotent and semisimple layers. One layer is bounded by
//! `ν₁(m, f) = max(ν_nil, ν_ss)`, and the layers below are handled by
//! recursion with `f` rescaled to `n ↦ f(n · ν₁)`, because subgroups of
//! index `n` in a normal subgroup give subgroups of index at most `n · ν₁`
//! in the whole group.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::census::all_subgroups;
use crate::error::{Error, Result};
use crate::group::{closure, derived_subgroup, prime_factors, subgroup, GroupHandle};
use crate::simple_table::SimpleExponentTable;

/// Largest bound, in bits, that is ever materialized.
pub const MAX_BOUND_BITS: u64 = 1 << 24;

pub(crate) fn big_as_string<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A nondecreasing function from positive integers to positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundFunction {
    Constant(BigUint),
    /// `coef · n^exp`.
    Power { coef: BigUint, exp: u32 },
    /// `values[n - 1]`, holding the last value beyond the table.
    Table(Vec<BigUint>),
    /// `n ↦ inner(factor · n)`.
    Rescaled { inner: Box<BoundFunction>, factor: BigUint },
}

impl BoundFunction {
    pub fn constant(c: u64) -> Self {
        BoundFunction::Constant(BigUint::from(c))
    }

    pub fn linear(coef: u64) -> Self {
        BoundFunction::Power { coef: BigUint::from(coef), exp: 1 }
    }

    pub fn power(coef: u64, exp: u32) -> Self {
        BoundFunction::Power { coef: BigUint::from(coef), exp }
    }

    /// Table function; values must be positive and nondecreasing.
    pub fn table(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() || values[0] == 0 || values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("table must be nonempty, positive and nondecreasing".into()));
        }
        Ok(BoundFunction::Table(values.into_iter().map(BigUint::from).collect()))
    }

    /// `n ↦ self(factor · n)`, folding nested rescalings.
    pub fn rescaled(&self, factor: &BigUint) -> Self {
        match self {
            BoundFunction::Rescaled { inner, factor: f } => {
                BoundFunction::Rescaled { inner: inner.clone(), factor: f * factor }
            }
            other => BoundFunction::Rescaled { inner: Box::new(other.clone()), factor: factor.clone() },
        }
    }

    /// Value at `n`, never below 1.
    pub fn eval(&self, n: &BigUint) -> Result<BigUint> {
        let v = match self {
            BoundFunction::Constant(c) => c.clone(),
            BoundFunction::Power { coef, exp } => {
                if n.bits() * *exp as u64 > MAX_BOUND_BITS {
                    return Err(Error::CapExceeded { what: "bound size in bits", cap: MAX_BOUND_BITS, reached: n.bits() * *exp as u64 });
                }
                coef * n.pow(*exp)
            }
            BoundFunction::Table(values) => {
                let i = n.to_usize().unwrap_or(usize::MAX).clamp(1, values.len());
                values[i - 1].clone()
            }
            BoundFunction::Rescaled { inner, factor } => inner.eval(&(factor * n))?,
        };
        Ok(if v.is_zero() { BigUint::one() } else { v })
    }

    pub fn eval_u64(&self, n: u64) -> Result<BigUint> {
        self.eval(&BigUint::from(n))
    }
}

impl fmt::Display for BoundFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundFunction::Constant(c) => write!(f, "{c}"),
            BoundFunction::Power { coef, exp } => {
                if !coef.is_one() {
                    write!(f, "{coef}")?;
                }
                match exp {
                    0 if coef.is_one() => write!(f, "1"),
                    0 => Ok(()),
                    1 => write!(f, "n"),
                    e => write!(f, "n^{e}"),
                }
            }
            BoundFunction::Table(values) => {
                let parts: Vec<String> = values.iter().map(BigUint::to_string).collect();
                write!(f, "table:{}", parts.join(","))
            }
            BoundFunction::Rescaled { inner, factor } => write!(f, "({inner})[n:={factor}n]"),
        }
    }
}

impl FromStr for BoundFunction {
    type Err = Error;

    /// Accepts `c`, `n`, `an`, `n^k`, `an^k` (with an optional `*`), and
    /// `table:v1,v2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bound function {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(rest) = t.strip_prefix("table:") {
            let values = rest.split(',').map(|v| v.parse::<u64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
            return BoundFunction::table(values);
        }
        let Some(npos) = t.find('n') else {
            let c: u64 = t.parse().map_err(|_| bad())?;
            return if c == 0 { Err(bad()) } else { Ok(BoundFunction::constant(c)) };
        };
        let coef_text = t[..npos].trim_end_matches('*');
        let coef: u64 = if coef_text.is_empty() { 1 } else { coef_text.parse().map_err(|_| bad())? };
        let exp: u32 = match &t[npos + 1..] {
            "" => 1,
            rest => rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
        };
        if coef == 0 {
            return Err(bad());
        }
        Ok(BoundFunction::power(coef, exp))
    }
}

/// Least `d ≥ 1` with `p^{d-1} ≥ f(p)`.
pub fn delta(p: u64, f: &BoundFunction) -> Result<u64> {
    let target = f.eval_u64(p)?;
    let base = BigUint::from(p);
    let mut acc = BigUint::one();
    let mut d = 1;
    while acc < target {
        acc *= &base;
        d += 1;
    }
    Ok(d)
}

/// Bound on the order of a `d`-generated finite group of exponent dividing
/// `m`.
pub trait BetaOracle: Sync {
    fn beta(&self, d: u64, m: u64) -> Result<BigUint>;
    fn label(&self) -> String;
}

/// `β(d, m) = m^d`. A placeholder for report plumbing; it does not bound
/// real groups in general.
#[derive(Debug, Clone, Copy, Default)]
pub struct StubBeta;

impl BetaOracle for StubBeta {
    fn beta(&self, d: u64, m: u64) -> Result<BigUint> {
        let bits = d.saturating_mul(64 - m.leading_zeros() as u64);
        if bits > MAX_BOUND_BITS {
            return Err(Error::CapExceeded { what: "bound size in bits", cap: MAX_BOUND_BITS, reached: bits });
        }
        Ok(BigUint::from(m).pow(d as u32))
    }

    fn label(&self) -> String {
        "stub".into()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PGroupRecord {
    pub source: String,
    pub prime: u64,
    pub order: u64,
    pub exponent: u64,
    pub rank: u64,
}

/// `β(d, m)` = the largest order among recorded `p`-groups of exponent
/// dividing `m` and rank at most `d` (1 if there are none).
#[derive(Debug, Clone, Default)]
pub struct EmpiricalBeta {
    pub records: Vec<PGroupRecord>,
}

impl EmpiricalBeta {
    /// Records every subgroup of prime-power order of each group.
    pub fn from_groups(groups: &[GroupHandle]) -> Result<Self> {
        let mut records = Vec::new();
        for g in groups {
            for s in all_subgroups(g)?.subgroups {
                let order = s.count() as u64;
                let [(p, _)] = prime_factors(order)[..] else { continue };
                let (h, _) = subgroup(g, &s, "P")?;
                let exponent = crate::group::exponent(&h);
                // Rank of a p-group is the dimension of P / P'P^p.
                let mut frattini = derived_subgroup(&h);
                for x in 0..h.order() as u32 {
                    frattini.insert(h.pow(x, p as i64));
                }
                let frattini = closure(&h, &frattini);
                let mut quotient_order = order / frattini.count() as u64;
                let mut rank = 0;
                while quotient_order > 1 {
                    quotient_order /= p;
                    rank += 1;
                }
                records.push(PGroupRecord { source: g.name().to_string(), prime: p, order, exponent, rank });
            }
        }
        Ok(EmpiricalBeta { records })
    }
}

impl BetaOracle for EmpiricalBeta {
    fn beta(&self, d: u64, m: u64) -> Result<BigUint> {
        let best = self.records.iter().filter(|r| m.is_multiple_of(r.exponent) && r.rank <= d).map(|r| r.order).max();
        Ok(BigUint::from(best.unwrap_or(1)))
    }

    fn label(&self) -> String {
        "empirical".into()
    }
}

fn distinct_primes(m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    Ok(prime_factors(m).into_iter().map(|(p, _)| p).collect())
}

/// Product over primes `p | m` of `β(δ(p), m)`, with the `δ` values used.
pub fn nu_nil_with_delta(m: u64, f: &BoundFunction, beta: &dyn BetaOracle) -> Result<(BigUint, BTreeMap<u64, u64>)> {
    let mut product = BigUint::one();
    let mut deltas = BTreeMap::new();
    for p in distinct_primes(m)? {
        let d = delta(p, f)?;
        deltas.insert(p, d);
        product *= beta.beta(d, m)?;
        if product.bits() > MAX_BOUND_BITS {
            return Err(Error::CapExceeded { what: "bound size in bits", cap: MAX_BOUND_BITS, reached: product.bits() });
        }
    }
    Ok((product, deltas))
}

pub fn nu_nil(m: u64, f: &BoundFunction, beta: &dyn BetaOracle) -> Result<BigUint> {
    Ok(nu_nil_with_delta(m, f, beta)?.0)
}

/// Product over simple groups `S` of exponent dividing `m` of
/// `|S|^{f(|S|)}`. Refuses when the table cannot certify that no simple
/// group beyond it qualifies.
pub fn nu_ss(m: u64, f: &BoundFunction, table: &SimpleExponentTable) -> Result<BigUint> {
    distinct_primes(m)?;
    if !table.certifies(m) {
        return Err(Error::Horizon { m, horizon: table.horizon });
    }
    let mut product = BigUint::one();
    for s in table.dividing(m) {
        let e = f.eval_u64(s.order)?;
        let bits = e.to_u64().unwrap_or(u64::MAX).saturating_mul(64 - s.order.leading_zeros() as u64);
        if bits.saturating_add(product.bits()) > MAX_BOUND_BITS {
            return Err(Error::CapExceeded { what: "bound size in bits", cap: MAX_BOUND_BITS, reached: bits });
        }
        product *= BigUint::from(s.order).pow(e.to_u32().expect("checked above"));
    }
    Ok(product)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuLevel {
    pub level: u32,
    pub function: String,
    pub delta_per_prime: BTreeMap<u64, u64>,
    #[serde(serialize_with = "big_as_string")]
    pub nu_nil: BigUint,
    #[serde(serialize_with = "big_as_string")]
    pub nu_ss: BigUint,
    #[serde(serialize_with = "big_as_string")]
    pub nu1: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuTrace {
    pub m: u64,
    pub q: u32,
    pub beta: String,
    pub levels: Vec<NuLevel>,
    #[serde(serialize_with = "big_as_string")]
    pub result: BigUint,
}

/// `ν₁(m, f) = max(ν_nil, ν_ss)` with its ingredients.
pub fn nu_level(m: u64, f: &BoundFunction, beta: &dyn BetaOracle, table: &SimpleExponentTable) -> Result<NuLevel> {
    let (nn, deltas) = nu_nil_with_delta(m, f, beta)?;
    let ns = nu_ss(m, f, table)?;
    let nu1 = nn.clone().max(ns.clone());
    Ok(NuLevel { level: 0, function: f.to_string(), delta_per_prime: deltas, nu_nil: nn, nu_ss: ns, nu1 })
}

/// `ν_q(m, f) = ν₁(m, f) · ν_{q-1}(m, g)` with `g(n) = f(n · ν₁(m, f))`,
/// unrolled into one level per step.
pub fn nu_recursive(
    m: u64,
    q: u32,
    f: &BoundFunction,
    beta: &dyn BetaOracle,
    table: &SimpleExponentTable,
) -> Result<NuTrace> {
    if q == 0 {
        return Err(Error::InvalidInput("q must be at least 1".into()));
    }
    let mut levels = Vec::with_capacity(q as usize);
    let mut cur = f.clone();
    let mut result = BigUint::one();
    for level in 1..=q {
        let mut l = nu_level(m, &cur, beta, table)?;
        l.level = level;
        result *= &l.nu1;
        if result.bits() > MAX_BOUND_BITS {
            return Err(Error::CapExceeded { what: "bound size in bits", cap: MAX_BOUND_BITS, reached: result.bits() });
        }
        cur = cur.rescaled(&l.nu1);
        levels.push(l);
    }
    Ok(NuTrace { m, q, beta: beta.label(), levels, result })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Num;

    fn big(s: &str) -> BigUint {
        BigUint::from_str_radix(s, 10).unwrap()
    }

    #[test]
    fn parse_and_eval() {
        let f: BoundFunction = "n^2".parse().unwrap();
        assert_eq!(f.eval_u64(5).unwrap(), BigUint::from(25u32));
        let f: BoundFunction = "3*n".parse().unwrap();
        assert_eq!(f.eval_u64(7).unwrap(), BigUint::from(21u32));
        assert_eq!(f.to_string(), "3n");
        let f: BoundFunction = "table:1,2,2,5".parse().unwrap();
        assert_eq!(f.eval_u64(3).unwrap(), BigUint::from(2u32));
        assert_eq!(f.eval_u64(100).unwrap(), BigUint::from(5u32));
        assert!("table:3,1".parse::<BoundFunction>().is_err());
        assert!("0".parse::<BoundFunction>().is_err());
        assert!("m".parse::<BoundFunction>().is_err());
        let g = BoundFunction::linear(1).rescaled(&BigUint::from(6u32)).rescaled(&BigUint::from(7u32));
        assert_eq!(g.eval_u64(2).unwrap(), BigUint::from(84u32));
        assert_eq!(g.to_string(), "(n)[n:=42n]");
        for text in ["n", "1", "5n^3", "table:1,4"] {
            assert_eq!(text.parse::<BoundFunction>().unwrap().to_string(), text);
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(5, &BoundFunction::power(1, 2)).unwrap(), 3);
        assert_eq!(delta(7, &BoundFunction::constant(1)).unwrap(), 1);
        assert_eq!(delta(2, &BoundFunction::linear(1)).unwrap(), 2);
        assert_eq!(delta(3, &BoundFunction::linear(1)).unwrap(), 2);
    }

    #[test]
    fn nu_nil_examples() {
        assert_eq!(nu_nil(1, &BoundFunction::linear(1), &StubBeta).unwrap(), BigUint::one());
        assert_eq!(nu_nil(12, &BoundFunction::linear(1), &StubBeta).unwrap(), BigUint::from(20736u32));
        assert_eq!(nu_nil(5, &BoundFunction::constant(1), &StubBeta).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn nu_ss_examples() {
        let t = SimpleExponentTable::standard();
        assert_eq!(nu_ss(6, &BoundFunction::linear(1), &t).unwrap(), BigUint::one());
        assert_eq!(nu_ss(30, &BoundFunction::constant(1), &t).unwrap(), BigUint::from(60u32));
        assert_eq!(nu_ss(1, &BoundFunction::linear(1), &t).unwrap(), BigUint::one());
        assert_eq!(nu_ss(60, &BoundFunction::constant(2), &t).unwrap(), BigUint::from(3600u32 * 360 * 360));
        assert!(matches!(nu_ss(210, &BoundFunction::constant(1), &t), Err(Error::Horizon { m: 210, .. })));
    }

    #[test]
    fn golden_trace() {
        // Level 1: δ(2) = δ(3) = 2, ν_nil = 6²·6² = 1296, ν_ss = 1.
        // Level 2: g(n) = 1296n, δ(2) = 13 (2^12 ≥ 2592 > 2^11), δ(3) = 9
        // (3^8 ≥ 3888 > 3^7), ν_nil = 6^13·6^9 = 6^22.
        let t = SimpleExponentTable::standard();
        let trace = nu_recursive(6, 2, &BoundFunction::linear(1), &StubBeta, &t).unwrap();
        let l1 = &trace.levels[0];
        assert_eq!(l1.delta_per_prime, BTreeMap::from([(2, 2), (3, 2)]));
        assert_eq!(l1.nu1, BigUint::from(1296u32));
        let l2 = &trace.levels[1];
        assert_eq!(l2.function, "(n)[n:=1296n]");
        assert_eq!(l2.delta_per_prime, BTreeMap::from([(2, 13), (3, 9)]));
        assert_eq!(l2.nu1, BigUint::from(6u32).pow(22));
        assert_eq!(trace.result, big("170581728179578208256"));
        assert_eq!(trace.result, BigUint::from(6u32).pow(26));
    }

    #[test]
    fn monotone_in_q_and_f() {
        let t = SimpleExponentTable::standard();
        for f in [BoundFunction::constant(1), BoundFunction::constant(3), BoundFunction::linear(1)] {
            let vals: Vec<BigUint> =
                (1..=4).map(|q| nu_recursive(6, q, &f, &StubBeta, &t).unwrap().result).collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{f}");
        }
        let small = nu_recursive(30, 2, &BoundFunction::constant(1), &StubBeta, &t).unwrap().result;
        let large = nu_recursive(30, 2, &BoundFunction::constant(2), &StubBeta, &t).unwrap().result;
        assert!(small <= large);
    }

    #[test]
    fn trace_recomposes() {
        let t = SimpleExponentTable::standard();
        let trace = nu_recursive(12, 3, &BoundFunction::linear(2), &StubBeta, &t).unwrap();
        let product = trace.levels.iter().fold(BigUint::one(), |acc, l| acc * &l.nu1);
        assert_eq!(product, trace.result);
        let tail = nu_recursive(12, 2, &BoundFunction::linear(2).rescaled(&trace.levels[0].nu1), &StubBeta, &t).unwrap();
        assert_eq!(&trace.levels[0].nu1 * tail.result, trace.result);
    }

    #[test]
    fn size_cap() {
        let t = SimpleExponentTable::standard();
        let f = BoundFunction::constant(10_000_000);
        assert!(matches!(nu_ss(60, &f, &t), Err(Error::CapExceeded { .. })));
        assert!(matches!(StubBeta.beta(u64::MAX, 6), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn empirical_beta_records() {
        use crate::group::{quaternion, symmetric};
        let beta = EmpiricalBeta::from_groups(&[symmetric(4).unwrap(), quaternion().unwrap()]).unwrap();
        let d8 = beta.records.iter().find(|r| r.source == "S4" && r.order == 8).unwrap();
        assert_eq!((d8.rank, d8.exponent), (2, 4));
        let q8 = beta.records.iter().find(|r| r.source == "Q8" && r.order == 8).unwrap();
        assert_eq!(q8.rank, 2);
        assert_eq!(beta.beta(2, 4).unwrap(), BigUint::from(8u32));
        assert_eq!(beta.beta(1, 4).unwrap(), BigUint::from(4u32));
        assert_eq!(beta.beta(1, 3).unwrap(), BigUint::from(3u32));
        assert_eq!(beta.beta(5, 5).unwrap(), BigUint::one());
    }
}
