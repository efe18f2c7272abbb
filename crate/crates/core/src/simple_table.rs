//! Nonabelian finite simple groups of order at most 10^6, with exponents.

use num_integer::Integer;
use serde::Serialize;

use crate::field::prime_power;
use crate::group::prime_factors;

/// Every nonabelian simple group of order at most this is listed.
pub const TABLE_HORIZON: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleGroupEntry {
    pub name: String,
    pub order: u64,
    pub exponent: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleExponentTable {
    pub horizon: u64,
    pub entries: Vec<SimpleGroupEntry>,
}

/// Simple groups up to the horizon that are not of the form L2(q).
const OTHERS: &[(&str, u64, u64)] = &[
    ("A7", 2520, 420),
    ("L3(3)", 5616, 312),
    ("U3(3)", 6048, 168),
    ("M11", 7920, 1320),
    ("A8", 20160, 420),
    ("L3(4)", 20160, 420),
    ("U4(2)", 25920, 180),
    ("Sz(8)", 29120, 1820),
    ("U3(4)", 62400, 780),
    ("M12", 95040, 1320),
    ("U3(5)", 126000, 840),
    ("J1", 175560, 43890),
    ("A9", 181440, 1260),
    ("L3(5)", 372000, 3720),
    ("M22", 443520, 9240),
    ("J2", 604800, 840),
    ("S4(4)", 979200, 1020),
];

/// Order and exponent of PSL(2, q).
pub fn psl2_order_exponent(q: u64) -> Option<(u64, u64)> {
    let (p, _) = prime_power(q)?;
    if q < 4 {
        return None;
    }
    Some(if p == 2 {
        (q * (q * q - 1), 2u64.lcm(&(q - 1)).lcm(&(q + 1)))
    } else {
        (q * (q * q - 1) / 2, p.lcm(&((q - 1) / 2)).lcm(&q.div_ceil(2)))
    })
}

impl SimpleExponentTable {
    pub fn standard() -> Self {
        let mut entries: Vec<SimpleGroupEntry> = (4..)
            .map_while(|q| {
                let bound = q * (q * q - 1) / 2;
                (bound <= TABLE_HORIZON).then_some(q)
            })
            // L2(4) and L2(5) are both A5.
            .filter(|&q| q != 5)
            .filter_map(|q| psl2_order_exponent(q).map(|(order, exponent)| (q, order, exponent)))
            .filter(|&(_, order, _)| order <= TABLE_HORIZON)
            .map(|(q, order, exponent)| SimpleGroupEntry { name: format!("L2({q})"), order, exponent })
            .collect();
        entries.extend(OTHERS.iter().map(|&(n, o, e)| SimpleGroupEntry { name: n.into(), order: o, exponent: e }));
        entries.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
        SimpleExponentTable { horizon: TABLE_HORIZON, entries }
    }

    /// Entries whose exponent divides `m`.
    pub fn dividing(&self, m: u64) -> impl Iterator<Item = &SimpleGroupEntry> {
        self.entries.iter().filter(move |e| m.is_multiple_of(e.exponent))
    }

    /// Whether the table provably lists every simple group of exponent
    /// dividing `m`. Such a group's order has only primes dividing `m`;
    /// a nonabelian simple group has at least three prime divisors, and
    /// those with exactly three all have order at most 25920, so three or
    /// fewer primes in `m` suffices.
    pub fn certifies(&self, m: u64) -> bool {
        prime_factors(m).len() <= 3 && self.horizon >= 25920
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, exponent, quotient, center};
    use crate::holt::sl2_group;

    #[test]
    fn table_shape() {
        let t = SimpleExponentTable::standard();
        assert_eq!(t.entries.len(), 56);
        for e in &t.entries {
            assert_eq!(e.order % e.exponent, 0, "{}", e.name);
            let po: Vec<u64> = prime_factors(e.order).into_iter().map(|x| x.0).collect();
            let pe: Vec<u64> = prime_factors(e.exponent).into_iter().map(|x| x.0).collect();
            assert_eq!(po, pe, "{}", e.name);
            assert!(po.len() >= 3);
        }
        let three_primes: Vec<&str> =
            t.entries.iter().filter(|e| prime_factors(e.order).len() == 3).map(|e| e.name.as_str()).collect();
        assert_eq!(three_primes, ["L2(4)", "L2(7)", "L2(9)", "L2(8)", "L2(17)", "L3(3)", "U3(3)", "U4(2)"]);
    }

    #[test]
    fn exponents_match_explicit_groups() {
        let t = SimpleExponentTable::standard();
        let lookup = |name: &str| t.entries.iter().find(|e| e.name == name).unwrap().exponent;
        assert_eq!(exponent(&alternating(5).unwrap()), lookup("L2(4)"));
        assert_eq!(exponent(&alternating(6).unwrap()), lookup("L2(9)"));
        assert_eq!(exponent(&alternating(7).unwrap()), lookup("A7"));
        for q in [7, 8, 11, 13] {
            let g = sl2_group(q).unwrap();
            let l2 = quotient(&g, &center(&g)).unwrap().group;
            let entry = t.entries.iter().find(|e| e.name == format!("L2({q})")).unwrap();
            assert_eq!((l2.order() as u64, exponent(&l2)), (entry.order, entry.exponent), "q={q}");
        }
    }

    #[test]
    fn dividing_examples() {
        let t = SimpleExponentTable::standard();
        assert_eq!(t.dividing(6).count(), 0);
        let names: Vec<&str> = t.dividing(30).map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["L2(4)"]);
        assert!(t.certifies(30));
        assert!(!t.certifies(210));
    }
}
