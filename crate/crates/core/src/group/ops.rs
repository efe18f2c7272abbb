//! Subgroup machinery on enumerated groups.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{enumerate_group, Encoding, Group, GroupHandle, GroupLaw};
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A subgroup under construction: its elements plus the generators used.
struct Builder<'a> {
    g: &'a Group,
    elems: Vec<u32>,
    set: ElementSet,
    gens: Vec<u32>,
}

impl<'a> Builder<'a> {
    fn trivial(g: &'a Group) -> Self {
        Builder { g, elems: vec![g.identity()], set: g.trivial_set(), gens: Vec::new() }
    }

    fn from_subgroup(g: &'a Group, sub: &ElementSet, gens: &[u32]) -> Self {
        Builder { g, elems: sub.to_vec(), set: sub.clone(), gens: gens.to_vec() }
    }

    /// Adjoins `x` as a generator and closes under right multiplication by
    /// all generators. Returns false if `x` was already present.
    fn adjoin(&mut self, x: u32) -> bool {
        if self.set.contains(x) {
            return false;
        }
        self.gens.push(x);
        let start = self.elems.len();
        for k in 0..start {
            let y = self.g.mul(self.elems[k], x);
            if self.set.insert(y) {
                self.elems.push(y);
            }
        }
        let mut k = start;
        while k < self.elems.len() {
            let e = self.elems[k];
            for gi in 0..self.gens.len() {
                let y = self.g.mul(e, self.gens[gi]);
                if self.set.insert(y) {
                    self.elems.push(y);
                }
            }
            k += 1;
        }
        true
    }
}

/// Least subgroup containing `s`.
pub fn closure(g: &Group, s: &ElementSet) -> ElementSet {
    closure_with_generators(g, s).0
}

/// Least subgroup containing `s`, together with a generating subset of `s`.
pub fn closure_with_generators(g: &Group, s: &ElementSet) -> (ElementSet, Vec<u32>) {
    let mut b = Builder::trivial(g);
    for x in s.iter() {
        b.adjoin(x);
    }
    (b.set, b.gens)
}

/// `⟨sub, x⟩` for a subgroup `sub` generated by `gens`.
pub fn adjoin_element(g: &Group, sub: &ElementSet, gens: &[u32], x: u32) -> (ElementSet, Vec<u32>) {
    let mut b = Builder::from_subgroup(g, sub, gens);
    b.adjoin(x);
    (b.set, b.gens)
}

/// Least normal subgroup containing `s`.
pub fn normal_closure(g: &Group, s: &ElementSet) -> ElementSet {
    let mut b = Builder::trivial(g);
    let mut pending: Vec<u32> = s.iter().collect();
    let mut k = 0;
    while k < pending.len() {
        let x = pending[k];
        k += 1;
        if !b.adjoin(x) {
            continue;
        }
        // The result is normal once every generator's conjugates by the
        // group generators lie inside it.
        for &t in g.generators() {
            pending.push(g.conj(x, t));
        }
    }
    b.set
}

pub fn is_subgroup(g: &Group, s: &ElementSet) -> bool {
    !s.is_empty() && closure(g, s) == *s
}

pub fn is_normal(g: &Group, s: &ElementSet) -> bool {
    is_subgroup(g, s)
        && s.iter().all(|x| g.generators().iter().all(|&t| s.contains(g.conj(x, t))))
}

/// Commutator subgroup, as the normal closure of the commutators of the
/// generators.
pub fn derived_subgroup(g: &Group) -> ElementSet {
    let gens = g.generators();
    let mut comms = g.trivial_set();
    for &a in gens {
        for &b in gens {
            comms.insert(g.commutator(a, b));
        }
    }
    normal_closure(g, &comms)
}

pub fn is_perfect(g: &Group) -> bool {
    derived_subgroup(g).is_full()
}

pub fn center(g: &Group) -> ElementSet {
    let gens = g.generators();
    g.set_of((0..g.order() as u32).filter(|&z| gens.iter().all(|&t| g.mul(z, t) == g.mul(t, z))))
}

/// Least common multiple of the element orders.
pub fn exponent(g: &Group) -> u64 {
    let mut acc = 1u64;
    for c in g.classes().representatives() {
        acc = num_integer::lcm(acc, g.element_order(c) as u64);
    }
    acc
}

/// True iff the elements of the (abelian) subgroup all have order dividing a
/// prime `p`.
pub fn is_elementary_abelian(g: &Group, s: &ElementSet) -> bool {
    let elems = s.to_vec();
    let abelian = elems.iter().all(|&a| elems.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    if !abelian || elems.len() == 1 {
        return abelian;
    }
    let p = elems.iter().map(|&x| g.element_order(x)).max().unwrap();
    crate::field::is_prime(p as u64) && elems.iter().all(|&x| g.pow(x, p as i64) == g.identity())
}

/// Group on the elements of the subgroup `s`, plus the embedding from its
/// indices to the indices of `g`.
pub fn subgroup(g: &GroupHandle, s: &ElementSet, name: impl Into<String>) -> Result<(GroupHandle, Vec<u32>)> {
    if !is_subgroup(g, s) {
        return Err(Error::NotSubgroup);
    }
    let (_, gens) = closure_with_generators(g, s);
    let seeds: Vec<Encoding> = gens.iter().map(|&x| Encoding::from_slice(g.encoding(x))).collect();
    let h = enumerate_group(name, g.law().clone(), &seeds)?;
    let embed = (0..h.order() as u32).map(|i| g.index_of(h.encoding(i)).unwrap()).collect();
    Ok((h, embed))
}

/// Cosets of a normal subgroup, each named by its least element index.
struct QuotientLaw {
    parent: GroupHandle,
    rep: Vec<u32>,
}

fn read_u32(a: &[u8]) -> u32 {
    u32::from_le_bytes([a[0], a[1], a[2], a[3]])
}

impl GroupLaw for QuotientLaw {
    fn width(&self) -> usize {
        4
    }

    fn identity(&self) -> Encoding {
        Encoding::from_slice(&self.rep[self.parent.identity() as usize].to_le_bytes())
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let c = self.parent.mul(read_u32(a), read_u32(b));
        out.copy_from_slice(&self.rep[c as usize].to_le_bytes());
    }

    fn inv(&self, a: &[u8], out: &mut [u8]) {
        let c = self.parent.inv(read_u32(a));
        out.copy_from_slice(&self.rep[c as usize].to_le_bytes());
    }
}

/// A quotient group together with the projection from parent indices.
pub struct Quotient {
    pub group: GroupHandle,
    /// Parent index to quotient index.
    pub projection: Vec<u32>,
}

pub fn quotient(g: &GroupHandle, n: &ElementSet) -> Result<Quotient> {
    if !is_subgroup(g, n) {
        return Err(Error::NotSubgroup);
    }
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut rep = vec![u32::MAX; order];
    let nelems = n.to_vec();
    for i in 0..order as u32 {
        if rep[i as usize] != u32::MAX {
            continue;
        }
        // i is the least index of its coset since smaller ones are assigned.
        for &m in &nelems {
            rep[g.mul(i, m) as usize] = i;
        }
    }
    let law = QuotientLaw { parent: g.clone(), rep };
    let seeds: Vec<Encoding> = g
        .generators()
        .iter()
        .map(|&t| Encoding::from_slice(&law.rep[t as usize].to_le_bytes()))
        .collect();
    let name = format!("{}/N{}", g.name(), n.count());
    let law = Arc::new(law);
    let group = enumerate_group(name, law.clone(), &seeds)?;
    let projection = law
        .rep
        .iter()
        .map(|r| group.index_of(&r.to_le_bytes()).expect("coset enumerated"))
        .collect();
    Ok(Quotient { group, projection })
}

struct ProductLaw {
    left: GroupHandle,
    right: GroupHandle,
}

impl GroupLaw for ProductLaw {
    fn width(&self) -> usize {
        8
    }

    fn identity(&self) -> Encoding {
        pair(self.left.identity(), self.right.identity())
    }

    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        let x = self.left.mul(read_u32(a), read_u32(b));
        let y = self.right.mul(read_u32(&a[4..]), read_u32(&b[4..]));
        out.copy_from_slice(&pair(x, y));
    }

    fn inv(&self, a: &[u8], out: &mut [u8]) {
        let x = self.left.inv(read_u32(a));
        let y = self.right.inv(read_u32(&a[4..]));
        out.copy_from_slice(&pair(x, y));
    }
}

fn pair(x: u32, y: u32) -> Encoding {
    let mut e = Encoding::from_slice(&x.to_le_bytes());
    e.extend_from_slice(&y.to_le_bytes());
    e
}

pub fn direct_product(a: &GroupHandle, b: &GroupHandle) -> Result<GroupHandle> {
    let total = a.order() as u64 * b.order() as u64;
    if total > super::ORDER_CAP as u64 {
        return Err(Error::CapExceeded { what: "direct product order", cap: super::ORDER_CAP as u64, reached: total });
    }
    let mut seeds: Vec<Encoding> = a.generators().iter().map(|&x| pair(x, b.identity())).collect();
    seeds.extend(b.generators().iter().map(|&y| pair(a.identity(), y)));
    let name = format!("{}x{}", a.name(), b.name());
    enumerate_group(name, Arc::new(ProductLaw { left: a.clone(), right: b.clone() }), &seeds)
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// True iff every Sylow subgroup is normal.
///
/// A Sylow `p`-subgroup is normal exactly when the `p`-elements of the group
/// number `|G|_p`: every `p`-element lies in some Sylow subgroup, so the
/// count reaches `|G|_p` only when all Sylow subgroups coincide.
pub fn is_nilpotent(g: &Group) -> bool {
    let order = g.order();
    let cls = g.classes();
    let class_orders: Vec<(usize, usize)> = (0..cls.count() as u32)
        .map(|c| (g.element_order(cls.members(c)[0]), cls.members(c).len()))
        .collect();
    prime_factors(order as u64).into_iter().all(|(p, e)| {
        let p = p as usize;
        let count: usize =
            class_orders.iter().filter(|(o, _)| is_power_of(*o, p)).map(|(_, size)| size).sum();
        count == p.pow(e)
    })
}

/// Normal closures of single elements, one per conjugacy class,
/// deduplicated and sorted by order.
fn element_normal_closures(g: &Group) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> =
        g.classes().representatives().map(|rep| normal_closure(g, &g.set_of([rep]))).collect();
    v.sort_by_key(|s| (s.count(), s.clone()));
    v.dedup();
    v
}

/// All normal subgroups, sorted by (order, bits).
///
/// Every normal subgroup is a product of normal closures of single
/// elements, so joining those one at a time reaches all of them.
pub fn normal_subgroups(g: &Group) -> Vec<ElementSet> {
    let atoms = element_normal_closures(g);
    let mut found: BTreeSet<ElementSet> = BTreeSet::new();
    let mut queue = vec![g.trivial_set()];
    found.insert(g.trivial_set());
    while let Some(n) = queue.pop() {
        for a in &atoms {
            if a.is_subset(&n) {
                continue;
            }
            // Product of two normal subgroups.
            let (ns, ngens) = closure_with_generators(g, &n);
            let mut b = Builder::from_subgroup(g, &ns, &ngens);
            for x in a.iter() {
                b.adjoin(x);
            }
            if found.insert(b.set.clone()) {
                queue.push(b.set);
            }
        }
    }
    let mut v: Vec<ElementSet> = found.into_iter().collect();
    v.sort_by_key(|s| (s.count(), s.clone()));
    v
}

/// Minimal nontrivial normal subgroups, sorted by (order, bits).
pub fn minimal_normal_subgroups(g: &Group) -> Vec<ElementSet> {
    let ncs: Vec<ElementSet> = element_normal_closures(g).into_iter().filter(|s| s.count() > 1).collect();
    ncs.iter()
        .filter(|m| !ncs.iter().any(|n| n != *m && n.is_subset(m)))
        .cloned()
        .collect()
}

/// True iff `g` is a direct product of nonabelian simple groups (the trivial
/// group counts as the empty product).
pub fn is_semisimple(g: &Group) -> bool {
    let mins = minimal_normal_subgroups(g);
    let mut product: u128 = 1;
    for m in &mins {
        let elems = m.to_vec();
        let abelian = elems.iter().all(|&a| elems.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        if abelian {
            return false;
        }
        product *= m.count() as u128;
    }
    if product != g.order() as u128 {
        return false;
    }
    let mut union = g.trivial_set();
    for m in &mins {
        union.union_with(m);
    }
    closure(g, &union).is_full()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, dihedral, parse_cycles, quaternion, symmetric};

    fn el(g: &Group, n: usize, c: &str) -> u32 {
        g.index_of(&parse_cycles(n, c).unwrap()).unwrap()
    }

    fn brute_derived(g: &Group) -> ElementSet {
        let n = g.order() as u32;
        let mut s = g.trivial_set();
        for a in 0..n {
            for b in 0..n {
                s.insert(g.commutator(a, b));
            }
        }
        closure(g, &s)
    }

    #[test]
    fn closure_examples() {
        let s3 = symmetric(3).unwrap();
        let c = el(&s3, 3, "(1,2,3)");
        assert_eq!(closure(&s3, &s3.set_of([c])).count(), 3);
        assert_eq!(closure(&s3, &s3.trivial_set()).count(), 1);
        let t = el(&s3, 3, "(1,2)");
        assert!(closure(&s3, &s3.set_of([c, t])).is_full());
    }

    #[test]
    fn derived_examples() {
        let s3 = symmetric(3).unwrap();
        let d = derived_subgroup(&s3);
        assert_eq!(d.count(), 3);
        assert_eq!(d, brute_derived(&s3));
        assert_eq!(derived_subgroup(&cyclic(6).unwrap()).count(), 1);
        for g in [symmetric(4).unwrap(), alternating(4).unwrap(), quaternion().unwrap(), dihedral(8).unwrap()] {
            assert_eq!(derived_subgroup(&g), brute_derived(&g), "{}", g.name());
        }
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = symmetric(3).unwrap();
        assert!(normal_closure(&s3, &s3.set_of([el(&s3, 3, "(1,2)")])).is_full());
        let s4 = symmetric(4).unwrap();
        let v = normal_closure(&s4, &s4.set_of([el(&s4, 4, "(1,2)(3,4)")]));
        assert_eq!(v.count(), 4);
        assert!(is_normal(&s4, &v));
        assert_eq!(normal_closure(&s4, &s4.trivial_set()).count(), 1);
    }

    #[test]
    fn center_examples() {
        assert_eq!(center(&quaternion().unwrap()).count(), 2);
        assert_eq!(center(&symmetric(3).unwrap()).count(), 1);
        assert!(center(&cyclic(6).unwrap()).is_full());
    }

    #[test]
    fn quotient_examples() {
        let s4 = symmetric(4).unwrap();
        let v = normal_closure(&s4, &s4.set_of([el(&s4, 4, "(1,2)(3,4)")]));
        let q = quotient(&s4, &v).unwrap().group;
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        let id = quotient(&s4, &s4.trivial_set()).unwrap().group;
        assert_eq!(id.order(), 24);

        let s3 = symmetric(3).unwrap();
        let t = s3.set_of([s3.identity(), el(&s3, 3, "(1,2)")]);
        assert!(matches!(quotient(&s3, &t), Err(Error::NotNormal)));
        let junk = s3.set_of([el(&s3, 3, "(1,2)")]);
        assert!(matches!(quotient(&s3, &junk), Err(Error::NotSubgroup)));
    }

    #[test]
    fn quotient_order_and_derived_image() {
        let s4 = symmetric(4).unwrap();
        for n in normal_subgroups(&s4) {
            let q = quotient(&s4, &n).unwrap();
            assert_eq!(q.group.order() * n.count(), 24);
            // derived(G/N) is the image of derived(G).
            let d = derived_subgroup(&s4);
            let image = q.group.set_of(d.iter().map(|x| q.projection[x as usize]));
            assert_eq!(derived_subgroup(&q.group), image);
        }
    }

    #[test]
    fn product_examples() {
        let c6 = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(c6.order(), 6);
        assert!(c6.is_abelian());
        assert!((0..6).any(|x| c6.element_order(x) == 6));
        let s3 = symmetric(3).unwrap();
        let p = direct_product(&s3, &trivial_g()).unwrap();
        assert_eq!(p.order(), 6);
        let ss = direct_product(&s3, &s3).unwrap();
        assert_eq!(ss.order(), 36);
        assert_eq!(derived_subgroup(&ss).count(), 9);
        let big = symmetric(7).unwrap();
        assert!(matches!(direct_product(&big, &big), Err(Error::CapExceeded { .. })));
    }

    fn trivial_g() -> GroupHandle {
        crate::group::trivial().unwrap()
    }

    #[test]
    fn nilpotent_examples() {
        assert!(is_nilpotent(&quaternion().unwrap()));
        assert!(!is_nilpotent(&symmetric(3).unwrap()));
        assert!(is_nilpotent(&cyclic(6).unwrap()));
        assert!(is_nilpotent(&dihedral(8).unwrap()));
        assert!(!is_nilpotent(&alternating(4).unwrap()));
        assert!(is_nilpotent(&trivial_g()));
    }

    #[test]
    fn minimal_normal_examples() {
        let s4 = symmetric(4).unwrap();
        let m = minimal_normal_subgroups(&s4);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].count(), 4);
        let a5 = alternating(5).unwrap();
        let m = minimal_normal_subgroups(&a5);
        assert_eq!(m.len(), 1);
        assert!(m[0].is_full());
        let c6 = cyclic(6).unwrap();
        let sizes: Vec<usize> = minimal_normal_subgroups(&c6).iter().map(|s| s.count()).collect();
        assert_eq!(sizes, vec![2, 3]);
    }

    #[test]
    fn semisimple_examples() {
        let a5 = alternating(5).unwrap();
        assert!(is_semisimple(&a5));
        assert!(is_semisimple(&direct_product(&a5, &a5).unwrap()));
        assert!(!is_semisimple(&symmetric(5).unwrap()));
        assert!(!is_semisimple(&cyclic(5).unwrap()));
        assert!(is_semisimple(&trivial_g()));
    }

    #[test]
    fn normal_subgroup_lists() {
        let sizes = |g: &Group| normal_subgroups(g).iter().map(|s| s.count()).collect::<Vec<_>>();
        assert_eq!(sizes(&symmetric(4).unwrap()), vec![1, 4, 12, 24]);
        assert_eq!(sizes(&alternating(5).unwrap()), vec![1, 60]);
        assert_eq!(sizes(&cyclic(12).unwrap()), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(sizes(&quaternion().unwrap()), vec![1, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn exponents() {
        assert_eq!(exponent(&symmetric(3).unwrap()), 6);
        assert_eq!(exponent(&alternating(5).unwrap()), 30);
        assert_eq!(exponent(&quaternion().unwrap()), 4);
    }

    #[test]
    fn subgroup_handle_embeds() {
        let s4 = symmetric(4).unwrap();
        let a4 = derived_subgroup(&s4);
        let (h, embed) = subgroup(&s4, &a4, "A4").unwrap();
        assert_eq!(h.order(), 12);
        for i in 0..12u32 {
            for j in 0..12u32 {
                assert_eq!(embed[h.mul(i, j) as usize], s4.mul(embed[i as usize], embed[j as usize]));
            }
        }
    }

    #[test]
    fn nilpotent_and_semisimple_only_if_trivial() {
        for g in [symmetric(3).unwrap(), symmetric(4).unwrap(), alternating(5).unwrap(), quaternion().unwrap(),
                  cyclic(12).unwrap(), trivial_g(), dihedral(8).unwrap()] {
            if is_nilpotent(&g) && is_semisimple(&g) {
                assert_eq!(g.order(), 1);
            }
            if is_semisimple(&g) {
                assert!(is_perfect(&g));
            }
        }
    }
}
