//! Enumerated finite groups.
//!
//! A group is given by a [`GroupLaw`] acting on fixed-width byte encodings
//! and is enumerated by breadth-first closure of a seed list. Products are
//! always computed by coordinate arithmetic followed by a hash lookup; no
//! Cayley table is ever stored.

mod catalog;
mod ops;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::set::ElementSet;

pub use catalog::{
    alternating, cyclic, dihedral, parse_cycles, permutation_group, quaternion, symmetric, trivial,
    CyclicLaw, PermutationLaw,
};
pub use ops::*;

/// Largest group that is ever fully enumerated.
pub const ORDER_CAP: usize = 100_000;

/// Longest element encoding a law may use.
pub const MAX_WIDTH: usize = 64;

pub type Encoding = SmallVec<[u8; 24]>;

/// Multiplication rule on canonical fixed-width encodings.
pub trait GroupLaw: Send + Sync {
    /// Encoding length in bytes.
    fn width(&self) -> usize;
    fn identity(&self) -> Encoding;
    fn mul(&self, a: &[u8], b: &[u8], out: &mut [u8]);
    fn inv(&self, a: &[u8], out: &mut [u8]);
}

pub type GroupHandle = Arc<Group>;

pub struct Group {
    name: String,
    law: Arc<dyn GroupLaw>,
    width: usize,
    data: Vec<u8>,
    index_of: FxHashMap<Box<[u8]>, u32>,
    identity: u32,
    generators: Vec<u32>,
    inverses: Vec<u32>,
    classes: OnceLock<ConjugacyClasses>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Breadth-first enumeration of the group generated by `seeds`.
///
/// The identity gets index 0, then the seeds in the given order, then
/// products `x * s` in discovery order, so indices are reproducible.
pub fn enumerate_group(
    name: impl Into<String>,
    law: Arc<dyn GroupLaw>,
    seeds: &[Encoding],
) -> Result<GroupHandle> {
    enumerate_group_capped(name, law, seeds, ORDER_CAP)
}

pub fn enumerate_group_capped(
    name: impl Into<String>,
    law: Arc<dyn GroupLaw>,
    seeds: &[Encoding],
    cap: usize,
) -> Result<GroupHandle> {
    let width = law.width();
    if width == 0 || width > MAX_WIDTH {
        return Err(Error::InvalidInput(format!("encoding width {width} exceeds {MAX_WIDTH}")));
    }
    for s in seeds {
        if s.len() != width {
            return Err(Error::InvalidInput("seed encoding has the wrong width".into()));
        }
    }
    let mut data: Vec<u8> = Vec::new();
    let mut index_of: FxHashMap<Box<[u8]>, u32> = FxHashMap::default();
    let mut push = |enc: &[u8], data: &mut Vec<u8>| -> Result<(u32, bool)> {
        if let Some(&i) = index_of.get(enc) {
            return Ok((i, false));
        }
        let i = index_of.len();
        if i >= cap {
            return Err(Error::CapExceeded { what: "group enumeration", cap: cap as u64, reached: i as u64 });
        }
        index_of.insert(enc.into(), i as u32);
        data.extend_from_slice(enc);
        Ok((i as u32, true))
    };

    let id = law.identity();
    push(&id, &mut data)?;
    let mut generators = Vec::new();
    for s in seeds {
        let (i, _) = push(s, &mut data)?;
        if i != 0 && !generators.contains(&i) {
            generators.push(i);
        }
    }
    let gen_encs: Vec<Encoding> = generators
        .iter()
        .map(|&g| Encoding::from_slice(&data[g as usize * width..(g as usize + 1) * width]))
        .collect();
    let mut buf = [0u8; MAX_WIDTH];
    let mut next = 0usize;
    while next * width < data.len() {
        let x: Encoding = Encoding::from_slice(&data[next * width..(next + 1) * width]);
        for g in &gen_encs {
            law.mul(&x, g, &mut buf[..width]);
            push(&buf[..width], &mut data)?;
        }
        next += 1;
    }

    let order = data.len() / width;
    let mut inverses = Vec::with_capacity(order);
    for i in 0..order {
        law.inv(&data[i * width..(i + 1) * width], &mut buf[..width]);
        let j = *index_of
            .get(&buf[..width])
            .ok_or_else(|| Error::InvalidInput("law inverse left the enumerated set".into()))?;
        inverses.push(j);
    }
    Ok(Arc::new(Group {
        name: name.into(),
        law,
        width,
        data,
        index_of,
        identity: 0,
        generators,
        inverses,
        classes: OnceLock::new(),
    }))
}

impl Group {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn law(&self) -> &Arc<dyn GroupLaw> {
        &self.law
    }

    pub fn encoding(&self, i: u32) -> &[u8] {
        let i = i as usize;
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn index_of(&self, enc: &[u8]) -> Option<u32> {
        self.index_of.get(enc).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut buf = [0u8; MAX_WIDTH];
        let out = &mut buf[..self.width];
        self.law.mul(self.encoding(a), self.encoding(b), out);
        self.index_of[&*out]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn pow(&self, a: u32, n: i64) -> u32 {
        let mut base = if n < 0 { self.inv(a) } else { a };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.order())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    pub fn trivial_set(&self) -> ElementSet {
        ElementSet::singleton(self.order(), self.identity)
    }

    pub fn set_of(&self, it: impl IntoIterator<Item = u32>) -> ElementSet {
        ElementSet::from_indices(self.order(), it)
    }

    /// Conjugacy classes, computed on first use.
    pub fn classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| ConjugacyClasses::compute(self))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Partition of a group into conjugacy classes.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl ConjugacyClasses {
    fn compute(g: &Group) -> Self {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut members = Vec::new();
        let gens: Vec<(u32, u32)> = g.generators.iter().map(|&s| (s, g.inv(s))).collect();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let c = members.len() as u32;
            let mut orbit = vec![start];
            class_of[start as usize] = c;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for &(s, si) in &gens {
                    let y = g.mul(g.mul(si, x), s);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = c;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        ConjugacyClasses { class_of, members }
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn class_of(&self, x: u32) -> u32 {
        self.class_of[x as usize]
    }

    pub fn members(&self, c: u32) -> &[u32] {
        &self.members[c as usize]
    }

    /// Least index in each class, ordered by class number.
    pub fn representatives(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().map(|m| m[0])
    }

    /// Smallest union of classes containing `s`.
    pub fn saturate(&self, s: &ElementSet) -> ElementSet {
        let mut hit = vec![false; self.members.len()];
        let mut out = ElementSet::empty(s.universe());
        for x in s.iter() {
            let c = self.class_of[x as usize] as usize;
            if !hit[c] {
                hit[c] = true;
                for &y in &self.members[c] {
                    out.insert(y);
                }
            }
        }
        out
    }

    /// Class representatives of the elements of a class-closed set.
    pub fn representatives_in(&self, s: &ElementSet) -> Vec<u32> {
        let mut hit = vec![false; self.members.len()];
        let mut reps = Vec::new();
        for x in s.iter() {
            let c = self.class_of[x as usize] as usize;
            if !hit[c] {
                hit[c] = true;
                reps.push(self.members[c][0]);
            }
        }
        reps
    }
}
