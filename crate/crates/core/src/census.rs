//! Complete subgroup enumeration and index counts.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{adjoin_element, closure_with_generators, normal_subgroups, Group};
use crate::set::ElementSet;

/// Largest group whose full subgroup lattice is enumerated.
pub const SUBGROUP_CAP: usize = 2000;

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub group: String,
    pub group_order: usize,
    /// Sorted by (order, bits).
    pub subgroups: Vec<ElementSet>,
}

/// Right-coset representatives of the subgroup `s`, excluding `s` itself.
fn coset_representatives(g: &Group, s: &ElementSet) -> Vec<u32> {
    let elems = s.to_vec();
    let mut covered = s.clone();
    let mut reps = Vec::new();
    for x in 0..g.order() as u32 {
        if covered.contains(x) {
            continue;
        }
        reps.push(x);
        for &h in &elems {
            covered.insert(g.mul(h, x));
        }
    }
    reps
}

/// Every subgroup of `g`. Starting from the trivial subgroup, each known
/// subgroup is extended by one element from each of its right cosets until
/// nothing new appears; every subgroup is reached by adjoining its
/// generators one at a time.
pub fn all_subgroups(g: &Group) -> Result<SubgroupLattice> {
    if g.order() > SUBGROUP_CAP {
        return Err(Error::CapExceeded {
            what: "subgroup lattice group order",
            cap: SUBGROUP_CAP as u64,
            reached: g.order() as u64,
        });
    }
    let trivial = g.trivial_set();
    let mut known: BTreeMap<ElementSet, Vec<u32>> = BTreeMap::new();
    known.insert(trivial.clone(), Vec::new());
    let mut frontier = vec![(trivial, Vec::new())];
    while !frontier.is_empty() {
        let found: Vec<(ElementSet, Vec<u32>)> = frontier
            .par_iter()
            .flat_map_iter(|(s, gens): &(ElementSet, Vec<u32>)| {
                coset_representatives(g, s).into_iter().map(move |x| adjoin_element(g, s, gens, x))
            })
            .collect();
        let mut next = Vec::new();
        for (s, gens) in found {
            if !known.contains_key(&s) {
                known.insert(s.clone(), gens.clone());
                next.push((s, gens));
            }
        }
        next.sort_by(|a, b| (a.0.count(), &a.0).cmp(&(b.0.count(), &b.0)));
        frontier = next;
    }
    let mut subgroups: Vec<ElementSet> = known.into_keys().collect();
    subgroups.sort_by_key(|s| (s.count(), s.clone()));
    Ok(SubgroupLattice { group: g.name().to_string(), group_order: g.order(), subgroups })
}

/// Naive enumeration: closures of all pairs and triples of elements. It is
/// complete only for groups whose subgroups are all 3-generated, which
/// holds for small test groups.
pub fn subgroups_by_small_generating_sets(g: &Group) -> BTreeSet<ElementSet> {
    let n = g.order() as u32;
    let pairs: BTreeSet<ElementSet> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| (a..n).map(move |b| closure_with_generators(g, &g.set_of([a, b])).0))
        .collect();
    let mut all = pairs.clone();
    for s in &pairs {
        for c in 0..n {
            if !s.contains(c) {
                let mut t = s.clone();
                t.insert(c);
                all.insert(closure_with_generators(g, &t).0);
            }
        }
    }
    all
}

impl SubgroupLattice {
    pub fn total(&self) -> usize {
        self.subgroups.len()
    }

    /// `s_n`: number of subgroups of index at most `n`.
    pub fn s_n(&self, n: u64) -> u64 {
        self.subgroups.iter().filter(|s| (self.group_order / s.count()) as u64 <= n).count() as u64
    }

    /// Subgroup counts keyed by index.
    pub fn counts_by_index(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for s in &self.subgroups {
            *m.entry((self.group_order / s.count()) as u64).or_insert(0) += 1;
        }
        m
    }
}

/// `s_n(G)`.
pub fn s_n(g: &Group, n: u64) -> Result<u64> {
    Ok(all_subgroups(g)?.s_n(n))
}

/// Number of normal subgroups of index exactly `m`.
pub fn count_normal_of_index(g: &Group, m: u64) -> u64 {
    normal_subgroups(g).iter().filter(|s| (g.order() / s.count()) as u64 == m).count() as u64
}
