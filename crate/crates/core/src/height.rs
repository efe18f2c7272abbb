//! The height of a finite group: the least length of a chain of subgroups,
//! each normal in the whole group, whose factors are nilpotent or
//! semisimple (direct products of nonabelian simple groups).

use serde::Serialize;

use crate::census::SUBGROUP_CAP;
use crate::error::{Error, Result};
use crate::group::{is_nilpotent, is_normal, is_semisimple, normal_subgroups, quotient, subgroup, GroupHandle};
use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Nilpotent,
    Semisimple,
}

#[derive(Debug, Clone)]
pub struct HeightCertificate {
    pub group: String,
    pub height: usize,
    /// `1 = G_0 < G_1 < ... < G_n = G`.
    pub chain: Vec<ElementSet>,
    pub factor_labels: Vec<FactorKind>,
}

impl HeightCertificate {
    pub fn chain_orders(&self) -> Vec<usize> {
        self.chain.iter().map(ElementSet::count).collect()
    }
}

/// `upper / lower` as a group in its own right.
fn factor_group(g: &GroupHandle, lower: &ElementSet, upper: &ElementSet) -> Result<GroupHandle> {
    if !lower.is_subset(upper) {
        return Err(Error::NotSubgroup);
    }
    let (m, _) = subgroup(g, upper, "M")?;
    let inner = m.set_of(lower.iter().map(|x| m.index_of(g.encoding(x)).expect("lower lies inside upper")));
    Ok(quotient(&m, &inner)?.group)
}

/// Classifies `upper / lower`, preferring the nilpotent label.
fn classify_factor(g: &GroupHandle, lower: &ElementSet, upper: &ElementSet) -> Result<Option<FactorKind>> {
    let q = factor_group(g, lower, upper)?;
    Ok(if is_nilpotent(&q) {
        Some(FactorKind::Nilpotent)
    } else if is_semisimple(&q) {
        Some(FactorKind::Semisimple)
    } else {
        None
    })
}

/// Exact height with an optimal chain, by dynamic programming over the
/// normal subgroups ordered by size.
pub fn height(g: &GroupHandle) -> Result<HeightCertificate> {
    if g.order() > SUBGROUP_CAP {
        return Err(Error::CapExceeded {
            what: "height group order",
            cap: SUBGROUP_CAP as u64,
            reached: g.order() as u64,
        });
    }
    let normals = normal_subgroups(g);
    let k = normals.len();
    // best[i] = (height of normals[i], predecessor, factor label)
    let mut best: Vec<Option<(usize, usize, FactorKind)>> = vec![None; k];
    for i in 1..k {
        for j in 0..i {
            if normals[j].count() >= normals[i].count() || !normals[j].is_subset(&normals[i]) {
                continue;
            }
            let below = if j == 0 { 0 } else { best[j].map_or(usize::MAX, |b| b.0) };
            if below == usize::MAX {
                continue;
            }
            if best[i].is_some_and(|b| b.0 <= below + 1) {
                continue;
            }
            if let Some(kind) = classify_factor(g, &normals[j], &normals[i])? {
                best[i] = Some((below + 1, j, kind));
            }
        }
    }
    let top = k - 1;
    let mut chain = vec![normals[top].clone()];
    let mut labels = Vec::new();
    let mut cur = top;
    while cur != 0 {
        let (_, prev, kind) = best[cur].expect("every factor chain reaches the top through composition series");
        labels.push(kind);
        chain.push(normals[prev].clone());
        cur = prev;
    }
    chain.reverse();
    labels.reverse();
    Ok(HeightCertificate { group: g.name().to_string(), height: labels.len(), chain, factor_labels: labels })
}

/// Checks a certificate's chain: starts at 1, ends at `G`, strictly
/// increasing, every member normal in `G`, and every factor of its labelled
/// kind. Minimality is not re-checked here.
pub fn verify_height_chain(g: &GroupHandle, cert: &HeightCertificate) -> Result<bool> {
    let c = &cert.chain;
    if c.len() != cert.factor_labels.len() + 1 || c.first() != Some(&g.trivial_set()) || c.last() != Some(&g.full_set()) {
        return Ok(false);
    }
    for (w, &label) in c.windows(2).zip(&cert.factor_labels) {
        if !is_normal(g, &w[1]) || !w[0].is_subset(&w[1]) || w[0] == w[1] {
            return Ok(false);
        }
        let q = factor_group(g, &w[0], &w[1])?;
        let ok = match label {
            FactorKind::Nilpotent => is_nilpotent(&q),
            FactorKind::Semisimple => is_semisimple(&q),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
