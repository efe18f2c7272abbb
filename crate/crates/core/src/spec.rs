//! JSON group specifications, e.g. `{"type":"sl2","q":5}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::{self, direct_product, permutation_group, GroupHandle};
use crate::holt::{holt_k_group, holt_symbolic, sl2_group, HoltParams, SymbolicHolt};
use crate::pgroup::free_class2_group;

/// A field size, given either as an integer or as a literal `"GF(p^e)"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldOrder {
    Order(u64),
    Literal(String),
}

impl FieldOrder {
    pub fn value(&self) -> Result<u64> {
        match self {
            FieldOrder::Order(q) => Ok(*q),
            FieldOrder::Literal(s) => Ok(FieldSpec::parse_literal(s)?.order()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial,
    Symmetric { n: usize },
    Alternating { n: usize },
    Cyclic { n: u32 },
    Dihedral { order: usize },
    Quaternion,
    /// Permutations of `1..=degree` in cycle notation.
    Permutation { degree: usize, generators: Vec<String> },
    Sl2 { q: FieldOrder },
    HoltK { q: FieldOrder, r: u32 },
    HoltSymbolic { q: FieldOrder, r: u32 },
    FreeClass2 { d: usize, p: u64 },
    DirectProduct { factors: Vec<GroupSpec> },
}

impl GroupSpec {
    /// Parses inline JSON, or reads it from a file when `text` does not
    /// start with `{`.
    pub fn load(text: &str) -> Result<GroupSpec> {
        let trimmed = text.trim();
        let json = if trimmed.starts_with('{') {
            trimmed.to_string()
        } else {
            std::fs::read_to_string(trimmed)
                .map_err(|e| Error::InvalidInput(format!("cannot read group spec {trimmed:?}: {e}")))?
        };
        serde_json::from_str(&json).map_err(|e| Error::InvalidInput(format!("malformed group spec: {e}")))
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, GroupSpec::HoltSymbolic { .. })
    }

    /// Enumerates the group.
    pub fn build(&self) -> Result<GroupHandle> {
        match self {
            GroupSpec::Trivial => group::trivial(),
            GroupSpec::Symmetric { n } => group::symmetric(*n),
            GroupSpec::Alternating { n } => group::alternating(*n),
            GroupSpec::Cyclic { n } => group::cyclic(*n),
            GroupSpec::Dihedral { order } => group::dihedral(*order),
            GroupSpec::Quaternion => group::quaternion(),
            GroupSpec::Permutation { degree, generators } => {
                let gens: Vec<&str> = generators.iter().map(String::as_str).collect();
                permutation_group(&format!("<{}>", generators.join(",")), *degree, &gens)
            }
            GroupSpec::Sl2 { q } => sl2_group(q.value()?),
            GroupSpec::HoltK { q, r } => Ok(holt_k_group(&HoltParams::new(q.value()?, *r)?)?.group),
            GroupSpec::HoltSymbolic { .. } => {
                Err(Error::InvalidInput("holt_symbolic has no explicit form; use holt_k".into()))
            }
            GroupSpec::FreeClass2 { d, p } => free_class2_group(*d, *p),
            GroupSpec::DirectProduct { factors } => {
                let mut it = factors.iter();
                let first = it.next().ok_or_else(|| Error::InvalidInput("empty direct product".into()))?;
                it.try_fold(first.build()?, |acc, f| direct_product(&acc, &f.build()?))
            }
        }
    }

    /// Orders of a symbolic Holt group.
    pub fn symbolic(&self) -> Result<SymbolicHolt> {
        match self {
            GroupSpec::HoltSymbolic { q, r } | GroupSpec::HoltK { q, r } => holt_symbolic(&HoltParams::new(q.value()?, *r)?),
            _ => Err(Error::InvalidInput("not a Holt group spec".into())),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("group specs serialize")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}
