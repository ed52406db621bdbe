//! Brute-force reference semantics by explicit subset enumeration.
//!
//! The oracle is definitionally independent of the SAT-backed drivers: every
//! family is computed straight from the textbook definitions, and the ideal
//! extension in particular goes through the preferred-family intersection
//! rather than any of the algorithmic shortcuts used elsewhere in the crate.
//! Family enumeration walks all 2^|A| subsets and is guarded at 20
//! arguments.

use std::cmp::Ordering;

use crate::af::{Af, ArgSet};
use crate::reasoner::Semantics;

/// Hard ceiling for family enumeration.
pub const MAX_ENUM_ARGS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("enumeration guard exceeded: {0} arguments (limit {MAX_ENUM_ARGS})")]
    TooManyArguments(usize),
}

/// All extensions of one semantics, canonically ordered by cardinality and
/// then lexicographically by member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFamily {
    pub semantics: Semantics,
    pub extensions: Vec<ArgSet>,
}

impl ExtensionFamily {
    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }

    pub fn contains(&self, s: &ArgSet) -> bool {
        self.extensions.iter().any(|e| e == s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ArgSet> {
        self.extensions.iter()
    }
}

pub fn canonical_cmp(a: &ArgSet, b: &ArgSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

pub fn is_conflict_free(af: &Af, s: &ArgSet) -> bool {
    af.attacks()
        .iter()
        .all(|&(u, v)| !(s.contains(u) && s.contains(v)))
}

pub fn is_admissible(af: &Af, s: &ArgSet) -> bool {
    is_conflict_free(af, s) && s.iter().all(|a| af.defends(s, a))
}

fn is_complete(af: &Af, s: &ArgSet) -> bool {
    is_admissible(af, s) && af.args().all(|a| !af.defends(s, a) || s.contains(a))
}

fn is_stable(af: &Af, s: &ArgSet) -> bool {
    is_conflict_free(af, s) && af.args().all(|a| s.contains(a) || af.set_attacks_arg(s, a))
}

fn subsets(af: &Af) -> impl Iterator<Item = ArgSet> + '_ {
    let n = af.arg_count();
    (0..1u64 << n).map(move |mask| ArgSet::from_mask(n, mask))
}

/// Members of `family` with no strict subset in `family`.
fn minimal(family: &[ArgSet]) -> Vec<ArgSet> {
    family
        .iter()
        .filter(|s| !family.iter().any(|t| t != *s && t.is_subset(s)))
        .cloned()
        .collect()
}

/// Members of `family` with no strict superset in `family`.
fn maximal(family: &[ArgSet]) -> Vec<ArgSet> {
    family
        .iter()
        .filter(|s| !family.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect()
}

fn preferred_family(af: &Af) -> Vec<ArgSet> {
    let admissible: Vec<ArgSet> = subsets(af).filter(|s| is_admissible(af, s)).collect();
    maximal(&admissible)
}

/// Enumerates the full extension family of the given semantics.
pub fn enumerate(af: &Af, semantics: Semantics) -> Result<ExtensionFamily, OracleError> {
    let n = af.arg_count();
    if n > MAX_ENUM_ARGS {
        return Err(OracleError::TooManyArguments(n));
    }
    let mut extensions = match semantics {
        Semantics::CO => subsets(af).filter(|s| is_complete(af, s)).collect(),
        Semantics::GR => {
            let complete: Vec<ArgSet> = subsets(af).filter(|s| is_complete(af, s)).collect();
            let least = minimal(&complete);
            assert_eq!(least.len(), 1, "grounded extension must be unique");
            least
        }
        Semantics::ST => subsets(af).filter(|s| is_stable(af, s)).collect(),
        Semantics::PR => preferred_family(af),
        Semantics::ID => {
            let preferred = preferred_family(af);
            let intersection = preferred
                .iter()
                .fold(ArgSet::full(n), |acc, e| acc.intersection(e));
            let candidates: Vec<ArgSet> = subsets(af)
                .filter(|s| s.is_subset(&intersection) && is_admissible(af, s))
                .collect();
            let top = maximal(&candidates);
            assert_eq!(top.len(), 1, "ideal extension must be unique");
            assert!(
                candidates.iter().all(|c| c.is_subset(&top[0])),
                "ideal extension must contain every admissible subset of the preferred intersection"
            );
            top
        }
    };
    extensions.sort_by(canonical_cmp);
    Ok(ExtensionFamily {
        semantics,
        extensions,
    })
}
