//! Set descriptions and descriptive nearness over full-`B` descriptions.

use std::collections::BTreeSet;

use crate::error::{NearnessError, Result};
use crate::set::{Obj, ObjSet};
use crate::space::{ApproximationSpace, ObjectDescription};

/// Default bound on `|O|` for powerset candidate families; overridden by
/// `NEARNESS_POWERSET_MAX`.
pub const DEFAULT_POWERSET_MAX: usize = 16;

pub fn powerset_bound() -> usize {
    std::env::var("NEARNESS_POWERSET_MAX")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_POWERSET_MAX)
}

/// `Q(A)` as description ids of the space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetDescription {
    ids: BTreeSet<usize>,
}

impl SetDescription {
    pub fn of(space: &ApproximationSpace, set: &ObjSet) -> Self {
        SetDescription { ids: set.iter().map(|x| space.description_id(x)).collect() }
    }

    pub fn contains(&self, space: &ApproximationSpace, x: Obj) -> bool {
        self.ids.contains(&space.description_id(x))
    }

    pub fn meets(&self, other: &SetDescription) -> bool {
        self.ids.iter().any(|id| other.ids.contains(id))
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.ids.iter().copied()
    }

    pub fn intersection_ids(&self, other: &SetDescription) -> Vec<usize> {
        self.ids.intersection(&other.ids).copied().collect()
    }

    pub fn union(&self, other: &SetDescription) -> SetDescription {
        SetDescription { ids: self.ids.union(&other.ids).copied().collect() }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Descriptions in lexicographic order of their values.
    pub fn descriptions<'a>(&self, space: &'a ApproximationSpace) -> Vec<&'a ObjectDescription> {
        let mut out: Vec<_> = self.ids.iter().map(|&id| space.description_by_id(id)).collect();
        out.sort();
        out
    }
}

pub fn set_description(space: &ApproximationSpace, a: &ObjSet) -> SetDescription {
    SetDescription::of(space, a)
}

/// `A ∩_Φ B = {x ∈ A ∪ B | Φ(x) ∈ Q(A) and Φ(x) ∈ Q(B)}`.
pub fn descriptive_intersection(space: &ApproximationSpace, a: &ObjSet, b: &ObjSet) -> ObjSet {
    let (qa, qb) = (SetDescription::of(space, a), SetDescription::of(space, b));
    a.union(b)
        .iter()
        .filter(|&x| qa.contains(space, x) && qb.contains(space, x))
        .collect()
}

pub fn is_descriptively_near(space: &ApproximationSpace, a: &ObjSet, b: &ObjSet) -> bool {
    SetDescription::of(space, a).meets(&SetDescription::of(space, b))
}

/// Where the sets of a descriptive collection are drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidates {
    Explicit(Vec<ObjSet>),
    /// Every subset of the universe; bounded by [`powerset_bound`].
    Powerset,
}

impl Candidates {
    pub fn resolve(&self, space: &ApproximationSpace) -> Result<Vec<ObjSet>> {
        match self {
            Candidates::Explicit(sets) => Ok(sets.clone()),
            Candidates::Powerset => powerset(space.universe().len()),
        }
    }
}

/// All `2^n` subsets of `{0..n}` in ascending bitmask order.
pub fn powerset(n: usize) -> Result<Vec<ObjSet>> {
    let bound = powerset_bound();
    if n > bound || n >= usize::BITS as usize {
        return Err(NearnessError::PowersetTooLarge { size: n, bound });
    }
    Ok((0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| Obj(i as u32)).collect())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearnessCollection {
    pub anchor: ObjSet,
    pub members: Vec<ObjSet>,
}

/// `ξ_Φ(A)` restricted to a candidate family.
pub fn nearness_collection(
    space: &ApproximationSpace,
    anchor: &ObjSet,
    candidates: &Candidates,
) -> Result<NearnessCollection> {
    let qa = SetDescription::of(space, anchor);
    let members = candidates
        .resolve(space)?
        .into_iter()
        .filter(|b| qa.meets(&SetDescription::of(space, b)))
        .collect();
    Ok(NearnessCollection { anchor: anchor.clone(), members })
}

/// Candidates descriptively near at least one member of `family`.
pub fn family_upper_approx(
    space: &ApproximationSpace,
    family: &[ObjSet],
    candidates: &Candidates,
) -> Result<Vec<ObjSet>> {
    let described: Vec<SetDescription> = family.iter().map(|c| SetDescription::of(space, c)).collect();
    Ok(candidates
        .resolve(space)?
        .into_iter()
        .filter(|b| {
            let qb = SetDescription::of(space, b);
            described.iter().any(|qc| qb.meets(qc))
        })
        .collect())
}
