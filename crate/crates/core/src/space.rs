//! Feature systems, indiscernibility partitions and rough approximations.
//!
//! A [`FeatureSystem`] fixes the universe, the probe functions `B` and the
//! subset size `r`. Building an [`ApproximationSpace`] from it computes one
//! partition per size-`r` probe subset; lower and upper approximations are
//! unions over the classes of *all* of these partitions.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{NearnessError, Result};
use crate::set::{Obj, ObjSet, Universe};

/// A probe function: one feature value per object, in universe order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub name: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureSystem {
    universe: Universe,
    probes: Vec<Probe>,
    r: usize,
}

impl FeatureSystem {
    pub fn new(universe: Universe, probes: Vec<Probe>, r: usize) -> Result<Self> {
        if probes.is_empty() {
            return Err(NearnessError::Invalid("at least one probe function is required".into()));
        }
        if r == 0 || r > probes.len() {
            return Err(NearnessError::Invalid(format!(
                "r must satisfy 1 <= r <= |B| = {}, got {r}",
                probes.len()
            )));
        }
        for (i, p) in probes.iter().enumerate() {
            if p.values.len() != universe.len() {
                return Err(NearnessError::Invalid(format!(
                    "probe `{}` has {} values for {} objects",
                    p.name,
                    p.values.len(),
                    universe.len()
                )));
            }
            if probes[..i].iter().any(|q| q.name == p.name) {
                return Err(NearnessError::Invalid(format!("duplicate probe `{}`", p.name)));
            }
        }
        Ok(FeatureSystem { universe, probes, r })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn probes(&self) -> &[Probe] {
        &self.probes
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn probe_index(&self, name: &str) -> Result<usize> {
        self.probes
            .iter()
            .position(|p| p.name == name)
            .ok_or_else(|| NearnessError::UnknownProbe(name.to_string()))
    }

    pub fn probe_indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.probe_index(n.as_ref())).collect()
    }
}

/// `Φ(x)`: probe values of one object, in probe order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectDescription(pub Vec<String>);

impl std::fmt::Display for ObjectDescription {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.0.join(","))
    }
}

/// The quotient set `O/∼_{B_r}` for one probe subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Probe indices generating the partition, ascending.
    pub source: Vec<usize>,
    /// Classes in canonical order.
    pub classes: Vec<ObjSet>,
}

impl Partition {
    pub fn class_of(&self, x: Obj) -> &ObjSet {
        self.classes.iter().find(|c| c.contains(x)).expect("partition covers the universe")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationResult {
    pub lower: ObjSet,
    pub upper: ObjSet,
    pub boundary: ObjSet,
}

/// A feature system together with its precomputed family `N_r(B)`.
#[derive(Clone, Debug)]
pub struct ApproximationSpace {
    system: FeatureSystem,
    family: Vec<Partition>,
    /// Full-`B` description class id of every object.
    desc_ids: Vec<usize>,
    descriptions: Vec<ObjectDescription>,
}

impl ApproximationSpace {
    pub fn new(system: FeatureSystem) -> Self {
        let family = combinations(system.probes.len(), system.r)
            .into_iter()
            .map(|subset| build_partition(&system, subset))
            .collect();
        let all: Vec<usize> = (0..system.probes.len()).collect();
        let mut descriptions: Vec<ObjectDescription> = Vec::new();
        let mut desc_ids = Vec::with_capacity(system.universe.len());
        for x in system.universe.objects() {
            let d = describe_raw(&system, x, &all);
            let id = match descriptions.iter().position(|e| *e == d) {
                Some(i) => i,
                None => {
                    descriptions.push(d);
                    descriptions.len() - 1
                }
            };
            desc_ids.push(id);
        }
        ApproximationSpace { system, family, desc_ids, descriptions }
    }

    pub fn system(&self) -> &FeatureSystem {
        &self.system
    }

    pub fn universe(&self) -> &Universe {
        &self.system.universe
    }

    /// `Φ(x)` over the given probe indices.
    pub fn describe(&self, x: Obj, probes: &[usize]) -> Result<ObjectDescription> {
        if !self.universe().contains(x) {
            return Err(NearnessError::UnknownObject(format!("#{}", x.0)));
        }
        if let Some(&bad) = probes.iter().find(|&&p| p >= self.system.probes.len()) {
            return Err(NearnessError::UnknownProbe(format!("#{bad}")));
        }
        Ok(describe_raw(&self.system, x, probes))
    }

    /// Description over the full probe set `B`.
    pub fn full_description(&self, x: Obj) -> &ObjectDescription {
        &self.descriptions[self.desc_ids[x.index()]]
    }

    /// Dense id shared by exactly the objects with equal full descriptions.
    pub fn description_id(&self, x: Obj) -> usize {
        self.desc_ids[x.index()]
    }

    pub fn description_by_id(&self, id: usize) -> &ObjectDescription {
        &self.descriptions[id]
    }

    /// `[x]_{B_r}`; `probes` must hold exactly `r` distinct probes.
    pub fn equivalence_class(&self, x: Obj, probes: &[usize]) -> Result<ObjSet> {
        if probes.len() != self.system.r {
            return Err(NearnessError::Invalid(format!(
                "equivalence classes are taken over exactly r = {} probes, got {}",
                self.system.r,
                probes.len()
            )));
        }
        let d = self.describe(x, probes)?;
        Ok(self
            .universe()
            .objects()
            .filter(|&y| describe_raw(&self.system, y, probes) == d)
            .collect())
    }

    /// `ξ_{O,B_r}` for an arbitrary nonempty probe subset.
    pub fn partition(&self, probes: &[usize]) -> Result<Partition> {
        if probes.is_empty() {
            return Err(NearnessError::Invalid("partition requires a nonempty probe subset".into()));
        }
        if let Some(&bad) = probes.iter().find(|&&p| p >= self.system.probes.len()) {
            return Err(NearnessError::UnknownProbe(format!("#{bad}")));
        }
        let mut source = probes.to_vec();
        source.sort_unstable();
        source.dedup();
        Ok(build_partition(&self.system, source))
    }

    /// `N_r(B)`: one partition per size-`r` probe subset, in lexicographic
    /// subset order.
    pub fn partitions_family(&self) -> &[Partition] {
        &self.family
    }

    fn classes(&self) -> impl Iterator<Item = &ObjSet> {
        self.family.iter().flat_map(|p| p.classes.iter())
    }

    pub fn lower_approx(&self, target: &ObjSet) -> ObjSet {
        let mut out = ObjSet::new();
        for class in self.classes().filter(|c| c.is_subset(target)) {
            out = out.union(class);
        }
        out
    }

    pub fn upper_approx(&self, target: &ObjSet) -> ObjSet {
        let mut out = ObjSet::new();
        for class in self.classes().filter(|c| c.intersects(target)) {
            out = out.union(class);
        }
        out
    }

    pub fn boundary(&self, target: &ObjSet) -> ObjSet {
        self.upper_approx(target).difference(&self.lower_approx(target))
    }

    pub fn approximate(&self, target: &ObjSet) -> ApproximationResult {
        let lower = self.lower_approx(target);
        let upper = self.upper_approx(target);
        let boundary = upper.difference(&lower);
        ApproximationResult { lower, upper, boundary }
    }
}

/// Jaccard overlap `|X ∩ Y| / |X ∪ Y|`, with `ν(∅, ∅) = 1`.
pub fn overlap(x: &ObjSet, y: &ObjSet) -> Ratio<usize> {
    let union = x.union(y).len();
    if union == 0 {
        return Ratio::from_integer(1);
    }
    Ratio::new(x.intersection(y).len(), union)
}

fn describe_raw(system: &FeatureSystem, x: Obj, probes: &[usize]) -> ObjectDescription {
    ObjectDescription(probes.iter().map(|&p| system.probes[p].values[x.index()].clone()).collect())
}

fn build_partition(system: &FeatureSystem, source: Vec<usize>) -> Partition {
    let mut keys: Vec<ObjectDescription> = Vec::new();
    let mut classes: Vec<ObjSet> = Vec::new();
    for x in system.universe.objects() {
        let d = describe_raw(system, x, &source);
        match keys.iter().position(|k| *k == d) {
            Some(i) => {
                classes[i].insert(x);
            }
            None => {
                keys.push(d);
                classes.push(ObjSet::singleton(x));
            }
        }
    }
    classes.sort();
    Partition { source, classes }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}
