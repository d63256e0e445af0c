//! The JSON structure document: objects, probe tables, operation matrices,
//! named subsets and maps, plus optional expected values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{NearnessError, Result};
use crate::set::{Obj, ObjSet, Universe};
use crate::space::{ApproximationSpace, FeatureSystem, Probe};
use crate::table::{OpTable, StructureCandidate};

pub const EXAMPLE_JSON: &str = include_str!("../data/example3.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub objects: Vec<String>,
    pub features: BTreeMap<String, BTreeMap<String, String>>,
    pub r: usize,
    pub operations: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub subsets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub meta: serde_json::Value,
}

/// Reference values, typically transcribed from a publication; commands
/// compare against them and report mismatches as deviations.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default)]
    pub cosets: Vec<ExpectedCoset>,
    #[serde(default)]
    pub descriptions: Vec<ExpectedDescription>,
    #[serde(default)]
    pub tables: Vec<ExpectedTable>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedCoset {
    pub carrier: String,
    pub sub: String,
    pub representative: String,
    pub members: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `Q(x+S)` as a list of description tuples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedDescription {
    pub carrier: String,
    pub sub: String,
    pub representative: String,
    pub tuples: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    /// The ambient operation restricted to `carrier` (or `sub` if given).
    Restriction,
    /// `⊕`/`⊙` over representatives of `carrier` by `sub`.
    Quotient,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedTable {
    pub name: String,
    pub kind: TableKind,
    pub op: String,
    pub carrier: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<String>,
    /// Object ids, row-major; quotient entries name representatives.
    pub rows: Vec<Vec<String>>,
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct StructureDocument {
    pub raw: RawDocument,
    pub space: ApproximationSpace,
    pub add: OpTable,
    pub mul: Option<OpTable>,
    pub subsets: BTreeMap<String, ObjSet>,
}

fn at(path: impl Into<String>, message: impl Into<String>) -> NearnessError {
    NearnessError::at(path, message)
}

pub fn parse_document(text: &str) -> Result<StructureDocument> {
    let raw: RawDocument = serde_json::from_str(text)?;
    StructureDocument::from_raw(raw)
}

pub fn example_document() -> StructureDocument {
    parse_document(EXAMPLE_JSON).expect("bundled example is valid")
}

impl StructureDocument {
    pub fn from_raw(raw: RawDocument) -> Result<Self> {
        let universe = Universe::new(raw.objects.iter().cloned()).map_err(|e| at("objects", e.to_string()))?;
        let n = universe.len();
        let lookup = |path: String, id: &str| universe.lookup(id).map_err(|_| at(path, format!("unknown object id `{id}`")));

        if raw.features.is_empty() {
            return Err(at("features", "at least one probe function is required"));
        }
        let mut probes = Vec::new();
        for (name, table) in &raw.features {
            let path = format!("features.{name}");
            for id in table.keys() {
                lookup(format!("{path}.{id}"), id)?;
            }
            let values = universe
                .objects()
                .map(|x| {
                    table
                        .get(universe.name(x))
                        .cloned()
                        .ok_or_else(|| at(path.clone(), format!("no value for object `{}`", universe.name(x))))
                })
                .collect::<Result<Vec<_>>>()?;
            probes.push(Probe { name: name.clone(), values });
        }
        let system = FeatureSystem::new(universe.clone(), probes, raw.r).map_err(|e| at("r", e.to_string()))?;

        let mut tables = BTreeMap::new();
        for (name, rows) in &raw.operations {
            let path = format!("operations.{name}");
            if name != "add" && name != "mul" {
                return Err(at(path, "operation names must be `add` or `mul`"));
            }
            if rows.len() != n {
                return Err(at(path, format!("expected {n} rows, found {}", rows.len())));
            }
            let mut cells = Vec::with_capacity(n * n);
            for (i, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(at(format!("{path}[{i}]"), format!("expected {n} entries, found {}", row.len())));
                }
                for (j, id) in row.iter().enumerate() {
                    cells.push(lookup(format!("{path}[{i}][{j}]"), id)?);
                }
            }
            tables.insert(name.clone(), OpTable::new(n, cells)?);
        }
        let add = tables.remove("add").ok_or_else(|| at("operations", "an `add` matrix is required"))?;
        let mul = tables.remove("mul");

        let mut subsets = BTreeMap::new();
        for (name, ids) in &raw.subsets {
            let mut set = ObjSet::new();
            for (i, id) in ids.iter().enumerate() {
                if !set.insert(lookup(format!("subsets.{name}[{i}]"), id)?) {
                    return Err(at(format!("subsets.{name}[{i}]"), format!("duplicate entry `{id}`")));
                }
            }
            subsets.insert(name.clone(), set);
        }
        for (name, map) in &raw.maps {
            for id in map.keys() {
                lookup(format!("maps.{name}.{id}"), id)?;
            }
        }
        if let Some(expected) = &raw.expected {
            validate_expected(expected, &universe, &subsets)?;
        }

        Ok(StructureDocument { space: ApproximationSpace::new(system), add, mul, subsets, raw })
    }

    pub fn universe(&self) -> &Universe {
        self.space.universe()
    }

    pub fn subset(&self, name: &str) -> Result<&ObjSet> {
        self.subsets.get(name).ok_or_else(|| NearnessError::UnknownSubset(name.to_string()))
    }

    /// A named subset, or the whole universe when `name` is `None`.
    pub fn subset_or_all(&self, name: Option<&str>) -> Result<ObjSet> {
        match name {
            Some(n) => self.subset(n).cloned(),
            None => Ok(self.universe().all()),
        }
    }

    pub fn candidate(&self, carrier: ObjSet) -> Result<StructureCandidate<'_>> {
        StructureCandidate::new(&self.space, carrier, &self.add, self.mul.as_ref())
    }

    /// The named map, with images resolved against `target`.
    pub fn map_into(&self, name: &str, target: &StructureDocument) -> Result<BTreeMap<Obj, Obj>> {
        let raw = self.raw.maps.get(name).ok_or_else(|| NearnessError::UnknownMap(name.to_string()))?;
        raw.iter()
            .map(|(a, b)| {
                let x = self.universe().lookup(a)?;
                let y = target
                    .universe()
                    .lookup(b)
                    .map_err(|_| at(format!("maps.{name}.{a}"), format!("image `{b}` is not an object of the target")))?;
                Ok((x, y))
            })
            .collect()
    }

    pub fn expected(&self) -> Option<&Expected> {
        self.raw.expected.as_ref()
    }
}

fn validate_expected(expected: &Expected, universe: &Universe, subsets: &BTreeMap<String, ObjSet>) -> Result<()> {
    let subset = |path: String, name: &str| {
        if subsets.contains_key(name) {
            Ok(())
        } else {
            Err(at(path, format!("unknown subset `{name}`")))
        }
    };
    let object = |path: String, id: &str| universe.lookup(id).map(|_| ()).map_err(|_| at(path, format!("unknown object id `{id}`")));
    for (i, c) in expected.cosets.iter().enumerate() {
        let p = format!("expected.cosets[{i}]");
        subset(format!("{p}.carrier"), &c.carrier)?;
        subset(format!("{p}.sub"), &c.sub)?;
        object(format!("{p}.representative"), &c.representative)?;
        for (j, m) in c.members.iter().enumerate() {
            object(format!("{p}.members[{j}]"), m)?;
        }
    }
    for (i, d) in expected.descriptions.iter().enumerate() {
        let p = format!("expected.descriptions[{i}]");
        subset(format!("{p}.carrier"), &d.carrier)?;
        subset(format!("{p}.sub"), &d.sub)?;
        object(format!("{p}.representative"), &d.representative)?;
    }
    for (i, t) in expected.tables.iter().enumerate() {
        let p = format!("expected.tables[{i}]");
        subset(format!("{p}.carrier"), &t.carrier)?;
        if let Some(s) = &t.sub {
            subset(format!("{p}.sub"), s)?;
        }
        if t.op != "add" && t.op != "mul" {
            return Err(at(format!("{p}.op"), "must be `add` or `mul`"));
        }
        for (r, row) in t.rows.iter().enumerate() {
            for (c, id) in row.iter().enumerate() {
                object(format!("{p}.rows[{r}][{c}]"), id)?;
            }
        }
    }
    Ok(())
}
