//! Ready-made systems: the eight-object example and small ordinary rings.

use crate::set::{Obj, Universe};
use crate::space::{ApproximationSpace, FeatureSystem, Probe};
use crate::table::OpTable;

pub const EXAMPLE_OBJECTS: [&str; 8] = ["o", "p", "r", "s", "t", "v", "w", "x"];

const PHI1: [&str; 8] = ["a4", "a2", "a1", "a2", "a1", "a3", "a4", "a3"];
const PHI2: [&str; 8] = ["b1", "b3", "b2", "b3", "b2", "b3", "b1", "b3"];

const ADD: [&str; 8] = [
    "o p r s t v w x",
    "p r s t v w x o",
    "r s t v w x o p",
    "s t v w x o p r",
    "t v w x o p r s",
    "v w x p p r s t",
    "w x o p r s t v",
    "x o p r s t v w",
];

const MUL: [&str; 8] = [
    "o o o o o o o o",
    "o p r s t v w x",
    "o r t w o r t w",
    "o s w p t o r v",
    "o t o t o t o t",
    "o v r x t p w s",
    "o w t r o w t r",
    "o x w v t s r p",
];

pub fn example_universe() -> Universe {
    Universe::new(EXAMPLE_OBJECTS).expect("distinct ids")
}

pub fn example_system() -> FeatureSystem {
    let probe = |name: &str, values: [&str; 8]| Probe {
        name: name.to_string(),
        values: values.iter().map(|v| v.to_string()).collect(),
    };
    FeatureSystem::new(example_universe(), vec![probe("phi1", PHI1), probe("phi2", PHI2)], 1).expect("valid system")
}

pub fn example_space() -> ApproximationSpace {
    ApproximationSpace::new(example_system())
}

fn parse_table(rows: &[&str; 8]) -> OpTable {
    let u = example_universe();
    let cells = rows
        .iter()
        .flat_map(|row| row.split_whitespace())
        .map(|id| u.lookup(id).expect("known id"))
        .collect();
    OpTable::new(8, cells).expect("8x8 table")
}

pub fn example_add() -> OpTable {
    parse_table(&ADD)
}

pub fn example_mul() -> OpTable {
    parse_table(&MUL)
}

/// An ordinary finite ring on objects `0..n`.
#[derive(Clone, Debug)]
pub struct OrdinaryRing {
    pub name: String,
    pub universe: Universe,
    pub add: OpTable,
    pub mul: OpTable,
}

impl OrdinaryRing {
    /// The ring with one probe whose values are given per object.
    pub fn space(&self, values: &[usize]) -> ApproximationSpace {
        let probe = Probe { name: "phi".into(), values: values.iter().map(|v| format!("v{v}")).collect() };
        ApproximationSpace::new(FeatureSystem::new(self.universe.clone(), vec![probe], 1).expect("valid system"))
    }
}

fn numbered(n: usize) -> Universe {
    Universe::new((0..n).map(|i| i.to_string())).expect("distinct ids")
}

/// `ℤ_n` with modular arithmetic.
pub fn zn(n: usize) -> OrdinaryRing {
    let add = OpTable::from_fn(n, |a, b| Obj(((a.index() + b.index()) % n) as u32)).expect("table");
    let mul = OpTable::from_fn(n, |a, b| Obj(((a.index() * b.index()) % n) as u32)).expect("table");
    OrdinaryRing { name: format!("Z{n}"), universe: numbered(n), add, mul }
}

/// `ℤ_2 × ℤ_2` with componentwise operations; object `i` is `(i & 1, i >> 1)`.
pub fn z2xz2() -> OrdinaryRing {
    let add = OpTable::from_fn(4, |a, b| Obj(a.0 ^ b.0)).expect("table");
    let mul = OpTable::from_fn(4, |a, b| Obj(a.0 & b.0)).expect("table");
    OrdinaryRing { name: "Z2xZ2".into(), universe: numbered(4), add, mul }
}
