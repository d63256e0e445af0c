//! Total binary operation tables and the candidates submitted to checkers.

use std::fmt;

use crate::error::{NearnessError, Result};
use crate::set::{Obj, ObjSet};
use crate::space::ApproximationSpace;

/// Which of the two operations a check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Add,
    Mul,
}

impl Op {
    pub fn symbol(self) -> &'static str {
        match self {
            Op::Add => "+",
            Op::Mul => "·",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A total map `O × O → O`, row-major with the row as left operand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    size: usize,
    cells: Vec<Obj>,
}

impl OpTable {
    pub fn new(size: usize, cells: Vec<Obj>) -> Result<Self> {
        if cells.len() != size * size {
            return Err(NearnessError::Invalid(format!(
                "operation table needs {} cells, got {}",
                size * size,
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|c| c.index() >= size) {
            return Err(NearnessError::Invalid(format!("table entry #{} outside the universe", bad.0)));
        }
        Ok(OpTable { size, cells })
    }

    pub fn from_fn(size: usize, f: impl Fn(Obj, Obj) -> Obj) -> Result<Self> {
        let cells = (0..size as u32)
            .flat_map(|a| (0..size as u32).map(move |b| (a, b)))
            .map(|(a, b)| f(Obj(a), Obj(b)))
            .collect();
        Self::new(size, cells)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn apply(&self, a: Obj, b: Obj) -> Obj {
        self.cells[a.index() * self.size + b.index()]
    }

    pub fn row(&self, a: Obj) -> &[Obj] {
        &self.cells[a.index() * self.size..(a.index() + 1) * self.size]
    }

    pub fn cells(&self) -> &[Obj] {
        &self.cells
    }
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u32>> = (0..self.size as u32).map(|a| self.row(Obj(a)).iter().map(|o| o.0).collect()).collect();
        f.debug_struct("OpTable").field("rows", &rows).finish()
    }
}

/// The notion of "upper approximation" the axioms close in.
///
/// For element-level structures this is the rough upper approximation of the
/// approximation space; coset-level structures substitute the descriptive
/// upper approximation of the coset family, indexed by representative.
pub trait UpperApprox {
    fn upper(&self, set: &ObjSet) -> ObjSet;

    /// Display name of an element, used in messages and rendered reports.
    fn label(&self, x: Obj) -> String {
        format!("#{}", x.0)
    }
}

impl UpperApprox for ApproximationSpace {
    fn upper(&self, set: &ObjSet) -> ObjSet {
        self.upper_approx(set)
    }

    fn label(&self, x: Obj) -> String {
        self.universe().name(x).to_string()
    }
}

/// A carrier together with the ambient operation tables.
#[derive(Clone, Copy)]
pub struct Ambient<'a> {
    pub closure: &'a dyn UpperApprox,
    pub add: &'a OpTable,
    pub mul: Option<&'a OpTable>,
}

#[derive(Clone)]
pub struct StructureCandidate<'a> {
    pub ambient: Ambient<'a>,
    pub carrier: ObjSet,
}

impl<'a> StructureCandidate<'a> {
    pub fn new(
        closure: &'a dyn UpperApprox,
        carrier: ObjSet,
        add: &'a OpTable,
        mul: Option<&'a OpTable>,
    ) -> Result<Self> {
        if let Some(bad) = carrier.iter().find(|x| x.index() >= add.size()) {
            return Err(NearnessError::Invalid(format!("carrier element #{} outside the universe", bad.0)));
        }
        if let Some(m) = mul {
            if m.size() != add.size() {
                return Err(NearnessError::Invalid("operation tables disagree on universe size".into()));
            }
        }
        Ok(StructureCandidate { ambient: Ambient { closure, add, mul }, carrier })
    }

    /// Same ambient tables, different carrier.
    pub fn with_carrier(&self, carrier: ObjSet) -> StructureCandidate<'a> {
        StructureCandidate { ambient: self.ambient, carrier }
    }

    pub fn upper(&self) -> ObjSet {
        self.ambient.closure.upper(&self.carrier)
    }

    pub fn label(&self, x: Obj) -> String {
        self.ambient.closure.label(x)
    }

    pub fn upper_of(&self, set: &ObjSet) -> ObjSet {
        self.ambient.closure.upper(set)
    }

    pub fn table(&self, op: Op) -> Option<&'a OpTable> {
        match op {
            Op::Add => Some(self.ambient.add),
            Op::Mul => self.ambient.mul,
        }
    }

    pub fn add(&self, a: Obj, b: Obj) -> Obj {
        self.ambient.add.apply(a, b)
    }

    /// Panics when the candidate has no multiplication; checkers verify the
    /// table exists first.
    pub fn mul(&self, a: Obj, b: Obj) -> Obj {
        self.ambient.mul.expect("multiplication table present").apply(a, b)
    }

    pub fn require_mul(&self) -> Result<&'a OpTable> {
        self.ambient.mul.ok_or_else(|| NearnessError::Invalid("a multiplication table is required".into()))
    }
}
