//! Nearness approximation spaces and the algebraic structures that close in
//! their upper approximations: near groups, nearness rings, ideals, weak-coset
//! quotients and nearness homomorphisms.

pub mod cli;
pub mod command;
pub mod descriptive;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod morphisms;
pub mod quotient;
pub mod render;
pub mod report;
pub mod search;
pub mod set;
pub mod space;
pub mod structures;
pub mod table;

pub use error::{NearnessError, Result};
pub use report::{AxiomReport, Verdict};
pub use set::{Obj, ObjSet, Universe};
pub use space::{ApproximationSpace, FeatureSystem, Probe};
pub use table::{Op, OpTable, StructureCandidate};
