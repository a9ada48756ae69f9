//! Covering-based CNF encodings for independent-set style constraints.

pub mod amo;
pub mod blocks;
pub mod bva;
pub mod check;
pub mod cnf;
pub mod cover;
pub mod dimacs;
pub mod error;
pub mod graph;
pub mod interval;
pub mod isp;
pub mod problems;
pub mod solver;
pub mod varmap;

pub use cnf::{Assignment, Clause, Formula, FormulaBuilder, Lit, Var};
pub use error::{Error, Result};
pub use graph::{Graph, IntervalVariant};
pub use solver::{solve, SatResult};
pub use varmap::{Scope, VarMap, VarName};
