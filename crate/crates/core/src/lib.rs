//! Zero-divisor graphs of finite commutative semigroups with zero.
//!
//! * [`algebra`]: Cayley tables and their algebraic predicates.
//! * [`graph`]: zero-divisor graphs and the graph-theoretic notions around
//!   caps `C(a,b)`, end vertices and the (△) condition.
//! * [`families`]: parametric graph families and their multiplication tables.
//! * [`search`]: the realization engine deciding whether a graph is the
//!   zero-divisor graph of a semigroup on its own vertices plus zero.
//! * [`theorems`]: executable checks of the ideal and sub-semigroup claims.

pub mod algebra;
pub mod bits;
pub mod error;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod reproduce;
pub mod search;
pub mod theorems;

pub use algebra::CayleyTable;
pub use bits::BitSet;
pub use error::{Error, Result};
pub use graph::LabeledGraph;
