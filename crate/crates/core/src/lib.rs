//! Finite distributive bisemilattices and their expansions.
//!
//! The crate works with algebras given as operation tables and provides:
//!
//! * equational checks for the bisemilattice varieties (distributive,
//!   bounded, De Morgan, involutive) and Płonka sums ([`laws`], [`plonka`]);
//! * filters, ideals and prime separation ([`filters`]);
//! * the set representation by families `{↑x}` and `{↓x}` linked by a
//!   bijection ([`balbes`]);
//! * the finite 2space / 2space★ duality for objects and morphisms ([`duality`]);
//! * the weak and strong Kleene three-valued logics ([`kleene`]);
//! * corpus enumeration up to isomorphism ([`corpus`]) and the `.balg`
//!   file format, reports and the command line ([`balg`], [`report`], [`cli`]).

pub mod algebra;
pub mod balbes;
pub mod balg;
pub mod builtin;
pub mod cli;
pub mod corpus;
pub mod dot;
pub mod duality;
pub mod filters;
pub mod hom;
pub mod kleene;
pub mod laws;
pub mod order;
pub mod plonka;
pub mod report;
pub mod subset;

pub use algebra::{AlgebraTable, BinOp, Signature, TableError};
pub use builtin::{builtin, BuiltinName};
pub use hom::{enumerate_homomorphisms, find_isomorphism, Homomorphism};
pub use laws::{classify_variety, VarietyTag, Verdict};
pub use subset::Subset;
