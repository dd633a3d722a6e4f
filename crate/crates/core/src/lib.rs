//! Higher-dimensional congruences of finite algebras.
//!
//! The crate computes tolerances and congruences of labeled hypercubes
//! ("Mal'cev complexes"), the term-condition higher commutator and the
//! hypercommutator, and carries exact lazy models of two infinite algebras
//! that separate them.
//!
//! Layout:
//! - [`algebra`], [`partition`], [`congruence`]: finite algebras given by
//!   operation tables and their ordinary congruences.
//! - [`cube`]: labeled cubes, rectangular complexes and the coordinate
//!   operators on them.
//! - [`relation`], [`closure`]: cube relations and the fixpoint engine that
//!   generates higher-dimensional tolerances and congruences.
//! - [`sampler`]: random complexes built from the cubes of a relation.
//! - [`commutator`]: centrality and both commutators.
//! - [`counterexample`]: the infinite counterexample algebras, their explicit
//!   witnesses and the bounded polynomial search.

pub mod algebra;
pub mod closure;
pub mod commutator;
pub mod congruence;
pub mod corpus;
pub mod counterexample;
pub mod cube;
pub mod error;
pub mod partition;
pub mod relation;
pub mod sampler;

pub use algebra::{eval_term, subalgebra_generated, FiniteAlgebra, OperationTable, Term};
pub use error::{Error, Result};
pub use partition::Partition;
