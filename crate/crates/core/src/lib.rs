//! Exact computation of the binary quadratic identities induced on products
//! `a ▷_ω b := a · D_ω(b)` by commutative algebras carrying several
//! derivations.
//!
//! The pipeline is:
//!
//! 1. [`diffalg`] models the free commuting and noncommuting
//!    multi-differential commutative algebras on a set of variables.
//! 2. [`exprspace`] enumerates the arity-3 component of the free binary
//!    operad on the induced products (the comb basis) and evaluates each
//!    element in the free algebra on `{x, y, z}`.
//! 3. [`linalg`] takes the exact nullspace of the resulting evaluation
//!    matrix.
//! 4. [`catalog`] compares that kernel with the S3-spans of named identity
//!    families (Novikov, pre-Lie, multi-Novikov, ...).

pub mod catalog;
pub mod diffalg;
pub mod exprspace;
pub mod linalg;
pub mod par;
pub mod rational;
pub mod selftest;

pub use catalog::{
    compute_kernel, gelfand_check, relators, verify, FamilyId, FamilyVerdicts, KernelReport,
};
pub use diffalg::{DerWord, DiffPoly, DiffVar, ModelConfig, Monomial};
pub use exprspace::{ExprBasisElem, ExprVec, Mode, OpSymbol, Perm, Shape};
pub use linalg::{RatMatrix, Subspace};
pub use par::Execution;
pub use rational::Rational;
