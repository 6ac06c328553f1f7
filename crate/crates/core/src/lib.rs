//! Exact-arithmetic computations with finite Coxeter groups, Solomon descent
//! algebras, nilCoxeter and 0-Hecke algebras, and hyperplane face semigroups,
//! together with a field-comparison engine for radical filtrations, graded
//! Cartan matrices, and Ext dimensions over Q versus F_p.

pub mod coxeter;
pub mod error;
pub mod linalg;

pub use error::{Error, Result};
