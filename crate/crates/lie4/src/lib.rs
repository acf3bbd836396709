//! Exact identification of real solvable Lie algebras of dimension at most four, with
//! searches and certificates for product, complex and complex product structures.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod complex;
pub mod external;
pub mod forms;
pub mod io;
pub mod jordan;
pub mod linalg;
pub mod polysys;
pub mod par;
pub mod poly;
pub mod product;
pub mod report;
pub mod verify;
pub mod rational;

pub use algebra::{AlgebraError, CommutatorClass, LieAlgebra};
pub use linalg::{Matrix, Subspace, Vector};
pub use rational::Q;
