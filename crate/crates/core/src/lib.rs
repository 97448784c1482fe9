//! Exact-arithmetic workbench for constraint-coupled Spencer prolongation
//! operators on finite-dimensional Lie algebras.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactlinalg`]: Gaussian-rational scalars, RREF and nullspaces.
//! - [`liealg`]: Lie algebras from structure constants, Killing form, roots.
//! - [`symtensor`]: symmetric powers realised as symmetric forms through the
//!   Killing pairing.
//! - [`spencer`]: the prolongation operator, its matrices and kernels, and a
//!   brute-force evaluation oracle.
//! - [`cartan`]: single-root constraint systems on the Cartan subalgebra.
//! - [`formcomplex`]: polynomial differential forms and the coupled
//!   differential with its Dolbeault components.
//! - [`workbench`]: the claim registry, dimension tables and reports.

pub mod cartan;
pub mod error;
pub mod exactlinalg;
pub mod formcomplex;
pub mod liealg;
pub mod spencer;
pub mod symtensor;
pub mod workbench;

pub use error::WorkbenchError;
pub use exactlinalg::{gq, ExactMatrix, GaussianRational, Vector};
pub use liealg::{DualFunctional, LieAlgebra, Root};
pub use spencer::{KernelBasis, LeibnizConvention, OperatorMatrix};
pub use symtensor::{MultisetIndex, SymTensor};
