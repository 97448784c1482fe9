//! Exact scalar arithmetic over ℚ(i) and dense exact linear algebra.

mod matrix;
mod scalar;

pub use matrix::{nullspace, rref, same_span, span_contains, span_rank, ExactMatrix, Rref, Vector};
pub use scalar::{gq, scalar_arith, GaussianRational, ScalarOp};
