use serde::Serialize;

use crate::cartan::{cartan_monomials, constraint_matrix, dimension_bound, restricted_operator};
use crate::error::WorkbenchError;
use crate::liealg::{DualFunctional, LieAlgebra};
use crate::spencer::LeibnizConvention;
use crate::symtensor::sym_dimension;

pub use crate::cartan::KernelMode as TableMode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub lambda: DualFunctional,
    pub degree: usize,
    /// dim Sym^k(𝔥).
    pub sym_dimension: usize,
    pub constraint_rank: usize,
    pub kernel_dimension: usize,
    pub bound: i64,
    pub bound_holds: bool,
}

/// One row per (λ, k): Cartan sym dimension, rank of the constraint system
/// (linearized rows, or δ^λ on Cartan columns in full mode), kernel
/// dimension and the bound `C(r+k−1,k) − |Φ|`.
pub fn dimension_table(
    alg: &LieAlgebra,
    degrees: std::ops::RangeInclusive<usize>,
    lambdas: &[DualFunctional],
    mode: TableMode,
    convention: LeibnizConvention,
) -> Result<Vec<TableRow>, WorkbenchError> {
    let r = alg.cartan_indices().len();
    let mut rows = Vec::new();
    for l in lambdas {
        for k in degrees.clone() {
            if k == 0 {
                return Err(WorkbenchError::InvalidOperand("degree must be at least 1".into()));
            }
            let m = match mode {
                TableMode::Linearized => constraint_matrix(alg, l, k, convention)?.matrix,
                TableMode::Full => restricted_operator(alg, l, k, convention)?,
            };
            let cols = cartan_monomials(alg, k).len();
            debug_assert_eq!(cols, sym_dimension(r, k));
            let rank = m.rank();
            let bound = dimension_bound(alg, k);
            let kernel = cols - rank;
            rows.push(TableRow {
                lambda: l.clone(),
                degree: k,
                sym_dimension: cols,
                constraint_rank: rank,
                kernel_dimension: kernel,
                bound,
                bound_holds: kernel as i64 <= bound,
            });
        }
    }
    Ok(rows)
}
