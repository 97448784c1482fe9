//! Single-root constraint systems on the Cartan subalgebra.
//!
//! For `s ∈ Sym^k(𝔥)` only test tuples `(H_{J_1}, …, H_{J_k}, E_α)` with
//! exactly one root vector can give a nonzero value of δ^λ(s) under the
//! single-root linearisation. Working out the Leibniz expansion on such a
//! tuple (root vectors are Killing-orthogonal to 𝔥, and
//! `δ(v)(H, E_α) = −½ α(v) α(H) ⟨λ, E_α⟩` for `v ∈ 𝔥`) gives, for a
//! monomial `a_1 ⊙ … ⊙ a_k`,
//!
//! ```text
//! −⟨λ, E_α⟩ / (k(k+1)) · Σ_i α(H_{J_i}) Σ_j σ_j α(a_j) · (a_1…â_j…a_k)(J without i)
//! ```
//!
//! with `σ_j` the Leibniz sign. That expression is [`single_root_coefficient`];
//! the tests pin it against the brute-force oracle.
//!
//! Two kernels are computed: `linearized` (nullspace of the single-root
//! rows) and `full` (δ^λ restricted to Cartan-supported columns). The full
//! kernel is always contained in the linearised one.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::WorkbenchError;
use crate::exactlinalg::{span_contains, ExactMatrix, GaussianRational, Vector};
use crate::liealg::{DualFunctional, LieAlgebra, Root};
use crate::spencer::{oracle_eval, LeibnizConvention, Prolongation};
use crate::symtensor::{evaluate_unchecked, monomial_basis, multisets_over, sym_dimension, MultisetIndex, SymTensor};
use crate::workbench::{ClaimResult, ClaimStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMode {
    Linearized,
    Full,
}

impl fmt::Display for KernelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelMode::Linearized => "linearized",
            KernelMode::Full => "full",
        })
    }
}

impl FromStr for KernelMode {
    type Err = WorkbenchError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linearized" => Ok(Self::Linearized),
            "full" => Ok(Self::Full),
            other => Err(WorkbenchError::spec(
                "mode",
                format!("expected `linearized` or `full`, got `{other}`"),
            )),
        }
    }
}

/// Row label of a constraint matrix: the root and the Cartan multiset J.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowLabel {
    pub root: usize,
    pub tuple: MultisetIndex,
}

/// M_{Φ,k}: one row per (root, Cartan k-multiset), one column per
/// Cartan monomial of degree k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintMatrix {
    pub algebra: String,
    pub degree: usize,
    pub lambda: DualFunctional,
    pub convention: LeibnizConvention,
    pub rows: Vec<RowLabel>,
    pub cols: Vec<MultisetIndex>,
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: ExactMatrix,
}

fn serialize_matrix<S: serde::Serializer>(m: &ExactMatrix, s: S) -> Result<S::Ok, S::Error> {
    m.to_string_rows().serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanKernelResult {
    pub mode: KernelMode,
    pub degree: usize,
    pub basis: Vec<SymTensor>,
    pub dimension: usize,
}

fn require_roots(alg: &LieAlgebra) -> Result<(), WorkbenchError> {
    if alg.cartan_indices().is_empty() {
        return Err(WorkbenchError::MissingRootData(alg.name().to_string()));
    }
    Ok(())
}

fn cartan_position(alg: &LieAlgebra, a: usize) -> Result<usize, WorkbenchError> {
    alg.cartan_indices()
        .iter()
        .position(|&c| c == a)
        .ok_or_else(|| WorkbenchError::NonCartanSupport(format!("basis index {a} ({})", alg.basis_labels()[a])))
}

/// Cartan monomials of degree k, as multisets over the algebra's basis.
pub fn cartan_monomials(alg: &LieAlgebra, k: usize) -> Vec<MultisetIndex> {
    let mut idx = alg.cartan_indices().to_vec();
    idx.sort_unstable();
    multisets_over(&idx, k)
}

/// Row entry for a Cartan monomial `s`, a Cartan multiset `J` and a root.
pub fn single_root_coefficient(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    s: &MultisetIndex,
    tuple: &MultisetIndex,
    root: &Root,
    convention: LeibnizConvention,
) -> Result<GaussianRational, WorkbenchError> {
    let k = s.degree();
    if tuple.degree() != k {
        return Err(WorkbenchError::ArityMismatch {
            expected: k,
            found: tuple.degree(),
        });
    }
    if k == 0 {
        return Ok(GaussianRational::zero());
    }
    let alpha_of =
        |a: usize| -> Result<GaussianRational, WorkbenchError> { Ok(root.values[cartan_position(alg, a)?].clone()) };
    let pairing = lambda.pair(&root.vector);
    if pairing.is_zero() {
        // Still validate support.
        for &a in s.factors().iter().chain(tuple.factors()) {
            cartan_position(alg, a)?;
        }
        return Ok(GaussianRational::zero());
    }

    let mut sum = GaussianRational::zero();
    for (i, &hj) in tuple.factors().iter().enumerate() {
        let alpha_h = alpha_of(hj)?;
        if alpha_h.is_zero() {
            continue;
        }
        let others: Vec<Vector> = tuple
            .without_position(i)
            .factors()
            .iter()
            .map(|&b| alg.basis_vector(b))
            .collect();
        let mut inner = GaussianRational::zero();
        for (j, &a) in s.factors().iter().enumerate() {
            let alpha_a = alpha_of(a)?;
            if alpha_a.is_zero() {
                continue;
            }
            let rest = SymTensor::monomial(s.without_position(j));
            let value = evaluate_unchecked(alg, &rest, &others);
            inner += convention.sign_at(j) * alpha_a * value;
        }
        sum += alpha_h * inner;
    }
    let scale = GaussianRational::from_ratio(-1, (k * (k + 1)) as i64);
    Ok(pairing * scale * sum)
}

/// Builds M_{Φ,k} from [`single_root_coefficient`].
pub fn constraint_matrix(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<ConstraintMatrix, WorkbenchError> {
    require_roots(alg)?;
    if lambda.dim() != alg.dim() {
        return Err(WorkbenchError::DimensionMismatch {
            expected: alg.dim(),
            found: lambda.dim(),
        });
    }
    let cols = cartan_monomials(alg, k);
    let tuples = cartan_monomials(alg, k);
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (r, root) in alg.roots().iter().enumerate() {
        for t in &tuples {
            rows.push(RowLabel {
                root: r,
                tuple: t.clone(),
            });
            for s in &cols {
                entries.push(single_root_coefficient(alg, lambda, s, t, root, convention)?);
            }
        }
    }
    let matrix = ExactMatrix::from_entries(rows.len(), cols.len(), entries)?;
    Ok(ConstraintMatrix {
        algebra: alg.name().to_string(),
        degree: k,
        lambda: lambda.clone(),
        convention,
        rows,
        cols,
        matrix,
    })
}

/// The same rows as [`constraint_matrix`], computed by evaluating δ^λ of each
/// Cartan monomial on `(H_J, E_α)` with the brute-force oracle.
pub fn constraint_matrix_by_oracle(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<ExactMatrix, WorkbenchError> {
    require_roots(alg)?;
    let cols = cartan_monomials(alg, k);
    let mut rows = Vec::new();
    for root in alg.roots() {
        for t in &cols {
            let mut tuple: Vec<Vector> = t.factors().iter().map(|&b| alg.basis_vector(b)).collect();
            tuple.push(root.vector.clone());
            let row = cols
                .iter()
                .map(|s| oracle_eval(alg, lambda, &SymTensor::monomial(s.clone()), &tuple, convention))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
    }
    ExactMatrix::from_rows(cols.len(), rows)
}

fn to_result(mode: KernelMode, k: usize, cols: &[MultisetIndex], m: &ExactMatrix) -> CartanKernelResult {
    let basis: Vec<SymTensor> = m
        .nullspace()
        .iter()
        .map(|v| SymTensor::from_coords(cols, v, k))
        .collect();
    CartanKernelResult {
        mode,
        degree: k,
        dimension: basis.len(),
        basis,
    }
}

/// Matrix of δ^λ restricted to Cartan-supported columns.
pub fn restricted_operator(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<ExactMatrix, WorkbenchError> {
    let op = Prolongation::new(alg, lambda, convention)?;
    let all = monomial_basis(alg.dim(), k);
    let positions: Vec<usize> = cartan_monomials(alg, k)
        .iter()
        .map(|m| all.binary_search(m).expect("cartan monomial is a monomial"))
        .collect();
    Ok(op.matrix(k).select_columns(&positions))
}

pub fn cartan_kernel(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    mode: KernelMode,
    convention: LeibnizConvention,
) -> Result<CartanKernelResult, WorkbenchError> {
    if k == 0 {
        return Err(WorkbenchError::InvalidOperand("degree must be at least 1".into()));
    }
    let cols = cartan_monomials(alg, k);
    let m = match mode {
        KernelMode::Linearized => constraint_matrix(alg, lambda, k, convention)?.matrix,
        KernelMode::Full => {
            require_roots(alg)?;
            restricted_operator(alg, lambda, k, convention)?
        }
    };
    Ok(to_result(mode, k, &cols, &m))
}

/// `span(full kernel) ⊆ span(linearized kernel)`.
pub fn full_within_linearized(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<bool, WorkbenchError> {
    let cols = cartan_monomials(alg, k);
    let full = cartan_kernel(alg, lambda, k, KernelMode::Full, convention)?;
    let lin = cartan_kernel(alg, lambda, k, KernelMode::Linearized, convention)?;
    let coords = |r: &CartanKernelResult| -> Vec<Vector> { r.basis.iter().map(|t| t.coords_in(&cols)).collect() };
    Ok(span_contains(cols.len(), &coords(&lin), &coords(&full)))
}

/// `C(r+k−1, k) − |Φ|`, which may be negative.
pub fn dimension_bound(alg: &LieAlgebra, k: usize) -> i64 {
    sym_dimension(alg.cartan_indices().len(), k) as i64 - alg.roots().len() as i64
}

/// Compares the linearised Cartan kernel dimension with the upper bound
/// `C(r+k−1, k) − |Φ|`.
pub fn dimension_bound_check(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<ClaimResult, WorkbenchError> {
    let bound = dimension_bound(alg, k);
    let kernel = cartan_kernel(alg, lambda, k, KernelMode::Linearized, convention)?;
    let dim = kernel.dimension as i64;
    let holds = dim <= bound;
    let computed = serde_json::json!({
        "algebra": alg.name(),
        "degree": k,
        "lambda": lambda.coords,
        "kernel_dimension": dim,
        "bound": bound,
        "roots": alg.roots().len(),
    });
    let suffix = format!("{}-k{k}", alg.name());
    let mut result = ClaimResult::from_catalog(
        "A-dimension-bound",
        &suffix,
        serde_json::json!(format!("dim ≤ {bound}")),
        computed,
        ClaimStatus::from_bool(holds),
    );
    if !holds {
        result.witness = Some(serde_json::json!({
            "kernel_basis": kernel.basis,
            "reason": format!("linearized kernel has dimension {dim} > bound {bound}"),
        }));
    }
    Ok(result)
}
