//! The constraint-coupled prolongation operator δ^λ: Sym^k(𝔤) → Sym^{k+1}(𝔤).
//!
//! On a generator `v` the operator is the symmetric bilinear form
//!
//! ```text
//! δ^λ(v)(w₁, w₂) = ½(⟨λ, [w₁, [w₂, v]]⟩ + ⟨λ, [w₂, [w₁, v]]⟩)
//! ```
//!
//! whose Sym² coordinates are recovered by inverting the evaluation Gram
//! system on basis pairs. Higher degrees follow a Leibniz rule applied to
//! monomials written with their factors in ascending basis order; the sign
//! convention is always an explicit [`LeibnizConvention`].

mod oracle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::WorkbenchError;
use crate::exactlinalg::{ExactMatrix, GaussianRational, Vector};
use crate::liealg::{DualFunctional, LieAlgebra};
use crate::symtensor::{evaluate_unchecked, monomial_basis, sym_product, MultisetIndex, SymTensor};

pub use oracle::{defining_formula, oracle_eval};

/// Sign rule for extending δ from generators to products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeibnizConvention {
    /// δ(s₁⊙s₂) = δ(s₁)⊙s₂ + (−1)^{deg s₁} s₁⊙δ(s₂)
    Graded,
    /// δ(s₁⊙s₂) = δ(s₁)⊙s₂ + s₁⊙δ(s₂)
    Ungraded,
}

impl LeibnizConvention {
    pub const ALL: [LeibnizConvention; 2] = [LeibnizConvention::Graded, LeibnizConvention::Ungraded];

    /// Sign in front of the term where δ hits the factor at `position`
    /// (0-based), i.e. after `position` factors have been passed.
    pub fn sign_at(self, position: usize) -> GaussianRational {
        match self {
            LeibnizConvention::Graded => GaussianRational::sign(position % 2 == 1),
            LeibnizConvention::Ungraded => GaussianRational::one(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LeibnizConvention::Graded => "graded",
            LeibnizConvention::Ungraded => "ungraded",
        }
    }
}

impl fmt::Display for LeibnizConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LeibnizConvention {
    type Err = WorkbenchError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graded" => Ok(Self::Graded),
            "ungraded" => Ok(Self::Ungraded),
            other => Err(WorkbenchError::spec(
                "convention",
                format!("expected `graded` or `ungraded`, got `{other}`"),
            )),
        }
    }
}

fn check_lambda(alg: &LieAlgebra, lambda: &DualFunctional) -> Result<(), WorkbenchError> {
    if lambda.dim() != alg.dim() {
        return Err(WorkbenchError::DimensionMismatch {
            expected: alg.dim(),
            found: lambda.dim(),
        });
    }
    Ok(())
}

/// Gram matrix of the Sym² monomial basis against basis pairs `(i ≤ j)`:
/// entry `[(i,j)][(a,b)]` is the evaluation of `e_a ⊙ e_b` on `(e_i, e_j)`.
fn sym2_gram(alg: &LieAlgebra) -> (Vec<MultisetIndex>, ExactMatrix) {
    let n = alg.dim();
    let basis = monomial_basis(n, 2);
    let k = alg.killing_form();
    let half = GaussianRational::from_ratio(1, 2);
    let mut g = ExactMatrix::zeros(basis.len(), basis.len());
    for (r, pair) in basis.iter().enumerate() {
        let (i, j) = (pair.factors()[0], pair.factors()[1]);
        for (c, mono) in basis.iter().enumerate() {
            let (a, b) = (mono.factors()[0], mono.factors()[1]);
            let x = &half * &(k.get(a, i) * k.get(b, j) + k.get(b, i) * k.get(a, j));
            g.set(r, c, x);
        }
    }
    (basis, g)
}

/// Gram-inverts a table of symmetric bilinear values on basis pairs into
/// Sym² coordinates.
fn solve_sym2(
    alg: &LieAlgebra,
    basis: &[MultisetIndex],
    gram: &ExactMatrix,
    values: Vec<GaussianRational>,
) -> Result<SymTensor, WorkbenchError> {
    if values.iter().all(GaussianRational::is_zero) {
        return Ok(SymTensor::zero(2));
    }
    let coords = gram.solve_unique(&values).map_err(|_| {
        WorkbenchError::UnsupportedAlgebra(format!(
            "Killing form of `{}` is degenerate; the evaluation Gram system is not invertible",
            alg.name()
        ))
    })?;
    Ok(SymTensor::from_coords(basis, &coords, 2))
}

/// δ^λ(v) as an element of Sym²(𝔤).
pub fn generator_action(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    v: &[GaussianRational],
) -> Result<SymTensor, WorkbenchError> {
    check_lambda(alg, lambda)?;
    if v.len() != alg.dim() {
        return Err(WorkbenchError::DimensionMismatch {
            expected: alg.dim(),
            found: v.len(),
        });
    }
    let (basis, gram) = sym2_gram(alg);
    let values = basis
        .iter()
        .map(|pair| {
            let (i, j) = (pair.factors()[0], pair.factors()[1]);
            bilinear_value(alg, lambda, v, &alg.basis_vector(i), &alg.basis_vector(j))
        })
        .collect();
    solve_sym2(alg, &basis, &gram, values)
}

fn bilinear_value(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    v: &[GaussianRational],
    w1: &[GaussianRational],
    w2: &[GaussianRational],
) -> GaussianRational {
    let a = alg.bracket_unchecked(w1, &alg.bracket_unchecked(w2, v));
    let b = alg.bracket_unchecked(w2, &alg.bracket_unchecked(w1, v));
    &(lambda.pair(&a) + lambda.pair(&b)) * &GaussianRational::from_ratio(1, 2)
}

/// δ^λ for a fixed algebra, λ and convention, with the generator images
/// computed once.
#[derive(Debug, Clone)]
pub struct Prolongation<'a> {
    alg: &'a LieAlgebra,
    lambda: DualFunctional,
    convention: LeibnizConvention,
    generators: Vec<SymTensor>,
}

impl<'a> Prolongation<'a> {
    pub fn new(
        alg: &'a LieAlgebra,
        lambda: &DualFunctional,
        convention: LeibnizConvention,
    ) -> Result<Self, WorkbenchError> {
        check_lambda(alg, lambda)?;
        let n = alg.dim();
        let (basis, gram) = sym2_gram(alg);
        let basis_vectors: Vec<Vector> = (0..n).map(|i| alg.basis_vector(i)).collect();
        let generators = (0..n)
            .map(|v| {
                let values = basis
                    .iter()
                    .map(|pair| {
                        let (i, j) = (pair.factors()[0], pair.factors()[1]);
                        bilinear_value(alg, lambda, &basis_vectors[v], &basis_vectors[i], &basis_vectors[j])
                    })
                    .collect();
                solve_sym2(alg, &basis, &gram, values)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            alg,
            lambda: lambda.clone(),
            convention,
            generators,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.alg
    }

    pub fn lambda(&self) -> &DualFunctional {
        &self.lambda
    }

    pub fn convention(&self) -> LeibnizConvention {
        self.convention
    }

    /// δ^λ(e_a).
    pub fn generator(&self, a: usize) -> &SymTensor {
        &self.generators[a]
    }

    /// δ^λ of a monomial `e_{a_1} ⊙ … ⊙ e_{a_k}` (factors ascending):
    /// `Σ_j sign_j · δ(e_{a_j}) ⊙ (monomial without a_j)`.
    pub fn apply_monomial(&self, m: &MultisetIndex) -> SymTensor {
        let mut out = SymTensor::zero(m.degree() + 1);
        for (pos, &a) in m.factors().iter().enumerate() {
            let sign = self.convention.sign_at(pos);
            let rest = SymTensor::monomial(m.without_position(pos));
            let term = sym_product(&self.generators[a], &rest).scale(&sign);
            out = out.add(&term);
        }
        out
    }

    pub fn apply(&self, s: &SymTensor) -> SymTensor {
        let mut out = SymTensor::zero(s.degree() + 1);
        for (m, c) in s.terms() {
            out = out.add(&self.apply_monomial(m).scale(c));
        }
        out
    }

    /// Matrix of δ^λ: Sym^k → Sym^{k+1} in the canonical monomial bases.
    pub fn matrix(&self, k: usize) -> ExactMatrix {
        let n = self.alg.dim();
        let cols = monomial_basis(n, k);
        let rows = monomial_basis(n, k + 1);
        let columns: Vec<Vector> = cols.iter().map(|m| self.apply_monomial(m).coords_in(&rows)).collect();
        ExactMatrix::from_columns(rows.len(), &columns).expect("column lengths agree")
    }
}

/// Applies δ^λ to a tensor.
pub fn apply_operator(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    s: &SymTensor,
    convention: LeibnizConvention,
) -> Result<SymTensor, WorkbenchError> {
    Ok(Prolongation::new(alg, lambda, convention)?.apply(s))
}

/// δ^λ: Sym^k → Sym^{k+1} as an exact matrix, with its bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub algebra: String,
    pub lambda: DualFunctional,
    pub degree_from: usize,
    pub convention: LeibnizConvention,
    pub col_basis: Vec<MultisetIndex>,
    pub row_basis: Vec<MultisetIndex>,
    pub matrix: ExactMatrix,
}

#[derive(Serialize)]
struct OperatorMatrixJson<'a> {
    algebra: &'a str,
    lambda: &'a [GaussianRational],
    degree_from: usize,
    convention: LeibnizConvention,
    shape: [usize; 2],
    rows: &'a [MultisetIndex],
    cols: &'a [MultisetIndex],
    matrix: Vec<Vec<String>>,
}

impl Serialize for OperatorMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        OperatorMatrixJson {
            algebra: &self.algebra,
            lambda: &self.lambda.coords,
            degree_from: self.degree_from,
            convention: self.convention,
            shape: [self.matrix.rows(), self.matrix.cols()],
            rows: &self.row_basis,
            cols: &self.col_basis,
            matrix: self.matrix.to_string_rows(),
        }
        .serialize(serializer)
    }
}

fn check_degree(k: usize) -> Result<(), WorkbenchError> {
    if k == 0 {
        return Err(WorkbenchError::InvalidOperand("degree must be at least 1".into()));
    }
    Ok(())
}

pub fn operator_matrix(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<OperatorMatrix, WorkbenchError> {
    check_degree(k)?;
    let op = Prolongation::new(alg, lambda, convention)?;
    Ok(OperatorMatrix {
        algebra: alg.name().to_string(),
        lambda: lambda.clone(),
        degree_from: k,
        convention,
        col_basis: monomial_basis(alg.dim(), k),
        row_basis: monomial_basis(alg.dim(), k + 1),
        matrix: op.matrix(k),
    })
}

/// One nonzero entry of (δ^λ)² between monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectEntry {
    pub row: usize,
    pub col: usize,
    pub row_monomial: MultisetIndex,
    pub col_monomial: MultisetIndex,
    pub value: GaussianRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyDefect {
    pub is_zero: bool,
    pub nonzero_entries: Vec<DefectEntry>,
}

/// `matrix(k+1) · matrix(k)` and its nonzero entries.
pub fn nilpotency_defect(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<NilpotencyDefect, WorkbenchError> {
    check_degree(k)?;
    let op = Prolongation::new(alg, lambda, convention)?;
    Ok(defect_of(&op, k))
}

pub(crate) fn defect_of(op: &Prolongation<'_>, k: usize) -> NilpotencyDefect {
    let n = op.algebra().dim();
    let square = op.matrix(k + 1).mul(&op.matrix(k)).expect("shapes chain");
    let rows = monomial_basis(n, k + 2);
    let cols = monomial_basis(n, k);
    let nonzero_entries: Vec<DefectEntry> = square
        .nonzero_entries()
        .into_iter()
        .map(|(row, col, value)| DefectEntry {
            row,
            col,
            row_monomial: rows[row].clone(),
            col_monomial: cols[col].clone(),
            value,
        })
        .collect();
    NilpotencyDefect {
        is_zero: nonzero_entries.is_empty(),
        nonzero_entries,
    }
}

/// Canonical kernel basis of δ^λ on Sym^k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelBasis {
    pub degree: usize,
    pub basis: Vec<SymTensor>,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinate vectors against the given monomial list.
    pub fn coords_in(&self, monomials: &[MultisetIndex]) -> Vec<Vector> {
        self.basis.iter().map(|t| t.coords_in(monomials)).collect()
    }
}

pub(crate) fn kernel_from_matrix(m: &ExactMatrix, cols: &[MultisetIndex], k: usize) -> KernelBasis {
    KernelBasis {
        degree: k,
        basis: m
            .nullspace()
            .iter()
            .map(|v| SymTensor::from_coords(cols, v, k))
            .collect(),
    }
}

/// Canonical nullspace of the operator matrix. Every basis element is
/// re-checked against the brute-force oracle on all basis (k+1)-multisets;
/// a disagreement is reported as an error since it means the two
/// evaluation paths diverge.
pub fn spencer_kernel(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<KernelBasis, WorkbenchError> {
    check_degree(k)?;
    let op = Prolongation::new(alg, lambda, convention)?;
    let cols = monomial_basis(alg.dim(), k);
    let kernel = kernel_from_matrix(&op.matrix(k), &cols, k);
    let tuples = monomial_basis(alg.dim(), k + 1);
    for b in &kernel.basis {
        for t in &tuples {
            let tuple: Vec<Vector> = t.factors().iter().map(|&i| alg.basis_vector(i)).collect();
            let v = oracle_eval(alg, lambda, b, &tuple, convention)?;
            if !v.is_zero() {
                return Err(WorkbenchError::InvalidOperand(format!(
                    "kernel element {b:?} evaluates to {v} on {t:?} under the oracle"
                )));
            }
        }
    }
    Ok(kernel)
}

/// True iff operator_matrix(−λ) + operator_matrix(λ) = 0 exactly.
pub fn mirror_antisymmetry_check(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<bool, WorkbenchError> {
    let plus = operator_matrix(alg, lambda, k, convention)?;
    let minus = operator_matrix(alg, &lambda.negate(), k, convention)?;
    Ok(plus.matrix.add(&minus.matrix)?.is_zero())
}

/// True iff the kernels at λ and −λ span the same subspace.
pub fn kernel_mirror_stability(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    k: usize,
    convention: LeibnizConvention,
) -> Result<bool, WorkbenchError> {
    check_degree(k)?;
    let cols = monomial_basis(alg.dim(), k);
    let plus = Prolongation::new(alg, lambda, convention)?;
    let minus = Prolongation::new(alg, &lambda.negate(), convention)?;
    let kp = kernel_from_matrix(&plus.matrix(k), &cols, k);
    let km = kernel_from_matrix(&minus.matrix(k), &cols, k);
    Ok(crate::exactlinalg::same_span(
        cols.len(),
        &kp.coords_in(&cols),
        &km.coords_in(&cols),
    ))
}

/// Evaluates an element of Sym^{k+1} produced by the matrix path on a tuple;
/// the matrix-side counterpart of [`oracle_eval`].
pub fn evaluate_image(
    op: &Prolongation<'_>,
    s: &SymTensor,
    tuple: &[Vector],
) -> Result<GaussianRational, WorkbenchError> {
    if tuple.len() != s.degree() + 1 {
        return Err(WorkbenchError::ArityMismatch {
            expected: s.degree() + 1,
            found: tuple.len(),
        });
    }
    Ok(evaluate_unchecked(op.algebra(), &op.apply(s), tuple))
}
