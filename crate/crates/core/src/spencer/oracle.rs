//! Brute-force evaluation of δ^λ(s) on a tuple of vectors.
//!
//! Nothing here touches Sym² coordinates, the Gram system, monomial bases or
//! operator matrices. A monomial is expanded by literal recursion on the
//! Leibniz rule into products of factor forms, and each product is evaluated
//! by summing over every permutation of the argument slots.

use crate::error::WorkbenchError;
use crate::exactlinalg::{GaussianRational, Vector};
use crate::liealg::{DualFunctional, LieAlgebra};
use crate::symtensor::SymTensor;

use super::LeibnizConvention;

#[derive(Debug, Clone, Copy)]
enum Factor {
    /// κ(e_a, ·)
    Linear(usize),
    /// δ^λ(e_a)(·, ·) by the defining formula
    Quadratic(usize),
}

impl Factor {
    fn arity(self) -> usize {
        match self {
            Factor::Linear(_) => 1,
            Factor::Quadratic(_) => 2,
        }
    }
}

/// `½(⟨λ, [w₁, [w₂, v]]⟩ + ⟨λ, [w₂, [w₁, v]]⟩)`.
pub fn defining_formula(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    v: &[GaussianRational],
    w1: &[GaussianRational],
    w2: &[GaussianRational],
) -> Result<GaussianRational, WorkbenchError> {
    let inner2 = alg.bracket(w2, v)?;
    let outer1 = alg.bracket(w1, &inner2)?;
    let inner1 = alg.bracket(w1, v)?;
    let outer2 = alg.bracket(w2, &inner1)?;
    let sum = lambda.pair(&outer1) + lambda.pair(&outer2);
    Ok(sum * GaussianRational::from_ratio(1, 2))
}

/// δ(a_1 ⊙ … ⊙ a_k) = δ(a_1) ⊙ R + σ · a_1 ⊙ δ(R), R = a_2 ⊙ … ⊙ a_k,
/// with σ = (−1)^{deg a_1} = −1 for the graded rule and +1 otherwise.
fn leibniz_expand(factors: &[usize], convention: LeibnizConvention) -> Vec<(bool, Vec<Factor>)> {
    let (&first, rest) = factors.split_first().expect("non-empty monomial");
    let mut head = vec![Factor::Quadratic(first)];
    head.extend(rest.iter().map(|&a| Factor::Linear(a)));
    let mut out = vec![(false, head)];
    if rest.is_empty() {
        return out;
    }
    let flip = convention == LeibnizConvention::Graded;
    for (negative, mut term) in leibniz_expand(rest, convention) {
        term.insert(0, Factor::Linear(first));
        out.push((negative ^ flip, term));
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

struct Evaluator<'a> {
    alg: &'a LieAlgebra,
    lambda: &'a DualFunctional,
    tuple: &'a [Vector],
}

impl Evaluator<'_> {
    fn linear(&self, a: usize, w: &[GaussianRational]) -> GaussianRational {
        let k = self.alg.killing_form();
        w.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| k.get(a, j) * x)
            .sum()
    }

    /// (1/N!) Σ_π Π_f f(w_{π(slots of f)}).
    fn product(&self, factors: &[Factor], perms: &[Vec<usize>]) -> Result<GaussianRational, WorkbenchError> {
        let mut total = GaussianRational::zero();
        for perm in perms {
            let mut acc = GaussianRational::one();
            let mut slot = 0;
            for &f in factors {
                let x = match f {
                    Factor::Linear(a) => self.linear(a, &self.tuple[perm[slot]]),
                    Factor::Quadratic(a) => defining_formula(
                        self.alg,
                        self.lambda,
                        &self.alg.basis_vector(a),
                        &self.tuple[perm[slot]],
                        &self.tuple[perm[slot + 1]],
                    )?,
                };
                slot += f.arity();
                if x.is_zero() {
                    acc = GaussianRational::zero();
                    break;
                }
                acc *= &x;
            }
            total += acc;
        }
        let n_fact: i64 = (1..=perms[0].len() as i64).product();
        Ok(total * GaussianRational::from_ratio(1, n_fact))
    }
}

/// δ^λ(s) evaluated on `tuple` (length `degree(s) + 1`).
pub fn oracle_eval(
    alg: &LieAlgebra,
    lambda: &DualFunctional,
    s: &SymTensor,
    tuple: &[Vector],
    convention: LeibnizConvention,
) -> Result<GaussianRational, WorkbenchError> {
    if tuple.len() != s.degree() + 1 {
        return Err(WorkbenchError::ArityMismatch {
            expected: s.degree() + 1,
            found: tuple.len(),
        });
    }
    if lambda.dim() != alg.dim() {
        return Err(WorkbenchError::DimensionMismatch {
            expected: alg.dim(),
            found: lambda.dim(),
        });
    }
    if s.degree() == 0 {
        return Ok(GaussianRational::zero());
    }
    let perms = permutations(tuple.len());
    let ev = Evaluator { alg, lambda, tuple };
    let mut total = GaussianRational::zero();
    for (m, c) in s.terms() {
        for (negative, term) in leibniz_expand(m.factors(), convention) {
            let v = ev.product(&term, &perms)?;
            if negative {
                total -= c * &v;
            } else {
                total += c * &v;
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
    }

    #[test]
    fn expansion_signs() {
        let graded = leibniz_expand(&[0, 1, 2], LeibnizConvention::Graded);
        let signs: Vec<bool> = graded.iter().map(|(s, _)| *s).collect();
        assert_eq!(signs, vec![false, true, false]);
        let ungraded = leibniz_expand(&[0, 1, 2], LeibnizConvention::Ungraded);
        assert!(ungraded.iter().all(|(s, _)| !s));
    }
}
