//! Symmetric powers Sym^k(𝔤) realised as symmetric k-linear forms.
//!
//! A basis vector `e_a` is identified with the linear form `κ(e_a, ·)`.
//! A monomial `e_{a_1} ⊙ … ⊙ e_{a_k}` evaluates on `(w_1, …, w_k)` as
//!
//! ```text
//! (1/k!) Σ_{π ∈ S_k} Π_j κ(e_{a_π(j)}, w_j)
//! ```
//!
//! so degree-1 evaluation is the Killing form and squares evaluate as
//! products. Coefficients are stored against multiset monomials with no
//! multinomial weights; every combinatorial factor lives in [`evaluate`].

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::WorkbenchError;
use crate::exactlinalg::{GaussianRational, Vector};
use crate::liealg::LieAlgebra;

/// A degree-k multiset of basis indices, stored as a sorted list with
/// repetition. The derived ordering is the canonical monomial order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultisetIndex(Vec<usize>);

impl MultisetIndex {
    pub fn new(mut factors: Vec<usize>) -> Self {
        factors.sort_unstable();
        Self(factors)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(a: usize) -> Self {
        Self(vec![a])
    }

    /// From `(basis index, multiplicity)` pairs.
    pub fn from_counts(counts: &[(usize, usize)]) -> Self {
        Self::new(counts.iter().flat_map(|&(a, m)| std::iter::repeat_n(a, m)).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Factors in ascending order, with repetition.
    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    /// `(basis index, multiplicity)` pairs in ascending index order.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &a in &self.0 {
            match out.last_mut() {
                Some((b, m)) if *b == a => *m += 1,
                _ => out.push((a, 1)),
            }
        }
        out
    }

    pub fn merge(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.degree() + other.degree());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Self::new(v)
    }

    /// The multiset with the factor at `position` removed.
    pub fn without_position(&self, position: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(position);
        Self(v)
    }

    pub fn is_supported_on(&self, indices: &[usize]) -> bool {
        self.0.iter().all(|a| indices.contains(a))
    }

    /// Label such as `H^2 E` using the algebra's basis names.
    pub fn label(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.counts()
            .iter()
            .map(|&(a, m)| {
                let name = names.get(a).cloned().unwrap_or_else(|| format!("e{a}"));
                if m == 1 {
                    name
                } else {
                    format!("{name}^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for MultisetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for MultisetIndex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.counts().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultisetIndex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let counts = Vec::<(usize, usize)>::deserialize(deserializer)?;
        Ok(Self::from_counts(&counts))
    }
}

/// C(n+k−1, k): the dimension of Sym^k of an n-dimensional space.
pub fn sym_dimension(n: usize, k: usize) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    binomial(n + k - 1, k)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All degree-k multisets over `indices` (assumed ascending), in canonical
/// order.
pub fn multisets_over(indices: &[usize], k: usize) -> Vec<MultisetIndex> {
    fn rec(indices: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<MultisetIndex>) {
        if cur.len() == k {
            out.push(MultisetIndex(cur.clone()));
            return;
        }
        for p in start..indices.len() {
            cur.push(indices[p]);
            rec(indices, k, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(sym_dimension(indices.len(), k));
    rec(indices, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// The canonical monomial basis of Sym^k over `n` basis vectors.
pub fn monomial_basis(n: usize, k: usize) -> Vec<MultisetIndex> {
    multisets_over(&(0..n).collect::<Vec<_>>(), k)
}

/// Element of Sym^k(𝔤).
#[derive(Clone, PartialEq, Eq)]
pub struct SymTensor {
    degree: usize,
    coeffs: BTreeMap<MultisetIndex, GaussianRational>,
}

impl SymTensor {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(c: GaussianRational) -> Self {
        let mut t = Self::zero(0);
        t.add_term(MultisetIndex::empty(), c);
        t
    }

    pub fn monomial(index: MultisetIndex) -> Self {
        Self::term(index, GaussianRational::one())
    }

    pub fn term(index: MultisetIndex, coeff: GaussianRational) -> Self {
        let mut t = Self::zero(index.degree());
        t.add_term(index, coeff);
        t
    }

    /// Builds a tensor from `(multiset, coefficient)` pairs; all multisets
    /// must have degree `degree`.
    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (MultisetIndex, GaussianRational)>,
    ) -> Result<Self, WorkbenchError> {
        let mut t = Self::zero(degree);
        for (idx, c) in terms {
            if idx.degree() != degree {
                return Err(WorkbenchError::DimensionMismatch {
                    expected: degree,
                    found: idx.degree(),
                });
            }
            t.add_term(idx, c);
        }
        Ok(t)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultisetIndex, &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, index: &MultisetIndex) -> GaussianRational {
        self.coeffs.get(index).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, index: MultisetIndex, c: GaussianRational) {
        debug_assert_eq!(index.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(index) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding tensors of different degree");
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.degree);
        }
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * factor)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussianRational::from_int(-1))
    }

    /// Coordinates against [`monomial_basis`]`(n, degree)`.
    pub fn to_coords(&self, n: usize) -> Vector {
        let basis = monomial_basis(n, self.degree);
        self.coords_in(&basis)
    }

    /// Coordinates against an explicit list of monomials. Terms outside the
    /// list are dropped.
    pub fn coords_in(&self, basis: &[MultisetIndex]) -> Vector {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coords(basis: &[MultisetIndex], coords: &[GaussianRational], degree: usize) -> Self {
        let mut t = Self::zero(degree);
        for (m, c) in basis.iter().zip(coords) {
            t.add_term(m.clone(), c.clone());
        }
        t
    }

    pub fn is_supported_on(&self, indices: &[usize]) -> bool {
        self.coeffs.keys().all(|m| m.is_supported_on(indices))
    }

    /// Human-readable form, e.g. `1*H^2 + -1*E F`.
    pub fn pretty(&self, names: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(m, c)| format!("({c})·{}", m.label(names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymTensor[{}]{{", self.degree)?;
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m:?}: {c}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    index: MultisetIndex,
    coeff: GaussianRational,
}

#[derive(Serialize, Deserialize)]
struct SymTensorJson {
    degree: usize,
    terms: Vec<TermJson>,
}

impl Serialize for SymTensor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SymTensorJson {
            degree: self.degree,
            terms: self
                .coeffs
                .iter()
                .map(|(index, coeff)| TermJson {
                    index: index.clone(),
                    coeff: coeff.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymTensor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SymTensorJson::deserialize(deserializer)?;
        SymTensor::from_terms(raw.degree, raw.terms.into_iter().map(|t| (t.index, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

/// The degree-1 tensor `Σ v_i e_i`, which evaluates on `w` as `κ(v, w)`.
pub fn embed_vector(alg: &LieAlgebra, v: &[GaussianRational]) -> Result<SymTensor, WorkbenchError> {
    if v.len() != alg.dim() {
        return Err(WorkbenchError::DimensionMismatch {
            expected: alg.dim(),
            found: v.len(),
        });
    }
    Ok(embed_unchecked(v))
}

pub(crate) fn embed_unchecked(v: &[GaussianRational]) -> SymTensor {
    let mut t = SymTensor::zero(1);
    for (i, c) in v.iter().enumerate() {
        t.add_term(MultisetIndex::single(i), c.clone());
    }
    t
}

/// The symmetric product; on monomials it merges multisets.
pub fn sym_product(a: &SymTensor, b: &SymTensor) -> SymTensor {
    let mut out = SymTensor::zero(a.degree + b.degree);
    for (ma, ca) in &a.coeffs {
        for (mb, cb) in &b.coeffs {
            out.add_term(ma.merge(mb), ca * cb);
        }
    }
    out
}

fn factorial(k: usize) -> GaussianRational {
    GaussianRational::from_int((1..=k as i64).product())
}

/// Permanent of a square matrix by dynamic programming over column subsets.
fn permanent(m: &[Vec<GaussianRational>]) -> GaussianRational {
    let k = m.len();
    if k == 0 {
        return GaussianRational::one();
    }
    // dp[mask] = sum over assignments of the first popcount(mask) rows to the
    // columns in mask.
    let mut dp = vec![GaussianRational::zero(); 1 << k];
    dp[0] = GaussianRational::one();
    for mask in 0usize..(1 << k) {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == k {
            continue;
        }
        let cur = dp[mask].clone();
        for (col, x) in m[row].iter().enumerate() {
            if mask & (1 << col) == 0 && !x.is_zero() {
                dp[mask | (1 << col)] += &cur * x;
            }
        }
    }
    dp[(1 << k) - 1].clone()
}

/// Evaluates `s` on a tuple of `degree(s)` coordinate vectors.
pub fn evaluate(alg: &LieAlgebra, s: &SymTensor, tuple: &[Vector]) -> Result<GaussianRational, WorkbenchError> {
    if tuple.len() != s.degree {
        return Err(WorkbenchError::ArityMismatch {
            expected: s.degree,
            found: tuple.len(),
        });
    }
    for w in tuple {
        if w.len() != alg.dim() {
            return Err(WorkbenchError::DimensionMismatch {
                expected: alg.dim(),
                found: w.len(),
            });
        }
    }
    Ok(evaluate_unchecked(alg, s, tuple))
}

pub(crate) fn evaluate_unchecked(alg: &LieAlgebra, s: &SymTensor, tuple: &[Vector]) -> GaussianRational {
    let k = s.degree;
    // κ(e_a, w_j) for every basis index a that occurs.
    let mut pairing: BTreeMap<usize, Vec<GaussianRational>> = BTreeMap::new();
    let mut total = GaussianRational::zero();
    for (m, c) in &s.coeffs {
        for &a in m.factors() {
            pairing
                .entry(a)
                .or_insert_with(|| tuple.iter().map(|w| alg.kappa_basis(a, w)).collect());
        }
        let rows: Vec<Vec<GaussianRational>> = m.factors().iter().map(|a| pairing[a].clone()).collect();
        let p = permanent(&rows);
        if !p.is_zero() {
            total += c * &p;
        }
    }
    &total / &factorial(k)
}

/// Fixes the first `prefix.len()` arguments of `s`, leaving a tensor of
/// degree `degree(s) − prefix.len()` with
/// `evaluate(partial, rest) = evaluate(s, prefix ++ rest)`.
pub fn partial_evaluate(alg: &LieAlgebra, s: &SymTensor, prefix: &[Vector]) -> Result<SymTensor, WorkbenchError> {
    let k = s.degree;
    let j = prefix.len();
    if j > k {
        return Err(WorkbenchError::ArityMismatch { expected: k, found: j });
    }
    let weight = &factorial(k - j) / &factorial(k);
    let mut out = SymTensor::zero(k - j);
    for (m, c) in &s.coeffs {
        // Injective assignments of prefix slots to factor positions.
        let mut stack: Vec<(Vec<bool>, usize, GaussianRational)> = vec![(vec![false; k], 0, c * &weight)];
        while let Some((used, slot, acc)) = stack.pop() {
            if slot == j {
                let rest: Vec<usize> = (0..k).filter(|&p| !used[p]).map(|p| m.factors()[p]).collect();
                out.add_term(MultisetIndex::new(rest), acc);
                continue;
            }
            for p in 0..k {
                if used[p] {
                    continue;
                }
                let x = alg.kappa_basis(m.factors()[p], &prefix[slot]);
                if x.is_zero() {
                    continue;
                }
                let mut next = used.clone();
                next[p] = true;
                stack.push((next, slot + 1, &acc * &x));
            }
        }
    }
    Ok(out)
}

/// Vector-valued contraction: fixes all but one argument of `s` and returns
/// the vector `v` with `κ(v, w) = s(prefix…, w)`.
pub fn contract_to_vector(alg: &LieAlgebra, s: &SymTensor, prefix: &[Vector]) -> Result<Vector, WorkbenchError> {
    if prefix.len() + 1 != s.degree {
        return Err(WorkbenchError::ArityMismatch {
            expected: s.degree.saturating_sub(1),
            found: prefix.len(),
        });
    }
    let linear = partial_evaluate(alg, s, prefix)?;
    Ok((0..alg.dim())
        .map(|a| linear.coeff(&MultisetIndex::single(a)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::gq;
    use crate::liealg::builtin::{sl2, su2c};

    fn e(alg: &LieAlgebra, i: usize) -> Vector {
        alg.basis_vector(i)
    }

    #[test]
    fn sym_dimension_examples() {
        assert_eq!(sym_dimension(3, 2), 6);
        assert_eq!(sym_dimension(1, 5), 1);
        assert_eq!(sym_dimension(2, 3), 4);
        assert_eq!(sym_dimension(3, 0), 1);
        for n in 1..5 {
            for k in 0..5 {
                assert_eq!(monomial_basis(n, k).len(), sym_dimension(n, k));
            }
        }
    }

    #[test]
    fn monomial_basis_is_sorted_and_unique() {
        let b = monomial_basis(3, 3);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn embed_vector_examples() {
        let g = sl2();
        let h = embed_vector(&g, &e(&g, 0)).unwrap();
        assert_eq!(evaluate(&g, &h, &[e(&g, 0)]).unwrap(), gq("8"));
        assert_eq!(evaluate(&g, &h, &[e(&g, 1)]).unwrap(), gq("0"));
        let g = su2c();
        let h = embed_vector(&g, &e(&g, 0)).unwrap();
        assert_eq!(evaluate(&g, &h, &[e(&g, 0)]).unwrap(), gq("2"));
    }

    #[test]
    fn sym_product_examples() {
        let h = SymTensor::monomial(MultisetIndex::single(0));
        let hh = sym_product(&h, &h);
        assert_eq!(hh, SymTensor::monomial(MultisetIndex::new(vec![0, 0])));

        let he = SymTensor::monomial(MultisetIndex::single(0)).add(&SymTensor::monomial(MultisetIndex::single(1)));
        let f = SymTensor::monomial(MultisetIndex::single(2));
        let expected = SymTensor::monomial(MultisetIndex::new(vec![0, 2]))
            .add(&SymTensor::monomial(MultisetIndex::new(vec![1, 2])));
        assert_eq!(sym_product(&he, &f), expected);
        assert_eq!(sym_product(&f, &he), expected);
    }

    #[test]
    fn evaluate_examples() {
        let g = sl2();
        let hh = SymTensor::monomial(MultisetIndex::new(vec![0, 0]));
        assert_eq!(evaluate(&g, &hh, &[e(&g, 0), e(&g, 0)]).unwrap(), gq("64"));
        assert_eq!(evaluate(&g, &hh, &[e(&g, 1), e(&g, 2)]).unwrap(), gq("0"));

        let g = su2c();
        let ef = SymTensor::monomial(MultisetIndex::new(vec![1, 2]));
        assert_eq!(evaluate(&g, &ef, &[e(&g, 1), e(&g, 2)]).unwrap(), gq("2"));
    }

    #[test]
    fn evaluate_arity_mismatch() {
        let g = sl2();
        let hh = SymTensor::monomial(MultisetIndex::new(vec![0, 0]));
        assert!(matches!(
            evaluate(&g, &hh, &[e(&g, 0)]),
            Err(WorkbenchError::ArityMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn partial_evaluation_matches_full() {
        let g = sl2();
        let s = SymTensor::from_terms(
            3,
            [
                (MultisetIndex::new(vec![0, 1, 2]), gq("2")),
                (MultisetIndex::new(vec![0, 0, 1]), gq("-1/3")),
                (MultisetIndex::new(vec![2, 2, 2]), gq("i")),
            ],
        )
        .unwrap();
        let w1 = vec![gq("1"), gq("2"), gq("-1")];
        let w2 = vec![gq("0"), gq("1/2"), gq("3")];
        let w3 = vec![gq("i"), gq("1"), gq("1")];
        let full = evaluate(&g, &s, &[w1.clone(), w2.clone(), w3.clone()]).unwrap();
        let p = partial_evaluate(&g, &s, &[w1.clone(), w2.clone()]).unwrap();
        assert_eq!(evaluate(&g, &p, std::slice::from_ref(&w3)).unwrap(), full);
        let v = contract_to_vector(&g, &s, &[w1, w2]).unwrap();
        assert_eq!(g.kappa(&v, &w3), full);
    }

    #[test]
    fn json_shape() {
        let s = SymTensor::from_terms(2, [(MultisetIndex::new(vec![1, 0]), gq("1/2"))]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"degree":2,"terms":[{"index":[[0,1],[1,1]],"coeff":"1/2"}]}"#);
        let back: SymTensor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<SymTensor>(r#"{"degree":3,"terms":[{"index":[[0,1]],"coeff":"1"}]}"#).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let m = MultisetIndex::new(vec![0, 1]);
        let mut t = SymTensor::term(m.clone(), gq("2"));
        t.add_term(m, gq("-2"));
        assert!(t.is_zero());
    }
}
