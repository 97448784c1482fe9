//! Dense exact matrices over ℚ(i).

use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::GaussianRational;
use crate::error::WorkbenchError;

/// Column vector of exact scalars.
pub type Vector = Vec<GaussianRational>;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

/// Output of [`ExactMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self, WorkbenchError> {
        if entries.len() != rows * cols {
            return Err(WorkbenchError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from row vectors. `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self, WorkbenchError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(WorkbenchError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::from_entries(n, cols, entries)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, WorkbenchError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(WorkbenchError::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: GaussianRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, WorkbenchError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, factor: &GaussianRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), WorkbenchError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(WorkbenchError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, WorkbenchError> {
        if self.cols != other.rows {
            return Err(WorkbenchError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vector, WorkbenchError> {
        if v.len() != self.cols {
            return Err(WorkbenchError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination. The first
    /// nonzero entry in each pivot column is used, which keeps the result
    /// independent of anything but the input.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m.get(pivot_row, col).checked_inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let x = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, x);
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let p = m.get(pivot_row, c);
                    if p.is_zero() {
                        continue;
                    }
                    let x = m.get(r, c) - &factor * p;
                    m.set(r, c, x);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        Rref {
            rank: pivot_cols.len(),
            reduced: m,
            pivot_cols,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical nullspace basis: one vector per free column of the RREF
    /// (free variable = 1, other free variables = 0), in free-column order.
    pub fn nullspace(&self) -> Vec<Vector> {
        let Rref {
            reduced, pivot_cols, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_cols {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[free] = GaussianRational::one();
                for (row, &p) in pivot_cols.iter().enumerate() {
                    v[p] = -reduced.get(row, free);
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = rhs` when the system has a unique solution.
    pub fn solve_unique(&self, rhs: &[GaussianRational]) -> Result<Vector, WorkbenchError> {
        if rhs.len() != self.rows {
            return Err(WorkbenchError::DimensionMismatch {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let Rref {
            reduced,
            rank,
            pivot_cols,
        } = aug.rref();
        if pivot_cols.last() == Some(&self.cols) {
            return Err(WorkbenchError::Singular("inconsistent linear system".into()));
        }
        if rank < self.cols {
            return Err(WorkbenchError::Singular(format!(
                "system has rank {rank} < {} unknowns",
                self.cols
            )));
        }
        Ok((0..self.cols).map(|r| reduced.get(r, self.cols).clone()).collect())
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, GaussianRational)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_zero() {
                    out.push((r, c, x.clone()));
                }
            }
        }
        out
    }

    /// Rows as vectors of display strings, for JSON output.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Free function form of [`ExactMatrix::rref`].
pub fn rref(m: &ExactMatrix) -> Rref {
    m.rref()
}

/// Free function form of [`ExactMatrix::nullspace`].
pub fn nullspace(m: &ExactMatrix) -> Vec<Vector> {
    m.nullspace()
}

/// Rank of the span of a list of vectors of common length `dim`.
pub fn span_rank(dim: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(dim, vectors.to_vec())
        .expect("vectors share a dimension")
        .rank()
}

/// `span(a) == span(b)`.
pub fn same_span(dim: usize, a: &[Vector], b: &[Vector]) -> bool {
    let ra = span_rank(dim, a);
    let rb = span_rank(dim, b);
    if ra != rb {
        return false;
    }
    let stacked: Vec<Vector> = a.iter().chain(b).cloned().collect();
    span_rank(dim, &stacked) == ra
}

/// `span(inner) ⊆ span(outer)`.
pub fn span_contains(dim: usize, outer: &[Vector], inner: &[Vector]) -> bool {
    let stacked: Vec<Vector> = outer.iter().chain(inner).cloned().collect();
    span_rank(dim, &stacked) == span_rank(dim, outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::scalar::gq;

    fn mat(rows: &[&[&str]]) -> ExactMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|s| gq(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = ExactMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);

        let z = ExactMatrix::zeros(2, 4);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_gaussian_rank_one() {
        // row2 = i * row1
        let m = mat(&[&["1", "i"], &["i", "-1"]]);
        let r = m.rref();
        assert_eq!(r.reduced, mat(&[&["1", "i"], &["0", "0"]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(ExactMatrix::identity(4).nullspace().is_empty());
        let ns = ExactMatrix::zeros(1, 3).nullspace();
        assert_eq!(ns.len(), 3);
        for (k, v) in ns.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), j == k);
            }
        }
        let ns = mat(&[&["2", "-2"]]).nullspace();
        assert_eq!(ns, vec![vec![gq("1"), gq("1")]]);
    }

    #[test]
    fn solve_unique_and_singular() {
        let m = mat(&[&["2", "1"], &["1", "i"]]);
        let x = m.solve_unique(&[gq("3"), gq("1+1*i")]).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![gq("3"), gq("1+1*i")]);
        let s = mat(&[&["1", "2"], &["2", "4"]]);
        assert!(s.solve_unique(&[gq("1"), gq("0")]).is_err());
    }

    #[test]
    fn shape_errors() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.add(&ExactMatrix::zeros(3, 2)).is_err());
        assert!(ExactMatrix::from_entries(2, 2, vec![gq("1")]).is_err());
    }

    #[test]
    fn span_helpers() {
        let a = vec![vec![gq("1"), gq("0")], vec![gq("0"), gq("1")]];
        let b = vec![vec![gq("1"), gq("1")], vec![gq("1"), gq("-1")]];
        assert!(same_span(2, &a, &b));
        assert!(span_contains(2, &a, &[vec![gq("3"), gq("i")]]));
        assert!(!span_contains(2, &a[..1], &b[..1]));
    }
}
