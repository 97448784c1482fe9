//! Finite-dimensional Lie algebras given by structure constants.
//!
//! An algebra is loaded from an [`AlgebraSpec`] and validated once:
//! antisymmetry, the Jacobi identity on every basis triple, commutativity of
//! the declared Cartan basis vectors and the eigenvector equation of every
//! declared root. After loading it is immutable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::WorkbenchError;
use crate::exactlinalg::{ExactMatrix, GaussianRational, Vector};

/// One `[e_i, e_j]` entry of an algebra spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coords: Vec<GaussianRational>,
}

/// A root as written in a spec: its values on the Cartan basis and the
/// coordinates of its root vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSpec {
    pub alpha: Vec<GaussianRational>,
    pub vector: Vec<GaussianRational>,
}

/// The algebra-spec JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub cartan: Vec<usize>,
    #[serde(default)]
    pub roots: Vec<RootSpec>,
}

/// A root α of the Cartan subalgebra together with its root vector E_α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// α(H_p) for the p-th Cartan basis vector (in `cartan_indices` order).
    pub values: Vec<GaussianRational>,
    /// Coordinates of E_α.
    pub vector: Vector,
    /// Set when E_α is a single basis vector.
    pub vector_index: Option<usize>,
}

impl Root {
    pub fn negated_values(&self) -> Vec<GaussianRational> {
        self.values.iter().map(|x| -x).collect()
    }
}

/// A constant element λ of 𝔤*, stored as its values ⟨λ, e_i⟩.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualFunctional {
    pub coords: Vector,
}

impl DualFunctional {
    pub fn new(coords: Vector) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![GaussianRational::zero(); dim])
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| GaussianRational::from_int(v)).collect())
    }

    /// Pads missing trailing entries with zero; rejects over-long input.
    pub fn fit_to(mut self, dim: usize) -> Result<Self, WorkbenchError> {
        if self.coords.len() > dim {
            return Err(WorkbenchError::spec(
                "coords",
                format!("{} entries for a {dim}-dimensional algebra", self.coords.len()),
            ));
        }
        self.coords.resize(dim, GaussianRational::zero());
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// ⟨λ, v⟩.
    pub fn pair(&self, v: &[GaussianRational]) -> GaussianRational {
        self.coords
            .iter()
            .zip(v)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn negate(&self) -> Self {
        Self::new(self.coords.iter().map(|x| -x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GaussianRational::is_zero)
    }

    /// Reads `{"coords": [...]}` or `{"coords": {"<index or label>": "<value>"}}`
    /// for `alg`; absent entries are zero.
    pub fn from_json(text: &str, alg: &LieAlgebra) -> Result<Self, WorkbenchError> {
        let doc: serde_json::Value = serde_json::from_str(text)?;
        let coords = doc
            .get("coords")
            .ok_or_else(|| WorkbenchError::spec("coords", "missing"))?;
        let scalar = |field: String, v: &serde_json::Value| -> Result<GaussianRational, WorkbenchError> {
            match v {
                serde_json::Value::String(s) => s
                    .parse()
                    .map_err(|e: WorkbenchError| WorkbenchError::spec(field, e.to_string())),
                serde_json::Value::Number(n) => n
                    .to_string()
                    .parse()
                    .map_err(|e: WorkbenchError| WorkbenchError::spec(field, e.to_string())),
                _ => Err(WorkbenchError::spec(field, "expected a number or scalar string")),
            }
        };
        match coords {
            serde_json::Value::Array(items) => {
                let values = items
                    .iter()
                    .enumerate()
                    .map(|(i, v)| scalar(format!("coords[{i}]"), v))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::new(values).fit_to(alg.dim())
            }
            serde_json::Value::Object(map) => {
                let mut out = Self::zero(alg.dim());
                for (key, v) in map {
                    let field = format!("coords.{key}");
                    let i = key
                        .parse::<usize>()
                        .ok()
                        .or_else(|| alg.basis_index(key))
                        .filter(|&i| i < alg.dim())
                        .ok_or_else(|| WorkbenchError::spec(field.clone(), "not a basis index or label"))?;
                    out.coords[i] = scalar(field, v)?;
                }
                Ok(out)
            }
            _ => Err(WorkbenchError::spec("coords", "expected an array or an object")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis_labels: Vec<String>,
    /// `structure[i * dim + j]` holds the coordinates of `[e_i, e_j]`.
    structure: Vec<Vector>,
    cartan: Vec<usize>,
    roots: Vec<Root>,
    killing: ExactMatrix,
}

fn residual_strings(v: &[GaussianRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl LieAlgebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn cartan_indices(&self) -> &[usize] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Index of the basis vector with the given label.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    /// The `i`-th standard basis vector.
    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![GaussianRational::zero(); self.dim()];
        v[i] = GaussianRational::one();
        v
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[GaussianRational] {
        &self.structure[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Result<Vector, WorkbenchError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(WorkbenchError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
        let n = self.dim();
        let mut out = vec![GaussianRational::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = self.structure_constants(i, j);
                if c.iter().all(GaussianRational::is_zero) {
                    continue;
                }
                let w = xi * yj;
                for (o, ck) in out.iter_mut().zip(c) {
                    if !ck.is_zero() {
                        *o += &w * ck;
                    }
                }
            }
        }
        out
    }

    /// The Killing form matrix κ(e_i, e_j).
    pub fn killing_form(&self) -> &ExactMatrix {
        &self.killing
    }

    /// κ(x, y) for coordinate vectors.
    pub fn kappa(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let k = self.killing.get(i, j);
                if !k.is_zero() {
                    acc += xi * yj * k;
                }
            }
        }
        acc
    }

    /// κ(e_a, w).
    pub fn kappa_basis(&self, a: usize, w: &[GaussianRational]) -> GaussianRational {
        self.killing
            .row(a)
            .iter()
            .zip(w)
            .filter(|(k, x)| !k.is_zero() && !x.is_zero())
            .map(|(k, x)| k * x)
            .sum()
    }

    /// True iff κ(H, E_α) = 0 for every Cartan basis vector H and every
    /// declared root vector E_α.
    pub fn validate_cartan_orthogonality(&self) -> bool {
        self.cartan.iter().all(|&a| {
            self.roots
                .iter()
                .all(|root| self.kappa_basis(a, &root.vector).is_zero())
        })
    }

    /// The algebra spec this algebra round-trips to.
    pub fn to_spec(&self) -> AlgebraSpec {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.structure_constants(i, j);
                if c.iter().any(|x| !x.is_zero()) {
                    brackets.push(BracketEntry {
                        i,
                        j,
                        coords: c.to_vec(),
                    });
                }
            }
        }
        AlgebraSpec {
            name: self.name.clone(),
            dim: n,
            basis: self.basis_labels.clone(),
            brackets,
            cartan: self.cartan.clone(),
            roots: self
                .roots
                .iter()
                .map(|r| RootSpec {
                    alpha: r.values.clone(),
                    vector: r.vector.clone(),
                })
                .collect(),
        }
    }

    /// Abelian algebra of the given dimension with an empty root set.
    pub fn abelian(dim: usize) -> Self {
        load_algebra(&AlgebraSpec {
            name: format!("abelian{dim}"),
            dim,
            basis: (0..dim).map(|i| format!("X{i}")).collect(),
            brackets: Vec::new(),
            cartan: (0..dim).collect(),
            roots: Vec::new(),
        })
        .expect("abelian algebra is valid")
    }
}

fn compute_killing(n: usize, structure: &[Vector]) -> ExactMatrix {
    // κ(e_i, e_j) = Σ_{k,l} C(i,k)_l · C(j,l)_k
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = GaussianRational::zero();
            for k in 0..n {
                for l in 0..n {
                    let a = &structure[i * n + k][l];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &structure[j * n + l][k];
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
            }
            m.set(i, j, acc.clone());
            m.set(j, i, acc);
        }
    }
    m
}

/// Validates a spec document and builds the algebra.
pub fn load_algebra(spec: &AlgebraSpec) -> Result<LieAlgebra, WorkbenchError> {
    let n = spec.dim;
    if n == 0 {
        return Err(WorkbenchError::spec("dim", "must be positive"));
    }
    if spec.basis.len() != n {
        return Err(WorkbenchError::spec(
            "basis",
            format!("{} labels for dim {n}", spec.basis.len()),
        ));
    }

    let mut explicit: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    for (k, entry) in spec.brackets.iter().enumerate() {
        let field = format!("brackets[{k}]");
        if entry.i >= n || entry.j >= n {
            return Err(WorkbenchError::spec(field, "basis index out of range"));
        }
        if entry.coords.len() != n {
            return Err(WorkbenchError::spec(
                format!("{field}.coords"),
                format!("{} coordinates for dim {n}", entry.coords.len()),
            ));
        }
        if explicit.insert((entry.i, entry.j), entry.coords.clone()).is_some() {
            return Err(WorkbenchError::spec(field, "duplicate bracket entry"));
        }
    }

    let zero = vec![GaussianRational::zero(); n];
    let mut structure = vec![zero.clone(); n * n];
    for (&(i, j), coords) in &explicit {
        if i == j {
            if coords.iter().any(|x| !x.is_zero()) {
                return Err(WorkbenchError::AntisymmetryViolation {
                    i,
                    j,
                    residual: residual_strings(coords),
                });
            }
            continue;
        }
        let negated: Vector = coords.iter().map(|x| -x).collect();
        if let Some(other) = explicit.get(&(j, i)) {
            let residual: Vector = coords.iter().zip(other).map(|(a, b)| a + b).collect();
            if residual.iter().any(|x| !x.is_zero()) {
                let (i, j) = (i.min(j), i.max(j));
                return Err(WorkbenchError::AntisymmetryViolation {
                    i,
                    j,
                    residual: residual_strings(&residual),
                });
            }
        }
        structure[i * n + j] = coords.clone();
        structure[j * n + i] = negated;
    }

    let killing = compute_killing(n, &structure);
    let mut alg = LieAlgebra {
        name: spec.name.clone(),
        basis_labels: spec.basis.clone(),
        structure,
        cartan: Vec::new(),
        roots: Vec::new(),
        killing,
    };

    // Jacobi on every basis triple.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ea, eb, ec) = (alg.basis_vector(a), alg.basis_vector(b), alg.basis_vector(c));
                let t1 = alg.bracket_unchecked(&alg.bracket_unchecked(&ea, &eb), &ec);
                let t2 = alg.bracket_unchecked(&alg.bracket_unchecked(&eb, &ec), &ea);
                let t3 = alg.bracket_unchecked(&alg.bracket_unchecked(&ec, &ea), &eb);
                let residual: Vector = (0..n).map(|k| &t1[k] + &t2[k] + &t3[k]).collect();
                if residual.iter().any(|x| !x.is_zero()) {
                    return Err(WorkbenchError::JacobiViolation {
                        triple: (a, b, c),
                        residual: residual_strings(&residual),
                    });
                }
            }
        }
    }

    let mut seen = vec![false; n];
    for (k, &a) in spec.cartan.iter().enumerate() {
        if a >= n {
            return Err(WorkbenchError::spec(format!("cartan[{k}]"), "basis index out of range"));
        }
        if std::mem::replace(&mut seen[a], true) {
            return Err(WorkbenchError::spec(format!("cartan[{k}]"), "duplicate index"));
        }
    }
    for (p, &a) in spec.cartan.iter().enumerate() {
        for &b in &spec.cartan[p + 1..] {
            if alg.structure_constants(a, b).iter().any(|x| !x.is_zero()) {
                return Err(WorkbenchError::CartanNotAbelian { a, b });
            }
        }
    }
    alg.cartan = spec.cartan.clone();

    let r = spec.cartan.len();
    let mut roots = Vec::with_capacity(spec.roots.len());
    for (k, rs) in spec.roots.iter().enumerate() {
        let field = format!("roots[{k}]");
        if rs.alpha.len() != r {
            return Err(WorkbenchError::spec(
                format!("{field}.alpha"),
                format!("{} values for {r} cartan vectors", rs.alpha.len()),
            ));
        }
        if rs.vector.len() != n {
            return Err(WorkbenchError::spec(
                format!("{field}.vector"),
                format!("{} coordinates for dim {n}", rs.vector.len()),
            ));
        }
        if rs.alpha.iter().all(GaussianRational::is_zero) {
            return Err(WorkbenchError::RootValidation(format!("{field}: zero functional")));
        }
        if rs.vector.iter().all(GaussianRational::is_zero) {
            return Err(WorkbenchError::RootValidation(format!("{field}: zero root vector")));
        }
        for (p, &a) in spec.cartan.iter().enumerate() {
            let lhs = alg.bracket_unchecked(&alg.basis_vector(a), &rs.vector);
            let rhs: Vector = rs.vector.iter().map(|x| x * &rs.alpha[p]).collect();
            if lhs != rhs {
                return Err(WorkbenchError::RootValidation(format!(
                    "{field}: [{}, E] = {:?} but α({}) E = {:?}",
                    spec.basis[a], lhs, spec.basis[a], rhs
                )));
            }
        }
        let nonzero: Vec<usize> = (0..n).filter(|&i| !rs.vector[i].is_zero()).collect();
        let vector_index = match nonzero.as_slice() {
            [single] if rs.vector[*single].is_one() => Some(*single),
            _ => None,
        };
        roots.push(Root {
            values: rs.alpha.clone(),
            vector: rs.vector.clone(),
            vector_index,
        });
    }
    for (k, root) in roots.iter().enumerate() {
        let neg = root.negated_values();
        if !roots.iter().any(|o| o.values == neg) {
            return Err(WorkbenchError::RootValidation(format!(
                "roots[{k}]: negative root is missing"
            )));
        }
    }
    alg.roots = roots;
    Ok(alg)
}

/// Killing form of an algebra; free-function form of
/// [`LieAlgebra::killing_form`].
pub fn killing_form(alg: &LieAlgebra) -> ExactMatrix {
    alg.killing_form().clone()
}

pub fn validate_cartan_orthogonality(alg: &LieAlgebra) -> bool {
    alg.validate_cartan_orthogonality()
}

pub fn bracket(alg: &LieAlgebra, x: &[GaussianRational], y: &[GaussianRational]) -> Result<Vector, WorkbenchError> {
    alg.bracket(x, y)
}

pub mod builtin {
    //! Built-in algebras with hand-written structure constants.

    use super::*;
    use crate::exactlinalg::gq;

    pub const NAMES: &[&str] = &["sl2", "su2c", "su2c-rooted"];

    fn entry(i: usize, j: usize, coords: &[&str]) -> BracketEntry {
        BracketEntry {
            i,
            j,
            coords: coords.iter().map(|s| gq(s)).collect(),
        }
    }

    fn root(alpha: &[&str], vector: &[&str]) -> RootSpec {
        RootSpec {
            alpha: alpha.iter().map(|s| gq(s)).collect(),
            vector: vector.iter().map(|s| gq(s)).collect(),
        }
    }

    /// sl₂ in the basis (H, E, F): [H,E] = 2E, [H,F] = −2F, [E,F] = H.
    pub fn sl2_spec() -> AlgebraSpec {
        AlgebraSpec {
            name: "sl2".into(),
            dim: 3,
            basis: vec!["H".into(), "E".into(), "F".into()],
            brackets: vec![
                entry(0, 1, &["0", "2", "0"]),
                entry(0, 2, &["0", "0", "-2"]),
                entry(1, 2, &["1", "0", "0"]),
            ],
            cartan: vec![0],
            roots: vec![root(&["2"], &["0", "1", "0"]), root(&["-2"], &["0", "0", "1"])],
        }
    }

    /// su(2) with complex structure constants: [H,E] = iF, [H,F] = −iE,
    /// [E,F] = iH. No root data.
    pub fn su2c_spec() -> AlgebraSpec {
        AlgebraSpec {
            name: "su2c".into(),
            dim: 3,
            basis: vec!["H".into(), "E".into(), "F".into()],
            brackets: vec![
                entry(0, 1, &["0", "0", "i"]),
                entry(0, 2, &["0", "-i", "0"]),
                entry(1, 2, &["i", "0", "0"]),
            ],
            cartan: vec![0],
            roots: Vec::new(),
        }
    }

    /// su2c with the complexified root pair: ad(H) acts on E + iF with
    /// eigenvalue 1 and on E − iF with eigenvalue −1.
    pub fn su2c_rooted_spec() -> AlgebraSpec {
        AlgebraSpec {
            name: "su2c-rooted".into(),
            roots: vec![root(&["1"], &["0", "1", "i"]), root(&["-1"], &["0", "1", "-i"])],
            ..su2c_spec()
        }
    }

    pub fn spec(name: &str) -> Result<AlgebraSpec, WorkbenchError> {
        match name {
            "sl2" => Ok(sl2_spec()),
            "su2c" => Ok(su2c_spec()),
            "su2c-rooted" => Ok(su2c_rooted_spec()),
            other => Err(WorkbenchError::UnknownAlgebra(other.to_string())),
        }
    }

    pub fn load(name: &str) -> Result<LieAlgebra, WorkbenchError> {
        load_algebra(&spec(name)?)
    }

    pub fn sl2() -> LieAlgebra {
        load("sl2").expect("built-in sl2 is valid")
    }

    pub fn su2c() -> LieAlgebra {
        load("su2c").expect("built-in su2c is valid")
    }

    pub fn su2c_rooted() -> LieAlgebra {
        load("su2c-rooted").expect("built-in su2c-rooted is valid")
    }
}
