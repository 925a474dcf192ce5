//! Finite-dimensional algebras given by multiplication tensors.

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ledger::{Ledger, Witness};
use crate::linalg::{image_basis, LinearSystem, Matrix, Subspace, Vector};
use crate::scalar::Scalar;

/// Dense cubic array `t[i][j][k]` of side `n`.
///
/// Serialized sparsely as `{"dim": n, "entries": [[i, j, k, "value"], ...]}`
/// listing nonzero entries in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Scalar::zero(); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let o = self.offset(i, j, k);
        self.data[o] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, v: &Scalar) {
        let o = self.offset(i, j, k);
        self.data[o] += v;
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(o, v)| (o / (n * n), (o / n) % n, o % n, v))
    }

    /// Slice `t[i][·][·]` as an `n × n` matrix.
    pub fn slice(&self, i: usize) -> Matrix {
        let n = self.n;
        Matrix::new(n, n, self.data[i * n * n..(i + 1) * n * n].to_vec()).expect("square slice")
    }
}

#[derive(Serialize, Deserialize)]
struct SparseTensor3 {
    dim: usize,
    entries: Vec<(usize, usize, usize, Scalar)>,
}

impl Serialize for Tensor3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.nonzeros().map(|(i, j, k, v)| (i, j, k, v.clone())).collect();
        SparseTensor3 { dim: self.n, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tensor3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SparseTensor3::deserialize(d)?;
        let mut t = Tensor3::zeros(raw.dim);
        for (i, j, k, v) in raw.entries {
            if i >= raw.dim || j >= raw.dim || k >= raw.dim {
                return Err(serde::de::Error::custom(format!("tensor index ({i}, {j}, {k}) out of range")));
            }
            t.add_to(i, j, k, &v);
        }
        Ok(t)
    }
}

/// Nonzero entries of `t[i][j][·]` for every `(i, j)`.
pub(crate) fn sparse_pairs(t: &Tensor3) -> Vec<Vec<Vec<(usize, Scalar)>>> {
    let n = t.dim();
    let mut out = vec![vec![Vec::new(); n]; n];
    for (i, j, k, v) in t.nonzeros() {
        out[i][j].push((k, v.clone()));
    }
    out
}

/// Algebra with basis `e_0..e_{n-1}` and `e_i e_j = Σ_k m[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    mult: Tensor3,
    labels: Vec<String>,
    unit: Option<Vector>,
    sparse: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl PartialEq for AlgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.mult == other.mult && self.labels == other.labels && self.unit == other.unit
    }
}

impl Eq for AlgebraPresentation {}

#[derive(Serialize, Deserialize)]
struct RawAlgebra {
    labels: Vec<String>,
    mult: Tensor3,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<Vector>,
}

impl Serialize for AlgebraPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawAlgebra { labels: self.labels.clone(), mult: self.mult.clone(), unit: self.unit.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraPresentation {
    /// The unit is always re-solved; a serialized unit is informational.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawAlgebra::deserialize(d)?;
        AlgebraPresentation::new(raw.mult, raw.labels).map_err(serde::de::Error::custom)
    }
}

impl AlgebraPresentation {
    /// Builds the presentation and solves for a two-sided unit.
    pub fn new(mult: Tensor3, labels: Vec<String>) -> Result<Self> {
        let n = mult.dim();
        let labels = if labels.is_empty() { (0..n).map(|i| format!("e{i}")).collect() } else { labels };
        if labels.len() != n {
            return Err(Error::DimensionMismatch(format!("{} labels for dimension {n}", labels.len())));
        }
        let sparse = sparse_pairs(&mult);
        let mut alg = Self { mult, labels, unit: None, sparse };
        alg.unit = alg.solve_unit();
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.mult.dim()
    }

    pub fn mult_tensor(&self) -> &Tensor3 {
        &self.mult
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn unit_or_err(&self) -> Result<&Vector> {
        self.unit.as_ref().ok_or_else(|| Error::NoSolution("algebra has no unit".into()))
    }

    /// Nonzero structure constants of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.sparse[i][j]
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, x) in a.support() {
            for (j, y) in b.support() {
                let xy = x.mul_ref(y);
                for (k, c) in &self.sparse[i][j] {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        Vector::new(out)
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::unit(self.dim(), i)
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mul_matrix(&self, a: &Vector) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(n, &cols)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mul_matrix(&self, a: &Vector) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_columns(n, &cols)
    }

    fn solve_unit(&self) -> Option<Vector> {
        let n = self.dim();
        let mut sys = LinearSystem::new(n, 1);
        // Σ_a u_a m[a][i][k] = δ_ik and Σ_a u_a m[i][a][k] = δ_ik.
        for i in 0..n {
            for side in 0..2 {
                let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
                for a in 0..n {
                    let prod = if side == 0 { &self.sparse[a][i] } else { &self.sparse[i][a] };
                    for (k, c) in prod {
                        eqs[*k].push((a, c.clone()));
                    }
                }
                for (k, eq) in eqs.iter().enumerate() {
                    let rhs = if k == i { Scalar::one() } else { Scalar::zero() };
                    sys.add_sparse(eq, vec![rhs]);
                }
            }
        }
        if sys.rank() != n {
            return None;
        }
        sys.particular().map(|x| x.column(0))
    }

    /// Associativity, nondegeneracy on both sides, and existence of a unit.
    pub fn check(&self) -> Ledger {
        let n = self.dim();
        let mut ledger = Ledger::new();
        let mut witness = None;
        'outer: for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..n {
                    let lhs = self.mul(&ij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.mul(&self.basis(j), &self.basis(k)));
                    if let Some(w) = crate::ledger::first_diff(&[i, j, k], &lhs.entries, &rhs.entries) {
                        witness = Some(w);
                        break 'outer;
                    }
                }
            }
        }
        ledger.record("associativity", witness);
        let (left, right) = self.nondegeneracy();
        ledger.record_flag("product nondegenerate (a·A = 0 implies a = 0)", left);
        ledger.record_flag("product nondegenerate (A·a = 0 implies a = 0)", right);
        ledger.record_flag("unit", self.unit.is_some());
        ledger
    }

    /// Whether `a ↦ (a e_j)_j` and `a ↦ (e_j a)_j` are injective.
    pub fn nondegeneracy(&self) -> (bool, bool) {
        let n = self.dim();
        let mut left = LinearSystem::homogeneous(n);
        let mut right = LinearSystem::homogeneous(n);
        for j in 0..n {
            let mut eq_l: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            let mut eq_r: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            for i in 0..n {
                for (k, c) in &self.sparse[i][j] {
                    eq_l[*k].push((i, c.clone()));
                }
                for (k, c) in &self.sparse[j][i] {
                    eq_r[*k].push((i, c.clone()));
                }
            }
            for k in 0..n {
                left.add_sparse(&eq_l[k], vec![Scalar::zero()]);
                right.add_sparse(&eq_r[k], vec![Scalar::zero()]);
            }
        }
        (left.rank() == n, right.rank() == n)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.sparse[i][j] == self.sparse[j][i]))
    }

    /// Smallest multiplicatively closed subspace containing `spanning`,
    /// with the canonical image basis, and whether closure enlarged the span.
    pub fn subalgebra_closure(&self, spanning: &[Vector]) -> (Vec<Vector>, bool) {
        let n = self.dim();
        let mut basis = image_basis(&Matrix::from_columns(n, spanning));
        let initial = basis.len();
        loop {
            let mut candidates = basis.clone();
            for a in &basis {
                for b in &basis {
                    candidates.push(self.mul(a, b));
                }
            }
            let next = image_basis(&Matrix::from_columns(n, &candidates));
            if next.len() == basis.len() {
                return (basis, next.len() != initial);
            }
            basis = next;
        }
    }

    /// The subalgebra spanned by `basis` in its own coordinates.
    pub fn restrict(&self, basis: &[Vector], labels: Vec<String>) -> Result<(Self, Subspace)> {
        let sub = Subspace::from_basis(self.dim(), basis.to_vec())?;
        let m = sub.dim();
        let mut t = Tensor3::zeros(m);
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate() {
                let p = self.mul(x, y);
                let r = sub.residual(&p);
                if let Some((k, v)) = r.leading() {
                    return Err(Error::NotClosed(format!(
                        "product of basis vectors {a} and {b} has component {v} outside the span at coordinate {k}"
                    )));
                }
                for (c, v) in sub.coords(&p).support() {
                    t.set(a, b, c, v.clone());
                }
            }
        }
        Ok((Self::new(t, labels)?, sub))
    }
}

/// Entrywise comparison of two vectors, producing a witness on the first
/// differing coordinate.
pub(crate) fn vec_diff(prefix: &[usize], lhs: &Vector, rhs: &Vector) -> Option<Witness> {
    crate::ledger::first_diff(prefix, &lhs.entries, &rhs.entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn function_algebra(n: usize) -> AlgebraPresentation {
        let mut t = Tensor3::zeros(n);
        for i in 0..n {
            t.set(i, i, i, Scalar::one());
        }
        AlgebraPresentation::new(t, vec![]).unwrap()
    }

    fn z2_group_algebra() -> AlgebraPresentation {
        let mut t = Tensor3::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                t.set(i, j, (i + j) % 2, Scalar::one());
            }
        }
        AlgebraPresentation::new(t, vec![]).unwrap()
    }

    #[test]
    fn check_algebra_examples() {
        let k2 = function_algebra(2);
        assert!(k2.check().all_pass());
        assert_eq!(k2.unit(), Some(&Vector::from_ints(&[1, 1])));

        let c2 = z2_group_algebra();
        assert!(c2.check().all_pass());
        assert_eq!(c2.unit(), Some(&Vector::from_ints(&[1, 0])));

        let zero = AlgebraPresentation::new(Tensor3::zeros(1), vec![]).unwrap();
        let ledger = zero.check();
        assert_eq!(ledger.passed("associativity"), Some(true));
        assert_eq!(ledger.passed("product nondegenerate (a·A = 0 implies a = 0)"), Some(false));
        assert_eq!(ledger.passed("unit"), Some(false));
    }

    #[test]
    fn nonassociative_tensor_gives_witness() {
        // e0 e0 = e1, everything else zero except e1 e0 = e0.
        let mut t = Tensor3::zeros(2);
        t.set(0, 0, 1, Scalar::one());
        t.set(1, 0, 0, Scalar::one());
        let a = AlgebraPresentation::new(t, vec![]).unwrap();
        let ledger = a.check();
        let c = ledger.get("associativity").unwrap();
        assert!(!c.pass);
        assert_eq!(c.witness.as_ref().unwrap().index.len(), 4);
    }

    #[test]
    fn closure_and_restriction() {
        let k3 = function_algebra(3);
        let (basis, grew) = k3.subalgebra_closure(&[Vector::from_ints(&[1, 0, 0]), Vector::from_ints(&[0, 1, 1])]);
        assert_eq!(basis.len(), 2);
        assert!(!grew);
        let (full, grew) = k3.subalgebra_closure(&(0..3).map(|i| k3.basis(i)).collect::<Vec<_>>());
        assert_eq!(full.len(), 3);
        assert!(!grew);
        assert!(k3.subalgebra_closure(&[]).0.is_empty());

        let (sub, _) = k3.restrict(&basis, vec![]).unwrap();
        assert!(sub.check().all_pass());
        assert!(sub.is_commutative());
        assert_eq!(sub.unit(), Some(&Vector::from_ints(&[1, 1])));

        let c2 = z2_group_algebra();
        assert!(c2.restrict(&[Vector::from_ints(&[0, 1])], vec![]).is_err());
    }

    #[test]
    fn tensor_serde_round_trip() {
        let a = z2_group_algebra();
        let json = serde_json::to_string(&a).unwrap();
        let back: AlgebraPresentation = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
    }
}
