//! Algebras with coproduct, counit, antipode and star, and the exhaustive
//! axiom verifier.
//!
//! Elements of `A ⊗ A` are `n × n` matrices `X` with `X = Σ X_ab e_a ⊗ e_b`,
//! so `(M ⊗ N) X = M X Nᵀ` for linear maps `M`, `N`.

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{vec_diff, AlgebraPresentation, Tensor3};
use crate::error::{Error, Result};
use crate::ledger::{first_diff, Ledger, Witness};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    QuantumGroup,
    HypergroupCandidate,
}

/// `(A, Δ, ε, S, *)` on a fixed basis.
///
/// `Δ(e_i) = Σ d[i][j][k] e_j ⊗ e_k`. The antipode matrix has `S(e_j)` as
/// column `j`. The star matrix has `e_j*` as column `j` and is extended
/// conjugate-linearly: `(Σ c_j e_j)* = Σ conj(c_j) e_j*`.
#[derive(Clone, Debug)]
pub struct StructureTensors {
    algebra: AlgebraPresentation,
    coproduct: Tensor3,
    counit: Vector,
    antipode: Option<Matrix>,
    star: Option<Matrix>,
    kind: Kind,
    cop_sparse: Vec<Vec<(usize, usize, Scalar)>>,
}

impl PartialEq for StructureTensors {
    fn eq(&self, o: &Self) -> bool {
        self.algebra == o.algebra
            && self.coproduct == o.coproduct
            && self.counit == o.counit
            && self.antipode == o.antipode
            && self.star == o.star
            && self.kind == o.kind
    }
}

impl Eq for StructureTensors {}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    kind: Kind,
    algebra: AlgebraPresentation,
    coproduct: Tensor3,
    counit: Vector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    antipode: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    star: Option<Matrix>,
}

impl Serialize for StructureTensors {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawStructure {
            kind: self.kind,
            algebra: self.algebra.clone(),
            coproduct: self.coproduct.clone(),
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
            star: self.star.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StructureTensors {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RawStructure::deserialize(d)?;
        StructureTensors::new(r.algebra, r.coproduct, r.counit, r.antipode, r.star, r.kind)
            .map_err(serde::de::Error::custom)
    }
}

impl StructureTensors {
    pub fn new(
        algebra: AlgebraPresentation,
        coproduct: Tensor3,
        counit: Vector,
        antipode: Option<Matrix>,
        star: Option<Matrix>,
        kind: Kind,
    ) -> Result<Self> {
        let n = algebra.dim();
        let bad = |what: &str| Err(Error::DimensionMismatch(format!("{what} does not match algebra dimension {n}")));
        if coproduct.dim() != n {
            return bad("coproduct tensor");
        }
        if counit.len() != n {
            return bad("counit");
        }
        if antipode.as_ref().is_some_and(|s| s.rows != n || s.cols != n) {
            return bad("antipode matrix");
        }
        if star.as_ref().is_some_and(|s| s.rows != n || s.cols != n) {
            return bad("star matrix");
        }
        let mut cop_sparse = vec![Vec::new(); n];
        for (i, j, k, v) in coproduct.nonzeros() {
            cop_sparse[i].push((j, k, v.clone()));
        }
        Ok(Self { algebra, coproduct, counit, antipode, star, kind, cop_sparse })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn coproduct_tensor(&self) -> &Tensor3 {
        &self.coproduct
    }

    pub fn counit(&self) -> &Vector {
        &self.counit
    }

    pub fn antipode(&self) -> Option<&Matrix> {
        self.antipode.as_ref()
    }

    pub fn star(&self) -> Option<&Matrix> {
        self.star.as_ref()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_antipode(mut self, antipode: Option<Matrix>) -> Self {
        self.antipode = antipode;
        self
    }

    pub fn with_star(mut self, star: Option<Matrix>) -> Self {
        self.star = star;
        self
    }

    pub fn unit(&self) -> Result<&Vector> {
        self.algebra.unit_or_err()
    }

    pub fn basis(&self, i: usize) -> Vector {
        Vector::unit(self.dim(), i)
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.algebra.mul(a, b)
    }

    /// Nonzero terms `(j, k, d[i][j][k])` of `Δ(e_i)`.
    pub fn coproduct_terms(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.cop_sparse[i]
    }

    pub fn cop(&self, a: &Vector) -> Matrix {
        let n = self.dim();
        let mut x = Matrix::zeros(n, n);
        for (i, c) in a.support() {
            for (j, k, d) in &self.cop_sparse[i] {
                x[(*j, *k)].add_mul(c, d);
            }
        }
        x
    }

    pub fn eps(&self, a: &Vector) -> Scalar {
        self.counit.dot(a)
    }

    pub fn apply_antipode(&self, a: &Vector) -> Option<Vector> {
        self.antipode.as_ref().map(|s| s.mul_vec(a))
    }

    pub fn apply_star(&self, a: &Vector) -> Option<Vector> {
        self.star.as_ref().map(|s| s.mul_vec(&a.conj()))
    }

    /// Product in `A ⊗ A`.
    pub fn tensor_mul(&self, x: &Matrix, y: &Matrix) -> Matrix {
        tensor_mul(&self.algebra, &self.algebra, x, y)
    }

    /// `a ⊗ b`.
    pub fn outer(a: &Vector, b: &Vector) -> Matrix {
        outer(a, b)
    }
}

pub fn outer(a: &Vector, b: &Vector) -> Matrix {
    let mut x = Matrix::zeros(a.len(), b.len());
    for (i, p) in a.support() {
        for (j, q) in b.support() {
            x[(i, j)] = p.mul_ref(q);
        }
    }
    x
}

/// `(M ⊗ N) X = M X Nᵀ`.
pub fn tensor_map(m: &Matrix, x: &Matrix, n: &Matrix) -> Matrix {
    m.mul(x).mul(&n.transpose())
}

/// Product in `A ⊗ B`, legwise.
pub fn tensor_mul(a: &AlgebraPresentation, b: &AlgebraPresentation, x: &Matrix, y: &Matrix) -> Matrix {
    let mut z = Matrix::zeros(a.dim(), b.dim());
    let xs = nonzero_entries(x);
    let ys = nonzero_entries(y);
    for (p, q, xv) in &xs {
        for (r, s, yv) in &ys {
            let left = a.basis_product(*p, *r);
            let right = b.basis_product(*q, *s);
            if left.is_empty() || right.is_empty() {
                continue;
            }
            let c = xv.mul_ref(yv);
            for (u, lv) in left {
                let cl = c.mul_ref(lv);
                for (v, rv) in right {
                    z[(*u, *v)].add_mul(&cl, rv);
                }
            }
        }
    }
    z
}

pub fn nonzero_entries(x: &Matrix) -> Vec<(usize, usize, &Scalar)> {
    x.entries
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(o, v)| (o / x.cols, o % x.cols, v))
        .collect()
}

/// First differing entry of two equally shaped matrices.
pub fn matrix_diff(prefix: &[usize], lhs: &Matrix, rhs: &Matrix) -> Option<Witness> {
    lhs.entries.iter().zip(&rhs.entries).enumerate().find(|(_, (a, b))| a != b).map(|(o, (a, b))| {
        let mut index = prefix.to_vec();
        index.push(o / lhs.cols);
        index.push(o % lhs.cols);
        Witness::new(index, a.clone(), b.clone())
    })
}

/// Runs `f` over `0..n` and returns the first witness.
pub(crate) fn first_failure(n: usize, mut f: impl FnMut(usize) -> Option<Witness>) -> Option<Witness> {
    (0..n).find_map(&mut f)
}

pub(crate) fn first_failure2(n: usize, m: usize, mut f: impl FnMut(usize, usize) -> Option<Witness>) -> Option<Witness> {
    (0..n).find_map(|i| (0..m).find_map(|j| f(i, j)))
}

/// Exhaustive check of every axiom applicable to `t.kind()`.
pub fn verify_structure(t: &StructureTensors) -> Ledger {
    let n = t.dim();
    let mut ledger = t.algebra().check();

    ledger.record("coassociativity", coassociativity_witness(t));

    let eps = t.counit();
    ledger.record(
        "counit (ε⊗ι)Δ = ι",
        first_failure(n, |i| {
            let mut v = Vector::zeros(n);
            for (j, k, d) in t.coproduct_terms(i) {
                v[*k].add_mul(&eps[*j], d);
            }
            vec_diff(&[i], &v, &t.basis(i))
        }),
    );
    ledger.record(
        "counit (ι⊗ε)Δ = ι",
        first_failure(n, |i| {
            let mut v = Vector::zeros(n);
            for (j, k, d) in t.coproduct_terms(i) {
                v[*j].add_mul(&eps[*k], d);
            }
            vec_diff(&[i], &v, &t.basis(i))
        }),
    );

    let quantum = t.kind() == Kind::QuantumGroup;
    if quantum {
        let deltas: Vec<Matrix> = (0..n).map(|i| t.cop(&t.basis(i))).collect();
        ledger.record(
            "coproduct multiplicative",
            first_failure2(n, n, |i, j| {
                let lhs = t.cop(&t.mul(&t.basis(i), &t.basis(j)));
                let rhs = t.tensor_mul(&deltas[i], &deltas[j]);
                matrix_diff(&[i, j], &lhs, &rhs)
            }),
        );
        ledger.record(
            "counit multiplicative",
            first_failure2(n, n, |i, j| {
                let lhs = t.eps(&t.mul(&t.basis(i), &t.basis(j)));
                let rhs = eps[i].mul_ref(&eps[j]);
                (lhs != rhs).then(|| Witness::new(vec![i, j], lhs, rhs))
            }),
        );
        if let Ok(u) = t.unit() {
            let lhs = t.cop(u);
            let rhs = outer(u, u);
            ledger.record("coproduct unital", matrix_diff(&[], &lhs, &rhs));
        }
        if t.antipode().is_none() {
            ledger.record_flag("antipode present", false);
        }
    }

    if let Some(s) = t.antipode() {
        let images: Vec<Vector> = s.columns();
        if quantum {
            if let Ok(u) = t.unit() {
                // m(S⊗ι)Δ(e_i) and m(ι⊗S)Δ(e_i) against ε(e_i)1.
                let law = |left: bool| {
                    first_failure(n, |i| {
                        let mut v = Vector::zeros(n);
                        for (j, k, d) in t.coproduct_terms(i) {
                            let p = if left {
                                t.mul(&images[*j], &t.basis(*k))
                            } else {
                                t.mul(&t.basis(*j), &images[*k])
                            };
                            v = v.add(&p.scale(d));
                        }
                        vec_diff(&[i], &v, &u.scale(&eps[i]))
                    })
                };
                ledger.record("antipode law m(S⊗ι)Δ = ε1", law(true));
                ledger.record("antipode law m(ι⊗S)Δ = ε1", law(false));
            }
        }
        ledger.record(
            "antipode antimultiplicative",
            first_failure2(n, n, |i, j| {
                let lhs = s.mul_vec(&t.mul(&t.basis(i), &t.basis(j)));
                let rhs = t.mul(&images[j], &images[i]);
                vec_diff(&[i, j], &lhs, &rhs)
            }),
        );
        ledger.record_flag("antipode bijective", s.rank() == n);
        ledger.record(
            "counit antipode-invariant",
            first_failure(n, |i| {
                let lhs = t.eps(&images[i]);
                (lhs != eps[i]).then(|| Witness::new(vec![i], lhs, eps[i].clone()))
            }),
        );
    }

    if let Some(st) = t.star() {
        let star = |a: &Vector| st.mul_vec(&a.conj());
        ledger.record("star involutive", first_failure(n, |i| vec_diff(&[i], &star(&star(&t.basis(i))), &t.basis(i))));
        ledger.record(
            "star antimultiplicative",
            first_failure2(n, n, |i, j| {
                let lhs = star(&t.mul(&t.basis(i), &t.basis(j)));
                let rhs = t.mul(&star(&t.basis(j)), &star(&t.basis(i)));
                vec_diff(&[i, j], &lhs, &rhs)
            }),
        );
        ledger.record(
            "coproduct star-compatible",
            first_failure(n, |i| {
                let lhs = t.cop(&star(&t.basis(i)));
                let rhs = tensor_map(st, &t.cop(&t.basis(i)).conj(), st);
                matrix_diff(&[i], &lhs, &rhs)
            }),
        );
        ledger.record(
            "counit star-compatible",
            first_failure(n, |i| {
                let lhs = t.eps(&star(&t.basis(i)));
                let rhs = eps[i].conj();
                (lhs != rhs).then(|| Witness::new(vec![i], lhs, rhs))
            }),
        );
        if let Some(s) = t.antipode() {
            ledger.record(
                "antipode star relation S(S(a)*)* = a",
                first_failure(n, |i| {
                    let lhs = star(&s.mul_vec(&star(&s.mul_vec(&t.basis(i)))));
                    vec_diff(&[i], &lhs, &t.basis(i))
                }),
            );
        }
    }
    ledger
}

fn coassociativity_witness(t: &StructureTensors) -> Option<Witness> {
    let n = t.dim();
    first_failure(n, |i| {
        let mut lhs = vec![Scalar::zero(); n * n * n];
        let mut rhs = vec![Scalar::zero(); n * n * n];
        for (j, k, d) in t.coproduct_terms(i) {
            // (Δ⊗ι): Σ d[i][j][k] Δ(e_j) ⊗ e_k
            for (p, q, e) in t.coproduct_terms(*j) {
                lhs[(p * n + q) * n + k].add_mul(d, e);
            }
            // (ι⊗Δ): Σ d[i][j][k] e_j ⊗ Δ(e_k)
            for (p, q, e) in t.coproduct_terms(*k) {
                rhs[(j * n + p) * n + q].add_mul(d, e);
            }
        }
        first_diff(&[], &lhs, &rhs).map(|w| {
            let o = w.index[0];
            Witness::new(vec![i, o / (n * n), (o / n) % n, o % n], w.lhs, w.rhs)
        })
    })
}

/// Convenience: `ε` as a vector of ones on the given indices.
pub(crate) fn indicator(n: usize, members: impl IntoIterator<Item = usize>) -> Vector {
    let mut v = Vector::zeros(n);
    for i in members {
        v[i] = Scalar::one();
    }
    v
}

/// Checks that `tm` (columns: images of `a`'s basis in `b`'s coordinates)
/// is an isomorphism of every stored structure map.
pub fn compare_via(a: &StructureTensors, b: &StructureTensors, tm: &Matrix) -> Ledger {
    let n = a.dim();
    let mut ledger = Ledger::new();
    let bij = tm.rows == b.dim() && tm.cols == n && tm.rank() == n && b.dim() == n;
    ledger.record_flag("basis map bijective", bij);
    if !bij {
        return ledger;
    }
    let cols = tm.columns();
    ledger.record(
        "products agree",
        first_failure2(n, n, |i, j| {
            let lhs = tm.mul_vec(&a.mul(&a.basis(i), &a.basis(j)));
            crate::algebra::vec_diff(&[i, j], &lhs, &b.mul(&cols[i], &cols[j]))
        }),
    );
    ledger.record(
        "coproducts agree",
        first_failure(n, |i| matrix_diff(&[i], &tensor_map(tm, &a.cop(&a.basis(i)), tm), &b.cop(&cols[i]))),
    );
    ledger.record("counits agree", crate::algebra::vec_diff(&[], &tm.transpose().mul_vec(b.counit()), a.counit()));
    match (a.antipode(), b.antipode()) {
        (Some(sa), Some(sb)) => ledger.record("antipodes agree", matrix_diff(&[], &sb.mul(tm), &tm.mul(sa))),
        (None, None) => true,
        _ => ledger.record_flag("antipodes agree", false),
    };
    if let (Some(sa), Some(sb)) = (a.star(), b.star()) {
        ledger.record("stars agree", matrix_diff(&[], &sb.mul(&tm.conj()), &tm.mul(sa)));
    }
    ledger
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K(Z₂) written out by hand.
    fn k_z2() -> StructureTensors {
        let mut m = Tensor3::zeros(2);
        m.set(0, 0, 0, Scalar::one());
        m.set(1, 1, 1, Scalar::one());
        let mut d = Tensor3::zeros(2);
        for s in 0..2 {
            for u in 0..2 {
                d.set((s + u) % 2, s, u, Scalar::one());
            }
        }
        let alg = AlgebraPresentation::new(m, vec![]).unwrap();
        StructureTensors::new(
            alg,
            d,
            Vector::from_ints(&[1, 0]),
            Some(Matrix::identity(2)),
            Some(Matrix::identity(2)),
            Kind::QuantumGroup,
        )
        .unwrap()
    }

    #[test]
    fn hand_built_k_z2_passes() {
        let t = k_z2();
        let ledger = verify_structure(&t);
        assert!(ledger.all_pass(), "{:?}", ledger.first_failure());
        let delta0 = t.cop(&t.basis(0));
        assert_eq!(delta0, Matrix::identity(2));
    }

    #[test]
    fn corrupted_coproduct_is_caught() {
        let t = k_z2();
        let mut d = t.coproduct_tensor().clone();
        d.set(0, 0, 1, Scalar::one());
        let bad = StructureTensors::new(t.algebra().clone(), d, t.counit().clone(), None, None, Kind::QuantumGroup)
            .unwrap();
        let ledger = verify_structure(&bad);
        let c = ledger.get("coassociativity").unwrap();
        assert!(!c.pass);
        assert_eq!(c.witness.as_ref().unwrap().index.len(), 4);
        assert_eq!(ledger.passed("antipode present"), Some(false));
    }

    #[test]
    fn serde_round_trip() {
        let t = k_z2();
        let json = serde_json::to_string(&t).unwrap();
        let back: StructureTensors = serde_json::from_str(&json).unwrap();
        assert_eq!(t, back);
    }
}
