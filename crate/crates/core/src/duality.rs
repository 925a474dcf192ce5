//! The dual `Â` on the dual basis, pairings, module actions and the Fourier
//! transform.

use num_traits::Zero;

use crate::algebra::{vec_diff, AlgebraPresentation, Tensor3};
use crate::error::{Error, Result};
use crate::ledger::{Ledger, Witness};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;
use crate::structure::{first_failure, first_failure2, StructureTensors};

/// `⟨e_i, f_j⟩ = matrix[i][j]` between `A` (left) and a candidate dual.
#[derive(Clone, Debug)]
pub struct Pairing {
    pub left: StructureTensors,
    pub right: StructureTensors,
    pub matrix: Matrix,
}

/// Dual of `t` on the basis dual to `t`'s basis.
///
/// `f^j f^k = Σ_i d[i][j][k] f^i`, `Δ̂(f^k) = Σ m[i][j][k] f^i ⊗ f^j`,
/// `ε̂ = ` evaluation at 1, `Ŝ = Sᵀ`, and `ω*(a) = conj(ω(S(a)*))`.
pub fn dual_construct(t: &StructureTensors) -> Result<(StructureTensors, Pairing)> {
    let dual = dual_structure(t, t.labels().iter().map(|l| format!("{l}^")).collect())?;
    let pairing = Pairing { left: t.clone(), right: dual.clone(), matrix: Matrix::identity(t.dim()) };
    Ok((dual, pairing))
}

/// As [`dual_construct`] with chosen labels and without the pairing.
pub fn dual_structure(t: &StructureTensors, labels: Vec<String>) -> Result<StructureTensors> {
    let n = t.dim();
    let mut mult = Tensor3::zeros(n);
    for (i, j, k, d) in t.coproduct_tensor().nonzeros() {
        mult.set(j, k, i, d.clone());
    }
    let mut cop = Tensor3::zeros(n);
    for (i, j, k, m) in t.algebra().mult_tensor().nonzeros() {
        cop.set(k, i, j, m.clone());
    }
    let counit = t.unit()?.clone();
    let antipode = t.antipode().map(Matrix::transpose);
    // ŝ = Sᵀ · conj(s)ᵀ
    let star = match (t.star(), t.antipode()) {
        (Some(s), Some(sa)) => Some(sa.transpose().mul(&s.conj().transpose())),
        _ => None,
    };
    let algebra = AlgebraPresentation::new(mult, labels)?;
    StructureTensors::new(algebra, cop, counit, antipode, star, t.kind())
}

impl Pairing {
    pub fn new(left: StructureTensors, right: StructureTensors, matrix: Matrix) -> Result<Self> {
        if matrix.rows != left.dim() || matrix.cols != right.dim() {
            return Err(Error::DimensionMismatch("pairing matrix shape".into()));
        }
        Ok(Self { left, right, matrix })
    }

    pub fn pair(&self, a: &Vector, w: &Vector) -> Scalar {
        a.dot(&self.matrix.mul_vec(w))
    }

    /// Values `ω(e_k)` of a right-hand element.
    pub fn values(&self, w: &Vector) -> Vector {
        self.matrix.mul_vec(w)
    }

    /// `ω ▶ a = (ι⊗ω)Δ(a)`.
    pub fn act_left(&self, w: &Vector, a: &Vector) -> Vector {
        act_left_values(&self.left, &self.values(w), a)
    }

    /// `a ◀ ω = (ω⊗ι)Δ(a)`.
    pub fn act_right(&self, a: &Vector, w: &Vector) -> Vector {
        act_right_values(&self.left, a, &self.values(w))
    }

    /// Exhaustive duality checks on basis elements.
    pub fn verify(&self) -> Ledger {
        let (a, b, p) = (&self.left, &self.right, &self.matrix);
        let (n, m) = (a.dim(), b.dim());
        let mut ledger = Ledger::new();
        ledger.record_flag("pairing nondegenerate", n == m && p.rank() == n);
        // ⟨e_i e_j, f_l⟩ = ⟨e_i ⊗ e_j, Δ̂ f_l⟩ = (P Δ̂(f_l) Pᵀ)_ij
        ledger.record(
            "⟨ab, ω⟩ = ⟨a⊗b, Δ̂ω⟩",
            first_failure(m, |l| {
                let rhs = crate::structure::tensor_map(p, &b.cop(&b.basis(l)), p);
                let col = p.column(l);
                first_failure2(n, n, |i, j| {
                    let lhs = a.mul(&a.basis(i), &a.basis(j)).dot(&col);
                    (lhs != rhs[(i, j)]).then(|| Witness::new(vec![i, j, l], lhs, rhs[(i, j)].clone()))
                })
            }),
        );
        // ⟨Δ e_i, f_j ⊗ f_l⟩ = ⟨e_i, f_j f_l⟩
        let pv: Vec<Vector> = (0..m).map(|j| p.column(j)).collect();
        ledger.record(
            "⟨Δa, ω⊗ω′⟩ = ⟨a, ωω′⟩",
            first_failure2(m, m, |j, l| {
                let prod = p.mul_vec(&b.mul(&b.basis(j), &b.basis(l)));
                first_failure(n, |i| {
                    let mut lhs = Scalar::zero();
                    for (q, r, d) in a.coproduct_terms(i) {
                        lhs.add_mul(d, &pv[j][*q].mul_ref(&pv[l][*r]));
                    }
                    (lhs != prod[i]).then(|| Witness::new(vec![j, l, i], lhs.clone(), prod[i].clone()))
                })
            }),
        );
        if let (Ok(ua), Ok(ub)) = (a.unit(), b.unit()) {
            let lhs = p.transpose().mul_vec(ua);
            ledger.record("⟨1, ω⟩ = ε̂(ω)", vec_diff(&[], &lhs, b.counit()));
            let lhs = p.mul_vec(ub);
            ledger.record("⟨a, 1⟩ = ε(a)", vec_diff(&[], &lhs, a.counit()));
        }
        if let (Some(sa), Some(sb)) = (a.antipode(), b.antipode()) {
            // ⟨S e_i, f_j⟩ = ⟨e_i, Ŝ f_j⟩
            let lhs = sa.transpose().mul(p);
            let rhs = p.mul(sb);
            ledger.record("⟨S(a), ω⟩ = ⟨a, Ŝ(ω)⟩", crate::structure::matrix_diff(&[], &lhs, &rhs));
        }
        if let (Some(sa), Some(stara), Some(starb)) = (a.antipode(), a.star(), b.star()) {
            // ⟨e_i, f_j*⟩ = conj⟨S(e_i)*, f_j⟩
            ledger.record(
                "⟨a, ω*⟩ = conj⟨S(a)*, ω⟩",
                first_failure2(n, m, |i, j| {
                    let lhs = a.basis(i).dot(&p.mul_vec(&starb.mul_vec(&b.basis(j).conj())));
                    let sa_star = stara.mul_vec(&sa.column(i).conj());
                    let rhs = sa_star.dot(&p.column(j)).conj();
                    (lhs != rhs).then(|| Witness::new(vec![i, j], lhs, rhs))
                }),
            );
        }
        ledger
    }
}

/// `(ι⊗ω)Δ(a)` for a functional given by its values on the basis.
pub fn act_left_values(t: &StructureTensors, w: &Vector, a: &Vector) -> Vector {
    let mut out = Vector::zeros(t.dim());
    for (i, c) in a.support() {
        for (j, k, d) in t.coproduct_terms(i) {
            if !w[*k].is_zero() {
                out[*j].add_mul(&c.mul_ref(d), &w[*k]);
            }
        }
    }
    out
}

/// `(ω⊗ι)Δ(a)`.
pub fn act_right_values(t: &StructureTensors, a: &Vector, w: &Vector) -> Vector {
    let mut out = Vector::zeros(t.dim());
    for (i, c) in a.support() {
        for (j, k, d) in t.coproduct_terms(i) {
            if !w[*j].is_zero() {
                out[*k].add_mul(&c.mul_ref(d), &w[*j]);
            }
        }
    }
    out
}

/// `φ(·a)` in dual-basis coordinates.
pub fn fourier(t: &StructureTensors, phi: &Vector, a: &Vector) -> Vector {
    fourier_matrix(t, phi).mul_vec(a)
}

/// Matrix of `a ↦ φ(·a)`: the Gram matrix `φ(e_i e_j)`.
pub fn fourier_matrix(t: &StructureTensors, phi: &Vector) -> Matrix {
    crate::analysis::gram(t, phi)
}
