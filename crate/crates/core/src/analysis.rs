//! Integrals, modular element, modular automorphisms, scaling constant and
//! the antipode determined by a left integral.
//!
//! Functionals are vectors of values on the basis: `φ(e_i) = φ[i]`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::vec_diff;
use crate::error::{Error, Result};
use crate::ledger::{Ledger, Witness};
use crate::linalg::{LinearSystem, Matrix, Vector};
use crate::scalar::Scalar;
use crate::structure::{first_failure, first_failure2, matrix_diff, outer, Kind, StructureTensors};

/// Rescales so the first nonzero coordinate is 1.
pub fn normalize_functional(v: &Vector) -> Vector {
    match v.leading() {
        Some((_, c)) => v.scale(&c.inv().expect("nonzero")),
        None => v.clone(),
    }
}

/// Basis of `{φ : (ι⊗φ)Δ(a) = φ(a)1}`.
pub fn left_integrals(t: &StructureTensors) -> Result<Vec<Vector>> {
    let n = t.dim();
    let u = t.unit()?.clone();
    let mut sys = LinearSystem::homogeneous(n);
    for i in 0..n {
        // row j: Σ_k d[i][j][k] φ_k − u_j φ_i = 0
        let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for (j, k, d) in t.coproduct_terms(i) {
            eqs[*j].push((*k, d.clone()));
        }
        for (j, eq) in eqs.iter_mut().enumerate() {
            if !u[j].is_zero() {
                eq.push((i, -&u[j]));
            }
            sys.add_sparse(eq, vec![Scalar::zero()]);
        }
    }
    Ok(sys.kernel().iter().map(normalize_functional).collect())
}

/// Basis of `{ψ : (ψ⊗ι)Δ(a) = ψ(a)1}`.
pub fn right_integrals(t: &StructureTensors) -> Result<Vec<Vector>> {
    let n = t.dim();
    let u = t.unit()?.clone();
    let mut sys = LinearSystem::homogeneous(n);
    for i in 0..n {
        let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for (j, k, d) in t.coproduct_terms(i) {
            eqs[*k].push((*j, d.clone()));
        }
        for (k, eq) in eqs.iter_mut().enumerate() {
            if !u[k].is_zero() {
                eq.push((i, -&u[k]));
            }
            sys.add_sparse(eq, vec![Scalar::zero()]);
        }
    }
    Ok(sys.kernel().iter().map(normalize_functional).collect())
}

/// `G_ij = φ(e_i e_j)`.
pub fn gram(t: &StructureTensors, phi: &Vector) -> Matrix {
    let n = t.dim();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = Scalar::zero();
            for (k, c) in t.algebra().basis_product(i, j) {
                s.add_mul(c, &phi[*k]);
            }
            g[(i, j)] = s;
        }
    }
    g
}

/// Both `φ(e_i e_j)` and `φ(e_j e_i)` are nonsingular; the second is the
/// transpose of the first, so one rank computation decides both.
pub fn is_faithful(t: &StructureTensors, phi: &Vector) -> bool {
    gram(t, phi).rank() == t.dim()
}

/// The `δ` with `(φ⊗ι)Δ(a) = φ(a)δ` for all `a`.
pub fn modular_element(t: &StructureTensors, phi: &Vector) -> Result<Vector> {
    let n = t.dim();
    if phi.is_zero() {
        return Err(Error::NotFaithful("zero functional".into()));
    }
    let mut sys = LinearSystem::new(n, 1);
    for i in 0..n {
        let mut rhs = vec![Scalar::zero(); n];
        for (j, k, d) in t.coproduct_terms(i) {
            rhs[*k].add_mul(d, &phi[*j]);
        }
        for (k, r) in rhs.into_iter().enumerate() {
            let coeffs = if phi[i].is_zero() { vec![] } else { vec![(k, phi[i].clone())] };
            sys.add_sparse(&coeffs, vec![r]);
        }
    }
    if !sys.is_consistent() {
        return Err(Error::NoSolution("(φ⊗ι)Δ(a) is not a multiple of φ(a) by a fixed element".into()));
    }
    Ok(sys.particular().expect("consistent").column(0))
}

/// Multiplicative inverse in the algebra.
pub fn algebra_inverse(t: &StructureTensors, a: &Vector) -> Option<Vector> {
    let u = t.unit().ok()?;
    let l = t.algebra().left_mul_matrix(a).inverse()?;
    let inv = l.mul_vec(u);
    (t.mul(&inv, a) == *u).then_some(inv)
}

/// `σ` with `φ(ab) = φ(bσ(a))`: from `Gᵀ = Gσ`, `σ = G⁻¹Gᵀ`.
pub fn modular_automorphism(t: &StructureTensors, phi: &Vector) -> Result<Matrix> {
    let g = gram(t, phi);
    let inv = g.inverse().ok_or_else(|| Error::NotFaithful("singular Gram matrix".into()))?;
    Ok(inv.mul(&g.transpose()))
}

/// The `ν` with `φ∘S² = νφ`.
pub fn scaling_constant(t: &StructureTensors, phi: &Vector) -> Result<Scalar> {
    let s = t.antipode().ok_or_else(|| Error::NoScalingConstant("no antipode".into()))?;
    let lhs = s.mul(s).transpose().mul_vec(phi);
    let (i, p) = phi.leading().ok_or_else(|| Error::NoScalingConstant("zero functional".into()))?;
    let nu = &lhs[i] / p;
    if phi.scale(&nu) != lhs {
        return Err(Error::NoScalingConstant("φ∘S² is not proportional to φ".into()));
    }
    Ok(nu)
}

/// The unique linear `S` with
/// `S((ι⊗φ)(Δ(a)(1⊗b))) = (ι⊗φ)((1⊗a)Δ(b))` on all basis pairs, checked to
/// be antimultiplicative and bijective.
pub fn solve_antipode_relative(t: &StructureTensors, phi: &Vector) -> Result<Matrix> {
    let n = t.dim();
    let g = gram(t, phi);
    // x_ij = Σ d[i][p][q] G_qj e_p,  y_ij = Σ d[j][p][q] G_iq e_p.
    let mut sys = LinearSystem::new(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut x = vec![Scalar::zero(); n];
            for (p, q, d) in t.coproduct_terms(i) {
                x[*p].add_mul(d, &g[(*q, j)]);
            }
            let mut y = vec![Scalar::zero(); n];
            for (p, q, d) in t.coproduct_terms(j) {
                y[*p].add_mul(d, &g[(i, *q)]);
            }
            // Row p of S satisfies Σ_q S_pq x_q = y_p: one equation in the
            // n unknowns (S_p0..S_p,n-1) per right-hand side p.
            sys.add(x, y);
        }
    }
    if !sys.is_consistent() {
        return Err(Error::NoSolution("no linear map satisfies the antipode identity relative to φ".into()));
    }
    if sys.rank() < n {
        return Err(Error::NotUnique(format!("antipode identity leaves {} free parameters per row", n - sys.rank())));
    }
    let s = sys.particular().expect("consistent").transpose();
    let images = s.columns();
    let bad = first_failure2(n, n, |i, j| {
        let lhs = s.mul_vec(&t.mul(&t.basis(i), &t.basis(j)));
        let rhs = t.mul(&images[j], &images[i]);
        vec_diff(&[i, j], &lhs, &rhs)
    });
    if let Some(w) = bad {
        return Err(Error::NotAntimultiplicative(w));
    }
    if s.rank() != n {
        return Err(Error::NotBijective);
    }
    Ok(s)
}

/// Invariants of one structure. Absent fields could not be computed; the
/// ledger says why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub left_integral_space: Vec<Vector>,
    pub right_integral_space: Vec<Vector>,
    pub phi: Option<Vector>,
    pub psi: Option<Vector>,
    pub faithful_left: bool,
    pub faithful_right: bool,
    pub delta: Option<Vector>,
    pub sigma: Option<Matrix>,
    pub sigma_prime: Option<Matrix>,
    pub nu: Option<Scalar>,
    /// `ε∘σ`, the character that pairs with the modular element of the dual.
    pub epsilon_sigma: Option<Vector>,
    pub antipode_relative: Option<Matrix>,
    pub ledger: Ledger,
}

impl AnalysisReport {
    pub fn phi(&self) -> Result<&Vector> {
        self.phi.as_ref().ok_or_else(|| Error::failed("left integral", None))
    }

    pub fn sigma(&self) -> Result<&Matrix> {
        self.sigma.as_ref().ok_or_else(|| Error::failed("modular automorphism", None))
    }

    pub fn delta(&self) -> Result<&Vector> {
        self.delta.as_ref().ok_or_else(|| Error::failed("modular element", None))
    }
}

/// Computes every invariant and records each defining identity.
pub fn analyze(t: &StructureTensors) -> AnalysisReport {
    let n = t.dim();
    let mut ledger = Ledger::new();
    let quantum = t.kind() == Kind::QuantumGroup;
    let left = left_integrals(t).unwrap_or_default();
    let right = right_integrals(t).unwrap_or_default();
    ledger.record_note("left integral space one-dimensional", left.len() == 1, format!("dimension {}", left.len()));
    ledger.record_note("right integral space one-dimensional", right.len() == 1, format!("dimension {}", right.len()));
    let phi = left.first().cloned();
    let psi = right.first().cloned();
    let faithful_left = phi.as_ref().is_some_and(|p| is_faithful(t, p));
    let faithful_right = psi.as_ref().is_some_and(|p| is_faithful(t, p));
    ledger.record_flag("φ faithful", faithful_left);
    ledger.record_flag("ψ faithful", faithful_right);

    let mut report = AnalysisReport {
        left_integral_space: left,
        right_integral_space: right,
        phi: phi.clone(),
        psi: psi.clone(),
        faithful_left,
        faithful_right,
        delta: None,
        sigma: None,
        sigma_prime: None,
        nu: None,
        epsilon_sigma: None,
        antipode_relative: None,
        ledger: Ledger::new(),
    };
    let (Some(phi), true) = (phi, faithful_left) else {
        report.ledger = ledger;
        return report;
    };

    // Modular element.
    let delta = match modular_element(t, &phi) {
        Ok(d) => {
            ledger.record_flag("modular element (φ⊗ι)Δ(a) = φ(a)δ", true);
            Some(d)
        }
        Err(_) => {
            ledger.record_flag("modular element (φ⊗ι)Δ(a) = φ(a)δ", false);
            None
        }
    };
    let delta_inv = delta.as_ref().and_then(|d| algebra_inverse(t, d));
    if let Some(d) = &delta {
        ledger.record_flag("δ invertible", delta_inv.is_some());
        let e = t.eps(d);
        ledger.record("ε(δ) = 1", (!e.is_one()).then(|| Witness::new(vec![], e, Scalar::one())));
        if quantum {
            let lhs = t.cop(d);
            ledger.record("δ group-like Δ(δ) = δ⊗δ", matrix_diff(&[], &lhs, &outer(d, d)));
        }
    }
    if let (Some(psi), Some(di)) = (&psi, &delta_inv) {
        ledger.record(
            "(ι⊗ψ)Δ(a) = ψ(a)δ⁻¹",
            first_failure(n, |i| {
                let mut lhs = Vector::zeros(n);
                for (j, k, d) in t.coproduct_terms(i) {
                    lhs[*j].add_mul(d, &psi[*k]);
                }
                vec_diff(&[i], &lhs, &di.scale(&psi[i]))
            }),
        );
    }

    // Modular automorphisms.
    let sigma = modular_automorphism(t, &phi).ok();
    if let Some(s) = &sigma {
        record_modular_checks(t, &phi, s, "σ", "φ", &mut ledger);
        report.epsilon_sigma = Some(s.transpose().mul_vec(t.counit()));
    }
    let sigma_prime = match (&psi, faithful_right) {
        (Some(p), true) => modular_automorphism(t, p).ok(),
        _ => None,
    };
    if let (Some(s), Some(p)) = (&sigma_prime, &psi) {
        record_modular_checks(t, p, s, "σ′", "ψ", &mut ledger);
    }
    if let (Some(s), Some(sp), Some(d), Some(di)) = (&sigma, &sigma_prime, &delta, &delta_inv) {
        ledger.record(
            "σ′(a) = δσ(a)δ⁻¹",
            first_failure(n, |i| {
                let rhs = t.mul(&t.mul(d, &s.column(i)), di);
                vec_diff(&[i], &sp.column(i), &rhs)
            }),
        );
    }

    // Antipode-dependent invariants.
    if let Some(s) = t.antipode() {
        if let Some(d) = &delta {
            ledger.record(
                "φ(S(a)) = φ(aδ)",
                first_failure(n, |i| {
                    let lhs = phi.dot(&s.column(i));
                    let rhs = phi.dot(&t.mul(&t.basis(i), d));
                    (lhs != rhs).then(|| Witness::new(vec![i], lhs, rhs))
                }),
            );
        }
        match scaling_constant(t, &phi) {
            Ok(nu) => {
                ledger.record_note("scaling constant exists", true, format!("ν = {nu}"));
                report.nu = Some(nu);
            }
            Err(e) => {
                ledger.record_note("scaling constant exists", false, e.to_string());
            }
        }
    }
    match solve_antipode_relative(t, &phi) {
        Ok(s) => {
            ledger.record_flag("antipode relative to φ", true);
            if let Some(stored) = t.antipode() {
                ledger.record("antipode relative to φ matches stored antipode", matrix_diff(&[], &s, stored));
            }
            report.antipode_relative = Some(s);
        }
        Err(e) => {
            ledger.record_note("antipode relative to φ", false, e.to_string());
        }
    }

    report.delta = delta;
    report.sigma = sigma;
    report.sigma_prime = sigma_prime;
    report.ledger = ledger;
    report
}

fn record_modular_checks(t: &StructureTensors, f: &Vector, s: &Matrix, name: &str, fname: &str, ledger: &mut Ledger) {
    let n = t.dim();
    let images = s.columns();
    ledger.record(
        format!("{name} defining identity {fname}(ab) = {fname}(b{name}(a))"),
        first_failure2(n, n, |i, j| {
            let lhs = f.dot(&t.mul(&t.basis(i), &t.basis(j)));
            let rhs = f.dot(&t.mul(&t.basis(j), &images[i]));
            (lhs != rhs).then(|| Witness::new(vec![i, j], lhs, rhs))
        }),
    );
    ledger.record(
        format!("{name} multiplicative"),
        first_failure2(n, n, |i, j| {
            let lhs = s.mul_vec(&t.mul(&t.basis(i), &t.basis(j)));
            let rhs = t.mul(&images[i], &images[j]);
            vec_diff(&[i, j], &lhs, &rhs)
        }),
    );
    ledger.record_flag(format!("{name} bijective"), s.rank() == n);
}

/// Returns the stored antipode, or the one solved from `φ` when none is
/// stored. Mismatch between the two is an error.
pub fn reconcile_antipode(t: &StructureTensors, phi: &Vector) -> Result<Matrix> {
    let solved = solve_antipode_relative(t, phi)?;
    if let Some(stored) = t.antipode() {
        if let Some(w) = matrix_diff(&[], &solved, stored) {
            return Err(Error::AntipodeMismatch(w));
        }
    }
    Ok(solved)
}
