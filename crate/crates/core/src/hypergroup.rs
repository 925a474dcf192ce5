//! Group-like idempotents, the conditional expectations they induce, the
//! corner and quotient constructions, and the duality between them.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::vec_diff;
use crate::analysis::{self, analyze, gram, AnalysisReport};
use crate::duality::{act_left_values, act_right_values, dual_structure};
use crate::error::{Error, Result};
use crate::ledger::{Ledger, Witness};
use crate::linalg::{rref, LinearSystem, Matrix, Subspace, Vector};
use crate::scalar::Scalar;
use crate::structure::{
    first_failure, first_failure2, matrix_diff, nonzero_entries, outer, tensor_map, verify_structure, Kind,
    StructureTensors,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Regular,
    Exceptional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentReport {
    pub element: Vector,
    pub checks: Ledger,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_adjoint: Option<bool>,
    pub epsilon_sigma_value: Option<Scalar>,
    pub classification: Option<Classification>,
}

impl IdempotentReport {
    pub fn is_group_like(&self) -> bool {
        self.classification.is_some()
    }

    pub fn is_regular(&self) -> bool {
        self.classification == Some(Classification::Regular)
    }

    /// Errors unless the element is a regular group-like idempotent.
    pub fn require_regular(&self) -> Result<()> {
        match self.classification {
            Some(Classification::Regular) => Ok(()),
            Some(Classification::Exceptional) => Err(Error::ExceptionalIdempotent),
            None => {
                let failed = self.checks.first_failure().map(|c| c.name.clone()).unwrap_or_default();
                Err(Error::NotGroupLike(failed))
            }
        }
    }
}

/// Evaluates every group-like condition on `h` and classifies it by
/// `ε(σ(h))`.
pub fn classify_group_like(t: &StructureTensors, an: &AnalysisReport, h: &Vector) -> IdempotentReport {
    let mut checks = Ledger::new();
    let alg = t.algebra();
    checks.record_flag("nonzero", !h.is_zero());
    checks.record("idempotent h² = h", vec_diff(&[], &t.mul(h, h), h));
    let s = t.antipode().or(an.antipode_relative.as_ref());
    match s {
        Some(s) => checks.record("S(h) = h", vec_diff(&[], &s.mul_vec(h), h)),
        None => checks.record_note("S(h) = h", false, "no antipode available"),
    };
    let x = t.cop(h);
    let hh = outer(h, h);
    let lh = alg.left_mul_matrix(h);
    let rh = alg.right_mul_matrix(h);
    // (1⊗h) on the right is X ↦ X R_hᵀ, (h⊗1) on the right is X ↦ R_h X, etc.
    checks.record("Δ(h)(1⊗h) = h⊗h", matrix_diff(&[], &x.mul(&rh.transpose()), &hh));
    checks.record("Δ(h)(h⊗1) = h⊗h", matrix_diff(&[], &rh.mul(&x), &hh));
    checks.record("(1⊗h)Δ(h) = h⊗h", matrix_diff(&[], &x.mul(&lh.transpose()), &hh));
    checks.record("(h⊗1)Δ(h) = h⊗h", matrix_diff(&[], &lh.mul(&x), &hh));
    let e = t.eps(h);
    checks.record("ε(h) = 1", (!e.is_one()).then(|| Witness::new(vec![], e, Scalar::one())));
    let self_adjoint = t.apply_star(h).map(|hs| hs == *h);

    let mut report = IdempotentReport {
        element: h.clone(),
        checks,
        self_adjoint,
        epsilon_sigma_value: None,
        classification: None,
    };
    if !report.checks.all_pass() {
        return report;
    }
    let Some(sigma) = an.sigma.as_ref() else {
        report.checks.record_note("modular automorphism available", false, "no faithful left integral");
        return report;
    };
    let sh = sigma.mul_vec(h);
    let value = t.eps(&sh);
    let class = if value.is_zero() {
        report.checks.record("exceptional: hσ(h) = 0", vec_diff(&[], &t.mul(h, &sh), &Vector::zeros(h.len())));
        Classification::Exceptional
    } else {
        report.checks.record("regular: σ(h) = h", vec_diff(&[], &sh, h));
        Classification::Regular
    };
    report.epsilon_sigma_value = Some(value);
    if report.checks.all_pass() {
        report.classification = Some(class);
    }
    report
}

/// `E(a) = k ▶ a` and `E′(a) = a ◀ k` for `k` in dual-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondExpectations {
    pub e: Matrix,
    pub e_prime: Matrix,
    pub source_k: Vector,
}

pub fn expectations_from_k(t: &StructureTensors, k: &Vector) -> CondExpectations {
    let n = t.dim();
    let e_cols: Vec<Vector> = (0..n).map(|i| act_left_values(t, k, &t.basis(i))).collect();
    let ep_cols: Vec<Vector> = (0..n).map(|i| act_right_values(t, &t.basis(i), k)).collect();
    CondExpectations { e: Matrix::from_columns(n, &e_cols), e_prime: Matrix::from_columns(n, &ep_cols), source_k: k.clone() }
}

fn conditional_expectation_laws(t: &StructureTensors, e: &Matrix, name: &str, ledger: &mut Ledger) {
    let n = t.dim();
    let cols = e.columns();
    ledger.record(format!("{name}² = {name}"), matrix_diff(&[], &e.mul(e), e));
    ledger.record(
        format!("{name}({name}(a)b) = {name}(a){name}(b)"),
        first_failure2(n, n, |i, j| {
            let lhs = e.mul_vec(&t.mul(&cols[i], &t.basis(j)));
            vec_diff(&[i, j], &lhs, &t.mul(&cols[i], &cols[j]))
        }),
    );
    ledger.record(
        format!("{name}(a{name}(b)) = {name}(a){name}(b)"),
        first_failure2(n, n, |i, j| {
            let lhs = e.mul_vec(&t.mul(&t.basis(i), &cols[j]));
            vec_diff(&[i, j], &lhs, &t.mul(&cols[i], &cols[j]))
        }),
    );
}

/// Membership of every row (`second_leg`) or column of `x` in `sub`.
fn tensor_leg_in(x: &Matrix, sub: &Subspace, second_leg: bool, prefix: &[usize]) -> Option<Witness> {
    let lines: Vec<Vector> = if second_leg {
        (0..x.rows).map(|r| Vector::new(x.row(r).to_vec())).collect()
    } else {
        x.columns()
    };
    lines.iter().enumerate().find_map(|(l, v)| {
        let r = sub.residual(v);
        r.leading().map(|(c, val)| {
            let mut index = prefix.to_vec();
            index.extend([l, c]);
            Witness::new(index, val.clone(), Scalar::zero())
        })
    })
}

/// Every identity of the conditional-expectation suite on basis tuples.
pub fn verify_expectation_laws(
    t: &StructureTensors,
    an: &AnalysisReport,
    ce: &CondExpectations,
    class: Classification,
) -> Ledger {
    let n = t.dim();
    let (e, ep) = (&ce.e, &ce.e_prime);
    let mut ledger = Ledger::new();
    conditional_expectation_laws(t, e, "E", &mut ledger);
    conditional_expectation_laws(t, ep, "E′", &mut ledger);
    ledger.record("EE′ = E′E", matrix_diff(&[], &e.mul(ep), &ep.mul(e)));
    if let Some(s) = t.antipode() {
        ledger.record("E∘S = S∘E′", matrix_diff(&[], &e.mul(s), &s.mul(ep)));
        ledger.record("E′∘S = S∘E", matrix_diff(&[], &ep.mul(s), &s.mul(e)));
    }
    ledger.record(
        "(E⊗ι)Δ = (ι⊗E′)Δ",
        first_failure(n, |i| {
            let x = t.cop(&t.basis(i));
            matrix_diff(&[i], &e.mul(&x), &x.mul(&ep.transpose()))
        }),
    );

    // Invariance of E(A) (left) and E′(A) (right).
    let ea = Subspace::image_of(e);
    let epa = Subspace::image_of(ep);
    let Ok(u) = t.unit() else {
        ledger.record_flag("unit", false);
        return ledger;
    };
    let inclusion = |sub: &Subspace, right: bool, on_left: bool| {
        first_failure2(sub.dim(), n, |c, j| {
            let x = t.cop(&sub.basis.column(c));
            let factor = if right { outer(u, &t.basis(j)) } else { outer(&t.basis(j), u) };
            let y = if on_left { t.tensor_mul(&factor, &x) } else { t.tensor_mul(&x, &factor) };
            tensor_leg_in(&y, sub, !right, &[c, j])
        })
    };
    ledger.record("Δ(E(A))(A⊗1) ⊆ A⊗E(A)", inclusion(&ea, false, false));
    ledger.record("(A⊗1)Δ(E(A)) ⊆ A⊗E(A)", inclusion(&ea, false, true));
    ledger.record("Δ(E′(A))(1⊗A) ⊆ E′(A)⊗A", inclusion(&epa, true, false));
    ledger.record("(1⊗A)Δ(E′(A)) ⊆ E′(A)⊗A", inclusion(&epa, true, true));

    // Integrals.
    let functional_check = |f: &Vector, m: &Matrix, expect_zero: bool| {
        let lhs = m.transpose().mul_vec(f);
        let rhs = if expect_zero { Vector::zeros(n) } else { f.clone() };
        vec_diff(&[], &lhs, &rhs)
    };
    let regular = class == Classification::Regular;
    if let Some(phi) = &an.phi {
        ledger.record("φ∘E′ = φ", functional_check(phi, ep, false));
        if regular {
            ledger.record("φ∘E = φ", functional_check(phi, e, false));
        } else {
            ledger.record("φ∘E = 0", functional_check(phi, e, true));
        }
    }
    if let Some(psi) = &an.psi {
        ledger.record("ψ∘E = ψ", functional_check(psi, e, false));
        if regular {
            ledger.record("ψ∘E′ = ψ", functional_check(psi, ep, false));
        } else {
            ledger.record("ψ∘E′ = 0", functional_check(psi, ep, true));
        }
    }
    if !regular {
        return ledger;
    }
    for (f, fname) in [(&an.phi, "φ"), (&an.psi, "ψ")] {
        let Some(f) = f else { continue };
        for (m, mname) in [(e, "E"), (ep, "E′")] {
            ledger.record(
                format!("{fname}({mname}(a)b) = {fname}(a{mname}(b))"),
                first_failure2(n, n, |i, j| {
                    let lhs = f.dot(&t.mul(&m.column(i), &t.basis(j)));
                    let rhs = f.dot(&t.mul(&t.basis(i), &m.column(j)));
                    (lhs != rhs).then(|| Witness::new(vec![i, j], lhs, rhs))
                }),
            );
        }
    }
    for (s, sname) in [(&an.sigma, "σ"), (&an.sigma_prime, "σ′")] {
        let Some(s) = s else { continue };
        for (m, mname) in [(e, "E"), (ep, "E′")] {
            ledger.record(format!("{mname}∘{sname} = {sname}∘{mname}"), matrix_diff(&[], &m.mul(s), &s.mul(m)));
        }
    }
    if let Some(d) = &an.delta {
        let ld = t.algebra().left_mul_matrix(d);
        let rd = t.algebra().right_mul_matrix(d);
        for (m, mname) in [(e, "E"), (ep, "E′")] {
            ledger.record(format!("{mname}(a)δ = {mname}(aδ)"), matrix_diff(&[], &rd.mul(m), &m.mul(&rd)));
            ledger.record(format!("δ{mname}(a) = {mname}(δa)"), matrix_diff(&[], &ld.mul(m), &m.mul(&ld)));
        }
    }
    ledger
}

/// Recovers `k` from a pair of conditional expectations via `fk = f∘E`,
/// `kf = f∘E′`, after checking the hypotheses that make `k` exist.
pub fn reconstruct_k(
    t: &StructureTensors,
    dual: &StructureTensors,
    dual_an: &AnalysisReport,
    e: &Matrix,
    e_prime: &Matrix,
) -> Result<Vector> {
    let n = t.dim();
    let mut hyp = Ledger::new();
    conditional_expectation_laws(t, e, "E", &mut hyp);
    conditional_expectation_laws(t, e_prime, "E′", &mut hyp);
    if let Some(s) = t.antipode() {
        hyp.record("E∘S = S∘E′", matrix_diff(&[], &e.mul(s), &s.mul(e_prime)));
        hyp.record("E′∘S = S∘E", matrix_diff(&[], &e_prime.mul(s), &s.mul(e)));
    }
    hyp.record(
        "(E⊗ι)Δ = (ι⊗E′)Δ",
        first_failure(n, |i| {
            let x = t.cop(&t.basis(i));
            matrix_diff(&[i], &e.mul(&x), &x.mul(&e_prime.transpose()))
        }),
    );
    if let Some(c) = hyp.first_failure() {
        return Err(Error::failed(format!("expectation hypothesis: {}", c.name), c.witness.clone()));
    }
    // ε is the unit of Â, so k = ε·k = ε∘E.
    let k = e.transpose().mul_vec(t.counit());
    for j in 0..n {
        let f = dual.basis(j);
        if let Some(w) = vec_diff(&[j], &dual.mul(&f, &k), &e.transpose().mul_vec(&f)) {
            return Err(Error::failed("fk = f∘E", Some(w)));
        }
        if let Some(w) = vec_diff(&[j], &dual.mul(&k, &f), &e_prime.transpose().mul_vec(&f)) {
            return Err(Error::failed("kf = f∘E′", Some(w)));
        }
    }
    classify_group_like(dual, dual_an, &k).require_regular().or_else(|err| match err {
        Error::ExceptionalIdempotent => Ok(()),
        other => Err(other),
    })?;
    Ok(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    CornerA0,
    QuotientA1,
    DualOf,
    DirectDoubleCoset,
}

/// A constructed algebraic quantum hypergroup candidate with its embedding
/// into the ambient algebra (columns of `basis`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypergroupResult {
    pub provenance: Provenance,
    pub dim: usize,
    pub basis: Vec<Vector>,
    pub structure: StructureTensors,
    pub analysis: AnalysisReport,
    pub ledger: Ledger,
    pub compact_type: bool,
    pub discrete_type: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cointegral: Option<Vector>,
}

impl HypergroupResult {
    pub fn embedding(&self) -> Matrix {
        let n = self.basis.first().map_or(0, Vector::len);
        Matrix::from_columns(n, &self.basis)
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::from_basis(self.embedding().rows, self.basis.clone()).expect("independent basis")
    }

    /// Construction ledger plus analysis ledger all pass.
    pub fn all_pass(&self) -> bool {
        self.ledger.all_pass() && self.analysis.ledger.all_pass()
    }

    pub fn ensure_verified(self) -> Result<Self> {
        if let Some(c) = self.ledger.first_failure().or(self.analysis.ledger.first_failure()) {
            return Err(Error::failed(c.name.clone(), c.witness.clone()));
        }
        Ok(self)
    }
}

/// Left cointegral: nonzero `h` with `a h = ε(a) h` for all `a`.
pub fn left_cointegral(t: &StructureTensors) -> Option<Vector> {
    let n = t.dim();
    let mut sys = LinearSystem::homogeneous(n);
    for a in 0..n {
        let l = t.algebra().left_mul_matrix(&t.basis(a));
        let eps = &t.counit()[a];
        for r in 0..n {
            let mut row: Vec<Scalar> = l.row(r).to_vec();
            row[r] -= eps;
            sys.add(row, vec![Scalar::zero()]);
        }
    }
    sys.kernel().into_iter().next().map(|v| analysis::normalize_functional(&v))
}

/// Restricts `t` to the span of `basis`, pushing each `Δ(b)` through
/// `cop_map` before expressing it in the sub-basis.
fn restrict_structure(
    t: &StructureTensors,
    basis: Vec<Vector>,
    labels: Vec<String>,
    cop_map: impl Fn(&Matrix) -> Matrix,
    restrict_star: bool,
    ledger: &mut Ledger,
) -> Result<(StructureTensors, Subspace)> {
    let (alg, sub) = t.algebra().restrict(&basis, labels)?;
    let m = sub.dim();
    let p = sub.coord_matrix();
    let b = &sub.basis;
    let mut cop = crate::algebra::Tensor3::zeros(m);
    let mut escape = None;
    for (c, v) in basis.iter().enumerate() {
        let x = cop_map(&t.cop(v));
        let coords = tensor_map(&p, &x, &p);
        if escape.is_none() {
            escape = matrix_diff(&[c], &tensor_map(b, &coords, b), &x);
        }
        for (i, j, val) in nonzero_entries(&coords) {
            cop.set(c, i, j, val.clone());
        }
    }
    ledger.record("coproduct lands in the subspace tensor square", escape);
    let counit = b.transpose().mul_vec(t.counit());
    let mut restrict_map = |mat: &Matrix, conj: bool, name: &str| {
        let src = if conj { b.conj() } else { b.clone() };
        let img = mat.mul(&src);
        let coords = p.mul(&img);
        ledger.record(name.to_string(), matrix_diff(&[], &b.mul(&coords), &img));
        coords
    };
    let antipode = t.antipode().map(|s| restrict_map(s, false, "subspace antipode-invariant"));
    let star = match (restrict_star, t.star()) {
        (true, Some(s)) => Some(restrict_map(s, true, "subspace star-invariant")),
        _ => None,
    };
    let st = StructureTensors::new(alg, cop, counit, antipode, star, Kind::HypergroupCandidate)?;
    Ok((st, sub))
}

fn image_with_pivots(m: &Matrix) -> (Vec<Vector>, Vec<usize>) {
    let (_, pivots) = rref(m);
    (pivots.iter().map(|&j| m.column(j)).collect(), pivots)
}

pub(crate) fn finish(
    provenance: Provenance,
    structure: StructureTensors,
    sub: &Subspace,
    mut ledger: Ledger,
    phi: Option<&Vector>,
    psi: Option<&Vector>,
) -> HypergroupResult {
    let verdicts = verify_structure(&structure);
    ledger.extend_prefixed("", verdicts);
    let an = analyze(&structure);
    let b = &sub.basis;
    let proportional = |f: &Vector, space: &[Vector]| -> bool {
        let r = b.transpose().mul_vec(f);
        !r.is_zero() && space.len() == 1 && analysis::normalize_functional(&r) == space[0]
    };
    if let Some(phi) = phi {
        ledger.record_flag("restricted φ is a left integral", proportional(phi, &an.left_integral_space));
    }
    if let Some(psi) = psi {
        ledger.record_flag("restricted ψ is a right integral", proportional(psi, &an.right_integral_space));
    }
    let cointegral = left_cointegral(&structure);
    HypergroupResult {
        provenance,
        dim: sub.dim(),
        basis: sub.basis_vectors(),
        discrete_type: cointegral.is_some(),
        compact_type: structure.unit().is_ok(),
        cointegral,
        structure,
        analysis: an,
        ledger,
    }
}

/// `A₀ = hAh` with `Δ₀(a) = (h⊗h)Δ(a)(h⊗h)` for a regular group-like `h`.
pub fn corner_construction(
    t: &StructureTensors,
    an: &AnalysisReport,
    h: &Vector,
    report: &IdempotentReport,
) -> Result<HypergroupResult> {
    report.require_regular()?;
    let alg = t.algebra();
    let m = alg.left_mul_matrix(h).mul(&alg.right_mul_matrix(h));
    let (basis, pivots) = image_with_pivots(&m);
    let labels = pivots.iter().map(|&p| format!("h·{}·h", t.labels()[p])).collect();
    let mut ledger = Ledger::new();
    let restrict_star = report.self_adjoint == Some(true);
    let (st, sub) = restrict_structure(t, basis, labels, |x| tensor_map(&m, x, &m), restrict_star, &mut ledger)?;
    let unit_ok = st.unit().ok().map(|u| sub.embed(u)) == Some(h.clone());
    ledger.record_flag("unit of A₀ is h", unit_ok);
    let mut result = finish(Provenance::CornerA0, st, &sub, ledger, an.phi.as_ref(), an.psi.as_ref());
    if let (Some(d0), Some(d)) = (&result.analysis.delta, &an.delta) {
        let hd = t.mul(h, d);
        result.ledger.record("modular element of A₀ is hδ", vec_diff(&[], &sub.embed(d0), &hd));
    }
    Ok(result)
}

/// `A₁ = EE′(A)` with `Δ₁ = (E⊗ι)Δ` restricted.
pub fn quotient_construction(
    t: &StructureTensors,
    an: &AnalysisReport,
    ce: &CondExpectations,
    restrict_star: bool,
) -> Result<HypergroupResult> {
    let n = t.dim();
    let (e, ep) = (&ce.e, &ce.e_prime);
    let eep = e.mul(ep);
    let (basis, pivots) = image_with_pivots(&eep);
    let labels = pivots.iter().map(|&p| format!("EE′({})", t.labels()[p])).collect();
    let mut ledger = Ledger::new();
    ledger.record("EE′ = E′E", matrix_diff(&[], &eep, &ep.mul(e)));
    let (st, sub) = restrict_structure(t, basis.clone(), labels, |x| e.mul(x), restrict_star, &mut ledger)?;
    ledger.record(
        "(E⊗ι)Δ = (ι⊗E′)Δ on A₁",
        first_failure(basis.len(), |c| {
            let x = t.cop(&basis[c]);
            matrix_diff(&[c], &e.mul(&x), &x.mul(&ep.transpose()))
        }),
    );
    let products = |left: bool| {
        let mut cols = Vec::new();
        for i in 0..n {
            for b in &basis {
                cols.push(if left { t.mul(&t.basis(i), b) } else { t.mul(b, &t.basis(i)) });
            }
        }
        Matrix::from_columns(n, &cols).rank()
    };
    ledger.record_flag("AA₁ = A", products(true) == n);
    ledger.record_flag("A₁A = A", products(false) == n);
    Ok(finish(Provenance::QuotientA1, st, &sub, ledger, an.phi.as_ref(), an.psi.as_ref()))
}

/// The canonical map `γ: Â₁ → kÂk`, `γ(φ(·a)) = φ(·a)` for `a ∈ A₁`, as a
/// matrix from the dual basis of `A₁` to the corner basis, with its checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityReport {
    pub gamma: Matrix,
    pub ledger: Ledger,
    /// Whether `Δ̂(γω)(1⊗γω′) = (γ⊗γ)(Δ̂₁(ω)(1⊗ω′))` holds without
    /// compressing the left side by `k⊗k`. Observed, not required.
    pub ambient_identity: Option<bool>,
}

pub fn duality_gamma(
    t: &StructureTensors,
    an: &AnalysisReport,
    dual: &StructureTensors,
    ce: &CondExpectations,
    quotient: &HypergroupResult,
    corner: &HypergroupResult,
) -> Result<DualityReport> {
    let phi = an.phi()?;
    let t1 = &quotient.structure;
    let b1 = quotient.embedding();
    let m = t1.dim();
    let phi1 = b1.transpose().mul_vec(phi);
    let g1 = gram(t1, &phi1);
    let g1_inv = g1.inverse().ok_or_else(|| Error::NotFaithful("restricted φ on A₁".into()))?;
    let g = gram(t, phi);
    let dual1 = dual_structure(t1, t1.labels().iter().map(|l| format!("{l}^")).collect())?;
    let csub = corner.subspace();
    let ck = &corner.structure;

    let mut ledger = Ledger::new();
    ledger.record_flag("dimensions agree", ck.dim() == m);
    // Ambient images γ(f^i) = G_A · B₁ · G₁⁻¹ e_i.
    let ambient = g.mul(&b1).mul(&g1_inv);
    let coords = csub.coord_matrix().mul(&ambient);
    ledger.record("γ lands in kÂk", matrix_diff(&[], &csub.basis.mul(&coords), &ambient));
    let gamma = coords;
    ledger.record_flag("γ bijective", gamma.rows == gamma.cols && gamma.rank() == m);
    ledger.record("⟨a, γ(ω)⟩ = ω(a) on A₁", matrix_diff(&[], &b1.transpose().mul(&ambient), &Matrix::identity(m)));
    if !ledger.all_pass() {
        return Ok(DualityReport { gamma, ledger, ambient_identity: None });
    }

    let k = &ce.source_k;
    let eep = ce.e.mul(&ce.e_prime);
    ledger.record(
        "kâk = Fourier(EE′(a))",
        first_failure(t.dim(), |a| {
            let hat = g.column(a);
            let lhs = dual.mul(k, &dual.mul(&hat, k));
            vec_diff(&[a], &lhs, &g.mul_vec(&eep.column(a)))
        }),
    );
    let gcols = gamma.columns();
    ledger.record(
        "γ multiplicative",
        first_failure2(m, m, |i, j| {
            let lhs = gamma.mul_vec(&dual1.mul(&dual1.basis(i), &dual1.basis(j)));
            vec_diff(&[i, j], &lhs, &ck.mul(&gcols[i], &gcols[j]))
        }),
    );
    ledger.record(
        "(γ⊗γ)Δ̂₁ = (Δ̂)₀∘γ",
        first_failure(m, |i| {
            let lhs = tensor_map(&gamma, &dual1.cop(&dual1.basis(i)), &gamma);
            matrix_diff(&[i], &lhs, &ck.cop(&gcols[i]))
        }),
    );
    let u1 = dual1.unit()?;
    let kk = outer(k, k);
    let mut ambient_identity = true;
    ledger.record(
        "(Δ̂)₀(γω)(1⊗γω′) = (γ⊗γ)(Δ̂₁(ω)(1⊗ω′))",
        first_failure2(m, m, |i, j| {
            let gi = ambient.column(i);
            let gj = ambient.column(j);
            let full = dual.tensor_mul(&dual.cop(&gi), &outer(k, &gj));
            let lhs = dual.tensor_mul(&kk, &full);
            let inner = dual1.tensor_mul(&dual1.cop(&dual1.basis(i)), &outer(u1, &dual1.basis(j)));
            let rhs = tensor_map(&ambient, &inner, &ambient);
            ambient_identity &= full == rhs;
            matrix_diff(&[i, j], &lhs, &rhs)
        }),
    );
    ledger.record("ε̂₀∘γ = ε̂₁", vec_diff(&[], &gamma.transpose().mul_vec(ck.counit()), dual1.counit()));
    if let (Some(s0), Some(s1)) = (ck.antipode(), dual1.antipode()) {
        ledger.record("Ŝ₀∘γ = γ∘Ŝ₁", matrix_diff(&[], &s0.mul(&gamma), &gamma.mul(s1)));
    }
    if let (Some(st0), Some(st1)) = (ck.star(), dual1.star()) {
        ledger.record("γ(ω*) = γ(ω)*", matrix_diff(&[], &st0.mul(&gamma.conj()), &gamma.mul(st1)));
    }
    Ok(DualityReport { gamma, ledger, ambient_identity: Some(ambient_identity) })
}

/// Centrality of `k` and its consequences.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralReport {
    pub central: bool,
    pub e_equals_e_prime: bool,
    pub delta1_multiplicative: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta1_witness: Option<Witness>,
    pub dual_multiplicative: bool,
    pub ledger: Ledger,
}

pub fn central_case_check(
    dual: &StructureTensors,
    ce: &CondExpectations,
    quotient: &HypergroupResult,
    corner: &HypergroupResult,
) -> CentralReport {
    let k = &ce.source_k;
    let central = (0..dual.dim()).all(|j| {
        let f = dual.basis(j);
        dual.mul(k, &f) == dual.mul(&f, k)
    });
    let e_equals_e_prime = ce.e == ce.e_prime;
    let q_ledger = verify_structure(&quotient.structure.clone().with_kind(Kind::QuantumGroup));
    let c_ledger = verify_structure(&corner.structure.clone().with_kind(Kind::QuantumGroup));
    let mult = q_ledger.get("coproduct multiplicative").expect("quantum-group check");
    let delta1_multiplicative = mult.pass;
    let delta1_witness = mult.witness.clone();
    let dual_multiplicative = c_ledger.passed("coproduct multiplicative") == Some(true);

    let mut ledger = Ledger::new();
    ledger.record_flag("k central ⇔ E = E′", central == e_equals_e_prime);
    ledger.record_flag("k central ⇔ Δ₁ multiplicative", central == delta1_multiplicative);
    ledger.record_flag("k central ⇔ (Δ̂)₀ multiplicative", central == dual_multiplicative);
    if central {
        ledger.extend_prefixed("A₁ as quantum group: ", q_ledger);
        ledger.extend_prefixed("kÂk as quantum group: ", c_ledger);
    }
    CentralReport { central, e_equals_e_prime, delta1_multiplicative, delta1_witness, dual_multiplicative, ledger }
}

/// An algebraic quantum group with its analysis, dual, and dual analysis.
#[derive(Clone, Debug)]
pub struct QuantumGroupContext {
    pub t: StructureTensors,
    pub analysis: AnalysisReport,
    pub dual: StructureTensors,
    pub dual_analysis: AnalysisReport,
}

impl QuantumGroupContext {
    pub fn new(t: StructureTensors) -> Result<Self> {
        Self::with_dual_labels(t, None)
    }

    pub fn with_dual_labels(t: StructureTensors, labels: Option<Vec<String>>) -> Result<Self> {
        let an = analyze(&t);
        an.phi()?;
        if !an.faithful_left {
            return Err(Error::NotFaithful("left integral of the ambient quantum group".into()));
        }
        let labels = labels.unwrap_or_else(|| t.labels().iter().map(|l| format!("{l}^")).collect());
        let dual = dual_structure(&t, labels)?;
        let dual_analysis = analyze(&dual);
        Ok(Self { t, analysis: an, dual, dual_analysis })
    }
}

/// Everything derived from one `(A, k)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineReport {
    pub idempotent: IdempotentReport,
    pub expectations: CondExpectations,
    pub expectation_laws: Ledger,
    pub reconstruct_k_round_trip: bool,
    pub quotient: HypergroupResult,
    pub corner: HypergroupResult,
    pub duality: DualityReport,
    pub central: CentralReport,
}

impl PipelineReport {
    pub fn all_pass(&self) -> bool {
        self.idempotent.checks.all_pass()
            && self.expectation_laws.all_pass()
            && self.reconstruct_k_round_trip
            && self.quotient.all_pass()
            && self.corner.all_pass()
            && self.duality.ledger.all_pass()
            && self.central.ledger.all_pass()
    }

    /// `(section, check)` for every failing check.
    pub fn failures(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut push = |section: &str, l: &Ledger| {
            out.extend(l.failures().map(|c| (section.to_string(), c.name.clone())));
        };
        push("idempotent", &self.idempotent.checks);
        push("expectations", &self.expectation_laws);
        push("quotient", &self.quotient.ledger);
        push("quotient analysis", &self.quotient.analysis.ledger);
        push("corner", &self.corner.ledger);
        push("corner analysis", &self.corner.analysis.ledger);
        push("duality", &self.duality.ledger);
        push("central", &self.central.ledger);
        if !self.reconstruct_k_round_trip {
            out.push(("expectations".into(), "reconstruct k round trip".into()));
        }
        out
    }
}

/// Classifies `k ∈ Â`, builds `E`, `E′`, both constructions and `γ`.
pub fn run_pipeline(ctx: &QuantumGroupContext, k: &Vector) -> Result<PipelineReport> {
    let idem = classify_group_like(&ctx.dual, &ctx.dual_analysis, k);
    idem.require_regular()?;
    let ce = expectations_from_k(&ctx.t, k);
    let laws = verify_expectation_laws(&ctx.t, &ctx.analysis, &ce, Classification::Regular);
    let round_trip = reconstruct_k(&ctx.t, &ctx.dual, &ctx.dual_analysis, &ce.e, &ce.e_prime)
        .map(|k2| k2 == *k)
        .unwrap_or(false);
    let restrict_star = idem.self_adjoint == Some(true) && ctx.t.star().is_some();
    let quotient = quotient_construction(&ctx.t, &ctx.analysis, &ce, restrict_star)?;
    let corner = corner_construction(&ctx.dual, &ctx.dual_analysis, k, &idem)?;
    let duality = duality_gamma(&ctx.t, &ctx.analysis, &ctx.dual, &ce, &quotient, &corner)?;
    let central = central_case_check(&ctx.dual, &ce, &quotient, &corner);
    Ok(PipelineReport {
        idempotent: idem,
        expectations: ce,
        expectation_laws: laws,
        reconstruct_k_round_trip: round_trip,
        quotient,
        corner,
        duality,
        central,
    })
}

/// Compares two constructions spanning the same subspace of one ambient
/// algebra: basis change must be monomial and all tensors must agree.
pub fn compare_results(a: &HypergroupResult, b: &HypergroupResult) -> Ledger {
    let mut ledger = Ledger::new();
    let sb = b.subspace();
    let ea = a.embedding();
    let same_span = a.dim == b.dim && ea.columns().iter().all(|v| sb.contains(v));
    ledger.record_flag("same span in the ambient algebra", same_span);
    if !same_span {
        return ledger;
    }
    let tm = sb.coord_matrix().mul(&ea);
    let monomial = (0..tm.cols).all(|j| tm.column(j).support().count() == 1);
    ledger.record_flag("basis bijection up to scale", monomial);
    ledger.extend_prefixed("", crate::structure::compare_via(&a.structure, &b.structure, &tm));
    ledger
}
