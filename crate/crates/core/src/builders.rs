//! Concrete finite examples: function and group algebras, subgroup
//! idempotents, double cosets, Hopf epimorphisms and bicrossproducts.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{vec_diff, AlgebraPresentation, Tensor3};
use crate::analysis::{self, analyze, gram};
use crate::duality::{act_left_values, act_right_values, dual_structure, Pairing};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, MatchedPair, Subgroup};
use crate::hypergroup::{self, classify_group_like, HypergroupResult, IdempotentReport, PipelineReport, Provenance};
use crate::ledger::{Ledger, Witness};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::scalar::Scalar;
use crate::structure::{
    first_failure, first_failure2, indicator, matrix_diff, outer, tensor_map, verify_structure, Kind,
    StructureTensors,
};

/// Errors with the first failing check unless the ledger is clean.
fn require(ledger: &Ledger) -> Result<()> {
    match ledger.first_failure() {
        Some(c) => Err(Error::failed(c.name.clone(), c.witness.clone())),
        None => Ok(()),
    }
}

fn verified(t: StructureTensors) -> Result<StructureTensors> {
    require(&verify_structure(&t))?;
    Ok(t)
}

fn permutation_matrix(n: usize, image: impl Fn(usize) -> usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        m[(image(j), j)] = Scalar::one();
    }
    m
}

/// `K(G)` on the basis `δ_p`.
pub fn build_function_algebra(g: &FiniteGroup) -> Result<StructureTensors> {
    let n = g.order;
    let mut mult = Tensor3::zeros(n);
    let mut cop = Tensor3::zeros(n);
    for p in 0..n {
        mult.set(p, p, p, Scalar::one());
        for s in 0..n {
            cop.set(g.mul(s, p), s, p, Scalar::one());
        }
    }
    let labels = g.labels.iter().map(|l| format!("δ_{l}")).collect();
    let algebra = AlgebraPresentation::new(mult, labels)?;
    let counit = indicator(n, [g.identity]);
    let antipode = permutation_matrix(n, |p| g.inv(p));
    let star = Matrix::identity(n);
    verified(StructureTensors::new(algebra, cop, counit, Some(antipode), Some(star), Kind::QuantumGroup)?)
}

/// `ℂ[G]` on the basis `λ_p`.
pub fn build_group_algebra(g: &FiniteGroup) -> Result<StructureTensors> {
    let n = g.order;
    let mut mult = Tensor3::zeros(n);
    let mut cop = Tensor3::zeros(n);
    for p in 0..n {
        cop.set(p, p, p, Scalar::one());
        for q in 0..n {
            mult.set(p, q, g.mul(p, q), Scalar::one());
        }
    }
    let labels = g.labels.iter().map(|l| format!("λ_{l}")).collect();
    let algebra = AlgebraPresentation::new(mult, labels)?;
    let counit = Vector::new(vec![Scalar::one(); n]);
    let inv = permutation_matrix(n, |p| g.inv(p));
    verified(StructureTensors::new(algebra, cop, counit, Some(inv.clone()), Some(inv), Kind::QuantumGroup)?)
}

/// `⟨f, λ_s⟩ = f(s)` between `K(G)` and `ℂ[G]`.
pub fn function_group_pairing(g: &FiniteGroup) -> Result<Pairing> {
    Pairing::new(build_function_algebra(g)?, build_group_algebra(g)?, Matrix::identity(g.order))
}

/// `h = 1_H ∈ K(G)` and `k = (1/|H|) Σ_{r∈H} λ_r ∈ ℂ[G]`.
pub fn subgroup_idempotents(g: &FiniteGroup, h: &Subgroup) -> Result<(Vector, Vector)> {
    let sub = Subgroup::new(g, h.members.iter().copied())?;
    let hv = indicator(g.order, sub.members.iter().copied());
    let k = hv.scale(&Scalar::ratio(1, sub.order() as i64));
    Ok((hv, k))
}

/// `φ(·h)` with `φ` rescaled so that `φ(h) = 1`; returns the element and
/// the rescaling factor.
pub fn fourier_normalized(t: &StructureTensors, phi: &Vector, h: &Vector) -> Result<(Vector, Scalar)> {
    let c = phi.dot(h);
    let inv = c.inv().ok_or_else(|| Error::NoSolution("φ(h) = 0".into()))?;
    let phi1 = phi.scale(&inv);
    Ok((gram(t, &phi1).mul_vec(h), inv))
}

/// `Δ₁(f)(p,q) = (1/|H|) Σ_{r∈H} f(prq)` on all point pairs.
pub fn double_coset_formula(g: &FiniteGroup, h: &Subgroup, f: &Vector) -> Matrix {
    let n = g.order;
    let w = Scalar::ratio(1, h.order() as i64);
    let mut out = Matrix::zeros(n, n);
    for p in 0..n {
        for q in 0..n {
            let mut acc = Scalar::zero();
            for &r in &h.members {
                acc += &f[g.mul(g.mul(p, r), q)];
            }
            out[(p, q)] = acc.mul_ref(&w);
        }
    }
    out
}

/// The double-coset hypergroup built straight from the coset indicators.
pub fn double_coset_direct(g: &FiniteGroup, h: &Subgroup) -> Result<HypergroupResult> {
    let h = Subgroup::new(g, h.members.iter().copied())?;
    let n = g.order;
    let cosets = h.double_cosets(g);
    let m = cosets.len();
    let mut which = vec![0; n];
    for (c, d) in cosets.iter().enumerate() {
        for &x in d {
            which[x] = c;
        }
    }
    let basis: Vec<Vector> = cosets.iter().map(|d| indicator(n, d.iter().copied())).collect();
    let mut mult = Tensor3::zeros(m);
    for c in 0..m {
        mult.set(c, c, c, Scalar::one());
    }
    let mut ledger = Ledger::new();
    let mut cop = Tensor3::zeros(m);
    let mut block_failure = None;
    for (c, f) in basis.iter().enumerate() {
        let table = double_coset_formula(g, &h, f);
        let reps: Vec<usize> = cosets.iter().map(|d| d[0]).collect();
        for (a, &p) in reps.iter().enumerate() {
            for (b, &q) in reps.iter().enumerate() {
                let v = table[(p, q)].clone();
                if !v.is_zero() {
                    cop.set(c, a, b, v);
                }
            }
        }
        if block_failure.is_none() {
            block_failure = first_failure2(n, n, |p, q| {
                let expect = cop.get(c, which[p], which[q]);
                (table[(p, q)] != *expect).then(|| Witness::new(vec![c, p, q], table[(p, q)].clone(), expect.clone()))
            });
        }
    }
    ledger.record("Δ₁ constant on double-coset blocks", block_failure);
    let counit = Vector::new((0..m).map(|c| if c == which[g.identity] { Scalar::one() } else { Scalar::zero() }).collect());
    let antipode = permutation_matrix(m, |c| which[g.inv(cosets[c][0])]);
    let labels = cosets.iter().map(|d| format!("H{}H", g.labels[d[0]])).collect();
    let algebra = AlgebraPresentation::new(mult, labels)?;
    let st = StructureTensors::new(algebra, cop, counit, Some(antipode), Some(Matrix::identity(m)), Kind::HypergroupCandidate)?;
    let sub = Subspace::from_basis(n, basis)?;
    let counting = Vector::new(vec![Scalar::one(); n]);
    let result = hypergroup::finish(Provenance::DirectDoubleCoset, st, &sub, ledger, Some(&counting), Some(&counting));
    result.ensure_verified()
}

/// A surjective Hopf algebra map `π: A → B` (`map` is `dim B × dim A`).
#[derive(Clone, Debug)]
pub struct HopfEpimorphism {
    pub source: StructureTensors,
    pub target: StructureTensors,
    pub map: Matrix,
}

impl HopfEpimorphism {
    /// Validates every invariant before returning.
    pub fn new(source: StructureTensors, target: StructureTensors, map: Matrix) -> Result<Self> {
        if map.rows != target.dim() || map.cols != source.dim() {
            return Err(Error::DimensionMismatch("epimorphism matrix shape".into()));
        }
        let epi = Self { source, target, map };
        require(&epi.verify())?;
        Ok(epi)
    }

    pub fn verify(&self) -> Ledger {
        let (a, b, p) = (&self.source, &self.target, &self.map);
        let n = a.dim();
        let cols = p.columns();
        let mut ledger = Ledger::new();
        ledger.record_flag("π surjective", p.rank() == b.dim());
        ledger.record(
            "π multiplicative",
            first_failure2(n, n, |i, j| {
                vec_diff(&[i, j], &p.mul_vec(&a.mul(&a.basis(i), &a.basis(j))), &b.mul(&cols[i], &cols[j]))
            }),
        );
        if let (Ok(ua), Ok(ub)) = (a.unit(), b.unit()) {
            ledger.record("π unital", vec_diff(&[], &p.mul_vec(ua), ub));
        }
        ledger.record(
            "(π⊗π)Δ_A = Δ_B∘π",
            first_failure(n, |i| matrix_diff(&[i], &tensor_map(p, &a.cop(&a.basis(i)), p), &b.cop(&cols[i]))),
        );
        ledger.record("ε_B∘π = ε_A", vec_diff(&[], &p.transpose().mul_vec(b.counit()), a.counit()));
        if let (Some(sa), Some(sb)) = (a.antipode(), b.antipode()) {
            ledger.record("π∘S_A = S_B∘π", matrix_diff(&[], &p.mul(sa), &sb.mul(p)));
        }
        ledger
    }

    /// Restriction of functions `K(G) → K(H)`.
    pub fn restriction(g: &FiniteGroup, h: &Subgroup) -> Result<Self> {
        let source = build_function_algebra(g)?;
        let target = build_function_algebra(&g.induced(h)?)?;
        let mut map = Matrix::zeros(h.order(), g.order);
        for (a, &p) in h.members.iter().enumerate() {
            map[(a, p)] = Scalar::one();
        }
        Self::new(source, target, map)
    }

    pub fn identity(t: StructureTensors) -> Result<Self> {
        let n = t.dim();
        Self::new(t.clone(), t, Matrix::identity(n))
    }
}

/// `k = φ_B∘π` with the cointegral `h` solved from `k = φ_A(·h)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EpiIdempotent {
    pub k: Vector,
    /// `φ_B` normalized by `φ_B(1) = 1`.
    pub phi_b: Vector,
    /// Cointegral, rescaled to be idempotent.
    pub h: Vector,
    /// `φ_A` rescaled so that `φ_A(h) = 1`.
    pub phi_a: Vector,
    /// Factor applied to the counting-normalized `φ_A`.
    pub phi_a_scale: Scalar,
    pub idempotent: IdempotentReport,
    pub checks: Ledger,
}

pub fn hopf_epi_idempotent(epi: &HopfEpimorphism) -> Result<EpiIdempotent> {
    require(&epi.verify())?;
    let (a, b, p) = (&epi.source, &epi.target, &epi.map);
    let an_a = analyze(a);
    let an_b = analyze(b);
    let phi_b = an_b.phi()?;
    let one_b = b.unit()?;
    let c = phi_b.dot(one_b);
    let phi_b = phi_b.scale(&c.inv().ok_or_else(|| Error::NoSolution("φ_B(1) = 0".into()))?);
    let k = p.transpose().mul_vec(&phi_b);

    let mut checks = Ledger::new();
    let (delta_a, delta_b) = (an_a.delta()?, an_b.delta()?);
    checks.record("π(δ_A) = δ_B", vec_diff(&[], &p.mul_vec(delta_a), delta_b));
    checks.record("B unimodular", vec_diff(&[], delta_b, one_b));
    let pairing = k.dot(delta_a);
    checks.record("⟨k, δ_A⟩ = 1", (!pairing.is_one()).then(|| Witness::new(vec![], pairing, Scalar::one())));

    let phi_a = an_a.phi()?;
    let g = gram(a, phi_a);
    let ginv = g.inverse().ok_or_else(|| Error::NotFaithful("φ_A".into()))?;
    let raw = ginv.mul_vec(&k);
    let sq = a.mul(&raw, &raw);
    let (lead, lead_val) = raw.leading().ok_or_else(|| Error::NoSolution("k = 0".into()))?;
    let scale = sq[lead].mul_ref(&lead_val.inv().expect("nonzero"));
    checks.record("h² proportional to h", vec_diff(&[], &sq, &raw.scale(&scale)));
    let inv = scale.inv().ok_or_else(|| Error::NoSolution("h² = 0".into()))?;
    let h = raw.scale(&inv);
    let phi_a1 = phi_a.scale(&scale);
    let value = phi_a1.dot(&h);
    checks.record("φ_A(h) = 1", (!value.is_one()).then(|| Witness::new(vec![], value, Scalar::one())));
    checks.record("k = φ_A(·h)", vec_diff(&[], &gram(a, &phi_a1).mul_vec(&h), &k));

    let dual = dual_structure(a, a.labels().iter().map(|l| format!("{l}^")).collect())?;
    let idem = classify_group_like(&dual, &analyze(&dual), &k);
    require(&checks)?;
    idem.require_regular()?;
    Ok(EpiIdempotent { k, phi_b, h, phi_a: phi_a1, phi_a_scale: scale, idempotent: idem, checks })
}

/// Checks `h` is a left cointegral of `A₁`: `a h = ε(a) h` for `a ∈ A₁`.
pub fn cointegral_in_quotient(a: &StructureTensors, quotient: &HypergroupResult, h: &Vector) -> Ledger {
    let mut ledger = Ledger::new();
    let sub = quotient.subspace();
    ledger.record_flag("h ∈ A₁", sub.contains(h));
    ledger.record(
        "a·h = ε(a)h on A₁",
        first_failure(quotient.dim, |c| {
            let b = &quotient.basis[c];
            vec_diff(&[c], &a.mul(b, h), &h.scale(&a.eps(b)))
        }),
    );
    ledger
}

fn bicross_index(mp: &MatchedPair, r: usize, u: usize) -> usize {
    r * mp.g2.order + u
}

fn integral_checks(t: &StructureTensors, phi: &Vector, name: &str) -> Ledger {
    let mut ledger = Ledger::new();
    let Ok(unit) = t.unit() else {
        ledger.record_flag("unit", false);
        return ledger;
    };
    let n = t.dim();
    ledger.record(
        format!("{name} left integral"),
        first_failure(n, |i| vec_diff(&[i], &act_left_values(t, phi, &t.basis(i)), &unit.scale(&phi[i]))),
    );
    ledger.record(
        format!("{name} right integral"),
        first_failure(n, |i| vec_diff(&[i], &act_right_values(t, &t.basis(i), phi), &unit.scale(&phi[i]))),
    );
    ledger
}

/// Right-left bicrossproduct `A` on the basis `λ_r # δ_u`.
pub fn bicrossproduct_right_left(mp: &MatchedPair) -> Result<StructureTensors> {
    mp.validate()?;
    let (g1, g2) = (&mp.g1, &mp.g2);
    let n = g1.order * g2.order;
    let idx = |r, u| bicross_index(mp, r, u);
    let mut mult = Tensor3::zeros(n);
    let mut cop = Tensor3::zeros(n);
    let mut labels = Vec::with_capacity(n);
    let mut counit = Vector::zeros(n);
    let mut antipode = Matrix::zeros(n, n);
    let mut star = Matrix::zeros(n, n);
    for r in g1.elements() {
        for u in g2.elements() {
            let i = idx(r, u);
            labels.push(format!("λ_{}#δ_{}", g1.labels[r], g2.labels[u]));
            for s in g1.elements() {
                for v in g2.elements() {
                    if u == mp.act_left(s, v) {
                        mult.set(i, idx(s, v), idx(g1.mul(r, s), v), Scalar::one());
                    }
                }
            }
            for w in g2.elements() {
                cop.set(i, idx(r, w), idx(mp.act_right(r, w), g2.mul(g2.inv(w), u)), Scalar::one());
            }
            if u == g2.identity {
                counit[i] = Scalar::one();
            }
            antipode[(idx(g1.inv(mp.act_right(r, u)), g2.inv(mp.act_left(r, u))), i)] = Scalar::one();
            star[(idx(g1.inv(r), mp.act_left(r, u)), i)] = Scalar::one();
        }
    }
    let algebra = AlgebraPresentation::new(mult, labels)?;
    let t = verified(StructureTensors::new(algebra, cop, counit, Some(antipode), Some(star), Kind::QuantumGroup)?)?;
    let phi = Vector::new((0..n).map(|i| if i / g2.order == g1.identity { Scalar::one() } else { Scalar::zero() }).collect());
    require(&integral_checks(&t, &phi, "φ_A"))?;
    Ok(t)
}

/// Left-right bicrossproduct `B` on the basis `δ_r # λ_u`.
pub fn bicrossproduct_left_right(mp: &MatchedPair) -> Result<StructureTensors> {
    mp.validate()?;
    let (g1, g2) = (&mp.g1, &mp.g2);
    let n = g1.order * g2.order;
    let idx = |r, u| bicross_index(mp, r, u);
    let mut mult = Tensor3::zeros(n);
    let mut cop = Tensor3::zeros(n);
    let mut labels = Vec::with_capacity(n);
    let mut counit = Vector::zeros(n);
    let mut antipode = Matrix::zeros(n, n);
    let mut star = Matrix::zeros(n, n);
    for r in g1.elements() {
        for u in g2.elements() {
            let i = idx(r, u);
            labels.push(format!("δ_{}#λ_{}", g1.labels[r], g2.labels[u]));
            let s = mp.act_right(r, u);
            for v in g2.elements() {
                mult.set(i, idx(s, v), idx(r, g2.mul(u, v)), Scalar::one());
            }
            for t in g1.elements() {
                cop.set(i, idx(g1.mul(r, g1.inv(t)), mp.act_left(t, u)), idx(t, u), Scalar::one());
            }
            if r == g1.identity {
                counit[i] = Scalar::one();
            }
            antipode[(idx(g1.inv(mp.act_right(r, u)), g2.inv(mp.act_left(r, u))), i)] = Scalar::one();
            star[(idx(mp.act_right(r, u), g2.inv(u)), i)] = Scalar::one();
        }
    }
    let algebra = AlgebraPresentation::new(mult, labels)?;
    let t = verified(StructureTensors::new(algebra, cop, counit, Some(antipode), Some(star), Kind::QuantumGroup)?)?;
    let phi = Vector::new((0..n).map(|i| if i % g2.order == g2.identity { Scalar::one() } else { Scalar::zero() }).collect());
    require(&integral_checks(&t, &phi, "φ_B"))?;
    Ok(t)
}

/// `⟨λ_r#δ_u, δ_s#λ_v⟩ = δ(r,s)δ(u,v)`.
pub fn bicross_pairing(mp: &MatchedPair) -> Result<Pairing> {
    let a = bicrossproduct_right_left(mp)?;
    let b = bicrossproduct_left_right(mp)?;
    let n = a.dim();
    Pairing::new(a, b, Matrix::identity(n))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BicrossIdempotent {
    pub k: Vector,
    pub report: IdempotentReport,
    pub central: bool,
    pub right_action_trivial: bool,
}

/// `k = 1 # k₀` with `k₀ = (1/|G₂|) Σ_u λ_u`.
pub fn bicross_idempotent(mp: &MatchedPair, b: &StructureTensors) -> Result<BicrossIdempotent> {
    let n = mp.g1.order * mp.g2.order;
    if b.dim() != n {
        return Err(Error::DimensionMismatch("bicrossproduct dimension".into()));
    }
    let k = Vector::new(vec![Scalar::ratio(1, mp.g2.order as i64); n]);
    let report = classify_group_like(b, &analyze(b), &k);
    report.require_regular()?;
    let central = (0..n).all(|j| b.mul(&k, &b.basis(j)) == b.mul(&b.basis(j), &k));
    Ok(BicrossIdempotent { k, report, central, right_action_trivial: mp.right_action_trivial() })
}

/// Compares the corner and quotient of a bicrossproduct pipeline with the
/// hand-built models `D` (invariant functions) and `C` (invariant group
/// algebra elements), including the restricted pairing between them.
pub fn bicross_corner_formulas(mp: &MatchedPair, pipeline: &PipelineReport) -> Result<Ledger> {
    let (g1, g2) = (&mp.g1, &mp.g2);
    let (n1, n2) = (g1.order, g2.order);
    let n = n1 * n2;
    let w = Scalar::ratio(1, n2 as i64);
    // P(δ_r) and Q(λ_r) as functions on G₁.
    let avg = |r: usize| {
        let mut v = Vector::zeros(n1);
        for u in g2.elements() {
            v[mp.act_right(r, u)] += &w;
        }
        v
    };
    let lift = |f: &Vector, fill: &Scalar| {
        let mut v = Vector::zeros(n);
        for r in 0..n1 {
            for u in 0..n2 {
                v[bicross_index(mp, r, u)] = f[r].mul_ref(fill);
            }
        }
        v
    };
    let x: Vec<Vector> = (0..n1).map(|r| lift(&avg(r), &w)).collect();
    let y: Vec<Vector> = (0..n1).map(|r| lift(&avg(r), &Scalar::one())).collect();
    let corner = &pipeline.corner;
    let quotient = &pipeline.quotient;
    let (cs, qs) = (corner.subspace(), quotient.subspace());
    let orbits = mp.right_orbits().len();

    let mut ledger = Ledger::new();
    ledger.record_flag("dim D = number of G₂-orbits", corner.dim == orbits);
    ledger.record_flag("dim C = number of G₂-orbits", quotient.dim == orbits);
    let spans = |vs: &[Vector], s: &Subspace| vs.iter().all(|v| s.contains(v)) && Matrix::from_columns(n, vs).rank() == s.dim();
    ledger.record_flag("kÂk spanned by P(δ_r)#k₀", spans(&x, &cs));
    ledger.record_flag("A₁ spanned by Q(λ_r)#1", spans(&y, &qs));
    if !ledger.all_pass() {
        require(&ledger)?;
    }
    let cst = &corner.structure;
    let qst = &quotient.structure;
    ledger.record(
        "Δ_D(P(δ_r)) = Σ_t P(δ_{rt⁻¹})⊗P(δ_t)",
        first_failure(n1, |r| {
            let lhs = tensor_map(&cs.basis, &cst.cop(&cs.coords(&x[r])), &cs.basis);
            let mut rhs = Matrix::zeros(n, n);
            for t in g1.elements() {
                rhs = rhs.add(&outer(&x[g1.mul(r, g1.inv(t))], &x[t]));
            }
            matrix_diff(&[r], &lhs, &rhs)
        }),
    );
    ledger.record(
        "ε₀(P(δ_r)#k₀) = δ(r,e)",
        first_failure(n1, |r| {
            let lhs = cst.eps(&cs.coords(&x[r]));
            let rhs = if r == g1.identity { Scalar::one() } else { Scalar::zero() };
            (lhs != rhs).then(|| Witness::new(vec![r], lhs, rhs))
        }),
    );
    ledger.record(
        "S₀(P(δ_r)#k₀) = P(δ_{r⁻¹})#k₀",
        first_failure(n1, |r| {
            let s = cst.apply_antipode(&cs.coords(&x[r]))?;
            vec_diff(&[r], &cs.embed(&s), &x[g1.inv(r)])
        }),
    );
    ledger.record(
        "Δ₁(Q(λ_r)#1) = (Q(λ_r)#1)⊗(Q(λ_r)#1)",
        first_failure(n1, |r| {
            let lhs = tensor_map(&qs.basis, &qst.cop(&qs.coords(&y[r])), &qs.basis);
            matrix_diff(&[r], &lhs, &outer(&y[r], &y[r]))
        }),
    );
    ledger.record(
        "restricted pairing is ⟨Q(λ_r), P(δ_s)⟩",
        first_failure2(n1, n1, |r, s| {
            let lhs = y[r].dot(&x[s]);
            let rhs = avg(r).dot(&avg(s));
            (lhs != rhs).then(|| Witness::new(vec![r, s], lhs, rhs))
        }),
    );
    require(&ledger)?;
    Ok(ledger)
}

/// `φ_A(λ_r#δ_u) = δ(r,e)` for the right-left bicrossproduct.
pub fn bicross_integral(mp: &MatchedPair) -> Vector {
    let n = mp.g1.order * mp.g2.order;
    Vector::new((0..n).map(|i| if i / mp.g2.order == mp.g1.identity { Scalar::one() } else { Scalar::zero() }).collect())
}

/// Normalized left integral, for callers that only need `φ`.
pub fn left_integral(t: &StructureTensors) -> Result<Vector> {
    analysis::left_integrals(t)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NoSolution("no left integral".into()))
}
