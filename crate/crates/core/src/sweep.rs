//! Catalog sweep: every group up to a size bound, every subgroup, both the
//! function-algebra and the group-algebra side, plus an optional search for
//! exceptional group-like idempotents.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, AnalysisReport};
use crate::builders::{
    build_function_algebra, build_group_algebra, cointegral_in_quotient, double_coset_direct, fourier_normalized,
    hopf_epi_idempotent, subgroup_idempotents, HopfEpimorphism,
};
use crate::error::Result;
use crate::group::{all_subgroups, CatalogName, FiniteGroup, Subgroup};
use crate::hypergroup::{
    classify_group_like, compare_results, run_pipeline, Classification, PipelineReport, QuantumGroupContext,
};
use crate::ledger::{Ledger, Witness};
use crate::linalg::{Matrix, Vector};
use crate::report::{direct_formula_ledger, Summary};
use crate::scalar::Scalar;
use crate::structure::{compare_via, verify_structure, Kind, StructureTensors};

pub const DEFAULT_MAX_ORDER: usize = 24;

/// Deliberate corruption of one builder's output, for testing that
/// failures stay attached to the corrupted construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    FunctionAlgebra,
    GroupAlgebra,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepOptions {
    pub max_order: usize,
    pub search_exceptional: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
    /// Restrict to catalog entries whose name contains this string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only: Option<String>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { max_order: DEFAULT_MAX_ORDER, search_exceptional: false, fault: None, only: None }
    }
}

/// Cyclic 2..8, dihedral 3..6, symmetric 3 and 4.
pub fn catalog() -> Vec<CatalogName> {
    let mut out: Vec<CatalogName> = (2..=8).map(|n| CatalogName::Cyclic { n }).collect();
    out.extend((3..=6).map(|n| CatalogName::Dihedral { n }));
    out.extend([CatalogName::Symmetric { n: 3 }, CatalogName::Symmetric { n: 4 }]);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepSide {
    /// `A = K(G)`, `k = (1/|H|) Σ_{r∈H} λ_r`.
    Function,
    /// `A = ℂ[G]`, `k = 1_H`.
    Group,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepEntry {
    pub subgroup: String,
    pub order: usize,
    pub index: usize,
    pub normal: bool,
    pub side: SweepSide,
    pub central: Option<bool>,
    pub quotient_dim: Option<usize>,
    pub corner_dim: Option<usize>,
    pub checks: Ledger,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSweep {
    pub group: String,
    pub order: usize,
    pub subgroup_count: usize,
    pub function_algebra: Ledger,
    pub group_algebra: Ledger,
    pub entries: Vec<SweepEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExceptionalSearch {
    pub algebras: usize,
    pub candidates: usize,
    pub group_like: usize,
    pub regular: usize,
    pub exceptional_hits: Vec<String>,
    pub finding: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub options: SweepOptions,
    pub groups: Vec<GroupSweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional_search: Option<ExceptionalSearch>,
}

impl SweepReport {
    pub fn ledgers(&self) -> impl Iterator<Item = &Ledger> {
        self.groups.iter().flat_map(|g| {
            [&g.function_algebra, &g.group_algebra].into_iter().chain(g.entries.iter().map(|e| &e.checks))
        })
    }

    pub fn tally(&self, s: &mut Summary) {
        for l in self.ledgers() {
            s.add_ledger(l);
        }
    }

    pub fn failing_entries(&self) -> Vec<(String, String, SweepSide, String)> {
        let mut out = Vec::new();
        for g in &self.groups {
            for e in &g.entries {
                for c in e.checks.failures() {
                    out.push((g.group.clone(), e.subgroup.clone(), e.side, c.name.clone()));
                }
            }
        }
        out
    }

    pub fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "\nsweep (max order {})", self.options.max_order);
        for g in &self.groups {
            let checks: usize = g.entries.iter().map(|e| e.checks.len()).sum();
            let failed: usize = g.entries.iter().map(|e| e.checks.failures().count()).sum();
            let obj_failed = g.function_algebra.failures().count() + g.group_algebra.failures().count();
            let _ = writeln!(
                out,
                "  {:<16} |G| = {:>2}  subgroups {:>2}  checks {:>6}  failed {}",
                g.group,
                g.order,
                g.subgroup_count,
                checks,
                failed + obj_failed
            );
            for e in &g.entries {
                for c in e.checks.failures() {
                    let _ = writeln!(out, "    FAIL {:?} {}: {}", e.side, e.subgroup, c.name);
                }
            }
        }
        if let Some(x) = &self.exceptional_search {
            let _ = writeln!(
                out,
                "  exceptional search: {} algebras, {} candidates, {} group-like, {} exceptional",
                x.algebras,
                x.candidates,
                x.group_like,
                x.exceptional_hits.len()
            );
            let _ = writeln!(out, "  {}", x.finding);
        }
    }
}

/// Adds one to a coproduct coefficient of the identity element.
fn corrupt(t: &StructureTensors) -> Result<StructureTensors> {
    let mut cop = t.coproduct_tensor().clone();
    let e = t.unit()?.leading().map(|(i, _)| i).unwrap_or(0);
    let v = cop.get(e, 0, 0).clone() + Scalar::one();
    cop.set(e, 0, 0, v);
    StructureTensors::new(
        t.algebra().clone(),
        cop,
        t.counit().clone(),
        t.antipode().cloned(),
        t.star().cloned(),
        t.kind(),
    )
}

fn object_ledger(t: &StructureTensors, an: &AnalysisReport) -> Ledger {
    let mut l = Ledger::new();
    l.extend_prefixed("axioms: ", verify_structure(t));
    l.extend_prefixed("analysis: ", an.ledger.clone());
    if let (Some(d), Ok(u)) = (&an.delta, t.unit()) {
        l.record_flag("δ = 1", d == u);
    }
    nu_check(&mut l, "ν = 1", an);
    l
}

fn nu_check(l: &mut Ledger, name: &str, an: &AnalysisReport) {
    match &an.nu {
        Some(nu) => l.record(name, (!nu.is_one()).then(|| Witness::new(vec![], nu.clone(), Scalar::one()))),
        None => l.record_note(name, false, "no scaling constant"),
    };
}

fn pipeline_ledger(l: &mut Ledger, r: &PipelineReport) {
    l.extend_prefixed("idempotent: ", r.idempotent.checks.clone());
    l.extend_prefixed("expectations: ", r.expectation_laws.clone());
    l.record_flag("expectations: reconstruct k round trip", r.reconstruct_k_round_trip);
    l.extend_prefixed("A₁: ", r.quotient.ledger.clone());
    l.extend_prefixed("A₁ analysis: ", r.quotient.analysis.ledger.clone());
    l.extend_prefixed("kÂk: ", r.corner.ledger.clone());
    l.extend_prefixed("kÂk analysis: ", r.corner.analysis.ledger.clone());
    l.extend_prefixed("γ: ", r.duality.ledger.clone());
    l.extend_prefixed("centrality: ", r.central.ledger.clone());
    nu_check(l, "A₁: ν = 1", &r.quotient.analysis);
    nu_check(l, "kÂk: ν = 1", &r.corner.analysis);
}

fn entry(g: &FiniteGroup, h: &Subgroup, side: SweepSide) -> SweepEntry {
    SweepEntry {
        subgroup: h.label(g),
        order: h.order(),
        index: g.order / h.order(),
        normal: h.is_normal(g),
        side,
        central: None,
        quotient_dim: None,
        corner_dim: None,
        checks: Ledger::new(),
    }
}

fn function_side(g: &FiniteGroup, h: &Subgroup, ctx: &Result<QuantumGroupContext>) -> SweepEntry {
    let mut e = entry(g, h, SweepSide::Function);
    let l = &mut e.checks;
    let ctx = match ctx {
        Ok(c) => c,
        Err(err) => {
            l.record_note("context", false, err.to_string());
            return e;
        }
    };
    let (hv, k) = match subgroup_idempotents(g, h) {
        Ok(x) => x,
        Err(err) => {
            l.record_note("subgroup idempotents", false, err.to_string());
            return e;
        }
    };
    let r = match run_pipeline(ctx, &k) {
        Ok(r) => r,
        Err(err) => {
            l.record_note("pipeline", false, err.to_string());
            return e;
        }
    };
    pipeline_ledger(l, &r);
    e.central = Some(r.central.central);
    e.quotient_dim = Some(r.quotient.dim);
    e.corner_dim = Some(r.corner.dim);
    l.record_flag("centrality: k central ⇔ H normal", r.central.central == h.is_normal(g));

    if let Some(phi) = &ctx.analysis.phi {
        match fourier_normalized(&ctx.t, phi, &hv) {
            Ok((f, _)) => l.record("Fourier(h) = k", crate::algebra::vec_diff(&[], &f, &k)),
            Err(err) => l.record_note("Fourier(h) = k", false, err.to_string()),
        };
    }
    let epi = HopfEpimorphism::restriction(g, h).and_then(|epi| hopf_epi_idempotent(&epi));
    match epi {
        Ok(x) => {
            l.extend_prefixed("hopf epi: ", x.checks.clone());
            l.record("hopf epi: k = φ_B∘π equals the subgroup k", crate::algebra::vec_diff(&[], &x.k, &k));
            l.record("hopf epi: cointegral h = 1_H", crate::algebra::vec_diff(&[], &x.h, &hv));
            let scale = Scalar::ratio(1, h.order() as i64);
            l.record(
                "hopf epi: φ_A rescaled by 1/|H|",
                (x.phi_a_scale != scale).then(|| Witness::new(vec![], x.phi_a_scale.clone(), scale)),
            );
            l.extend_prefixed("hopf epi: ", cointegral_in_quotient(&ctx.t, &r.quotient, &x.h));
        }
        Err(err) => {
            l.record_note("hopf epi", false, err.to_string());
        }
    }
    match double_coset_direct(g, h) {
        Ok(direct) => {
            l.extend_prefixed("double cosets: ", compare_results(&direct, &r.quotient));
        }
        Err(err) => {
            l.record_note("double cosets", false, err.to_string());
        }
    }
    l.extend_prefixed("double cosets: ", direct_formula_ledger(g, h, &r.quotient));
    e
}

fn group_side(g: &FiniteGroup, h: &Subgroup, ctx: &Result<QuantumGroupContext>) -> SweepEntry {
    let mut e = entry(g, h, SweepSide::Group);
    let l = &mut e.checks;
    let ctx = match ctx {
        Ok(c) => c,
        Err(err) => {
            l.record_note("context", false, err.to_string());
            return e;
        }
    };
    let k = match subgroup_idempotents(g, h) {
        Ok((hv, _)) => hv,
        Err(err) => {
            l.record_note("subgroup idempotents", false, err.to_string());
            return e;
        }
    };
    let r = match run_pipeline(ctx, &k) {
        Ok(r) => r,
        Err(err) => {
            l.record_note("pipeline", false, err.to_string());
            return e;
        }
    };
    pipeline_ledger(l, &r);
    e.central = Some(r.central.central);
    e.quotient_dim = Some(r.quotient.dim);
    e.corner_dim = Some(r.corner.dim);
    l.record_flag("A₁: dim = |H|", r.quotient.dim == h.order());
    l.record_flag("centrality: k central", r.central.central);
    let qg = verify_structure(&r.quotient.structure.clone().with_kind(Kind::QuantumGroup));
    l.extend_prefixed("A₁ as quantum group: ", qg);
    match g.induced(h).and_then(|hg| build_function_algebra(&hg)) {
        Ok(kh) => {
            let id = Matrix::identity(h.order());
            let dual1 = crate::duality::dual_structure(&r.quotient.structure, kh.labels().to_vec());
            match dual1 {
                Ok(d) => l.extend_prefixed("dual of A₁ ≅ K(H): ", compare_via(&d, &kh, &id)),
                Err(err) => {
                    l.record_note("dual of A₁ ≅ K(H)", false, err.to_string());
                }
            }
            // γ carries the dual of A₁ onto kÂk, so kÂk ≅ K(H) through γ.
            l.extend_prefixed("kÂk ≅ K(H): ", compare_via(&r.corner.structure, &kh, &id));
        }
        Err(err) => {
            l.record_note("K(H)", false, err.to_string());
        }
    }
    e
}

fn sweep_group(name: &CatalogName, opts: &SweepOptions) -> Result<GroupSweep> {
    let g = name.build()?;
    let mut kg = build_function_algebra(&g)?;
    let mut cg = build_group_algebra(&g)?;
    match opts.fault {
        Some(Fault::FunctionAlgebra) => kg = corrupt(&kg)?,
        Some(Fault::GroupAlgebra) => cg = corrupt(&cg)?,
        None => {}
    }
    let (ctx_f, ctx_g) = rayon::join(|| QuantumGroupContext::new(kg.clone()), || QuantumGroupContext::new(cg.clone()));
    let fa = object_ledger(&kg, &ctx_f.as_ref().map(|c| c.analysis.clone()).unwrap_or_else(|_| analyze(&kg)));
    let ga = object_ledger(&cg, &ctx_g.as_ref().map(|c| c.analysis.clone()).unwrap_or_else(|_| analyze(&cg)));
    let subs = all_subgroups(&g);
    let jobs: Vec<(usize, SweepSide)> =
        (0..subs.len()).flat_map(|i| [(i, SweepSide::Function), (i, SweepSide::Group)]).collect();
    let entries = jobs
        .par_iter()
        .map(|&(i, side)| match side {
            SweepSide::Function => function_side(&g, &subs[i], &ctx_f),
            SweepSide::Group => group_side(&g, &subs[i], &ctx_g),
        })
        .collect();
    Ok(GroupSweep {
        group: name.to_string(),
        order: g.order,
        subgroup_count: subs.len(),
        function_algebra: fa,
        group_algebra: ga,
        entries,
    })
}

/// Subsets near the subgroup lattice: subgroups, their one-sided and
/// double cosets, and subgroups with one element added or removed.
pub fn candidate_subsets(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for h in all_subgroups(g) {
        out.insert(h.members.clone());
        for x in g.elements() {
            let mut left: Vec<usize> = h.members.iter().map(|&m| g.mul(x, m)).collect();
            let mut right: Vec<usize> = h.members.iter().map(|&m| g.mul(m, x)).collect();
            left.sort_unstable();
            right.sort_unstable();
            out.insert(left);
            out.insert(right);
            let mut grown = h.members.clone();
            if !h.contains(x) {
                grown.push(x);
                grown.sort_unstable();
                out.insert(grown);
            } else if x != g.identity {
                grown.retain(|&m| m != x);
                out.insert(grown);
            }
        }
        out.extend(h.double_cosets(g));
    }
    out
}

/// Classifies `1_S` in `K(G)` and `(1/|S|) Σ_{s∈S} λ_s` in `ℂ[G]` for every
/// candidate subset `S`.
pub fn exceptional_search(groups: &[(String, FiniteGroup)]) -> Result<ExceptionalSearch> {
    let per_group: Vec<Result<(usize, usize, usize, usize, Vec<String>)>> = groups
        .par_iter()
        .map(|(name, g)| {
            let g = g.clone();
            let subsets = candidate_subsets(&g);
            let mut stats = (0, 0, 0, 0, Vec::new());
            for (side, t) in [("K", build_function_algebra(&g)?), ("C", build_group_algebra(&g)?)] {
                let an = analyze(&t);
                stats.0 += 1;
                for s in &subsets {
                    let mut v = Vector::zeros(g.order);
                    let w = if side == "K" { Scalar::one() } else { Scalar::ratio(1, s.len() as i64) };
                    for &x in s {
                        v[x] = w.clone();
                    }
                    let rep = classify_group_like(&t, &an, &v);
                    stats.1 += 1;
                    match rep.classification {
                        Some(Classification::Regular) => {
                            stats.2 += 1;
                            stats.3 += 1;
                        }
                        Some(Classification::Exceptional) => {
                            stats.2 += 1;
                            let labels: Vec<&str> = s.iter().map(|&x| g.labels[x].as_str()).collect();
                            stats.4.push(format!("{name} {side}: {{{}}}", labels.join(",")));
                        }
                        None => {}
                    }
                }
            }
            Ok(stats)
        })
        .collect();
    let mut total = ExceptionalSearch {
        algebras: 0,
        candidates: 0,
        group_like: 0,
        regular: 0,
        exceptional_hits: Vec::new(),
        finding: String::new(),
    };
    for r in per_group {
        let (a, c, gl, reg, hits) = r?;
        total.algebras += a;
        total.candidates += c;
        total.group_like += gl;
        total.regular += reg;
        total.exceptional_hits.extend(hits);
    }
    total.finding = if total.exceptional_hits.is_empty() {
        format!(
            "none found: no exceptional group-like idempotent among {} candidates in {} algebras. \
             This is an empirical finding for the enumerated candidates, not a proof that none exist.",
            total.candidates, total.algebras
        )
    } else {
        format!("{} exceptional group-like idempotents found", total.exceptional_hits.len())
    };
    Ok(total)
}

pub fn run_sweep(opts: &SweepOptions) -> Result<SweepReport> {
    let names: Vec<CatalogName> = catalog()
        .into_iter()
        .filter(|n| n.build().map(|g| g.order <= opts.max_order).unwrap_or(false))
        .filter(|n| opts.only.as_ref().is_none_or(|s| n.to_string().contains(s.as_str())))
        .collect();
    let groups = names.par_iter().map(|n| sweep_group(n, opts)).collect::<Result<Vec<_>>>()?;
    let exceptional = if opts.search_exceptional {
        let named = names.iter().map(|n| Ok((n.to_string(), n.build()?))).collect::<Result<Vec<_>>>()?;
        Some(exceptional_search(&named)?)
    } else {
        None
    };
    Ok(SweepReport { options: opts.clone(), groups, exceptional_search: exceptional })
}
