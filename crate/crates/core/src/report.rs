//! Running scenes and rendering reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, AnalysisReport};
use crate::builders::{bicross_corner_formulas, double_coset_direct, double_coset_formula};
use crate::error::{Error, Result};
use crate::hypergroup::{
    classify_group_like, compare_results, corner_construction, run_pipeline, CentralReport, DualityReport,
    HypergroupResult, IdempotentReport, QuantumGroupContext,
};
use crate::ledger::Ledger;
use crate::scene::{Construct, PipelineSpec, Scene, Side};
use crate::structure::{first_failure, matrix_diff, tensor_map, verify_structure, Kind};
use crate::sweep::{exceptional_search, ExceptionalSearch, SweepReport};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const FLAG_CENTRAL: &str = "quantum group (central k)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Verify,
    Construct,
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    RefusedExceptional,
    Error,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObjectReport {
    pub name: String,
    pub kind: Kind,
    pub dim: usize,
    pub labels: Vec<String>,
    pub verification: Ledger,
    pub analysis: AnalysisReport,
}

impl ObjectReport {
    pub fn build(name: &str, t: &crate::structure::StructureTensors) -> Self {
        Self {
            name: name.to_string(),
            kind: t.kind(),
            dim: t.dim(),
            labels: t.labels().to_vec(),
            verification: verify_structure(t),
            analysis: analyze(t),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.verification.all_pass() && self.analysis.ledger.all_pass()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineOutcome {
    pub index: usize,
    pub construct: Construct,
    pub object: String,
    pub idempotent: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotent_report: Option<IdempotentReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation_laws: Option<Ledger>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruct_k_round_trip: Option<bool>,
    pub results: Vec<HypergroupResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<CentralReport>,
    pub comparisons: BTreeMap<String, Ledger>,
}

impl PipelineOutcome {
    fn new(index: usize, spec: &PipelineSpec) -> Self {
        Self {
            index,
            construct: spec.construct,
            object: spec.object.clone(),
            idempotent: spec.idempotent.clone(),
            status: Status::Pass,
            error: None,
            flags: Vec::new(),
            idempotent_report: None,
            expectation_laws: None,
            reconstruct_k_round_trip: None,
            results: Vec::new(),
            duality: None,
            central: None,
            comparisons: BTreeMap::new(),
        }
    }

    pub fn ledgers(&self) -> Vec<&Ledger> {
        let mut out = Vec::new();
        out.extend(self.idempotent_report.as_ref().map(|r| &r.checks));
        out.extend(self.expectation_laws.as_ref());
        for r in &self.results {
            out.push(&r.ledger);
            out.push(&r.analysis.ledger);
        }
        out.extend(self.duality.as_ref().map(|d| &d.ledger));
        out.extend(self.central.as_ref().map(|c| &c.ledger));
        out.extend(self.comparisons.values());
        out
    }

    fn settle(&mut self) {
        let failed = self.ledgers().iter().any(|l| !l.all_pass()) || self.reconstruct_k_round_trip == Some(false);
        if failed && self.status == Status::Pass {
            self.status = Status::Fail;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub pipelines: usize,
    pub pipelines_failed: usize,
    pub refused_exceptional: usize,
    pub errors: usize,
}

impl Summary {
    pub fn add_ledger(&mut self, l: &Ledger) {
        let failed = l.failures().count();
        self.checks += l.len();
        self.failed += failed;
        self.passed += l.len() - failed;
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: Command,
    pub objects: Vec<ObjectReport>,
    pub pipelines: Vec<PipelineOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional_search: Option<ExceptionalSearch>,
    pub summary: Summary,
    /// Wall-clock seconds; shown in text output only so JSON stays
    /// byte-identical across runs.
    #[serde(skip)]
    pub elapsed_secs: Option<f64>,
}

impl RunReport {
    pub fn new(command: Command) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            command,
            objects: Vec::new(),
            pipelines: Vec::new(),
            sweep: None,
            exceptional_search: None,
            summary: Summary::default(),
            elapsed_secs: None,
        }
    }

    pub fn recompute_summary(&mut self) {
        let mut s = Summary::default();
        for o in &self.objects {
            s.add_ledger(&o.verification);
            s.add_ledger(&o.analysis.ledger);
        }
        for p in &self.pipelines {
            for l in p.ledgers() {
                s.add_ledger(l);
            }
            s.pipelines += 1;
            match p.status {
                Status::Pass => {}
                Status::Fail => s.pipelines_failed += 1,
                Status::RefusedExceptional => s.refused_exceptional += 1,
                Status::Error => s.errors += 1,
            }
        }
        if let Some(sw) = &self.sweep {
            sw.tally(&mut s);
        }
        self.summary = s;
    }

    /// 0 all-pass, 2 verifier failure, 3 exceptional refusal.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.failed > 0 || s.pipelines_failed > 0 || s.errors > 0 {
            2
        } else if s.refused_exceptional > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self, witnesses: bool) -> Result<String> {
        to_json(self, witnesses)
    }

    pub fn to_text(&self) -> String {
        render_text(self)
    }
}

/// Pretty JSON; without `witnesses` every witness field is dropped.
pub fn to_json<T: Serialize>(value: &T, witnesses: bool) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    if !witnesses {
        strip(&mut v);
    }
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn strip(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("witness");
            map.remove("delta1_witness");
            map.values_mut().for_each(strip);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip),
        _ => {}
    }
}

/// Builds and checks every object.
pub fn cmd_verify(scene: &Scene) -> RunReport {
    let mut report = RunReport::new(Command::Verify);
    report.objects = object_reports(scene);
    scene_search(scene, &mut report);
    report.recompute_summary();
    report
}

fn scene_search(scene: &Scene, report: &mut RunReport) {
    if scene.config.options.check_exceptional_search && !scene.groups.is_empty() {
        let named: Vec<_> = scene.groups.iter().map(|(n, g)| (n.clone(), g.clone())).collect();
        report.exceptional_search = exceptional_search(&named).ok();
    }
}

fn object_reports(scene: &Scene) -> Vec<ObjectReport> {
    let objs: Vec<_> = scene.objects.values().collect();
    objs.par_iter().map(|o| ObjectReport::build(&o.name, &o.structure)).collect()
}

/// Objects plus every pipeline. Input errors in idempotent resolution
/// abort the run.
pub fn cmd_construct(scene: &Scene) -> Result<RunReport> {
    let mut report = RunReport::new(Command::Construct);
    for p in &scene.config.pipelines {
        let side = if p.construct == Construct::Corner { Side::Object } else { Side::Dual };
        scene.element(&p.idempotent, &p.object, side)?;
        if p.construct == Construct::DoubleCosetDirect && scene.function_subgroup(&p.object, &p.idempotent).is_none() {
            return Err(Error::UnresolvedReference(format!(
                "double_coset_direct needs a function algebra and one of its subgroups (object {:?}, idempotent {:?})",
                p.object, p.idempotent
            )));
        }
    }
    report.objects = object_reports(scene);
    let specs: Vec<(usize, &PipelineSpec)> = scene.config.pipelines.iter().enumerate().collect();
    report.pipelines = specs.par_iter().map(|(i, p)| run_one(scene, *i, p)).collect();
    scene_search(scene, &mut report);
    report.recompute_summary();
    Ok(report)
}

fn run_one(scene: &Scene, index: usize, spec: &PipelineSpec) -> PipelineOutcome {
    let mut out = PipelineOutcome::new(index, spec);
    if let Err(e) = run_into(scene, spec, &mut out) {
        out.status = match e {
            Error::ExceptionalIdempotent => Status::RefusedExceptional,
            _ => Status::Error,
        };
        out.error = Some(e.to_string());
    }
    out.settle();
    out
}

fn run_into(scene: &Scene, spec: &PipelineSpec, out: &mut PipelineOutcome) -> Result<()> {
    let t = &scene.objects[&spec.object].structure;
    if spec.construct == Construct::Corner {
        let h = scene.element(&spec.idempotent, &spec.object, Side::Object)?;
        let an = analyze(t);
        let idem = classify_group_like(t, &an, &h);
        out.idempotent_report = Some(idem.clone());
        idem.require_regular()?;
        out.results.push(corner_construction(t, &an, &h, &idem)?);
        return Ok(());
    }
    let k = scene.element(&spec.idempotent, &spec.object, Side::Dual)?;
    let ctx = QuantumGroupContext::new(t.clone())?;
    let idem = classify_group_like(&ctx.dual, &ctx.dual_analysis, &k);
    out.idempotent_report = Some(idem.clone());
    idem.require_regular()?;
    let report = run_pipeline(&ctx, &k)?;
    out.expectation_laws = Some(report.expectation_laws.clone());
    out.reconstruct_k_round_trip = Some(report.reconstruct_k_round_trip);
    if report.central.central {
        out.flags.push(FLAG_CENTRAL.to_string());
    } else {
        out.flags.push("hypergroup (non-central k)".to_string());
    }
    out.central = Some(report.central.clone());
    match spec.construct {
        Construct::Quotient => out.results.push(report.quotient),
        Construct::Duality => {
            if let Some(ambient) = report.duality.ambient_identity {
                out.flags.push(format!("uncompressed coproduct identity for γ: {}", if ambient { "holds" } else { "fails" }));
            }
            if let Some(mp) = scene.bicross_pair(&spec.object, &spec.idempotent) {
                let ledger = bicross_corner_formulas(mp, &report)?;
                out.comparisons.insert("bicrossproduct corner and quotient formulas".into(), ledger);
            }
            out.duality = Some(report.duality.clone());
            out.results.push(report.quotient);
            out.results.push(report.corner);
        }
        Construct::DoubleCosetDirect => {
            let (g, h) = scene.function_subgroup(&spec.object, &spec.idempotent).expect("checked before running");
            let direct = double_coset_direct(g, h)?;
            out.comparisons.insert("direct double cosets ≅ A₁".into(), compare_results(&direct, &report.quotient));
            out.comparisons.insert("Δ₁ against the direct formula".into(), direct_formula_ledger(g, h, &report.quotient));
            out.results.push(direct);
            out.results.push(report.quotient);
        }
        Construct::Corner => unreachable!(),
    }
    Ok(())
}

/// Ambient `Δ₁(f)` of each `A₁` basis element against
/// `(1/|H|) Σ_r f(prq)` on every point pair.
pub fn direct_formula_ledger(
    g: &crate::group::FiniteGroup,
    h: &crate::group::Subgroup,
    quotient: &HypergroupResult,
) -> Ledger {
    let b = quotient.embedding();
    let t = &quotient.structure;
    let mut ledger = Ledger::new();
    ledger.record_flag("dim A₁ = number of double cosets", quotient.dim == h.double_cosets(g).len());
    ledger.record(
        "Δ₁(f)(p,q) = (1/|H|) Σ_r f(prq)",
        first_failure(quotient.dim, |c| {
            let ambient = tensor_map(&b, &t.cop(&t.basis(c)), &b);
            matrix_diff(&[c], &ambient, &double_coset_formula(g, h, &quotient.basis[c]))
        }),
    );
    ledger
}

/// Writes each construction and each `γ` under `dir`.
pub fn write_artifacts(report: &RunReport, dir: &Path, witnesses: bool) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for p in &report.pipelines {
        let stem = format!("{:02}-{}-{}", p.index, sanitize(&p.object), sanitize(&p.idempotent));
        for r in &p.results {
            let tag = serde_json::to_value(r.provenance)?;
            let path = dir.join(format!("{stem}-{}.json", tag.as_str().unwrap_or("result")));
            std::fs::write(&path, to_json(r, witnesses)?)?;
            written.push(path);
        }
        if let Some(d) = &p.duality {
            let path = dir.join(format!("{stem}-gamma.json"));
            std::fs::write(&path, to_json(d, witnesses)?)?;
            written.push(path);
        }
    }
    Ok(written)
}

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

fn ledger_line(out: &mut String, indent: &str, name: &str, l: &Ledger) {
    let failed = l.failures().count();
    let _ = writeln!(out, "{indent}{name}: {}/{} checks pass", l.len() - failed, l.len());
    for c in l.failures() {
        let _ = write!(out, "{indent}  FAIL {}", c.name);
        if let Some(w) = &c.witness {
            let _ = write!(out, " at {:?}: {} vs {}", w.index, w.lhs, w.rhs);
        }
        if let Some(n) = &c.note {
            let _ = write!(out, " ({n})");
        }
        out.push('\n');
    }
}

fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qhf {:?} report (schema {})", r.command, r.schema_version);
    for o in &r.objects {
        let _ = writeln!(out, "\nobject {} [{}-dim, {:?}]", o.name, o.dim, o.kind);
        ledger_line(&mut out, "  ", "axioms", &o.verification);
        ledger_line(&mut out, "  ", "analysis", &o.analysis.ledger);
        if let Some(d) = &o.analysis.delta {
            let _ = writeln!(out, "  δ = {d}");
        }
        if let Some(nu) = &o.analysis.nu {
            let _ = writeln!(out, "  ν = {nu}");
        }
    }
    for p in &r.pipelines {
        let _ = writeln!(out, "\npipeline #{} {:?} on {} with {}: {:?}", p.index, p.construct, p.object, p.idempotent, p.status);
        if let Some(e) = &p.error {
            let _ = writeln!(out, "  error: {e}");
        }
        for f in &p.flags {
            let _ = writeln!(out, "  flag: {f}");
        }
        if let Some(i) = &p.idempotent_report {
            ledger_line(&mut out, "  ", "idempotent", &i.checks);
        }
        if let Some(l) = &p.expectation_laws {
            ledger_line(&mut out, "  ", "conditional expectations", l);
        }
        for res in &p.results {
            let tag = serde_json::to_value(res.provenance).ok();
            let tag = tag.as_ref().and_then(|v| v.as_str()).unwrap_or("result");
            ledger_line(&mut out, "  ", &format!("{tag} (dim {})", res.dim), &res.ledger);
            ledger_line(&mut out, "    ", "analysis", &res.analysis.ledger);
        }
        if let Some(d) = &p.duality {
            ledger_line(&mut out, "  ", "γ", &d.ledger);
        }
        if let Some(c) = &p.central {
            ledger_line(&mut out, "  ", &format!("centrality (central = {})", c.central), &c.ledger);
        }
        for (name, l) in &p.comparisons {
            ledger_line(&mut out, "  ", name, l);
        }
    }
    if let Some(sw) = &r.sweep {
        sw.render_text(&mut out);
    }
    if let Some(x) = &r.exceptional_search {
        let _ = writeln!(out, "\nexceptional search: {} candidates, {} group-like, {} exceptional", x.candidates, x.group_like, x.exceptional_hits.len());
        let _ = writeln!(out, "  {}", x.finding);
    }
    let s = &r.summary;
    let _ = writeln!(
        out,
        "\nsummary: {} checks, {} passed, {} failed; {} pipelines, {} failed, {} refused (exceptional), {} errors",
        s.checks, s.passed, s.failed, s.pipelines, s.pipelines_failed, s.refused_exceptional, s.errors
    );
    if let Some(t) = r.elapsed_secs {
        let _ = writeln!(out, "elapsed: {t:.2}s");
    }
    out
}
