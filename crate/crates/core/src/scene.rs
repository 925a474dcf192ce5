//! Scene files: named groups, subgroups, matched pairs, objects,
//! idempotents and the pipelines to run on them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::builders::{
    bicross_idempotent, bicrossproduct_left_right, bicrossproduct_right_left, build_function_algebra,
    build_group_algebra, hopf_epi_idempotent, subgroup_idempotents, HopfEpimorphism,
};
use crate::error::{Error, Result};
use crate::group::{CatalogName, FiniteGroup, MatchedPair, Subgroup};
use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::structure::StructureTensors;

pub const SCENE_SCHEMA_VERSION: u32 = 1;

/// Default cap on object dimensions, overridden by `QHF_MAX_DIM`.
pub const DEFAULT_MAX_DIM: usize = 256;

pub fn max_dim_from_env() -> Result<usize> {
    match std::env::var("QHF_MAX_DIM") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("QHF_MAX_DIM: not a number: {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub subgroups: BTreeMap<String, SubgroupSpec>,
    #[serde(default)]
    pub matched_pairs: BTreeMap<String, MatchedPairSpec>,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    pub idempotents: BTreeMap<String, IdempotentSpec>,
    #[serde(default)]
    pub pipelines: Vec<PipelineSpec>,
    #[serde(default)]
    pub options: SceneOptions,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// e.g. `"symmetric 3"` or `"direct_product(cyclic 2, cyclic 2)"`.
    Catalog(String),
    Table {
        mult: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Vec<String>,
    },
}

/// Elements are named by group labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MatchedPairSpec {
    /// `G = G₁G₂` with `G₁ ∩ G₂ = {e}`, by subgroup names.
    Factorization { g1: String, g2: String },
    /// `left[r][u] = r▷u` (a `G₂` label), `right[r][u] = r◁u` (a `G₁` label).
    Actions { g1: String, g2: String, left: Vec<Vec<String>>, right: Vec<Vec<String>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BicrossSide {
    RightLeft,
    LeftRight,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectSpec {
    FunctionAlgebra(String),
    GroupAlgebra(String),
    Bicrossproduct { pair: String, side: BicrossSide },
    Custom(Box<StructureTensors>),
}

/// Where an explicit element lives: in the object or in its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Object,
    Dual,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum IdempotentSpec {
    Subgroup(String),
    Bicross(String),
    /// `k = φ_B∘π` for the restriction `K(G) → K(H)`.
    HopfEpi { subgroup: String },
    Vector { side: Side, entries: Vec<Scalar> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construct {
    Corner,
    Quotient,
    DoubleCosetDirect,
    Duality,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineSpec {
    pub construct: Construct,
    pub object: String,
    pub idempotent: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneOptions {
    #[serde(default)]
    pub check_exceptional_search: bool,
    #[serde(default)]
    pub emit_witnesses: bool,
}

impl SceneConfig {
    /// Parses JSON; errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if cfg.schema_version != SCENE_SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {} (expected {SCENE_SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    pub fn empty() -> Self {
        Self {
            schema_version: SCENE_SCHEMA_VERSION,
            groups: BTreeMap::new(),
            subgroups: BTreeMap::new(),
            matched_pairs: BTreeMap::new(),
            objects: BTreeMap::new(),
            idempotents: BTreeMap::new(),
            pipelines: Vec::new(),
            options: SceneOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResolvedObject {
    pub name: String,
    pub spec: ObjectSpec,
    pub structure: StructureTensors,
}

/// A scene with every reference resolved and every object built.
#[derive(Clone, Debug)]
pub struct Scene {
    pub config: SceneConfig,
    pub groups: BTreeMap<String, FiniteGroup>,
    pub subgroups: BTreeMap<String, (String, Subgroup)>,
    pub matched_pairs: BTreeMap<String, MatchedPair>,
    pub objects: BTreeMap<String, ResolvedObject>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::UnresolvedReference(format!("{kind} {name:?}")))
}

fn element(g: &FiniteGroup, group: &str, label: &str) -> Result<usize> {
    g.index_of(label)
        .ok_or_else(|| Error::UnresolvedReference(format!("element {label:?} of group {group:?}")))
}

impl Scene {
    pub fn resolve(config: SceneConfig, max_dim: usize) -> Result<Self> {
        let mut groups = BTreeMap::new();
        for (name, spec) in &config.groups {
            let g = match spec {
                GroupSpec::Catalog(s) => s.parse::<CatalogName>()?.build()?,
                GroupSpec::Table { mult, labels } => FiniteGroup::from_table(mult.clone(), labels.clone())?,
            };
            groups.insert(name.clone(), g);
        }
        let mut subgroups = BTreeMap::new();
        for (name, spec) in &config.subgroups {
            let g = lookup(&groups, "group", &spec.group)?;
            let idx = |labels: &[String]| labels.iter().map(|l| element(g, &spec.group, l)).collect::<Result<Vec<_>>>();
            let sub = match (&spec.members, &spec.generators) {
                (Some(m), None) => Subgroup::new(g, idx(m)?)?,
                (None, Some(gens)) => Subgroup::generated(g, &idx(gens)?)?,
                _ => return Err(Error::Parse(format!("subgroup {name:?}: give exactly one of members, generators"))),
            };
            subgroups.insert(name.clone(), (spec.group.clone(), sub));
        }
        let mut matched_pairs = BTreeMap::new();
        for (name, spec) in &config.matched_pairs {
            let mp = match spec {
                MatchedPairSpec::Factorization { g1, g2 } => {
                    let (ga, h1) = lookup(&subgroups, "subgroup", g1)?;
                    let (gb, h2) = lookup(&subgroups, "subgroup", g2)?;
                    if ga != gb {
                        return Err(Error::InvalidMatchedPair(format!("{g1:?} and {g2:?} lie in different groups")));
                    }
                    MatchedPair::from_factorization(lookup(&groups, "group", ga)?, h1, h2)?
                }
                MatchedPairSpec::Actions { g1, g2, left, right } => {
                    let a = lookup(&groups, "group", g1)?;
                    let b = lookup(&groups, "group", g2)?;
                    let table = |rows: &[Vec<String>], target: &FiniteGroup, tname: &str| -> Result<Vec<Vec<usize>>> {
                        rows.iter().map(|row| row.iter().map(|l| element(target, tname, l)).collect()).collect()
                    };
                    MatchedPair::new(a.clone(), b.clone(), table(left, b, g2)?, table(right, a, g1)?)?
                }
            };
            matched_pairs.insert(name.clone(), mp);
        }
        let mut objects = BTreeMap::new();
        for (name, spec) in &config.objects {
            let structure = match spec {
                ObjectSpec::FunctionAlgebra(g) => {
                    let g = lookup(&groups, "group", g)?;
                    check_dim(name, g.order, max_dim)?;
                    build_function_algebra(g)?
                }
                ObjectSpec::GroupAlgebra(g) => {
                    let g = lookup(&groups, "group", g)?;
                    check_dim(name, g.order, max_dim)?;
                    build_group_algebra(g)?
                }
                ObjectSpec::Bicrossproduct { pair, side } => {
                    let mp = lookup(&matched_pairs, "matched pair", pair)?;
                    check_dim(name, mp.g1.order * mp.g2.order, max_dim)?;
                    match side {
                        BicrossSide::RightLeft => bicrossproduct_right_left(mp)?,
                        BicrossSide::LeftRight => bicrossproduct_left_right(mp)?,
                    }
                }
                ObjectSpec::Custom(t) => {
                    check_dim(name, t.dim(), max_dim)?;
                    (**t).clone()
                }
            };
            objects.insert(name.clone(), ResolvedObject { name: name.clone(), spec: spec.clone(), structure });
        }
        for (name, spec) in &config.idempotents {
            match spec {
                IdempotentSpec::Subgroup(s) | IdempotentSpec::HopfEpi { subgroup: s } => {
                    lookup(&subgroups, "subgroup", s)?;
                }
                IdempotentSpec::Bicross(p) => {
                    lookup(&matched_pairs, "matched pair", p)?;
                }
                IdempotentSpec::Vector { entries, .. } if entries.is_empty() => {
                    return Err(Error::Parse(format!("idempotent {name:?}: empty vector")));
                }
                IdempotentSpec::Vector { .. } => {}
            }
        }
        for p in &config.pipelines {
            lookup(&objects, "object", &p.object)?;
            lookup(&config.idempotents, "idempotent", &p.idempotent)?;
        }
        Ok(Self { config, groups, subgroups, matched_pairs, objects })
    }

    /// The idempotent `name` as an element of the object (`Side::Object`)
    /// or of its dual (`Side::Dual`), in basis coordinates.
    pub fn element(&self, name: &str, object: &str, side: Side) -> Result<Vector> {
        let spec = lookup(&self.config.idempotents, "idempotent", name)?;
        let obj = lookup(&self.objects, "object", object)?;
        let mismatch = |why: &str| Error::UnresolvedReference(format!("idempotent {name:?} on object {object:?}: {why}"));
        let v = match spec {
            IdempotentSpec::Subgroup(s) => {
                let (gname, sub) = lookup(&self.subgroups, "subgroup", s)?;
                let g = lookup(&self.groups, "group", gname)?;
                let (h, k) = subgroup_idempotents(g, sub)?;
                match (&obj.spec, side) {
                    (ObjectSpec::FunctionAlgebra(og), Side::Object) if og == gname => h,
                    (ObjectSpec::FunctionAlgebra(og), Side::Dual) if og == gname => k,
                    (ObjectSpec::GroupAlgebra(og), Side::Object) if og == gname => k,
                    (ObjectSpec::GroupAlgebra(og), Side::Dual) if og == gname => h,
                    _ => return Err(mismatch("subgroup of a different group")),
                }
            }
            IdempotentSpec::HopfEpi { subgroup } => {
                let (gname, sub) = lookup(&self.subgroups, "subgroup", subgroup)?;
                match &obj.spec {
                    ObjectSpec::FunctionAlgebra(og) if og == gname => {}
                    _ => return Err(mismatch("restriction epimorphism needs the function algebra of the same group")),
                }
                let epi = HopfEpimorphism::restriction(lookup(&self.groups, "group", gname)?, sub)?;
                let out = hopf_epi_idempotent(&epi)?;
                match side {
                    Side::Dual => out.k,
                    Side::Object => out.h,
                }
            }
            IdempotentSpec::Bicross(pair) => {
                let mp = lookup(&self.matched_pairs, "matched pair", pair)?;
                let ok_side = match &obj.spec {
                    ObjectSpec::Bicrossproduct { pair: p, side: s } if p == pair => *s,
                    _ => return Err(mismatch("bicrossproduct of a different matched pair")),
                };
                let b = bicrossproduct_left_right(mp)?;
                let k = bicross_idempotent(mp, &b)?.k;
                match (ok_side, side) {
                    (BicrossSide::RightLeft, Side::Dual) | (BicrossSide::LeftRight, Side::Object) => k,
                    _ => return Err(mismatch("the bicross idempotent lives in the left-right bicrossproduct")),
                }
            }
            IdempotentSpec::Vector { side: s, entries } => {
                if *s != side {
                    return Err(mismatch("explicit vector given on the other side"));
                }
                Vector::new(entries.clone())
            }
        };
        if v.len() != obj.structure.dim() {
            return Err(Error::DimensionMismatch(format!(
                "idempotent {name:?} has {} coordinates, object {object:?} has dimension {}",
                v.len(),
                obj.structure.dim()
            )));
        }
        Ok(v)
    }

    /// The matched pair behind a right-left bicrossproduct object paired
    /// with its bicross idempotent, if that is what the pipeline names.
    pub fn bicross_pair(&self, object: &str, idempotent: &str) -> Option<&MatchedPair> {
        let obj = self.objects.get(object)?;
        match (&obj.spec, self.config.idempotents.get(idempotent)?) {
            (ObjectSpec::Bicrossproduct { pair, side: BicrossSide::RightLeft }, IdempotentSpec::Bicross(p)) if pair == p => {
                self.matched_pairs.get(pair)
            }
            _ => None,
        }
    }

    /// `(G, H)` when the pipeline is a function algebra with one of its
    /// subgroups.
    pub fn function_subgroup(&self, object: &str, idempotent: &str) -> Option<(&FiniteGroup, &Subgroup)> {
        let obj = self.objects.get(object)?;
        let ObjectSpec::FunctionAlgebra(gname) = &obj.spec else { return None };
        let IdempotentSpec::Subgroup(s) = self.config.idempotents.get(idempotent)? else { return None };
        let (sg, sub) = self.subgroups.get(s)?;
        (sg == gname).then(|| (&self.groups[gname], sub))
    }
}

fn check_dim(name: &str, dim: usize, max_dim: usize) -> Result<()> {
    if dim > max_dim {
        return Err(Error::DimensionCap { object: name.to_string(), dim, cap: max_dim });
    }
    Ok(())
}

/// Example scene used in docs and tests: S₃ with an order-2 subgroup.
pub fn example_s3_scene() -> SceneConfig {
    let text = r#"{
  "schema_version": 1,
  "groups": { "S3": { "catalog": "symmetric 3" } },
  "subgroups": { "H": { "group": "S3", "generators": ["132"] } },
  "objects": { "KS3": { "function_algebra": "S3" } },
  "idempotents": { "k": { "subgroup": "H" } },
  "pipelines": [ { "construct": "duality", "object": "KS3", "idempotent": "k" } ]
}"#;
    SceneConfig::from_json(text).expect("built-in scene parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn example_scene_resolves() {
        let scene = Scene::resolve(example_s3_scene(), DEFAULT_MAX_DIM).unwrap();
        assert_eq!(scene.objects["KS3"].structure.dim(), 6);
        let k = scene.element("k", "KS3", Side::Dual).unwrap();
        assert_eq!(k[0], Scalar::ratio(1, 2));
        let h = scene.element("k", "KS3", Side::Object).unwrap();
        assert_eq!(h[0], Scalar::one());
    }

    #[test]
    fn parse_error_has_position() {
        let err = SceneConfig::from_json("{\n  \"schema_version\": 1,\n  \"groups\": [\n}").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn unresolved_reference_is_reported() {
        let mut cfg = example_s3_scene();
        cfg.pipelines[0].object = "missing".into();
        let err = Scene::resolve(cfg, DEFAULT_MAX_DIM).unwrap_err();
        assert!(matches!(err, Error::UnresolvedReference(_)));
    }

    #[test]
    fn dimension_cap() {
        assert!(matches!(Scene::resolve(example_s3_scene(), 4), Err(Error::DimensionCap { dim: 6, cap: 4, .. })));
    }
}
