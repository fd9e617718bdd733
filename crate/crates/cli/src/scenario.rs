//! Scenario files: a JSON document declaring groups, complexes, maps,
//! spans, and coefficient systems by name. Everything is validated eagerly
//! on load; numbers are exact integers throughout.

use num_bigint::BigInt;
use orbigpd::bredon::{
    build_orbit_category_bounded, pullback_inclusion, pullback_quotient, representation_system,
    CharacterData, CharacterTable, CoefficientSystem,
};
use orbigpd::gpd::{EquivariantMap, GeneralizedMap, TranslationGroupoid};
use orbigpd::grp::{
    build_group, group_from_permutations, quotient_group, FiniteGroup, GroupHom, Subgroup,
};
use orbigpd::gspace::{Complex, GComplex};
use orbigpd::IntMatrix;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported schema version {0} (expected 1)")]
    Schema(u32),
    #[error("validation of {entity} failed ({invariant}): {witness}")]
    Validation { entity: String, invariant: String, witness: String },
    #[error("unknown name {0:?} referenced by {1}")]
    UnknownName(String, String),
}

fn invalid(entity: &str, invariant: &str, witness: impl ToString) -> ScenarioError {
    ScenarioError::Validation {
        entity: entity.to_string(),
        invariant: invariant.to_string(),
        witness: witness.to_string(),
    }
}

/// Reference to a group element by index or by display name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Name(String),
}

impl ElementRef {
    fn resolve(&self, group: &FiniteGroup, entity: &str) -> Result<usize, ScenarioError> {
        match self {
            ElementRef::Index(i) if *i < group.order() => Ok(*i),
            ElementRef::Index(i) => {
                Err(invalid(entity, "element index in range", format!("{i}")))
            }
            ElementRef::Name(name) => (0..group.order())
                .find(|&g| group.name(g) == *name)
                .ok_or_else(|| ScenarioError::UnknownName(name.clone(), entity.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RawGroup {
    /// Explicit multiplication table.
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    /// Closure of permutation generators on {0..degree-1}; elements are
    /// named by cycle notation.
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    /// A subgroup of a previously declared group, with its embedding.
    Subgroup { of: String, members: Vec<usize> },
    /// The quotient of a previously declared group by a normal subgroup,
    /// with its projection.
    Quotient { of: String, kernel: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawActionEntry {
    pub element: ElementRef,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplex {
    pub group: String,
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
    /// Vertex permutations for a generating set of the group; the rest of
    /// the action is derived by composition.
    pub action: Vec<RawActionEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMap {
    pub from: String,
    pub to: String,
    pub hom: Vec<usize>,
    pub vertex_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpan {
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLabelOverride {
    pub members: Vec<usize>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawValue {
    pub members: Vec<usize>,
    pub label: String,
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSystemMap {
    pub src_members: Vec<usize>,
    pub dst_members: Vec<usize>,
    pub rep: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RawSystemKind {
    Constant {
        rank: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        overrides: Vec<RawLabelOverride>,
    },
    Zero,
    Representation,
    /// pi^* of a system over a quotient-kind group entry.
    PullbackQuotient { of: String, projection: String },
    /// i^* of a system over the parent of a subgroup-kind group entry.
    PullbackInclusion { of: String, embedding: String },
    Explicit { values: Vec<RawValue>, maps: Vec<RawSystemMap> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawSystem {
    pub group: String,
    #[serde(flatten)]
    pub kind: RawSystemKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCharacterTable {
    pub members: Vec<usize>,
    pub classes: Vec<Vec<ElementRef>>,
    pub table: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, RawGroup>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, RawComplex>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, RawMap>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub spans: BTreeMap<String, RawSpan>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub systems: BTreeMap<String, RawSystem>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub character_tables: BTreeMap<String, Vec<RawCharacterTable>>,
}

/// A named group with the morphisms its declaration carries.
#[derive(Clone)]
pub struct GroupEntry {
    pub group: Arc<FiniteGroup>,
    /// For subgroup declarations: (parent name, embedding into the parent).
    pub embedding: Option<(String, GroupHom)>,
    /// For quotient declarations: (parent name, projection from the parent).
    pub projection: Option<(String, GroupHom)>,
}

/// A parsed and validated scenario.
pub struct Scenario {
    pub raw: RawScenario,
    pub groups: BTreeMap<String, GroupEntry>,
    pub complexes: BTreeMap<String, GComplex>,
    pub maps: BTreeMap<String, EquivariantMap>,
    pub spans: BTreeMap<String, GeneralizedMap>,
    pub systems: BTreeMap<String, CoefficientSystem>,
}

impl Scenario {
    pub fn group(&self, name: &str) -> Result<&GroupEntry, ScenarioError> {
        self.groups
            .get(name)
            .ok_or_else(|| ScenarioError::UnknownName(name.to_string(), "groups".into()))
    }

    pub fn complex(&self, name: &str) -> Result<&GComplex, ScenarioError> {
        self.complexes
            .get(name)
            .ok_or_else(|| ScenarioError::UnknownName(name.to_string(), "complexes".into()))
    }

    pub fn map(&self, name: &str) -> Result<&EquivariantMap, ScenarioError> {
        self.maps
            .get(name)
            .ok_or_else(|| ScenarioError::UnknownName(name.to_string(), "maps".into()))
    }

    pub fn span(&self, name: &str) -> Result<&GeneralizedMap, ScenarioError> {
        self.spans
            .get(name)
            .ok_or_else(|| ScenarioError::UnknownName(name.to_string(), "spans".into()))
    }

    pub fn system(&self, name: &str) -> Result<&CoefficientSystem, ScenarioError> {
        self.systems
            .get(name)
            .ok_or_else(|| ScenarioError::UnknownName(name.to_string(), "systems".into()))
    }

    /// Name of the group a complex was declared over.
    pub fn group_of_complex(&self, name: &str) -> Result<&str, ScenarioError> {
        self.raw
            .complexes
            .get(name)
            .map(|c| c.group.as_str())
            .ok_or_else(|| ScenarioError::UnknownName(name.to_string(), "complexes".into()))
    }

    pub fn serialize(&self) -> String {
        serde_json::to_string_pretty(&self.raw).expect("scenario serializes")
    }
}

pub fn parse_scenario(text: &str, max_group_order: usize) -> Result<Scenario, ScenarioError> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    build_scenario(raw, max_group_order)
}

fn build_scenario(raw: RawScenario, max_group_order: usize) -> Result<Scenario, ScenarioError> {
    if raw.schema != 1 {
        return Err(ScenarioError::Schema(raw.schema));
    }
    let mut groups: BTreeMap<String, GroupEntry> = BTreeMap::new();
    // groups may reference earlier groups; resolve until a fixed point
    let mut remaining: Vec<(&String, &RawGroup)> = raw.groups.iter().collect();
    while !remaining.is_empty() {
        let before = remaining.len();
        let mut next = Vec::new();
        for (name, decl) in remaining {
            let entity = format!("groups.{name}");
            match decl {
                RawGroup::Table { table, names } => {
                    let group = build_group(table.clone(), names.clone())
                        .map_err(|e| invalid(&entity, "group axioms", e))?;
                    groups.insert(
                        name.clone(),
                        GroupEntry { group: Arc::new(group), embedding: None, projection: None },
                    );
                }
                RawGroup::Permutations { degree, generators } => {
                    let (group, _) = group_from_permutations(*degree, generators)
                        .map_err(|e| invalid(&entity, "permutation closure", e))?;
                    groups.insert(
                        name.clone(),
                        GroupEntry { group: Arc::new(group), embedding: None, projection: None },
                    );
                }
                RawGroup::Subgroup { of, members } => match groups.get(of) {
                    Some(parent) => {
                        let subgroup =
                            Subgroup::new(Arc::clone(&parent.group), members.clone())
                                .map_err(|e| invalid(&entity, "subgroup closure", e))?;
                        let (group, embedding) = subgroup.as_group();
                        groups.insert(
                            name.clone(),
                            GroupEntry {
                                group,
                                embedding: Some((of.clone(), embedding)),
                                projection: None,
                            },
                        );
                    }
                    None => next.push((name, decl)),
                },
                RawGroup::Quotient { of, kernel } => match groups.get(of) {
                    Some(parent) => {
                        let subgroup =
                            Subgroup::new(Arc::clone(&parent.group), kernel.clone())
                                .map_err(|e| invalid(&entity, "kernel is a subgroup", e))?;
                        let (group, projection) = quotient_group(&parent.group, &subgroup)
                            .map_err(|e| invalid(&entity, "kernel is normal", e))?;
                        groups.insert(
                            name.clone(),
                            GroupEntry {
                                group,
                                embedding: None,
                                projection: Some((of.clone(), projection)),
                            },
                        );
                    }
                    None => next.push((name, decl)),
                },
            }
        }
        if next.len() == before {
            let name = next[0].0.clone();
            return Err(ScenarioError::UnknownName(name, "groups (cyclic or missing)".into()));
        }
        remaining = next;
    }

    let mut complexes = BTreeMap::new();
    for (name, decl) in &raw.complexes {
        let entity = format!("complexes.{name}");
        let entry = groups
            .get(&decl.group)
            .ok_or_else(|| ScenarioError::UnknownName(decl.group.clone(), entity.clone()))?;
        let group = Arc::clone(&entry.group);
        let complex = Complex::new(decl.vertices, &decl.simplices)
            .map_err(|e| invalid(&entity, "simplices well-formed", e))?;
        let action = close_action(&group, decl, &entity)?;
        let space = GComplex::new(group, complex, action)
            .map_err(|e| invalid(&entity, "action is a simplicial group action", e))?;
        space
            .require_admissible()
            .map_err(|e| invalid(&entity, "action is admissible", e))?;
        complexes.insert(name.clone(), space);
    }

    let mut maps = BTreeMap::new();
    for (name, decl) in &raw.maps {
        let entity = format!("maps.{name}");
        let from = complexes
            .get(&decl.from)
            .ok_or_else(|| ScenarioError::UnknownName(decl.from.clone(), entity.clone()))?;
        let to = complexes
            .get(&decl.to)
            .ok_or_else(|| ScenarioError::UnknownName(decl.to.clone(), entity.clone()))?;
        let hom = GroupHom::new(
            Arc::clone(from.group()),
            Arc::clone(to.group()),
            decl.hom.clone(),
        )
        .map_err(|e| invalid(&entity, "group homomorphism", e))?;
        let map = EquivariantMap::from_vertex_map(
            TranslationGroupoid::new(from.clone()),
            TranslationGroupoid::new(to.clone()),
            hom,
            decl.vertex_map.clone(),
        )
        .map_err(|e| invalid(&entity, "simplicial equivariant map", e))?;
        maps.insert(name.clone(), map);
    }

    let mut spans = BTreeMap::new();
    for (name, decl) in &raw.spans {
        let entity = format!("spans.{name}");
        let left = maps
            .get(&decl.left)
            .ok_or_else(|| ScenarioError::UnknownName(decl.left.clone(), entity.clone()))?;
        let right = maps
            .get(&decl.right)
            .ok_or_else(|| ScenarioError::UnknownName(decl.right.clone(), entity.clone()))?;
        let span = GeneralizedMap::new(left.clone(), right.clone())
            .map_err(|e| invalid(&entity, "left leg is an essential equivalence", e))?;
        spans.insert(name.clone(), span);
    }

    // systems may reference other systems (pullbacks); resolve like groups
    let mut systems: BTreeMap<String, CoefficientSystem> = BTreeMap::new();
    let mut remaining: Vec<(&String, &RawSystem)> = raw.systems.iter().collect();
    while !remaining.is_empty() {
        let before = remaining.len();
        let mut next = Vec::new();
        for (name, decl) in remaining {
            let entity = format!("systems.{name}");
            let entry = groups
                .get(&decl.group)
                .ok_or_else(|| ScenarioError::UnknownName(decl.group.clone(), entity.clone()))?;
            let group = Arc::clone(&entry.group);
            let built = match &decl.kind {
                RawSystemKind::Constant { rank, label, overrides } => {
                    let category = build_orbit_category_bounded(&group, max_group_order)
                        .map_err(|e| invalid(&entity, "orbit category", e))?;
                    let base = label.clone().unwrap_or_else(|| "Z".to_string());
                    let mut labels =
                        vec![base; category.object_count()];
                    for o in overrides {
                        let idx = category.object_index(&o.members).ok_or_else(|| {
                            invalid(&entity, "override names a subgroup", format!("{:?}", o.members))
                        })?;
                        labels[idx] = o.label.clone();
                    }
                    Some(CoefficientSystem::constant_with_labels(category, *rank, labels))
                }
                RawSystemKind::Zero => {
                    let category = build_orbit_category_bounded(&group, max_group_order)
                        .map_err(|e| invalid(&entity, "orbit category", e))?;
                    Some(CoefficientSystem::zero(category))
                }
                RawSystemKind::Representation => {
                    let tables = character_tables_for(&raw, &groups, &decl.group, &entity)?;
                    Some(
                        representation_system(&group, &tables)
                            .map_err(|e| invalid(&entity, "representation system", e))?,
                    )
                }
                RawSystemKind::PullbackQuotient { of, projection } => match systems.get(of) {
                    Some(inner) => {
                        let proj_entry = groups.get(projection).ok_or_else(|| {
                            ScenarioError::UnknownName(projection.clone(), entity.clone())
                        })?;
                        let (_, proj) = proj_entry.projection.as_ref().ok_or_else(|| {
                            invalid(&entity, "projection names a quotient group", projection)
                        })?;
                        if *proj.domain().as_ref() != *group.as_ref() {
                            return Err(invalid(
                                &entity,
                                "projection starts at the declared group",
                                projection,
                            ));
                        }
                        Some(
                            pullback_quotient(inner, proj)
                                .map_err(|e| invalid(&entity, "quotient pullback", e))?,
                        )
                    }
                    None => None,
                },
                RawSystemKind::PullbackInclusion { of, embedding } => match systems.get(of) {
                    Some(inner) => {
                        let emb_entry = groups.get(embedding).ok_or_else(|| {
                            ScenarioError::UnknownName(embedding.clone(), entity.clone())
                        })?;
                        let (_, emb) = emb_entry.embedding.as_ref().ok_or_else(|| {
                            invalid(&entity, "embedding names a subgroup group", embedding)
                        })?;
                        if *emb.domain().as_ref() != *group.as_ref() {
                            return Err(invalid(
                                &entity,
                                "embedding starts at the declared group",
                                embedding,
                            ));
                        }
                        Some(
                            pullback_inclusion(inner, emb)
                                .map_err(|e| invalid(&entity, "inclusion pullback", e))?,
                        )
                    }
                    None => None,
                },
                RawSystemKind::Explicit { values, maps: raw_maps } => {
                    let category = build_orbit_category_bounded(&group, max_group_order)
                        .map_err(|e| invalid(&entity, "orbit category", e))?;
                    let mut value_list =
                        vec![None; category.object_count()];
                    for v in values {
                        let idx = category.object_index(&v.members).ok_or_else(|| {
                            invalid(&entity, "value names a subgroup", format!("{:?}", v.members))
                        })?;
                        let torsion: Vec<BigInt> =
                            v.torsion.iter().map(|&t| BigInt::from(t)).collect();
                        let value = orbigpd::FGAbGroup::new(v.label.clone(), v.rank, torsion)
                            .map_err(|e| invalid(&entity, "value is a valid group", e))?;
                        value_list[idx] = Some(value);
                    }
                    let value_list: Vec<orbigpd::FGAbGroup> = value_list
                        .into_iter()
                        .enumerate()
                        .map(|(i, v)| {
                            v.ok_or_else(|| {
                                invalid(
                                    &entity,
                                    "every subgroup has a value",
                                    format!("object {i}"),
                                )
                            })
                        })
                        .collect::<Result<_, _>>()?;
                    let mut matrix_map = BTreeMap::new();
                    for m in raw_maps {
                        let src = category.object_index(&m.src_members).ok_or_else(|| {
                            invalid(&entity, "map names subgroups", format!("{:?}", m.src_members))
                        })?;
                        let dst = category.object_index(&m.dst_members).ok_or_else(|| {
                            invalid(&entity, "map names subgroups", format!("{:?}", m.dst_members))
                        })?;
                        let matrix = IntMatrix::from_rows(&m.matrix);
                        matrix_map.insert((src, dst, m.rep), matrix);
                    }
                    Some(
                        CoefficientSystem::new(category, value_list, matrix_map)
                            .map_err(|e| invalid(&entity, "functorial system", e))?,
                    )
                }
            };
            match built {
                Some(system) => {
                    systems.insert(name.clone(), system);
                }
                None => next.push((name, decl)),
            }
        }
        if next.len() == before {
            let name = next[0].0.clone();
            return Err(ScenarioError::UnknownName(name, "systems (cyclic or missing)".into()));
        }
        remaining = next;
    }

    Ok(Scenario { raw, groups, complexes, maps, spans, systems })
}

/// Derive the full vertex action from per-generator permutations by
/// closing under the group multiplication.
fn close_action(
    group: &Arc<FiniteGroup>,
    decl: &RawComplex,
    entity: &str,
) -> Result<Vec<Vec<usize>>, ScenarioError> {
    let n = decl.vertices;
    let mut known: Vec<Option<Vec<usize>>> = vec![None; group.order()];
    known[group.identity()] = Some((0..n).collect());
    let mut generators = Vec::new();
    for e in &decl.action {
        let g = e.element.resolve(group, entity)?;
        if e.perm.len() != n {
            return Err(invalid(entity, "permutation length", e.perm.len()));
        }
        let mut seen = vec![false; n];
        for &v in &e.perm {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(invalid(entity, "entry is a permutation", format!("{:?}", e.perm)));
            }
        }
        if let Some(existing) = &known[g] {
            if *existing != e.perm {
                return Err(invalid(entity, "action entries consistent", group.name(g)));
            }
        }
        known[g] = Some(e.perm.clone());
        generators.push(g);
    }
    let mut changed = true;
    while changed {
        changed = false;
        for a in group.elements() {
            let Some(pa) = known[a].clone() else { continue };
            for &b in &generators {
                let pb = known[b].clone().expect("generators are known");
                let ab = group.mul(a, b);
                let perm: Vec<usize> = (0..n).map(|v| pa[pb[v]]).collect();
                match &known[ab] {
                    Some(existing) if *existing != perm => {
                        return Err(invalid(
                            entity,
                            "action entries consistent",
                            group.name(ab),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        known[ab] = Some(perm);
                        changed = true;
                    }
                }
            }
        }
    }
    known
        .into_iter()
        .enumerate()
        .map(|(g, p)| {
            p.ok_or_else(|| {
                invalid(entity, "action generators generate the group", group.name(g))
            })
        })
        .collect()
}

fn character_tables_for(
    raw: &RawScenario,
    groups: &BTreeMap<String, GroupEntry>,
    group_name: &str,
    entity: &str,
) -> Result<BTreeMap<Vec<usize>, CharacterData>, ScenarioError> {
    let mut out = BTreeMap::new();
    let Some(tables) = raw.character_tables.get(group_name) else {
        return Ok(out);
    };
    let group = &groups[group_name].group;
    for t in tables {
        let mut classes = Vec::new();
        for class in &t.classes {
            let mut resolved = Vec::new();
            for e in class {
                resolved.push(e.resolve(group, entity)?);
            }
            resolved.sort_unstable();
            classes.push(resolved);
        }
        let mut members = t.members.clone();
        members.sort_unstable();
        members.dedup();
        out.insert(
            members,
            CharacterData { classes, table: CharacterTable::Integer { rows: t.table.clone() } },
        );
    }
    Ok(out)
}

/// Character tables declared for the named group, keyed by subgroup
/// member lists.
pub fn character_tables_for_group(
    scenario: &Scenario,
    group_name: &str,
) -> Result<BTreeMap<Vec<usize>, CharacterData>, ScenarioError> {
    character_tables_for(&scenario.raw, &scenario.groups, group_name, "character_tables")
}

/// Every vertex mentioned by any entity is in range; re-run the eager
/// checks and collect human-readable statements for the validate command.
pub fn validation_summary(scenario: &Scenario) -> Vec<String> {
    let mut out = Vec::new();
    for (name, entry) in &scenario.groups {
        out.push(format!("group {name}: order {} ok", entry.group.order()));
    }
    for (name, space) in &scenario.complexes {
        out.push(format!(
            "complex {name}: {} vertices, {} simplices, admissible",
            space.complex().vertex_count(),
            space.complex().simplex_count()
        ));
    }
    for name in scenario.maps.keys() {
        out.push(format!("map {name}: simplicial and equivariant"));
    }
    for name in scenario.spans.keys() {
        out.push(format!("span {name}: left leg is an essential equivalence"));
    }
    for (name, system) in &scenario.systems {
        out.push(format!(
            "system {name}: functorial over {} objects",
            system.category().object_count()
        ));
    }
    out
}

/// The set of (complex, system) pairs over matching groups, by name.
pub fn matching_pairs(scenario: &Scenario) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (cname, space) in &scenario.complexes {
        for (sname, system) in &scenario.systems {
            if *space.group().as_ref() == *system.category().group().as_ref()
                && seen.insert((cname.clone(), sname.clone()))
            {
                out.push((cname.clone(), sname.clone()));
            }
        }
    }
    out
}
