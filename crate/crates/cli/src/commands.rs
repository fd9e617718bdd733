//! Command records and their execution against a loaded scenario.

use crate::report::Report;
use crate::scenario::{matching_pairs, validation_summary, Scenario, ScenarioError};
use orbigpd::bredon::{
    bredon_cohomology, build_orbit_category_bounded, compare_presentations, is_orbifold_system,
    oracle_cohomology, padded_cohomology, representation_system, BredonError, BredonInput,
    PathStep,
};
use orbigpd::gpd::{
    compose_generalized, decompose_essential_equivalence, fibre_product,
    is_essential_equivalence, GpdError,
};
use orbigpd::grp::{enumerate_subgroups_bounded, Subgroup};
use orbigpd::gspace::{fixed_subcomplex, induce_space, isotropy_lineage, quotient_complex};
use orbigpd::hs::span_bundle_roundtrip;
use orbigpd::FGAbGroup;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

impl From<BredonError> for CommandError {
    fn from(e: BredonError) -> Self {
        CommandError::Input(e.to_string())
    }
}
impl From<GpdError> for CommandError {
    fn from(e: GpdError) -> Self {
        CommandError::Input(e.to_string())
    }
}
impl From<orbigpd::gspace::SpaceError> for CommandError {
    fn from(e: orbigpd::gspace::SpaceError) -> Self {
        CommandError::Input(e.to_string())
    }
}
impl From<orbigpd::grp::GroupError> for CommandError {
    fn from(e: orbigpd::grp::GroupError) -> Self {
        CommandError::Input(e.to_string())
    }
}
impl From<orbigpd::hs::HsError> for CommandError {
    fn from(e: orbigpd::hs::HsError) -> Self {
        CommandError::Input(e.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RawPathStep {
    Quotient { kernel: Vec<usize> },
    Induce { via: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "cmd", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    Validate {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<String>,
    },
    Subgroups {
        group: String,
    },
    Fixed {
        complex: String,
        subgroup: Vec<usize>,
    },
    Quotient {
        complex: String,
        kernel: Vec<usize>,
    },
    Induce {
        complex: String,
        via: String,
    },
    EssCheck {
        map: String,
    },
    Decompose {
        map: String,
    },
    FibreProduct {
        left: String,
        right: String,
    },
    ComposeSpans {
        first: String,
        second: String,
    },
    HsRoundtrip {
        span: String,
    },
    OrbitCategory {
        group: String,
    },
    CoeffCheck {
        complex: String,
        system: String,
    },
    Bredon {
        complex: String,
        system: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    BredonOracle {
        complex: String,
        system: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    Compare {
        base_complex: String,
        base_system: String,
        path: Vec<RawPathStep>,
        expect_complex: String,
        expect_system: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    RepSystem {
        group: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        complex: Option<String>,
    },
}

pub struct Context {
    pub max_group_order: usize,
    pub force_oracle: bool,
}

fn degree_record(degree: usize, group: &FGAbGroup) -> Value {
    json!({
        "degree": degree,
        "group": group.describe(),
        "rank": group.rank,
        "torsion": group.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

fn bredon_input(
    scenario: &Scenario,
    complex: &str,
    system: &str,
) -> Result<BredonInput, CommandError> {
    let space = scenario.complex(complex)?.clone();
    let sys = scenario.system(system)?.clone();
    BredonInput::new(orbigpd::gpd::TranslationGroupoid::new(space), sys)
        .map_err(CommandError::from)
}

pub fn run_command(
    scenario: &Scenario,
    command: &Command,
    context: &Context,
) -> Result<Report, CommandError> {
    let echo = serde_json::to_value(command).expect("command serializes");
    match command {
        Command::Validate { target } => {
            let mut results: Vec<Value> =
                validation_summary(scenario).into_iter().map(Value::String).collect();
            if let Some(t) = target {
                if t != "all" {
                    results.retain(|v| matches!(v, Value::String(s) if s.contains(t.as_str())));
                    if results.is_empty() {
                        return Err(CommandError::Input(format!("no entity matches {t:?}")));
                    }
                }
            }
            Ok(Report::ok(echo, results))
        }
        Command::Subgroups { group } => {
            let entry = scenario.group(group)?;
            let subs = enumerate_subgroups_bounded(&entry.group, context.max_group_order)?;
            let results = subs
                .iter()
                .map(|s| {
                    json!({
                        "members": s.members(),
                        "order": s.len(),
                        "normal": s.is_normal(),
                    })
                })
                .collect();
            Ok(Report::ok(echo, results))
        }
        Command::Fixed { complex, subgroup } => {
            let space = scenario.complex(complex)?;
            let sub = Subgroup::new(Arc::clone(space.group()), subgroup.clone())?;
            let fixed = fixed_subcomplex(space, &sub)?;
            let results = vec![json!({
                "simplices": fixed.simplices(),
                "count": fixed.simplex_count(),
            })];
            Ok(Report::ok(echo, results))
        }
        Command::Quotient { complex, kernel } => {
            let space = scenario.complex(complex)?;
            let sub = Subgroup::new(Arc::clone(space.group()), kernel.clone())?;
            let (quotient, map) = quotient_complex(space, &sub)?;
            let results = vec![json!({
                "vertices": quotient.complex().vertex_count(),
                "simplices": quotient.complex().simplices(),
                "group_order": quotient.group().order(),
                "vertex_map": map.vertex_map().expect("quotient map is vertex-backed"),
            })];
            Ok(Report::ok(echo, results))
        }
        Command::Induce { complex, via } => {
            let space = scenario.complex(complex)?;
            let entry = scenario.group(via)?;
            let (_, embedding) = entry.embedding.as_ref().ok_or_else(|| {
                CommandError::Input(format!("group {via:?} is not a subgroup declaration"))
            })?;
            let (induced, inclusion) = induce_space(embedding, space)?;
            let results = vec![json!({
                "vertices": induced.complex().vertex_count(),
                "simplex_count": induced.complex().simplex_count(),
                "group_order": induced.group().order(),
                "inclusion_vertex_map": inclusion.vertex_map().expect("vertex-backed"),
            })];
            Ok(Report::ok(echo, results))
        }
        Command::EssCheck { map } => {
            let m = scenario.map(map)?;
            let check = is_essential_equivalence(m);
            let results = vec![json!({
                "essential_equivalence": check.ok,
                "witness": check.failure.as_ref().map(|f| f.to_string()),
            })];
            let violations = match check.failure {
                Some(f) => vec![f.to_string()],
                None => Vec::new(),
            };
            Ok(Report::checked(echo, results, violations))
        }
        Command::Decompose { map } => {
            let m = scenario.map(map)?;
            match decompose_essential_equivalence(m) {
                Ok(d) => {
                    let recomposed = d
                        .quotient_form
                        .then(&d.inclusion_form)
                        .and_then(|x| x.then(&d.iso))
                        .map_err(CommandError::from)?;
                    let exact = recomposed.hom().map() == m.hom().map()
                        && recomposed.vertex_map() == m.vertex_map();
                    let results = vec![json!({
                        "kernel_order": m.hom().domain().order()
                            / d.quotient_form.hom().codomain().order(),
                        "image_order": d.inclusion_form.hom().domain().order(),
                        "middle_vertices":
                            d.quotient_form.target().space().complex().vertex_count(),
                        "recomposes_exactly": exact,
                    })];
                    let violations = if exact {
                        Vec::new()
                    } else {
                        vec!["recomposition differs from the input map".to_string()]
                    };
                    Ok(Report::checked(echo, results, violations))
                }
                Err(GpdError::NotEssentialEquivalence(w)) => Ok(Report::checked(
                    echo,
                    vec![json!({ "essential_equivalence": false })],
                    vec![format!("not an essential equivalence: {w}")],
                )),
                Err(e) => Err(CommandError::from(e)),
            }
        }
        Command::FibreProduct { left, right } => {
            let phi = scenario.map(left)?;
            let psi = scenario.map(right)?;
            let fp = fibre_product(phi, psi)?;
            let mut violations = Vec::new();
            if is_essential_equivalence(phi).ok && !is_essential_equivalence(&fp.to_x).ok {
                violations.push("pullback of the left essential equivalence failed".to_string());
            }
            if is_essential_equivalence(psi).ok && !is_essential_equivalence(&fp.to_y).ok {
                violations.push("pullback of the right essential equivalence failed".to_string());
            }
            let results = vec![json!({
                "objects": fp.triples.len(),
                "structure_group_order": fp.groupoid.group().order(),
                "witness_components": fp.witness.elements().len(),
            })];
            Ok(Report::checked(echo, results, violations))
        }
        Command::ComposeSpans { first, second } => {
            let a = scenario.span(first)?;
            let b = scenario.span(second)?;
            let ab = compose_generalized(a, b)?;
            let results = vec![json!({
                "middle_objects": ab.middle().object_count(),
                "left_leg_essential": is_essential_equivalence(ab.left()).ok,
            })];
            Ok(Report::ok(echo, results))
        }
        Command::HsRoundtrip { span } => {
            let s = scenario.span(span)?;
            let rt = span_bundle_roundtrip(s)?;
            let results = vec![json!({
                "bundle_size": rt.bundle.size(),
                "bundle_elements": rt.bundle.labels(),
                "left_identity": rt.left_identity,
                "right_identity": rt.right_identity,
            })];
            let mut violations = Vec::new();
            if !rt.left_identity {
                violations.push("omega . theta differs from the left leg".to_string());
            }
            if !rt.right_identity {
                violations.push("psi . theta differs from the right leg".to_string());
            }
            Ok(Report::checked(echo, results, violations))
        }
        Command::OrbitCategory { group } => {
            let entry = scenario.group(group)?;
            let category = build_orbit_category_bounded(&entry.group, context.max_group_order)?;
            let results = category
                .objects()
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let hom_counts: Vec<usize> = (0..category.object_count())
                        .map(|j| category.hom_reps(i, j).len())
                        .collect();
                    json!({
                        "object": s.members(),
                        "hom_counts": hom_counts,
                    })
                })
                .collect();
            Ok(Report::ok(echo, results))
        }
        Command::CoeffCheck { complex, system } => {
            let space = scenario.complex(complex)?;
            let sys = scenario.system(system)?;
            let check = is_orbifold_system(space, sys)?;
            let results = vec![json!({
                "orbifold_system": check.ok,
                "violation_count": check.violations.len(),
            })];
            let violations = check.violations.iter().map(|v| v.to_string()).collect();
            Ok(Report::checked(echo, results, violations))
        }
        Command::Bredon { complex, system, max_degree } => {
            let input = bredon_input(scenario, complex, system)?;
            let h = match (context.force_oracle, max_degree) {
                (true, _) => oracle_cohomology(&input)?,
                (false, Some(d)) => padded_cohomology(&input, *d)?,
                (false, None) => bredon_cohomology(&input)?,
            };
            let results = h.iter().enumerate().map(|(d, g)| degree_record(d, g)).collect();
            Ok(Report::ok(echo, results))
        }
        Command::BredonOracle { complex, system, max_degree } => {
            let input = bredon_input(scenario, complex, system)?;
            let assembled = bredon_cohomology(&input)?;
            let oracle = oracle_cohomology(&input)?;
            let top = max_degree.unwrap_or(assembled.len().saturating_sub(1));
            let mut results = Vec::new();
            let mut violations = Vec::new();
            for d in 0..=top {
                let zero = FGAbGroup::zero("0");
                let a = assembled.get(d).unwrap_or(&zero);
                let o = oracle.get(d).unwrap_or(&zero);
                let matches = a.iso_eq(o);
                results.push(json!({
                    "degree": d,
                    "assembled": a.describe(),
                    "oracle": o.describe(),
                    "match": matches,
                }));
                if !matches {
                    violations.push(format!(
                        "degree {d}: assembled {} vs oracle {}",
                        a.describe(),
                        o.describe()
                    ));
                }
            }
            Ok(Report::checked(echo, results, violations))
        }
        Command::Compare {
            base_complex,
            base_system,
            path,
            expect_complex,
            expect_system,
            max_degree,
        } => {
            let base = bredon_input(scenario, base_complex, base_system)?;
            let expect = bredon_input(scenario, expect_complex, expect_system)?;
            let mut steps = Vec::new();
            let mut current_group = Arc::clone(base.groupoid.group());
            for step in path {
                match step {
                    RawPathStep::Quotient { kernel } => {
                        let sub = Subgroup::new(Arc::clone(&current_group), kernel.clone())?;
                        let (q, _) = orbigpd::grp::quotient_group(&current_group, &sub)?;
                        steps.push(PathStep::Quotient { kernel: sub });
                        current_group = q;
                    }
                    RawPathStep::Induce { via } => {
                        let entry = scenario.group(via)?;
                        let (parent, embedding) =
                            entry.embedding.as_ref().ok_or_else(|| {
                                CommandError::Input(format!(
                                    "group {via:?} is not a subgroup declaration"
                                ))
                            })?;
                        steps.push(PathStep::Induce { embedding: embedding.clone() });
                        current_group = Arc::clone(&scenario.group(parent)?.group);
                    }
                }
            }
            let degree = max_degree.unwrap_or(2);
            let report = compare_presentations(&base, &steps, &expect, degree)?;
            let mut results = Vec::new();
            for (i, s) in report.steps.iter().enumerate() {
                for (d, (b, a)) in s.before.iter().zip(&s.after).enumerate() {
                    results.push(json!({
                        "step": i,
                        "description": s.description,
                        "degree": d,
                        "before": b.describe(),
                        "after": a.describe(),
                        "isomorphic": b.iso_eq(a),
                    }));
                }
            }
            results.push(json!({
                "endpoint_groupoid_matches": report.endpoint_groupoid_matches,
                "endpoint_systems_match": report.endpoint_systems_match,
                "base_cohomology":
                    report.base_cohomology.iter().map(|g| g.describe()).collect::<Vec<_>>(),
                "expect_cohomology":
                    report.expect_cohomology.iter().map(|g| g.describe()).collect::<Vec<_>>(),
            }));
            let violations = report.first_failure().into_iter().collect();
            Ok(Report::checked(echo, results, violations))
        }
        Command::RepSystem { group, complex } => {
            let entry = scenario.group(group)?;
            let tables = crate::scenario::character_tables_for_group(scenario, group)?;
            let system = representation_system(&entry.group, &tables)?;
            let mut results: Vec<Value> = system
                .category()
                .objects()
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    json!({
                        "subgroup": s.members(),
                        "rank": system.value(i).rank,
                        "label": system.value(i).label,
                    })
                })
                .collect();
            let mut violations = Vec::new();
            if let Some(cname) = complex {
                let space = scenario.complex(cname)?;
                let check = is_orbifold_system(space, &system)?;
                results.push(json!({
                    "orbifold_system": check.ok,
                    "lineage": isotropy_lineage(space)?
                        .subgroups()
                        .iter()
                        .map(|s| s.members().to_vec())
                        .collect::<Vec<_>>(),
                }));
                violations.extend(check.violations.iter().map(|v| v.to_string()));
            }
            Ok(Report::checked(echo, results, violations))
        }
    }
}

/// Every (complex, system) pair over matching groups, used by the
/// acceptance sweeps.
pub fn all_pairs(scenario: &Scenario) -> Vec<(String, String)> {
    matching_pairs(scenario)
}
