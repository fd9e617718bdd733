//! Presentation invariance driver: walk a chain of change-of-group steps,
//! transporting the coefficient system at each step and asserting that the
//! cohomology agrees degree by degree in invariant factors.

use super::engine::padded_cohomology;
use super::system::{restrict_system, systems_equal};
use super::transport::{pushforward_inclusion, pushforward_quotient};
use super::{BredonError, BredonInput};
use crate::abgrp::FGAbGroup;
use crate::gpd::TranslationGroupoid;
use crate::grp::{GroupHom, Subgroup};
use crate::gspace::{induce_space, quotient_complex};

/// One change-of-group move applied to the current presentation.
#[derive(Clone, Debug)]
pub enum PathStep {
    /// Divide by a free normal subgroup, pushing the system forward.
    Quotient { kernel: Subgroup },
    /// Induce up along a subgroup embedding, pushing the system forward.
    Induce { embedding: GroupHom },
}

#[derive(Clone, Debug)]
pub struct StepReport {
    pub description: String,
    pub before: Vec<FGAbGroup>,
    pub after: Vec<FGAbGroup>,
    pub isomorphic: bool,
}

#[derive(Clone, Debug)]
pub struct CompareReport {
    pub steps: Vec<StepReport>,
    pub endpoint_groupoid_matches: bool,
    pub endpoint_systems_match: bool,
    pub base_cohomology: Vec<FGAbGroup>,
    pub expect_cohomology: Vec<FGAbGroup>,
    pub cohomology_isomorphic: bool,
}

impl CompareReport {
    pub fn ok(&self) -> bool {
        self.steps.iter().all(|s| s.isomorphic)
            && self.endpoint_groupoid_matches
            && self.endpoint_systems_match
            && self.cohomology_isomorphic
    }

    pub fn first_failure(&self) -> Option<String> {
        for (i, s) in self.steps.iter().enumerate() {
            if !s.isomorphic {
                for (d, (b, a)) in s.before.iter().zip(&s.after).enumerate() {
                    if !b.iso_eq(a) {
                        return Some(format!(
                            "step {i} ({}): degree {d}: {} vs {}",
                            s.description, b, a
                        ));
                    }
                }
            }
        }
        if !self.endpoint_groupoid_matches {
            return Some("path does not land on the expected groupoid".into());
        }
        if !self.endpoint_systems_match {
            return Some("transported system differs from the expected one on the lineage".into());
        }
        if !self.cohomology_isomorphic {
            return Some("endpoint cohomologies differ".into());
        }
        None
    }
}

fn iso_degreewise(a: &[FGAbGroup], b: &[FGAbGroup]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.iso_eq(y))
}

pub fn compare_presentations(
    base: &BredonInput,
    path: &[PathStep],
    expect: &BredonInput,
    max_degree: usize,
) -> Result<CompareReport, BredonError> {
    let mut current = base.clone();
    let mut steps = Vec::new();
    for (i, step) in path.iter().enumerate() {
        let before = padded_cohomology(&current, max_degree)?;
        let (next, description) = match step {
            PathStep::Quotient { kernel } => {
                if *kernel.parent().as_ref() != *current.groupoid.group().as_ref() {
                    return Err(BredonError::PathInvalid(format!(
                        "step {i}: kernel lives in a different group"
                    )));
                }
                let (qspace, _) = quotient_complex(current.groupoid.space(), kernel)?;
                let system =
                    pushforward_quotient(&current.system, kernel, current.groupoid.space())?;
                let input = BredonInput::new(TranslationGroupoid::new(qspace), system)?;
                (input, format!("quotient by {:?}", kernel.members()))
            }
            PathStep::Induce { embedding } => {
                if *embedding.domain().as_ref() != *current.groupoid.group().as_ref() {
                    return Err(BredonError::PathInvalid(format!(
                        "step {i}: embedding does not start at the current group"
                    )));
                }
                let (induced, _) = induce_space(embedding, current.groupoid.space())?;
                let system = pushforward_inclusion(
                    &current.system,
                    embedding,
                    current.groupoid.space(),
                )?;
                let input = BredonInput::new(TranslationGroupoid::new(induced), system)?;
                (input, format!("induce up to a group of order {}", embedding.codomain().order()))
            }
        };
        let after = padded_cohomology(&next, max_degree)?;
        let isomorphic = iso_degreewise(&before, &after);
        steps.push(StepReport { description, before, after, isomorphic });
        current = next;
    }
    let endpoint_groupoid_matches = current.groupoid == expect.groupoid;
    let endpoint_systems_match = if endpoint_groupoid_matches {
        let lhs = restrict_system(&current.system, expect.groupoid.space())?;
        let rhs = restrict_system(&expect.system, expect.groupoid.space())?;
        systems_equal(&lhs, &rhs)
    } else {
        false
    };
    let base_cohomology = padded_cohomology(base, max_degree)?;
    let expect_cohomology = padded_cohomology(expect, max_degree)?;
    let cohomology_isomorphic = iso_degreewise(&base_cohomology, &expect_cohomology);
    Ok(CompareReport {
        steps,
        endpoint_groupoid_matches,
        endpoint_systems_match,
        base_cohomology,
        expect_cohomology,
        cohomology_isomorphic,
    })
}
