//! Orbit categories, coefficient systems, the Bredon cochain engine with
//! its brute-force natural-transformation oracle, the four change-of-group
//! transports, representation-ring systems, and the presentation
//! comparison driver.

mod compare;
mod engine;
mod oracle;
mod orbit;
mod rep;
mod system;
mod transport;

pub use compare::{compare_presentations, CompareReport, PathStep, StepReport};
pub use engine::{bredon_cochain_complex, bredon_cohomology, padded_cohomology, BredonComplex};
pub use oracle::{hom_oracle, hom_oracle_complex, oracle_cohomology, OracleDegree};
pub use orbit::{build_orbit_category, build_orbit_category_bounded, OrbitCategory, OrbitHom};
pub use rep::{canonical_character_label, representation_system, CharacterData, CharacterTable};
pub use system::{restrict_system, systems_equal, CoefficientSystem};
pub use transport::{
    free_normal_subgroups, is_orbifold_system, pullback_inclusion, pullback_quotient,
    pushforward_inclusion, pushforward_quotient, pushforward_quotient_with_profile,
    ChoiceProfile, OrbifoldCheck, OrbifoldViolation,
};

use crate::abgrp::AbError;
use crate::gpd::{GpdError, TranslationGroupoid};
use crate::grp::GroupError;
use crate::gspace::SpaceError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BredonError {
    #[error("the groupoid and the coefficient system live over different groups")]
    GroupMismatch,
    #[error("orbit category has no object for subgroup {members:?}")]
    MissingObject { members: Vec<usize> },
    #[error("coefficient value at object {object} has torsion; the cochain engine needs free values")]
    NonFreeValue { object: usize },
    #[error("missing character data for subgroup {members:?}")]
    MissingCharacterData { members: Vec<usize> },
    #[error("character decomposition failed: {0}")]
    BadCharacterData(String),
    #[error("not an orbifold coefficient system: {0}")]
    NotOrbifoldSystem(String),
    #[error("transport cannot be completed: {0}")]
    NotTransportable(String),
    #[error("invalid comparison path: {0}")]
    PathInvalid(String),
    #[error("coefficient system is not functorial: homs {0:?} and their composite disagree")]
    NotFunctorial((usize, usize, usize), (usize, usize, usize)),
    #[error("matrix for hom {0:?} has the wrong shape")]
    BadMatrixShape((usize, usize, usize)),
    #[error(transparent)]
    Ab(#[from] AbError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Gpd(#[from] GpdError),
}

/// A translation groupoid together with a coefficient system over the same
/// group: the input of the cohomology engine.
#[derive(Clone, Debug)]
pub struct BredonInput {
    pub groupoid: TranslationGroupoid,
    pub system: CoefficientSystem,
}

impl BredonInput {
    pub fn new(
        groupoid: TranslationGroupoid,
        system: CoefficientSystem,
    ) -> Result<Self, BredonError> {
        if *groupoid.group().as_ref() != *system.category().group().as_ref() {
            return Err(BredonError::GroupMismatch);
        }
        Ok(BredonInput { groupoid, system })
    }
}
