//! Finite models of translation groupoids and their Bredon cohomology.
//!
//! The library works entirely with finite data: groups are multiplication
//! tables, spaces are finite simplicial complexes with admissible actions,
//! and all linear algebra is exact over the integers. On top of that sit
//! the groupoid calculus (essential equivalences, fibre products, spans),
//! the Hilsum-Skandalis bundle calculus, and a Bredon cohomology engine
//! with an independent brute-force oracle.

pub mod abgrp;
pub mod bredon;
pub mod gpd;
pub mod grp;
pub mod gspace;
pub mod hs;

pub use abgrp::{cohomology_of_complex, smith_normal_form, CochainComplex, FGAbGroup, IntMatrix};
pub use bredon::{
    bredon_cochain_complex, bredon_cohomology, build_orbit_category, compare_presentations,
    hom_oracle, hom_oracle_complex, is_orbifold_system, oracle_cohomology, pullback_inclusion,
    pullback_quotient, pushforward_inclusion, pushforward_quotient, representation_system,
    restrict_system, BredonInput, CoefficientSystem, CompareReport, OrbitCategory, PathStep,
};
pub use gpd::{
    compose_generalized, decompose_essential_equivalence, fibre_product,
    is_essential_equivalence, two_for_three, EquivariantMap, GeneralizedMap,
    NaturalTransformation, TranslationGroupoid, TwoCell,
};
pub use grp::{
    build_group, enumerate_subgroups, quotient_group, FiniteGroup, GroupHom, Subgroup,
};
pub use gspace::{Complex, GComplex, IsotropyLineage};
pub use hs::{bundle_from_hom, bundle_from_span, is_morita, span_from_bundle, tensor_compose, HSBundle};

/// Default upper bound on group order for subgroup-lattice enumeration.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 64;
