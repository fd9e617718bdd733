//! Coefficient systems: contravariant functors from an orbit category to
//! finitely generated abelian groups, with values carrying identity labels
//! and structure maps presented by integer matrices.

use super::orbit::{OrbitCategory, OrbitHom};
use super::BredonError;
use crate::abgrp::{FGAbGroup, IntMatrix};
use crate::gspace::{isotropy_lineage, GComplex};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A coefficient system over an orbit category. The matrix stored for a
/// hom c: G/H -> G/H' presents the map A(G/H') -> A(G/H) on generators
/// (free generators first, then torsion generators); entries of torsion
/// rows are kept reduced modulo the annihilator.
#[derive(Clone, PartialEq, Eq)]
pub struct CoefficientSystem {
    category: OrbitCategory,
    values: Vec<FGAbGroup>,
    maps: BTreeMap<(usize, usize, usize), IntMatrix>,
}

impl fmt::Debug for CoefficientSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoefficientSystem({} objects)", self.values.len())
    }
}

/// Reduce a presentation matrix into canonical form: each row belonging to
/// a torsion generator of the row group is taken modulo its annihilator.
fn reduce(matrix: &IntMatrix, row_group: &FGAbGroup) -> IntMatrix {
    let mut out = matrix.clone();
    for r in 0..out.rows() {
        if r < row_group.rank {
            continue;
        }
        let modulus = &row_group.torsion[r - row_group.rank];
        for c in 0..out.cols() {
            let v = ((out.get(r, c) % modulus) + modulus) % modulus;
            out.set(r, c, v);
        }
    }
    out
}

impl CoefficientSystem {
    pub fn new(
        category: OrbitCategory,
        values: Vec<FGAbGroup>,
        maps: BTreeMap<(usize, usize, usize), IntMatrix>,
    ) -> Result<Self, BredonError> {
        assert_eq!(values.len(), category.object_count(), "one value per object");
        // every hom must carry a matrix of the right shape; canonicalize
        let mut reduced = BTreeMap::new();
        for hom in category.all_homs() {
            let key = (hom.src, hom.dst, hom.rep);
            let matrix = maps
                .get(&key)
                .ok_or(BredonError::BadMatrixShape(key))?;
            if matrix.rows() != values[hom.src].generators()
                || matrix.cols() != values[hom.dst].generators()
            {
                return Err(BredonError::BadMatrixShape(key));
            }
            reduced.insert(key, reduce(matrix, &values[hom.src]));
        }
        let system = CoefficientSystem { category, values, maps: reduced };
        system.validate()?;
        Ok(system)
    }

    fn validate(&self) -> Result<(), BredonError> {
        // identities act as identities
        for object in 0..self.category.object_count() {
            let id = self.category.identity_hom(object);
            let expected =
                reduce(&IntMatrix::identity(self.values[object].generators()), &self.values[object]);
            if *self.matrix(id) != expected {
                return Err(BredonError::NotFunctorial(
                    (id.src, id.dst, id.rep),
                    (id.src, id.dst, id.rep),
                ));
            }
        }
        // contravariant functoriality on all composable pairs
        let homs: Vec<OrbitHom> = self.category.all_homs().collect();
        for &a in &homs {
            for &b in &homs {
                if b.src != a.dst {
                    continue;
                }
                let ab = self.category.compose(a, b);
                let lhs = self.matrix(ab);
                let rhs = self.matrix(a).mul(self.matrix(b));
                if *lhs != reduce(&rhs, &self.values[a.src]) {
                    return Err(BredonError::NotFunctorial(
                        (a.src, a.dst, a.rep),
                        (b.src, b.dst, b.rep),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn category(&self) -> &OrbitCategory {
        &self.category
    }

    pub fn values(&self) -> &[FGAbGroup] {
        &self.values
    }

    pub fn value(&self, object: usize) -> &FGAbGroup {
        &self.values[object]
    }

    pub fn matrix(&self, hom: OrbitHom) -> &IntMatrix {
        &self.maps[&(hom.src, hom.dst, hom.rep)]
    }

    /// The constant system with one shared label.
    pub fn constant(category: OrbitCategory, rank: usize, label: &str) -> Self {
        let labels = vec![label.to_string(); category.object_count()];
        Self::constant_with_labels(category, rank, labels)
    }

    /// A constant-shape system with per-object labels (identity structure
    /// maps); distinct labels break the orbifold condition on purpose.
    pub fn constant_with_labels(
        category: OrbitCategory,
        rank: usize,
        labels: Vec<String>,
    ) -> Self {
        let values: Vec<FGAbGroup> =
            labels.into_iter().map(|l| FGAbGroup::free(l, rank)).collect();
        let maps = category
            .all_homs()
            .map(|h| ((h.src, h.dst, h.rep), IntMatrix::identity(rank)))
            .collect();
        CoefficientSystem { category, values, maps }
    }

    pub fn zero(category: OrbitCategory) -> Self {
        let values = vec![FGAbGroup::zero("0"); category.object_count()];
        let maps = category
            .all_homs()
            .map(|h| ((h.src, h.dst, h.rep), IntMatrix::zero(0, 0)))
            .collect();
        CoefficientSystem { category, values, maps }
    }

    /// Replace the category by a full subcategory, keeping the matching
    /// values and maps.
    pub fn restrict_to_objects(&self, object_indices: &[usize]) -> CoefficientSystem {
        let category = self.category.subcategory(object_indices);
        let values: Vec<FGAbGroup> =
            object_indices.iter().map(|&i| self.values[i].clone()).collect();
        let mut maps = BTreeMap::new();
        for (new_src, &old_src) in object_indices.iter().enumerate() {
            for (new_dst, &old_dst) in object_indices.iter().enumerate() {
                for &rep in self.category.hom_reps(old_src, old_dst) {
                    maps.insert(
                        (new_src, new_dst, rep),
                        self.maps[&(old_src, old_dst, rep)].clone(),
                    );
                }
            }
        }
        CoefficientSystem { category, values, maps }
    }
}

/// Restriction of a system to the isotropy-lineage subcategory of a space.
pub fn restrict_system(
    system: &CoefficientSystem,
    space: &GComplex,
) -> Result<CoefficientSystem, BredonError> {
    if *system.category().group().as_ref() != *space.group().as_ref() {
        return Err(BredonError::GroupMismatch);
    }
    let lineage = isotropy_lineage(space)?;
    let mut indices = Vec::new();
    for s in lineage.subgroups() {
        let idx = system
            .category()
            .object_index(s.members())
            .ok_or(BredonError::MissingObject { members: s.members().to_vec() })?;
        indices.push(idx);
    }
    indices.sort_unstable();
    Ok(system.restrict_to_objects(&indices))
}

/// Literal equality of systems: same objects, label-equal values, equal
/// (canonically reduced) matrices.
pub fn systems_equal(a: &CoefficientSystem, b: &CoefficientSystem) -> bool {
    if a.category() != b.category() {
        return false;
    }
    if a.values().len() != b.values().len() {
        return false;
    }
    for (va, vb) in a.values().iter().zip(b.values()) {
        if va != vb {
            return false;
        }
    }
    a.category().all_homs().all(|h| a.matrix(h) == b.matrix(h))
}

/// True when every value of the system is free (no torsion); the cochain
/// engine requires this.
pub fn all_values_free(system: &CoefficientSystem) -> Option<usize> {
    system.values().iter().position(|v| !v.is_free())
}

/// Entry-level helper for zero matrices of the right shape between two
/// values.
pub fn zero_matrix_between(row_value: &FGAbGroup, col_value: &FGAbGroup) -> IntMatrix {
    IntMatrix::zero(row_value.generators(), col_value.generators())
}

/// Test two presentation matrices for equality as maps into the row group.
pub fn matrices_equal_mod(row_group: &FGAbGroup, a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let ra = reduce(a, row_group);
    let rb = reduce(b, row_group);
    (0..ra.rows()).all(|r| (0..ra.cols()).all(|c| (ra.get(r, c) - rb.get(r, c)).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::super::orbit::build_orbit_category;
    use super::*;
    use crate::grp::samples::klein;

    #[test]
    fn constant_system_is_functorial() {
        let cat = build_orbit_category(&klein()).unwrap();
        let a = CoefficientSystem::constant(cat.clone(), 1, "Z");
        // round-trip through the validating constructor
        let rebuilt =
            CoefficientSystem::new(cat, a.values().to_vec(), a.maps.clone()).unwrap();
        assert!(systems_equal(&a, &rebuilt));
    }

    #[test]
    fn zero_system_is_functorial() {
        let cat = build_orbit_category(&klein()).unwrap();
        let z = CoefficientSystem::zero(cat.clone());
        CoefficientSystem::new(cat, z.values().to_vec(), z.maps.clone()).unwrap();
    }

    #[test]
    fn bad_shape_is_rejected() {
        let cat = build_orbit_category(&klein()).unwrap();
        let a = CoefficientSystem::constant(cat.clone(), 1, "Z");
        let mut maps = a.maps.clone();
        let key = *maps.keys().next().unwrap();
        maps.insert(key, IntMatrix::zero(2, 2));
        assert!(matches!(
            CoefficientSystem::new(cat, a.values().to_vec(), maps),
            Err(BredonError::BadMatrixShape(_))
        ));
    }

    #[test]
    fn restriction_keeps_matching_data() {
        let cat = build_orbit_category(&klein()).unwrap();
        let a = CoefficientSystem::constant(cat, 2, "Z^2");
        let restricted = a.restrict_to_objects(&[0, 1]);
        assert_eq!(restricted.values().len(), 2);
        assert_eq!(restricted.category().object_count(), 2);
    }
}
