//! The orbit category of a finite group: one object per subgroup (no
//! conjugacy collapsing), morphisms G/H -> G/H' given by cosets gH' with
//! g^{-1} H g contained in H', composed by coset multiplication.

use super::BredonError;
use crate::grp::{enumerate_subgroups_bounded, FiniteGroup, Subgroup};
use crate::DEFAULT_MAX_GROUP_ORDER;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A morphism of the orbit category, identified by its canonical
/// (least-element) coset representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitHom {
    pub src: usize,
    pub dst: usize,
    pub rep: usize,
}

#[derive(Clone)]
pub struct OrbitCategory {
    group: Arc<FiniteGroup>,
    objects: Vec<Subgroup>,
    object_index: BTreeMap<Vec<usize>, usize>,
    homs: Vec<Vec<Vec<usize>>>,
}

impl fmt::Debug for OrbitCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrbitCategory({} objects)", self.objects.len())
    }
}

impl PartialEq for OrbitCategory {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group
            && self.objects.len() == other.objects.len()
            && self
                .objects
                .iter()
                .zip(&other.objects)
                .all(|(a, b)| a.members() == b.members())
    }
}
impl Eq for OrbitCategory {}

impl OrbitCategory {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn objects(&self) -> &[Subgroup] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, members: &[usize]) -> Option<usize> {
        self.object_index.get(members).copied()
    }

    /// Canonical coset representatives of Hom(G/H_i, G/H_j), sorted.
    pub fn hom_reps(&self, src: usize, dst: usize) -> &[usize] {
        &self.homs[src][dst]
    }

    pub fn homs_from(&self, src: usize) -> impl Iterator<Item = OrbitHom> + '_ {
        (0..self.objects.len()).flat_map(move |dst| {
            self.homs[src][dst].iter().map(move |&rep| OrbitHom { src, dst, rep })
        })
    }

    pub fn all_homs(&self) -> impl Iterator<Item = OrbitHom> + '_ {
        (0..self.objects.len()).flat_map(move |src| self.homs_from(src))
    }

    pub fn identity_hom(&self, object: usize) -> OrbitHom {
        let rep = self.canonical_rep(self.group.identity(), object);
        OrbitHom { src: object, dst: object, rep }
    }

    /// Canonical representative of the coset g * H_dst.
    pub fn canonical_rep(&self, g: usize, dst: usize) -> usize {
        self.group.coset_rep(g, self.objects[dst].members())
    }

    /// Whether the coset g * H_dst defines a morphism G/H_src -> G/H_dst.
    pub fn is_valid_hom(&self, src: usize, dst: usize, g: usize) -> bool {
        let target = &self.objects[dst];
        self.objects[src]
            .members()
            .iter()
            .all(|&h| target.contains(self.group.mul(self.group.mul(self.group.inv(g), h), g)))
    }

    pub fn hom(&self, src: usize, dst: usize, g: usize) -> Option<OrbitHom> {
        if self.is_valid_hom(src, dst, g) {
            Some(OrbitHom { src, dst, rep: self.canonical_rep(g, dst) })
        } else {
            None
        }
    }

    /// second ∘ first, for first: i -> j and second: j -> k.
    pub fn compose(&self, first: OrbitHom, second: OrbitHom) -> OrbitHom {
        assert_eq!(first.dst, second.src, "homs not composable");
        let rep = self.canonical_rep(self.group.mul(first.rep, second.rep), second.dst);
        OrbitHom { src: first.src, dst: second.dst, rep }
    }

    /// Full subcategory on the given object indices (ascending).
    pub fn subcategory(&self, object_indices: &[usize]) -> OrbitCategory {
        let objects: Vec<Subgroup> =
            object_indices.iter().map(|&i| self.objects[i].clone()).collect();
        let object_index =
            objects.iter().enumerate().map(|(i, s)| (s.members().to_vec(), i)).collect();
        let homs = object_indices
            .iter()
            .map(|&i| object_indices.iter().map(|&j| self.homs[i][j].clone()).collect())
            .collect();
        OrbitCategory { group: Arc::clone(&self.group), objects, object_index, homs }
    }
}

pub fn build_orbit_category(group: &Arc<FiniteGroup>) -> Result<OrbitCategory, BredonError> {
    build_orbit_category_bounded(group, DEFAULT_MAX_GROUP_ORDER)
}

pub fn build_orbit_category_bounded(
    group: &Arc<FiniteGroup>,
    bound: usize,
) -> Result<OrbitCategory, BredonError> {
    let objects = enumerate_subgroups_bounded(group, bound)?;
    let object_index: BTreeMap<Vec<usize>, usize> =
        objects.iter().enumerate().map(|(i, s)| (s.members().to_vec(), i)).collect();
    let n = objects.len();
    let mut homs = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for (j, target) in objects.iter().enumerate() {
            let mut reps = Vec::new();
            for &rep in &target.coset_reps() {
                let valid = objects[i].members().iter().all(|&h| {
                    target.contains(group.mul(group.mul(group.inv(rep), h), rep))
                });
                if valid {
                    reps.push(rep);
                }
            }
            homs[i][j] = reps;
        }
    }
    Ok(OrbitCategory { group: Arc::clone(group), objects, object_index, homs })
}
