//! The orbifold-system predicate and the four change-of-group transports
//! of coefficient systems: pullback/pushforward along quotient projections
//! and subgroup inclusions.

use super::orbit::build_orbit_category;
use super::system::{matrices_equal_mod, zero_matrix_between, CoefficientSystem};
use super::BredonError;
use crate::abgrp::{FGAbGroup, IntMatrix};
use crate::grp::{enumerate_subgroups, quotient_group, GroupHom, Subgroup};
use crate::gspace::{induce_space, isotropy_lineage, quotient_complex, unique_lift, GComplex};
use std::collections::{BTreeMap, BTreeSet};

/// Normal subgroups acting freely on the space (trivial subgroup omitted:
/// its conditions are vacuous).
pub fn free_normal_subgroups(space: &GComplex) -> Result<Vec<Subgroup>, BredonError> {
    let group = space.group();
    let mut out = Vec::new();
    for k in enumerate_subgroups(group)? {
        if !k.is_normal() || k.is_trivial() {
            continue;
        }
        let free = k.members().iter().all(|&g| {
            g == group.identity()
                || (0..space.complex().simplex_count()).all(|o| space.object_image(g, o) != o)
        });
        if free {
            out.push(k);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum OrbifoldViolation {
    /// Lineage subgroups with equal projections carry different values.
    ValueMismatch { kernel: Vec<usize>, left: Vec<usize>, right: Vec<usize> },
    /// Structure maps with the same projected morphism differ.
    MapMismatch {
        kernel: Vec<usize>,
        first: (usize, usize, usize),
        second: (usize, usize, usize),
    },
}

impl std::fmt::Display for OrbifoldViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbifoldViolation::ValueMismatch { kernel, left, right } => write!(
                f,
                "values at {left:?} and {right:?} differ though K = {kernel:?} identifies them"
            ),
            OrbifoldViolation::MapMismatch { kernel, first, second } => write!(
                f,
                "structure maps {first:?} and {second:?} differ though K = {kernel:?} identifies them"
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbifoldCheck {
    pub ok: bool,
    pub violations: Vec<OrbifoldViolation>,
}

/// Product set g * S * K inside the group, as a sorted element list; two
/// cosets of subgroups project to the same coset mod K exactly when these
/// sets agree.
fn coset_times_kernel(
    group: &crate::grp::FiniteGroup,
    g: usize,
    subgroup: &Subgroup,
    kernel: &Subgroup,
) -> Vec<usize> {
    let mut out = BTreeSet::new();
    for &s in subgroup.members() {
        for &k in kernel.members() {
            out.insert(group.mul(group.mul(g, s), k));
        }
    }
    out.into_iter().collect()
}

/// Check the orbifold coefficient condition: for every free normal K,
/// lineage subgroups with the same projection carry literally equal values,
/// and structure maps with the same projected morphism are equal.
pub fn is_orbifold_system(
    space: &GComplex,
    system: &CoefficientSystem,
) -> Result<OrbifoldCheck, BredonError> {
    if *space.group().as_ref() != *system.category().group().as_ref() {
        return Err(BredonError::GroupMismatch);
    }
    let group = space.group();
    let lineage = isotropy_lineage(space)?;
    let mut lineage_objects = Vec::new();
    for s in lineage.subgroups() {
        let idx = system
            .category()
            .object_index(s.members())
            .ok_or(BredonError::MissingObject { members: s.members().to_vec() })?;
        lineage_objects.push(idx);
    }
    let mut violations = Vec::new();
    for kernel in free_normal_subgroups(space)? {
        // values
        for (a, &i) in lineage_objects.iter().enumerate() {
            for &j in lineage_objects.iter().skip(a + 1) {
                let left = system.category().objects()[i].product_set(&kernel);
                let right = system.category().objects()[j].product_set(&kernel);
                if left == right && system.value(i) != system.value(j) {
                    violations.push(OrbifoldViolation::ValueMismatch {
                        kernel: kernel.members().to_vec(),
                        left: system.category().objects()[i].members().to_vec(),
                        right: system.category().objects()[j].members().to_vec(),
                    });
                }
            }
        }
        // structure maps
        let lineage_homs: Vec<_> = system
            .category()
            .all_homs()
            .filter(|h| lineage_objects.contains(&h.src) && lineage_objects.contains(&h.dst))
            .collect();
        for (a, &h1) in lineage_homs.iter().enumerate() {
            for &h2 in lineage_homs.iter().skip(a + 1) {
                let src_match = system.category().objects()[h1.src].product_set(&kernel)
                    == system.category().objects()[h2.src].product_set(&kernel);
                let dst1 = &system.category().objects()[h1.dst];
                let dst2 = &system.category().objects()[h2.dst];
                let dst_match = dst1.product_set(&kernel) == dst2.product_set(&kernel);
                if !src_match || !dst_match {
                    continue;
                }
                let coset1 = coset_times_kernel(group, h1.rep, dst1, &kernel);
                let coset2 = coset_times_kernel(group, h2.rep, dst2, &kernel);
                if coset1 != coset2 {
                    continue;
                }
                let same_dims = system.value(h1.src).generators()
                    == system.value(h2.src).generators()
                    && system.value(h1.dst).generators() == system.value(h2.dst).generators();
                if !same_dims
                    || !matrices_equal_mod(
                        system.value(h1.src),
                        system.matrix(h1),
                        system.matrix(h2),
                    )
                {
                    violations.push(OrbifoldViolation::MapMismatch {
                        kernel: kernel.members().to_vec(),
                        first: (h1.src, h1.dst, h1.rep),
                        second: (h2.src, h2.dst, h2.rep),
                    });
                }
            }
        }
    }
    Ok(OrbifoldCheck { ok: violations.is_empty(), violations })
}

/// Pull a system on the quotient's orbit category back along the
/// projection: values and maps are read off at the projected subgroups.
pub fn pullback_quotient(
    system: &CoefficientSystem,
    projection: &GroupHom,
) -> Result<CoefficientSystem, BredonError> {
    if *projection.codomain().as_ref() != *system.category().group().as_ref() {
        return Err(BredonError::GroupMismatch);
    }
    if !projection.is_surjective() {
        return Err(BredonError::NotTransportable("projection must be surjective".into()));
    }
    let category = build_orbit_category(projection.domain())?;
    let project_members = |members: &[usize]| -> Vec<usize> {
        let set: BTreeSet<usize> = members.iter().map(|&m| projection.apply(m)).collect();
        set.into_iter().collect()
    };
    let mut projected_object = Vec::with_capacity(category.object_count());
    for object in category.objects() {
        let image = project_members(object.members());
        let idx = system
            .category()
            .object_index(&image)
            .ok_or(BredonError::MissingObject { members: image })?;
        projected_object.push(idx);
    }
    let values: Vec<FGAbGroup> =
        projected_object.iter().map(|&i| system.value(i).clone()).collect();
    let mut maps = BTreeMap::new();
    for hom in category.all_homs() {
        let src = projected_object[hom.src];
        let dst = projected_object[hom.dst];
        let rep = system.category().canonical_rep(projection.apply(hom.rep), dst);
        let projected = system
            .category()
            .hom(src, dst, rep)
            .ok_or(BredonError::NotTransportable("projected hom invalid".into()))?;
        maps.insert((hom.src, hom.dst, hom.rep), system.matrix(projected).clone());
    }
    CoefficientSystem::new(category, values, maps)
}

/// Restrict a system along a subgroup inclusion: the diagram is read off
/// at the embedded subgroups.
pub fn pullback_inclusion(
    system: &CoefficientSystem,
    embedding: &GroupHom,
) -> Result<CoefficientSystem, BredonError> {
    if *embedding.codomain().as_ref() != *system.category().group().as_ref() {
        return Err(BredonError::GroupMismatch);
    }
    if !embedding.is_injective() {
        return Err(BredonError::NotTransportable("embedding must be injective".into()));
    }
    let category = build_orbit_category(embedding.domain())?;
    let embed_members = |members: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = members.iter().map(|&m| embedding.apply(m)).collect();
        v.sort_unstable();
        v
    };
    let mut embedded_object = Vec::with_capacity(category.object_count());
    for object in category.objects() {
        let image = embed_members(object.members());
        let idx = system
            .category()
            .object_index(&image)
            .ok_or(BredonError::MissingObject { members: image })?;
        embedded_object.push(idx);
    }
    let values: Vec<FGAbGroup> =
        embedded_object.iter().map(|&i| system.value(i).clone()).collect();
    let mut maps = BTreeMap::new();
    for hom in category.all_homs() {
        let src = embedded_object[hom.src];
        let dst = embedded_object[hom.dst];
        let rep = system.category().canonical_rep(embedding.apply(hom.rep), dst);
        let embedded = system
            .category()
            .hom(src, dst, rep)
            .ok_or(BredonError::NotTransportable("embedded hom invalid".into()))?;
        maps.insert((hom.src, hom.dst, hom.rep), system.matrix(embedded).clone());
    }
    CoefficientSystem::new(category, values, maps)
}

/// Deterministic choice profile for the pushforward constructions; the
/// alternate profile re-runs every choice point on its second candidate,
/// which lets tests confirm choice-independence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoiceProfile {
    Least,
    Alternate,
}

fn choose<T: Copy>(candidates: &[T], profile: ChoiceProfile) -> T {
    match profile {
        ChoiceProfile::Least => candidates[0],
        ChoiceProfile::Alternate => *candidates.get(1).unwrap_or(&candidates[0]),
    }
}

/// Push a system forward along a subgroup inclusion, supported on the
/// isotropy lineage of the induced space G x_H Z.
pub fn pushforward_inclusion(
    system: &CoefficientSystem,
    embedding: &GroupHom,
    z_space: &GComplex,
) -> Result<CoefficientSystem, BredonError> {
    if *embedding.domain().as_ref() != *system.category().group().as_ref()
        || *z_space.group().as_ref() != *system.category().group().as_ref()
    {
        return Err(BredonError::GroupMismatch);
    }
    let (induced, inclusion) = induce_space(embedding, z_space)?;
    let big = embedding.codomain();
    let category = build_orbit_category(big)?;
    let embedding_inverse: BTreeMap<usize, usize> =
        embedding.domain().elements().map(|h| (embedding.apply(h), h)).collect();
    let inclusion_vmap = inclusion.vertex_map().expect("inclusion is vertex-backed");

    // chosen fixed vertex and pair representative per lineage object;
    // vertex order already prefers the identity fibre
    let lineage = isotropy_lineage(&induced)?;
    let fixed_vertex = |subgroup: &Subgroup| -> Option<usize> {
        (0..induced.complex().vertex_count())
            .find(|&v| subgroup.members().iter().all(|&g| induced.vertex_image(g, v) == v))
    };
    let pair_rep = |vertex: usize| -> (usize, usize) {
        let e = big.identity();
        let mut order: Vec<usize> = vec![e];
        order.extend(big.elements().filter(|&g| g != e));
        for g in order {
            for z in 0..z_space.complex().vertex_count() {
                if induced.vertex_image(g, inclusion_vmap[z]) == vertex {
                    return (g, z);
                }
            }
        }
        unreachable!("every induced vertex lies over a pair")
    };

    let mut lineage_data: Vec<Option<(usize, usize)>> = vec![None; category.object_count()];
    for subgroup in lineage.subgroups() {
        let obj = category
            .object_index(subgroup.members())
            .ok_or(BredonError::MissingObject { members: subgroup.members().to_vec() })?;
        let vertex = fixed_vertex(subgroup).expect("lineage subgroup fixes a vertex");
        let (g, _z) = pair_rep(vertex);
        // transported subgroup g^{-1} L g, read inside the small group
        let mut members = Vec::new();
        for &l in subgroup.members() {
            let conj = big.mul(big.mul(big.inv(g), l), g);
            let h = *embedding_inverse
                .get(&conj)
                .ok_or_else(|| BredonError::NotTransportable(format!(
                    "stabilizer transport left the subgroup at element {conj}"
                )))?;
            members.push(h);
        }
        members.sort_unstable();
        let h_obj = system
            .category()
            .object_index(&members)
            .ok_or(BredonError::MissingObject { members })?;
        lineage_data[obj] = Some((g, h_obj));
    }

    let values: Vec<FGAbGroup> = lineage_data
        .iter()
        .map(|d| match d {
            Some((_, h_obj)) => system.value(*h_obj).clone(),
            None => FGAbGroup::zero("0"),
        })
        .collect();

    let mut maps: BTreeMap<(usize, usize, usize), IntMatrix> = BTreeMap::new();
    let mut pending: Vec<crate::bredon::OrbitHom> = Vec::new();
    for hom in category.all_homs() {
        let key = (hom.src, hom.dst, hom.rep);
        let (Some((g_src, h_src)), Some((g_dst, h_dst))) =
            (lineage_data[hom.src], lineage_data[hom.dst])
        else {
            maps.insert(key, zero_matrix_between(&values[hom.src], &values[hom.dst]));
            continue;
        };
        // direct rule: an element of H realizing the hom through the two
        // chosen pairs; all hits give the same coset
        let mut found = None;
        for &l in category.objects()[hom.dst].members() {
            let cand = big.mul(big.mul(big.inv(g_src), big.mul(hom.rep, l)), g_dst);
            if let Some(&h) = embedding_inverse.get(&cand) {
                found = Some(h);
                break;
            }
        }
        match found {
            Some(h) => {
                let rep = system.category().canonical_rep(h, h_dst);
                let small_hom = system.category().hom(h_src, h_dst, rep).ok_or_else(|| {
                    BredonError::NotTransportable("transported hom invalid".into())
                })?;
                maps.insert(key, system.matrix(small_hom).clone());
            }
            None => pending.push(hom),
        }
    }

    // orbifold closure: a pending hom copies any defined hom with the same
    // projection modulo a free normal subgroup of the induced space
    let kernels = free_normal_subgroups(&induced)?;
    let mut progressed = true;
    while progressed && !pending.is_empty() {
        progressed = false;
        let mut still_pending = Vec::new();
        'next_pending: for hom in pending {
            for kernel in &kernels {
                for candidate in category.all_homs() {
                    let key = (candidate.src, candidate.dst, candidate.rep);
                    if !maps.contains_key(&key) || lineage_data[candidate.src].is_none() {
                        continue;
                    }
                    let src_match = category.objects()[hom.src].product_set(kernel)
                        == category.objects()[candidate.src].product_set(kernel);
                    let dst_match = category.objects()[hom.dst].product_set(kernel)
                        == category.objects()[candidate.dst].product_set(kernel);
                    if !src_match || !dst_match {
                        continue;
                    }
                    let c1 =
                        coset_times_kernel(big, hom.rep, &category.objects()[hom.dst], kernel);
                    let c2 = coset_times_kernel(
                        big,
                        candidate.rep,
                        &category.objects()[candidate.dst],
                        kernel,
                    );
                    if c1 != c2 {
                        continue;
                    }
                    let matrix = maps[&key].clone();
                    if matrix.rows() != values[hom.src].generators()
                        || matrix.cols() != values[hom.dst].generators()
                    {
                        continue;
                    }
                    maps.insert((hom.src, hom.dst, hom.rep), matrix);
                    progressed = true;
                    continue 'next_pending;
                }
            }
            still_pending.push(hom);
        }
        pending = still_pending;
    }
    if let Some(hom) = pending.first() {
        return Err(BredonError::NotTransportable(format!(
            "no transport for hom ({}, {}, {})",
            hom.src, hom.dst, hom.rep
        )));
    }
    CoefficientSystem::new(category, values, maps)
}

/// Push an orbifold system forward along a free quotient: values are read
/// at unique lifts of the quotient subgroups; structure maps decompose
/// into a projection inside the chosen lift and a conjugation along a
/// chosen preimage. Choice-independence is the content of the orbifold
/// condition, which is verified up front.
pub fn pushforward_quotient(
    system: &CoefficientSystem,
    kernel: &Subgroup,
    space: &GComplex,
) -> Result<CoefficientSystem, BredonError> {
    pushforward_quotient_with_profile(system, kernel, space, ChoiceProfile::Least)
}

pub fn pushforward_quotient_with_profile(
    system: &CoefficientSystem,
    kernel: &Subgroup,
    space: &GComplex,
    profile: ChoiceProfile,
) -> Result<CoefficientSystem, BredonError> {
    if *space.group().as_ref() != *system.category().group().as_ref() {
        return Err(BredonError::GroupMismatch);
    }
    let check = is_orbifold_system(space, system)?;
    if !check.ok {
        return Err(BredonError::NotOrbifoldSystem(
            check.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ));
    }
    let group = space.group();
    let (quotient, projection) = quotient_group(group, kernel)?;
    let (qspace, qmap) = quotient_complex(space, kernel)?;
    let qvmap = qmap.vertex_map().expect("quotient map is vertex-backed");
    let category = build_orbit_category(&quotient)?;
    let lineage = isotropy_lineage(&qspace)?;

    // chosen lift per lineage object of the quotient
    let mut lift_object: Vec<Option<usize>> = vec![None; category.object_count()];
    for subgroup in lineage.subgroups() {
        let obj = category
            .object_index(subgroup.members())
            .ok_or(BredonError::MissingObject { members: subgroup.members().to_vec() })?;
        let fixed: Vec<usize> = (0..qspace.complex().vertex_count())
            .filter(|&v| {
                subgroup.members().iter().all(|&g| qspace.vertex_image(g, v) == v)
            })
            .collect();
        let chosen_quotient_vertex = choose(&fixed, profile);
        let preimages: Vec<usize> = (0..space.complex().vertex_count())
            .filter(|&v| qvmap[v] == chosen_quotient_vertex)
            .collect();
        let chosen_vertex = choose(&preimages, profile);
        let lift = unique_lift(space, kernel, chosen_vertex, subgroup)?;
        let lift_idx = system
            .category()
            .object_index(lift.members())
            .ok_or(BredonError::MissingObject { members: lift.members().to_vec() })?;
        lift_object[obj] = Some(lift_idx);
    }

    let values: Vec<FGAbGroup> = lift_object
        .iter()
        .map(|d| match d {
            Some(idx) => system.value(*idx).clone(),
            None => FGAbGroup::zero("0"),
        })
        .collect();

    let mut maps: BTreeMap<(usize, usize, usize), IntMatrix> = BTreeMap::new();
    for hom in category.all_homs() {
        let key = (hom.src, hom.dst, hom.rep);
        let (Some(lift_src), Some(lift_dst)) = (lift_object[hom.src], lift_object[hom.dst])
        else {
            maps.insert(key, zero_matrix_between(&values[hom.src], &values[hom.dst]));
            continue;
        };
        let src_lift = &system.category().objects()[lift_src];
        let dst_lift = &system.category().objects()[lift_dst];
        // conjugated source mod K: N = rep^{-1} L1 rep downstairs
        let n_bar: BTreeSet<usize> = category.objects()[hom.src]
            .members()
            .iter()
            .map(|&l| quotient.mul(quotient.mul(quotient.inv(hom.rep), l), hom.rep))
            .collect();
        // its lift inside the chosen lift of L2
        let n_members: Vec<usize> = dst_lift
            .members()
            .iter()
            .copied()
            .filter(|&m| n_bar.contains(&projection.apply(m)))
            .collect();
        let n_idx = system
            .category()
            .object_index(&n_members)
            .ok_or(BredonError::MissingObject { members: n_members.clone() })?;
        let proj_hom = system
            .category()
            .hom(n_idx, lift_dst, group.identity())
            .ok_or_else(|| BredonError::NotTransportable("projection hom invalid".into()))?;
        let m_proj = system.matrix(proj_hom);
        // conjugation along a chosen preimage of the representative
        let preimages: Vec<usize> =
            group.elements().filter(|&g| projection.apply(g) == hom.rep).collect();
        let c0 = choose(&preimages, profile);
        let conj_members: Vec<usize> = {
            let mut v: Vec<usize> = src_lift
                .members()
                .iter()
                .map(|&l| group.mul(group.mul(group.inv(c0), l), c0))
                .collect();
            v.sort_unstable();
            v
        };
        let conj_idx = system
            .category()
            .object_index(&conj_members)
            .ok_or(BredonError::MissingObject { members: conj_members.clone() })?;
        let conj_rep = system.category().canonical_rep(c0, conj_idx);
        let conj_hom = system
            .category()
            .hom(lift_src, conj_idx, conj_rep)
            .ok_or_else(|| BredonError::NotTransportable("conjugation hom invalid".into()))?;
        let m_conj = system.matrix(conj_hom);
        if m_conj.cols() != m_proj.rows() {
            return Err(BredonError::NotTransportable(
                "lifts of the conjugated subgroup have different values".into(),
            ));
        }
        maps.insert(key, m_conj.mul(m_proj));
    }
    CoefficientSystem::new(category, values, maps)
}
