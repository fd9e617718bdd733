//! Finite simplicial complexes with admissible simplicial group actions:
//! fixed subcomplexes, quotients, induced spaces, and isotropy lineages.
//!
//! Admissibility (a group element stabilizing a simplex setwise fixes its
//! vertices pointwise) is the regularity condition that makes fixed sets
//! subcomplexes and quotients well-behaved; one barycentric subdivision
//! enforces it.

use crate::gpd::{EquivariantMap, TranslationGroupoid};
use crate::grp::{
    enumerate_subgroups, quotient_group, FiniteGroup, GroupError, GroupHom, Subgroup,
};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("action table malformed for element {0}")]
    MalformedAction(usize),
    #[error("not a group action: identity or compatibility fails at element {0}, vertex {1}")]
    NotAnAction(usize, usize),
    #[error("action not simplicial: element {element} maps simplex {simplex:?} outside the complex")]
    NotSimplicial { element: usize, simplex: Vec<usize> },
    #[error("action not admissible: element {element} stabilizes {simplex:?} without fixing it")]
    NotAdmissible { element: usize, simplex: Vec<usize> },
    #[error("subgroup belongs to a different group")]
    SubgroupMismatch,
    #[error("subgroup does not act freely: element {element} fixes {simplex:?}")]
    NotFree { element: usize, simplex: Vec<usize> },
    #[error("quotient needs a further subdivision: simplices {0:?} and {1:?} collide")]
    NeedsSubdivision(Vec<usize>, Vec<usize>),
    #[error("no subgroup of the stabilizer lifts the requested subgroup")]
    NoLift,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite simplicial complex on vertices 0..vertex_count. Simplices are
/// sorted vertex lists, closed under faces; every listed vertex index must
/// be < vertex_count but vertices outside any simplex are allowed (they
/// simply do not contribute cells).
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    vertex_count: usize,
    simplices: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex({} vertices, {} simplices)", self.vertex_count, self.simplices.len())
    }
}

impl Complex {
    /// Build from any list of simplices (maximal faces suffice); the face
    /// closure is taken automatically.
    pub fn new(vertex_count: usize, simplices: &[Vec<usize>]) -> Result<Self, SpaceError> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in simplices {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(SpaceError::VertexOutOfRange(v));
            }
            if s.is_empty() {
                continue;
            }
            add_with_faces(&mut set, s);
        }
        let simplices: Vec<Vec<usize>> = set.into_iter().collect();
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Complex { vertex_count, simplices, index })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Complex { vertex_count, simplices: Vec::new(), index: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// All simplices in canonical (lexicographic) order; positions in this
    /// list are the object ids of the associated translation groupoid.
    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplex_id(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index.contains_key(simplex)
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Ids of the simplices of dimension `d`, ascending.
    pub fn simplices_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.simplices.len()).filter(|&i| self.simplices[i].len() == d + 1).collect()
    }

    /// Vertices that occur in at least one simplex.
    pub fn active_vertices(&self) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for s in &self.simplices {
            out.extend(s.iter().copied());
        }
        out.into_iter().collect()
    }
}

fn add_with_faces(set: &mut BTreeSet<Vec<usize>>, simplex: Vec<usize>) {
    if simplex.is_empty() || set.contains(&simplex) {
        return;
    }
    for i in 0..simplex.len() {
        let mut face = simplex.clone();
        face.remove(i);
        add_with_faces(set, face);
    }
    set.insert(simplex);
}

/// A finite simplicial complex with a simplicial action of a finite group.
/// `action[g][v]` is the image vertex of v under the group element g.
#[derive(Clone, PartialEq, Eq)]
pub struct GComplex {
    group: Arc<FiniteGroup>,
    complex: Complex,
    action: Vec<Vec<usize>>,
    object_action: Vec<Vec<usize>>,
    admissible: bool,
}

impl fmt::Debug for GComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GComplex(group order {}, {} vertices, {} simplices{})",
            self.group.order(),
            self.complex.vertex_count(),
            self.complex.simplex_count(),
            if self.admissible { "" } else { ", not admissible" }
        )
    }
}

impl GComplex {
    /// Validate that `action` is a simplicial group action. A non-admissible
    /// action is accepted (the flag records it); feed it to [`regularize`]
    /// before using operations that need admissibility.
    pub fn new(
        group: Arc<FiniteGroup>,
        complex: Complex,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, SpaceError> {
        let n = complex.vertex_count();
        if action.len() != group.order() {
            return Err(SpaceError::MalformedAction(action.len()));
        }
        for (g, perm) in action.iter().enumerate() {
            if perm.len() != n {
                return Err(SpaceError::MalformedAction(g));
            }
            let mut seen = vec![false; n];
            for &v in perm {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(SpaceError::MalformedAction(g));
                }
            }
        }
        let e = group.identity();
        for v in 0..n {
            if action[e][v] != v {
                return Err(SpaceError::NotAnAction(e, v));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for v in 0..n {
                    if action[gh][v] != action[g][action[h][v]] {
                        return Err(SpaceError::NotAnAction(gh, v));
                    }
                }
            }
        }
        // simplicial: the image of a simplex is a simplex
        let mut object_action = vec![vec![0usize; complex.simplex_count()]; group.order()];
        for g in group.elements() {
            for (id, s) in complex.simplices().iter().enumerate() {
                let image = apply_to_simplex(&action[g], s);
                match complex.simplex_id(&image) {
                    Some(target) => object_action[g][id] = target,
                    None => {
                        return Err(SpaceError::NotSimplicial { element: g, simplex: s.clone() })
                    }
                }
            }
        }
        let admissible = admissibility_witness(&group, &complex, &action).is_none();
        Ok(GComplex { group, complex, action, object_action, admissible })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    pub fn vertex_image(&self, g: usize, v: usize) -> usize {
        self.action[g][v]
    }

    /// Image of an object (simplex id) under a group element.
    pub fn object_image(&self, g: usize, object: usize) -> usize {
        self.object_action[g][object]
    }

    pub fn require_admissible(&self) -> Result<(), SpaceError> {
        match admissibility_witness(&self.group, &self.complex, &self.action) {
            None => Ok(()),
            Some((element, simplex)) => Err(SpaceError::NotAdmissible { element, simplex }),
        }
    }

    /// Sign of the permutation induced on the sorted vertex list of
    /// `simplex` by the element g (needed to orient equivariant chains).
    pub fn action_sign(&self, g: usize, simplex: &[usize]) -> i64 {
        let images: Vec<usize> = simplex.iter().map(|&v| self.action[g][v]).collect();
        permutation_sign(&images)
    }

    /// Setwise stabilizer of an object; equals the pointwise fixator for
    /// admissible actions.
    pub fn object_stabilizer(&self, object: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.object_action[g][object] == object).collect()
    }

    pub fn vertex_stabilizer(&self, v: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.action[g][v] == v).collect()
    }

    /// Orbit partition of the objects, each orbit led by its least id.
    pub fn object_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.complex.simplex_count();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for id in 0..n {
            if seen[id] {
                continue;
            }
            let mut orbit: BTreeSet<usize> = BTreeSet::new();
            for g in self.group.elements() {
                orbit.insert(self.object_action[g][id]);
            }
            for &x in &orbit {
                seen[x] = true;
            }
            orbits.push(orbit.into_iter().collect());
        }
        orbits
    }

    /// Least group element carrying `from` onto `to`, if any.
    pub fn transporter_rep(&self, from: usize, to: usize) -> Option<usize> {
        self.group.elements().find(|&g| self.object_action[g][from] == to)
    }

    pub fn groupoid(self) -> TranslationGroupoid {
        TranslationGroupoid::new(self)
    }
}

fn apply_to_simplex(perm: &[usize], simplex: &[usize]) -> Vec<usize> {
    let mut image: Vec<usize> = simplex.iter().map(|&v| perm[v]).collect();
    image.sort_unstable();
    image
}

fn permutation_sign(images: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn admissibility_witness(
    group: &FiniteGroup,
    complex: &Complex,
    action: &[Vec<usize>],
) -> Option<(usize, Vec<usize>)> {
    for g in group.elements() {
        for s in complex.simplices() {
            let image = apply_to_simplex(&action[g], s);
            if &image == s && s.iter().any(|&v| action[g][v] != v) {
                return Some((g, s.clone()));
            }
        }
    }
    None
}

/// The barycentric subdivision with its induced action: vertices are the
/// simplices of the input, simplices are the chains of proper face
/// inclusions. The result is always admissible.
pub fn barycentric_subdivision(space: &GComplex) -> Result<GComplex, SpaceError> {
    let complex = space.complex();
    let objects = complex.simplices();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    fn extend_chains(
        complex: &Complex,
        chain: &mut Vec<usize>,
        top: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(chain.clone());
        let top_simplex = &complex.simplices()[top];
        for (id, s) in complex.simplices().iter().enumerate() {
            if s.len() > top_simplex.len() && s != top_simplex && top_simplex.iter().all(|v| s.contains(v))
            {
                chain.push(id);
                extend_chains(complex, chain, id, out);
                chain.pop();
            }
        }
    }
    for id in 0..objects.len() {
        let mut chain = vec![id];
        extend_chains(complex, &mut chain, id, &mut chains);
    }
    let subdivided = Complex::new(objects.len(), &chains)?;
    let action: Vec<Vec<usize>> = space
        .group()
        .elements()
        .map(|g| (0..objects.len()).map(|id| space.object_image(g, id)).collect())
        .collect();
    let out = GComplex::new(Arc::clone(space.group()), subdivided, action)?;
    out.require_admissible()?;
    Ok(out)
}

/// Enforce admissibility: returns the input unchanged when it is already
/// admissible, otherwise its barycentric subdivision.
pub fn regularize(space: &GComplex) -> Result<GComplex, SpaceError> {
    if space.is_admissible() {
        return Ok(space.clone());
    }
    barycentric_subdivision(space)
}

/// The subcomplex of simplices all of whose vertices are fixed by every
/// element of H. For admissible actions this is the honest fixed-point set.
pub fn fixed_subcomplex(space: &GComplex, subgroup: &Subgroup) -> Result<Complex, SpaceError> {
    if *subgroup.parent().as_ref() != *space.group().as_ref() {
        return Err(SpaceError::SubgroupMismatch);
    }
    let fixed: Vec<Vec<usize>> = space
        .complex()
        .simplices()
        .iter()
        .filter(|s| {
            s.iter().all(|&v| subgroup.members().iter().all(|&h| space.vertex_image(h, v) == v))
        })
        .cloned()
        .collect();
    Complex::new(space.complex().vertex_count(), &fixed)
}

/// Quotient by a free normal subgroup: vertices become K-orbits (least
/// index representative), the residual G/K action descends, and the
/// canonical projection is returned as an equivariant map over G -> G/K.
pub fn quotient_complex(
    space: &GComplex,
    kernel: &Subgroup,
) -> Result<(GComplex, EquivariantMap), SpaceError> {
    if *kernel.parent().as_ref() != *space.group().as_ref() {
        return Err(SpaceError::SubgroupMismatch);
    }
    space.require_admissible()?;
    let group = space.group();
    let (quotient_grp, projection) = quotient_group(group, kernel)?;
    // freeness on vertices and (setwise) on simplices
    for &k in kernel.members() {
        if k == group.identity() {
            continue;
        }
        for v in 0..space.complex().vertex_count() {
            if space.vertex_image(k, v) == v {
                return Err(SpaceError::NotFree { element: k, simplex: vec![v] });
            }
        }
        for (id, s) in space.complex().simplices().iter().enumerate() {
            if space.object_image(k, id) == id {
                return Err(SpaceError::NotFree { element: k, simplex: s.clone() });
            }
        }
    }
    // vertex orbits under K
    let n = space.complex().vertex_count();
    let mut orbit_rep = vec![usize::MAX; n];
    for v in 0..n {
        orbit_rep[v] =
            kernel.members().iter().map(|&k| space.vertex_image(k, v)).min().unwrap_or(v);
    }
    let reps: Vec<usize> = {
        let mut r: Vec<usize> = orbit_rep.clone();
        r.sort_unstable();
        r.dedup();
        r
    };
    let rep_index: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let vertex_map: Vec<usize> = (0..n).map(|v| rep_index[&orbit_rep[v]]).collect();

    // image simplices; a degenerate image or a collision between distinct
    // K-orbits means the complex is not subdivided finely enough
    let mut image_of: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut images: Vec<Vec<usize>> = Vec::new();
    for s in space.complex().simplices() {
        let mut image: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
        image.sort_unstable();
        let before = image.len();
        image.dedup();
        if image.len() != before {
            return Err(SpaceError::NeedsSubdivision(s.clone(), s.clone()));
        }
        if let Some(other) = image_of.get(&image) {
            // must lie in the same K-orbit
            let same_orbit = kernel.members().iter().any(|&k| {
                let mapped = apply_to_simplex(&space.action()[k], s);
                &mapped == other
            });
            if !same_orbit {
                return Err(SpaceError::NeedsSubdivision(s.clone(), other.clone()));
            }
        } else {
            image_of.insert(image.clone(), s.clone());
            images.push(image);
        }
    }
    let quotient_cx = Complex::new(reps.len(), &images)?;
    // residual action of G/K through coset representatives
    let quotient_reps: Vec<usize> = kernel.coset_reps();
    let action: Vec<Vec<usize>> = quotient_reps
        .iter()
        .map(|&g| reps.iter().map(|&v| vertex_map[space.vertex_image(g, v)]).collect())
        .collect();
    let quotient_space = GComplex::new(Arc::clone(&quotient_grp), quotient_cx, action)?;
    quotient_space.require_admissible()?;
    let map = EquivariantMap::from_vertex_map(
        TranslationGroupoid::new(space.clone()),
        TranslationGroupoid::new(quotient_space.clone()),
        projection,
        vertex_map,
    )
    .expect("canonical projection is simplicial and equivariant");
    Ok((quotient_space, map))
}

/// Induce a Z-complex over a subgroup embedding i: H -> G up to a
/// G-complex on G x_H Z, together with the canonical inclusion z -> [e, z].
pub fn induce_space(
    embedding: &GroupHom,
    space: &GComplex,
) -> Result<(GComplex, EquivariantMap), SpaceError> {
    if *embedding.domain().as_ref() != *space.group().as_ref() {
        return Err(SpaceError::SubgroupMismatch);
    }
    if !embedding.is_injective() {
        return Err(SpaceError::SubgroupMismatch);
    }
    let small = space.group();
    let big = embedding.codomain();
    let nz = space.complex().vertex_count();
    // classes of pairs (g, z) under (g, z) ~ (g i(h)^{-1}, h z)
    let canon = |g: usize, z: usize| -> (usize, usize) {
        small
            .elements()
            .map(|h| (big.mul(g, big.inv(embedding.apply(h))), space.vertex_image(h, z)))
            .min_by_key(|&(a, w)| (a != big.identity(), a, w))
            .expect("nonempty group")
    };
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut class_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for g in big.elements() {
        for z in 0..nz {
            let c = canon(g, z);
            if class_index.insert(c, 0).is_none() {
                classes.push(c);
            }
        }
    }
    classes.sort_by_key(|&(a, w)| (a != big.identity(), a, w));
    for (i, c) in classes.iter().enumerate() {
        class_index.insert(*c, i);
    }
    let vertex_of = |g: usize, z: usize| class_index[&canon(g, z)];

    let mut simplices: Vec<Vec<usize>> = Vec::new();
    for g in big.elements() {
        for s in space.complex().simplices() {
            let image: Vec<usize> = s.iter().map(|&z| vertex_of(g, z)).collect();
            simplices.push(image);
        }
    }
    let induced_cx = Complex::new(classes.len(), &simplices)?;
    let action: Vec<Vec<usize>> = big
        .elements()
        .map(|gp| classes.iter().map(|&(g, z)| vertex_of(big.mul(gp, g), z)).collect())
        .collect();
    let induced = GComplex::new(Arc::clone(big), induced_cx, action)?;
    induced.require_admissible()?;
    let e = big.identity();
    let inclusion_vertex_map: Vec<usize> = (0..nz).map(|z| vertex_of(e, z)).collect();
    let map = EquivariantMap::from_vertex_map(
        TranslationGroupoid::new(space.clone()),
        TranslationGroupoid::new(induced.clone()),
        embedding.clone(),
        inclusion_vertex_map,
    )
    .expect("canonical inclusion is simplicial and equivariant");
    Ok((induced, map))
}

/// The subgroups with nonempty fixed set, closed under subgroups and
/// conjugation.
#[derive(Clone, Debug)]
pub struct IsotropyLineage {
    subgroups: Vec<Subgroup>,
}

impl IsotropyLineage {
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn contains(&self, subgroup: &Subgroup) -> bool {
        self.subgroups.iter().any(|s| s.members() == subgroup.members())
    }
}

/// All subgroups L with X^L nonempty; equivalently all subgroups of vertex
/// stabilizers (admissible actions).
pub fn isotropy_lineage(space: &GComplex) -> Result<IsotropyLineage, SpaceError> {
    space.require_admissible()?;
    let subgroups = enumerate_subgroups(space.group())?;
    let mut out = Vec::new();
    for s in subgroups {
        if !fixed_subcomplex(space, &s)?.is_empty() {
            out.push(s);
        }
    }
    Ok(IsotropyLineage { subgroups: out })
}

/// The unique subgroup L of the stabilizer of `vertex` projecting onto
/// `target` in G/K (K normal and free on the space). Uniqueness is
/// asserted by exhaustive search.
pub fn unique_lift(
    space: &GComplex,
    kernel: &Subgroup,
    vertex: usize,
    target: &Subgroup,
) -> Result<Subgroup, SpaceError> {
    let group = space.group();
    let (quotient, projection) = quotient_group(group, kernel)?;
    if *target.parent().as_ref() != *quotient.as_ref() {
        return Err(SpaceError::SubgroupMismatch);
    }
    let stabilizer = space.vertex_stabilizer(vertex);
    let subgroups = enumerate_subgroups(group)?;
    let mut lifts = Vec::new();
    for s in subgroups {
        if !s.members().iter().all(|&m| stabilizer.contains(&m)) {
            continue;
        }
        let image: BTreeSet<usize> = s.members().iter().map(|&m| projection.apply(m)).collect();
        let image: Vec<usize> = image.into_iter().collect();
        if image == target.members() {
            lifts.push(s);
        }
    }
    match lifts.len() {
        0 => Err(SpaceError::NoLift),
        1 => {
            let lift = lifts.pop().expect("one lift");
            debug_assert!(lift.intersect(kernel).is_trivial());
            Ok(lift)
        }
        _ => {
            // ruled out for free actions; report as a precondition problem
            Err(SpaceError::NotFree { element: kernel.members()[0], simplex: vec![vertex] })
        }
    }
}

/// Small group complexes used across the test suites and benchmarks.
pub mod samples {
    use super::*;
    use crate::grp::samples::{cyclic, klein, trivial};

    /// Octagon model of the circle with the Klein group acting by the two
    /// reflections k -> -k and k -> 4 - k (mod 8).
    pub fn octagon_klein() -> GComplex {
        let g = klein();
        let simplices: Vec<Vec<usize>> = (0..8).map(|k| vec![k, (k + 1) % 8]).collect();
        let cx = Complex::new(8, &simplices).unwrap();
        let s1: Vec<usize> = (0..8).map(|k| (8 - k) % 8).collect();
        let s2: Vec<usize> = (0..8).map(|k| (12 - k) % 8).collect();
        let t: Vec<usize> = (0..8).map(|k| (k + 4) % 8).collect();
        let e: Vec<usize> = (0..8).collect();
        GComplex::new(g, cx, vec![e, s1, s2, t]).unwrap()
    }

    /// Square model of the circle with Z/2 reflecting across the 0-2 axis.
    pub fn square_z2() -> GComplex {
        let g = cyclic(2);
        let cx =
            Complex::new(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let e = vec![0, 1, 2, 3];
        let s = vec![0, 3, 2, 1];
        GComplex::new(g, cx, vec![e, s]).unwrap()
    }

    pub fn square_trivial() -> GComplex {
        let g = trivial();
        let cx =
            Complex::new(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        GComplex::new(g, cx, vec![(0..4).collect()]).unwrap()
    }

    pub fn point_with(group: Arc<FiniteGroup>) -> GComplex {
        let cx = Complex::new(1, &[vec![0]]).unwrap();
        let action = vec![vec![0]; group.order()];
        GComplex::new(group, cx, action).unwrap()
    }

    /// Two isolated vertices freely swapped by Z/2.
    pub fn two_points_swapped() -> GComplex {
        let g = cyclic(2);
        let cx = Complex::new(2, &[vec![0], vec![1]]).unwrap();
        GComplex::new(g, cx, vec![vec![0, 1], vec![1, 0]]).unwrap()
    }
}
