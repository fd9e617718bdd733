//! The Hilsum-Skandalis bundle calculus: principal bibundles between
//! translation groupoids, tensor composition over the middle groupoid,
//! Morita detection, and the translation back to spans.
//!
//! Bundle elements are opaque indices with diagnostic labels; quotients
//! are computed by explicit orbit enumeration with least-representative
//! canonical elements, and bundle isomorphism is decided by exhaustive
//! search.

use crate::gpd::{
    is_essential_equivalence, EquivariantMap, GeneralizedMap, GpdError, TranslationGroupoid,
    TwoCell,
};
use crate::grp::{direct_product, GroupError, GroupHom};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HsError {
    #[error("bundle data malformed: {0}")]
    Malformed(String),
    #[error("bundle axiom fails: {0}")]
    AxiomFailure(String),
    #[error("bundle is not principal on the right: {0}")]
    NotPrincipal(String),
    #[error("bundle is not a Morita equivalence")]
    NotMorita,
    #[error("middle groupoids do not match")]
    MiddleMismatch,
    #[error(transparent)]
    Gpd(#[from] GpdError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A principal right bundle with a commuting left action: the arrow data
/// of a generalized morphism source -> target. Actions are total in the
/// group coordinate because both ends are translation groupoids; moving
/// along an arrow adjusts the anchors by the action.
#[derive(Clone)]
pub struct HSBundle {
    source: TranslationGroupoid,
    target: TranslationGroupoid,
    labels: Vec<String>,
    rho: Vec<usize>,
    anchor: Vec<usize>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl fmt::Debug for HSBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HSBundle({} elements)", self.size())
    }
}

impl HSBundle {
    pub fn new(
        source: TranslationGroupoid,
        target: TranslationGroupoid,
        labels: Vec<String>,
        rho: Vec<usize>,
        anchor: Vec<usize>,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Self, HsError> {
        let bundle = HSBundle { source, target, labels, rho, anchor, left, right };
        bundle.validate()?;
        Ok(bundle)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn source(&self) -> &TranslationGroupoid {
        &self.source
    }

    pub fn target(&self) -> &TranslationGroupoid {
        &self.target
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rho(&self, x: usize) -> usize {
        self.rho[x]
    }

    pub fn anchor(&self, x: usize) -> usize {
        self.anchor[x]
    }

    pub fn act_left(&self, g: usize, x: usize) -> usize {
        self.left[g][x]
    }

    pub fn act_right(&self, x: usize, h: usize) -> usize {
        self.right[h][x]
    }

    fn validate(&self) -> Result<(), HsError> {
        let n = self.size();
        let g_order = self.source.group().order();
        let h_order = self.target.group().order();
        if self.rho.len() != n
            || self.anchor.len() != n
            || self.left.len() != g_order
            || self.right.len() != h_order
            || self.left.iter().any(|t| t.len() != n)
            || self.right.iter().any(|t| t.len() != n)
        {
            return Err(HsError::Malformed("table sizes".into()));
        }
        if self.rho.iter().any(|&o| o >= self.source.object_count())
            || self.anchor.iter().any(|&o| o >= self.target.object_count())
        {
            return Err(HsError::Malformed("anchor out of range".into()));
        }
        let src_group = self.source.group();
        let tgt_group = self.target.group();
        let e_g = src_group.identity();
        let e_h = tgt_group.identity();
        for x in 0..n {
            if self.left[e_g][x] != x || self.right[e_h][x] != x {
                return Err(HsError::AxiomFailure(format!("identity action moves element {x}")));
            }
        }
        for g in src_group.elements() {
            for x in 0..n {
                let gx = self.left[g][x];
                if self.rho[gx] != self.source.object_image(g, self.rho[x]) {
                    return Err(HsError::AxiomFailure(format!("rho(g x) at g={g}, x={x}")));
                }
                if self.anchor[gx] != self.anchor[x] {
                    return Err(HsError::AxiomFailure(format!("r(g x) != r(x) at g={g}, x={x}")));
                }
                for g2 in src_group.elements() {
                    if self.left[src_group.mul(g2, g)][x] != self.left[g2][gx] {
                        return Err(HsError::AxiomFailure(format!(
                            "left action composition at ({g2},{g},{x})"
                        )));
                    }
                }
            }
        }
        for h in tgt_group.elements() {
            for x in 0..n {
                let xh = self.right[h][x];
                if self.rho[xh] != self.rho[x] {
                    return Err(HsError::AxiomFailure(format!("rho(x h) != rho(x) at h={h}, x={x}")));
                }
                if self.anchor[xh] != self.target.object_image(tgt_group.inv(h), self.anchor[x]) {
                    return Err(HsError::AxiomFailure(format!("r(x h) at h={h}, x={x}")));
                }
                for h2 in tgt_group.elements() {
                    if self.right[tgt_group.mul(h, h2)][x] != self.right[h2][xh] {
                        return Err(HsError::AxiomFailure(format!(
                            "right action composition at ({h},{h2},{x})"
                        )));
                    }
                }
            }
        }
        // the two actions commute
        for g in src_group.elements() {
            for h in tgt_group.elements() {
                for x in 0..n {
                    if self.left[g][self.right[h][x]] != self.right[h][self.left[g][x]] {
                        return Err(HsError::AxiomFailure(format!(
                            "actions do not commute at ({g},{h},{x})"
                        )));
                    }
                }
            }
        }
        // right principality: rho surjective, and (x, h) -> (x, xh) bijects
        // onto rho-compatible pairs
        let mut hit = vec![false; self.source.object_count()];
        for &o in &self.rho {
            hit[o] = true;
        }
        if let Some(o) = hit.iter().position(|&b| !b) {
            return Err(HsError::NotPrincipal(format!("rho misses object {o}")));
        }
        for x in 0..n {
            for y in 0..n {
                if self.rho[x] != self.rho[y] {
                    continue;
                }
                let count =
                    tgt_group.elements().filter(|&h| self.right[h][x] == y).count();
                if count != 1 {
                    return Err(HsError::NotPrincipal(format!(
                        "{count} right translations from {x} to {y}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The pullback bundle of a homomorphism: elements are pairs (object of
/// the source, arrow of the target landing on its image).
pub fn bundle_from_hom(map: &EquivariantMap) -> Result<HSBundle, HsError> {
    let source = map.source().clone();
    let target = map.target().clone();
    let h_order = target.group().order();
    let n = source.object_count() * h_order;
    let tgt_group = Arc::clone(target.group());
    let src_group = Arc::clone(source.group());
    let idx = |obj: usize, h: usize| obj * h_order + h;
    let mut labels = Vec::with_capacity(n);
    let mut rho = Vec::with_capacity(n);
    let mut anchor = Vec::with_capacity(n);
    for obj in 0..source.object_count() {
        for h in tgt_group.elements() {
            labels.push(format!("(o{obj}|{})", tgt_group.name(h)));
            rho.push(obj);
            anchor.push(target.object_image(tgt_group.inv(h), map.apply_object(obj)));
        }
    }
    let left: Vec<Vec<usize>> = src_group
        .elements()
        .map(|g| {
            (0..n)
                .map(|x| {
                    let (obj, h) = (x / h_order, x % h_order);
                    idx(
                        source.object_image(g, obj),
                        tgt_group.mul(map.hom().apply(g), h),
                    )
                })
                .collect()
        })
        .collect();
    let right: Vec<Vec<usize>> = tgt_group
        .elements()
        .map(|hp| {
            (0..n)
                .map(|x| {
                    let (obj, h) = (x / h_order, x % h_order);
                    idx(obj, tgt_group.mul(h, hp))
                })
                .collect()
        })
        .collect();
    HSBundle::new(source, target, labels, rho, anchor, left, right)
}

/// The unit bundle representing the identity morphism.
pub fn unit_bundle(groupoid: &TranslationGroupoid) -> Result<HSBundle, HsError> {
    bundle_from_hom(&EquivariantMap::identity(groupoid.clone()))
}

/// Both principality conditions: the left action is also principal, so the
/// bundle can be read in either direction.
pub fn is_morita(bundle: &HSBundle) -> bool {
    let n = bundle.size();
    let src_group = bundle.source.group();
    let mut hit = vec![false; bundle.target.object_count()];
    for x in 0..n {
        hit[bundle.anchor[x]] = true;
    }
    if hit.iter().any(|&b| !b) {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if bundle.anchor[x] != bundle.anchor[y] {
                continue;
            }
            let count = src_group.elements().filter(|&g| bundle.left[g][x] == y).count();
            if count != 1 {
                return false;
            }
        }
    }
    true
}

/// Reverse a Morita bundle: anchors swap and each action acts through
/// inverses on the other side.
pub fn invert_bundle(bundle: &HSBundle) -> Result<HSBundle, HsError> {
    if !is_morita(bundle) {
        return Err(HsError::NotMorita);
    }
    let src_group = bundle.source.group();
    let tgt_group = bundle.target.group();
    let left: Vec<Vec<usize>> =
        tgt_group.elements().map(|h| bundle.right[tgt_group.inv(h)].clone()).collect();
    let right: Vec<Vec<usize>> =
        src_group.elements().map(|g| bundle.left[src_group.inv(g)].clone()).collect();
    HSBundle::new(
        bundle.target.clone(),
        bundle.source.clone(),
        bundle.labels.clone(),
        bundle.anchor.clone(),
        bundle.rho.clone(),
        left,
        right,
    )
}

/// Tensor product over the middle groupoid, with the class lookup for the
/// constituent pairs.
pub struct TensorProduct {
    pub bundle: HSBundle,
    /// (element of r, element of q) -> class index, for compatible pairs.
    pub class_of_pair: BTreeMap<(usize, usize), usize>,
}

pub fn tensor_compose_with_classes(
    r: &HSBundle,
    q: &HSBundle,
) -> Result<TensorProduct, HsError> {
    if r.target != q.source {
        return Err(HsError::MiddleMismatch);
    }
    let k_group = Arc::clone(r.target.group());
    // canonical representative of the class of (x, y) under
    // (x, y) . k = (x k, k^{-1} y)
    let canon = |x: usize, y: usize| -> (usize, usize) {
        k_group
            .elements()
            .map(|k| (r.act_right(x, k), q.act_left(k_group.inv(k), y)))
            .min()
            .expect("nonempty group")
    };
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut class_of_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for x in 0..r.size() {
        for y in 0..q.size() {
            if r.anchor(x) != q.rho(y) {
                continue;
            }
            let c = canon(x, y);
            if class_of_pair.insert(c, 0).is_none() {
                reps.push(c);
            }
        }
    }
    reps.sort_unstable();
    for (i, c) in reps.iter().enumerate() {
        class_of_pair.insert(*c, i);
    }
    // spread the index to every pair in each class
    let pairs: Vec<(usize, usize)> = {
        let mut all = Vec::new();
        for x in 0..r.size() {
            for y in 0..q.size() {
                if r.anchor(x) == q.rho(y) {
                    all.push((x, y));
                }
            }
        }
        all
    };
    let mut full_lookup: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(x, y) in &pairs {
        full_lookup.insert((x, y), class_of_pair[&canon(x, y)]);
    }

    let labels: Vec<String> =
        reps.iter().map(|&(x, y)| format!("[{}⊗{}]", r.labels[x], q.labels[y])).collect();
    let rho: Vec<usize> = reps.iter().map(|&(x, _)| r.rho(x)).collect();
    let anchor: Vec<usize> = reps.iter().map(|&(_, y)| q.anchor(y)).collect();
    let src_group = Arc::clone(r.source.group());
    let tgt_group = Arc::clone(q.target.group());
    let left: Vec<Vec<usize>> = src_group
        .elements()
        .map(|g| reps.iter().map(|&(x, y)| full_lookup[&(r.act_left(g, x), y)]).collect())
        .collect();
    let right: Vec<Vec<usize>> = tgt_group
        .elements()
        .map(|h| reps.iter().map(|&(x, y)| full_lookup[&(x, q.act_right(y, h))]).collect())
        .collect();
    let bundle =
        HSBundle::new(r.source.clone(), q.target.clone(), labels, rho, anchor, left, right)?;
    Ok(TensorProduct { bundle, class_of_pair: full_lookup })
}

pub fn tensor_compose(r: &HSBundle, q: &HSBundle) -> Result<HSBundle, HsError> {
    Ok(tensor_compose_with_classes(r, q)?.bundle)
}

/// Exhaustive search for an isomorphism of bundles: an element bijection
/// preserving anchors and both actions. Returns the image table when one
/// exists.
pub fn find_bundle_isomorphism(a: &HSBundle, b: &HSBundle) -> Option<Vec<usize>> {
    if a.source != b.source || a.target != b.target || a.size() != b.size() {
        return None;
    }
    let n = a.size();
    // connected components under both actions
    let component_of = {
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(x) = stack.pop() {
                for g in a.source.group().elements() {
                    let y = a.act_left(g, x);
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
                for h in a.target.group().elements() {
                    let y = a.act_right(x, h);
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    };
    let component_count = component_of.iter().max().map_or(0, |&c| c + 1);
    let mut bases = vec![usize::MAX; component_count];
    for x in (0..n).rev() {
        bases[component_of[x]] = x;
    }

    fn propagate(
        a: &HSBundle,
        b: &HSBundle,
        base: usize,
        candidate: usize,
        image: &mut [usize],
        used: &mut [bool],
        assigned: &mut Vec<usize>,
    ) -> bool {
        let mut queue = vec![(base, candidate)];
        while let Some((x, y)) = queue.pop() {
            if image[x] != usize::MAX {
                if image[x] != y {
                    return false;
                }
                continue;
            }
            if used[y] || a.rho(x) != b.rho(y) || a.anchor(x) != b.anchor(y) {
                return false;
            }
            image[x] = y;
            used[y] = true;
            assigned.push(x);
            for g in a.source.group().elements() {
                queue.push((a.act_left(g, x), b.act_left(g, y)));
            }
            for h in a.target.group().elements() {
                queue.push((a.act_right(x, h), b.act_right(y, h)));
            }
        }
        true
    }

    fn assign(
        a: &HSBundle,
        b: &HSBundle,
        bases: &[usize],
        comp: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if comp == bases.len() {
            return true;
        }
        let base = bases[comp];
        for candidate in 0..b.size() {
            if used[candidate] {
                continue;
            }
            let mut assigned = Vec::new();
            if propagate(a, b, base, candidate, image, used, &mut assigned)
                && assign(a, b, bases, comp + 1, image, used)
            {
                return true;
            }
            for x in assigned {
                used[image[x]] = false;
                image[x] = usize::MAX;
            }
        }
        false
    }

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(a, b, &bases, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

/// The span associated to a bundle: the translation groupoid of G x H
/// acting on the bundle's elements, with the anchor maps as legs. The
/// left leg is an essential equivalence because the bundle is right
/// principal.
pub fn span_from_bundle(bundle: &HSBundle) -> Result<GeneralizedMap, HsError> {
    let g_group = bundle.source.group();
    let h_group = bundle.target.group();
    let (product, proj_g, proj_h) = direct_product(g_group, h_group);
    let nb = h_group.order();
    let n = bundle.size();
    let action: Vec<Vec<usize>> = product
        .elements()
        .map(|gh| {
            let (g, h) = (gh / nb, gh % nb);
            (0..n).map(|x| bundle.act_right(bundle.act_left(g, x), h_group.inv(h))).collect()
        })
        .collect();
    let middle = TranslationGroupoid::discrete(Arc::clone(&product), n, action)?;
    let left = EquivariantMap::from_object_map(
        middle.clone(),
        bundle.source.clone(),
        proj_g,
        bundle.rho.clone(),
    )?;
    let right = EquivariantMap::from_object_map(
        middle,
        bundle.target.clone(),
        proj_h,
        bundle.anchor.clone(),
    )?;
    GeneralizedMap::new(left, right).map_err(HsError::from)
}

/// The bundle of a span: invert the pullback bundle of the left leg and
/// tensor with the pullback bundle of the right leg.
pub fn bundle_from_span(span: &GeneralizedMap) -> Result<HSBundle, HsError> {
    Ok(bundle_with_classes_from_span(span)?.0.bundle)
}

fn bundle_with_classes_from_span(
    span: &GeneralizedMap,
) -> Result<(TensorProduct, HSBundle, HSBundle), HsError> {
    let r_left = bundle_from_hom(span.left())?;
    let r_left_inv = invert_bundle(&r_left)?;
    let r_right = bundle_from_hom(span.right())?;
    let tensor = tensor_compose_with_classes(&r_left_inv, &r_right)?;
    Ok((tensor, r_left_inv, r_right))
}

/// Round trip span -> bundle -> span with the comparison homomorphism
/// theta and the commutation checks of its defining identities.
pub struct RoundTrip {
    pub bundle: HSBundle,
    pub span: GeneralizedMap,
    pub theta: EquivariantMap,
    pub left_identity: bool,
    pub right_identity: bool,
}

pub fn span_bundle_roundtrip(span: &GeneralizedMap) -> Result<RoundTrip, HsError> {
    let (tensor, _, _) = bundle_with_classes_from_span(span)?;
    let derived = span_from_bundle(&tensor.bundle)?;
    let middle = span.middle();
    let k_group = middle.group();
    let g_hom = span.left().hom();
    let h_hom = span.right().hom();
    let product = derived.middle().group();
    let h_order = span.right().target().group().order();
    let theta_hom = GroupHom::new(
        Arc::clone(k_group),
        Arc::clone(product),
        k_group.elements().map(|k| g_hom.apply(k) * h_order + h_hom.apply(k)).collect(),
    )?;
    let e_g = span.left().target().group().identity();
    let e_h = span.right().target().group().identity();
    // theta(z) = class of the pair ((z, e_G), (z, e_H))
    let theta_objects: Vec<usize> = (0..middle.object_count())
        .map(|z| {
            let g_order = span.left().target().group().order();
            let x = z * g_order + e_g;
            let y = z * h_order + e_h;
            tensor.class_of_pair[&(x, y)]
        })
        .collect();
    let theta = EquivariantMap::from_object_map(
        middle.clone(),
        derived.middle().clone(),
        theta_hom,
        theta_objects,
    )?;
    let left_composite = theta.then(derived.left())?;
    let right_composite = theta.then(derived.right())?;
    let left_identity = left_composite.same_morphism(span.left());
    let right_identity = right_composite.same_morphism(span.right());
    Ok(RoundTrip { bundle: tensor.bundle, span: derived, theta, left_identity, right_identity })
}

/// Raw 2-cell data between spans, presented over an arbitrary middle
/// groupoid with legs into the two span middles.
pub struct TwoCellData {
    pub source_span: GeneralizedMap,
    pub target_span: GeneralizedMap,
    pub theta: EquivariantMap,
    pub theta_prime: EquivariantMap,
    pub alpha1: Vec<usize>,
    pub alpha2: Vec<usize>,
}

/// Transport 2-cell data onto the canonical equivariant middle
/// (K x K') acting on the tensor bundle of the theta span, producing a
/// validated [`TwoCell`] between the original spans.
pub fn transport_2cell(data: &TwoCellData) -> Result<TwoCell, HsError> {
    let theta_check = is_essential_equivalence(&data.theta);
    if !theta_check.ok {
        return Err(HsError::Gpd(GpdError::NotEssentialEquivalence(
            theta_check.failure.map(|f| f.to_string()).unwrap_or_default(),
        )));
    }
    if data.theta.source() != data.theta_prime.source()
        || data.theta.target() != data.source_span.middle()
        || data.theta_prime.target() != data.target_span.middle()
    {
        return Err(HsError::MiddleMismatch);
    }
    let theta_span = GeneralizedMap::new(data.theta.clone(), data.theta_prime.clone())?;
    let (tensor, _, _) = bundle_with_classes_from_span(&theta_span)?;
    let bundle = &tensor.bundle;
    let derived = span_from_bundle(bundle)?;
    let kappa = derived.left().clone();
    let kappa_prime = derived.right().clone();

    // recover a pair representative (k, m, k') for each class
    let k_order = data.source_span.middle().group().order();
    let kp_order = data.target_span.middle().group().order();
    let class_count = bundle.size();
    let mut rep_of_class: Vec<(usize, usize, usize)> = vec![(0, 0, 0); class_count];
    for (&(x, y), &class) in &tensor.class_of_pair {
        let (m, k) = (x / k_order, x % k_order);
        let (m2, kp) = (y / kp_order, y % kp_order);
        debug_assert_eq!(m, m2);
        rep_of_class[class] = (k, m, kp);
    }

    let upsilon = data.source_span.left().hom();
    let upsilon_prime = data.target_span.left().hom();
    let phi = data.source_span.right().hom();
    let phi_prime = data.target_span.right().hom();
    let g_group = data.source_span.left().target().group();
    let h_group = data.source_span.right().target().group();
    let alpha1: Vec<usize> = rep_of_class
        .iter()
        .map(|&(k, m, kp)| {
            g_group.mul(
                g_group.mul(g_group.inv(upsilon_prime.apply(kp)), data.alpha1[m]),
                upsilon.apply(k),
            )
        })
        .collect();
    let alpha2: Vec<usize> = rep_of_class
        .iter()
        .map(|&(k, m, kp)| {
            h_group.mul(
                h_group.mul(h_group.inv(phi_prime.apply(kp)), data.alpha2[m]),
                phi.apply(k),
            )
        })
        .collect();
    TwoCell::new(
        data.source_span.clone(),
        data.target_span.clone(),
        kappa,
        kappa_prime,
        alpha1,
        alpha2,
    )
    .map_err(HsError::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpd::samples::{collapse_map, octagon_quotient_map, square_induce_map};
    use crate::gpd::NaturalTransformation;
    use crate::grp::samples::{cyclic, trivial};
    use crate::gspace::samples::{octagon_klein, point_with};
    use crate::gspace::{quotient_complex, Complex, GComplex};
    use crate::grp::Subgroup;

    #[test]
    fn unit_bundle_is_valid_and_morita() {
        let gpd = TranslationGroupoid::new(octagon_klein());
        let u = unit_bundle(&gpd).unwrap();
        assert!(is_morita(&u));
        assert_eq!(u.size(), gpd.object_count() * gpd.group().order());
    }

    #[test]
    fn one_object_source_bundle_counts_arrows() {
        let e = trivial();
        let pt = point_with(Arc::clone(&e));
        let z2gpd = TranslationGroupoid::new(point_with(cyclic(2)));
        let hom = GroupHom::new(e, Arc::clone(z2gpd.group()), vec![0]).unwrap();
        let m = EquivariantMap::from_vertex_map(
            TranslationGroupoid::new(pt),
            z2gpd.clone(),
            hom,
            vec![0],
        )
        .unwrap();
        let b = bundle_from_hom(&m).unwrap();
        // R is the set of arrows of the target with a fixed anchor object
        assert_eq!(b.size(), z2gpd.group().order());
    }

    #[test]
    fn quotient_bundle_size() {
        let q = octagon_quotient_map();
        let b = bundle_from_hom(&q).unwrap();
        // exhaustive count of source objects times target group
        assert_eq!(b.size(), q.source().object_count() * q.target().group().order());
        assert!(is_morita(&b));
    }

    #[test]
    fn unit_absorption_laws() {
        let q = octagon_quotient_map();
        let b = bundle_from_hom(&q).unwrap();
        let u_src = unit_bundle(q.source()).unwrap();
        let u_tgt = unit_bundle(q.target()).unwrap();
        let left = tensor_compose(&u_src, &b).unwrap();
        let right = tensor_compose(&b, &u_tgt).unwrap();
        assert!(find_bundle_isomorphism(&left, &b).is_some());
        assert!(find_bundle_isomorphism(&right, &b).is_some());
    }

    #[test]
    fn functoriality_along_a_quotient_tower() {
        // Z/4 rotation tower: 12-gon -> hexagon -> triangle
        let z4 = cyclic(4);
        let simplices: Vec<Vec<usize>> = (0..12).map(|k| vec![k, (k + 1) % 12]).collect();
        let cx = Complex::new(12, &simplices).unwrap();
        let action: Vec<Vec<usize>> =
            (0..4).map(|p| (0..12).map(|k| (k + 3 * p) % 12).collect()).collect();
        let x = GComplex::new(Arc::clone(&z4), cx, action).unwrap();
        let k1 = Subgroup::new(Arc::clone(&z4), vec![0, 2]).unwrap();
        let (hexagon, q1) = quotient_complex(&x, &k1).unwrap();
        let k2 = Subgroup::full(Arc::clone(hexagon.group()));
        let (_, q2) = quotient_complex(&hexagon, &k2).unwrap();
        let composite = q1.then(&q2).unwrap();
        let lhs = bundle_from_hom(&composite).unwrap();
        let rhs =
            tensor_compose(&bundle_from_hom(&q1).unwrap(), &bundle_from_hom(&q2).unwrap())
                .unwrap();
        assert!(find_bundle_isomorphism(&lhs, &rhs).is_some());
    }

    #[test]
    fn morita_matches_essential_equivalence() {
        for m in [octagon_quotient_map(), square_induce_map(), collapse_map()] {
            let b = bundle_from_hom(&m).unwrap();
            assert_eq!(is_morita(&b), is_essential_equivalence(&m).ok);
        }
    }

    #[test]
    fn roundtrip_identity_span() {
        let gpd = TranslationGroupoid::new(octagon_klein());
        let span = GeneralizedMap::identity_span(gpd);
        let rt = span_bundle_roundtrip(&span).unwrap();
        assert!(rt.left_identity && rt.right_identity);
        assert!(is_essential_equivalence(rt.span.left()).ok);
    }

    #[test]
    fn roundtrip_quotient_span() {
        let q = octagon_quotient_map();
        let span = GeneralizedMap::from_map(&q);
        let rt = span_bundle_roundtrip(&span).unwrap();
        assert!(rt.left_identity && rt.right_identity);
    }

    #[test]
    fn span_from_morita_bundle_not_from_hom() {
        // tensor bundles are not pullback bundles of a homomorphism, yet
        // still produce valid generalized maps
        let q = octagon_quotient_map();
        let span = GeneralizedMap::from_map(&q);
        let bundle = bundle_from_span(&span).unwrap();
        let derived = span_from_bundle(&bundle).unwrap();
        assert!(is_essential_equivalence(derived.left()).ok);
    }

    #[test]
    fn transport_identity_two_cell() {
        let q = octagon_quotient_map();
        let span = GeneralizedMap::from_map(&q);
        let middle = span.middle().clone();
        let id = EquivariantMap::identity(middle.clone());
        let e_g = span.left().target().group().identity();
        let e_h = span.right().target().group().identity();
        let data = TwoCellData {
            source_span: span.clone(),
            target_span: span.clone(),
            theta: id.clone(),
            theta_prime: id,
            alpha1: vec![e_g; middle.object_count()],
            alpha2: vec![e_h; middle.object_count()],
        };
        let cell = transport_2cell(&data).unwrap();
        // the transported transformations are validated on construction
        assert_eq!(cell.alpha1().elements().len(), cell.nu().source().object_count());
    }

    #[test]
    fn roundtrip_comparison_is_a_two_cell() {
        // the commuting triangle upgrades to a 2-cell from the span to its
        // bundle-derived replacement: nu = id, nu' = theta, identity
        // components on both sides
        let q = octagon_quotient_map();
        let span = GeneralizedMap::from_map(&q);
        let rt = span_bundle_roundtrip(&span).unwrap();
        let middle = span.middle().clone();
        let nu = EquivariantMap::identity(middle.clone());
        let e_g = span.left().target().group().identity();
        let e_h = span.right().target().group().identity();
        TwoCell::new(
            span.clone(),
            rt.span.clone(),
            nu,
            rt.theta.clone(),
            vec![e_g; middle.object_count()],
            vec![e_h; middle.object_count()],
        )
        .unwrap();
    }

    #[test]
    fn theta_comparison_gives_valid_natural_transformations() {
        let q = octagon_quotient_map();
        let span = GeneralizedMap::from_map(&q);
        let rt = span_bundle_roundtrip(&span).unwrap();
        // the commuting triangle as natural transformations with identity
        // components
        let left_composite = rt.theta.then(rt.span.left()).unwrap();
        NaturalTransformation::new(
            left_composite,
            span.left().clone(),
            vec![span.left().target().group().identity(); span.middle().object_count()],
        )
        .unwrap();
    }
}
