//! Corpus-wide law sweeps for the span and bundle calculus: the 2-for-3
//! property, Morita detection against the essential-equivalence predicate,
//! unit and functoriality laws of the tensor composition, fibre-product
//! structure, and the quotient/inclusion factorization.

use orbigpd::gpd::samples::{collapse_map, octagon_quotient_map, square_induce_map};
use orbigpd::gpd::{
    associativity_two_cell, compose_generalized, decompose_essential_equivalence, fibre_product,
    is_essential_equivalence, left_unit_two_cell, right_unit_two_cell, two_for_three,
    EquivariantMap, GeneralizedMap, TranslationGroupoid,
};
use orbigpd::grp::samples::{cyclic, klein, trivial};
use orbigpd::grp::{GroupHom, Subgroup};
use orbigpd::gspace::samples::{octagon_klein, point_with, two_points_swapped};
use orbigpd::gspace::{induce_space, quotient_complex, Complex, GComplex};
use orbigpd::hs::{
    bundle_from_hom, bundle_from_span, find_bundle_isomorphism, is_morita, span_bundle_roundtrip,
    span_from_bundle, tensor_compose, unit_bundle,
};
use std::sync::Arc;

/// Z/2 fixing a single point.
fn z2_point() -> GComplex {
    let z2 = cyclic(2);
    let cx = Complex::new(1, &[vec![0]]).unwrap();
    GComplex::new(z2, cx, vec![vec![0], vec![0]]).unwrap()
}

/// The trivial endomorphism of the one-point Z/2 groupoid; essentially
/// surjective but not fully faithful.
fn constant_endo() -> EquivariantMap {
    let gpd = TranslationGroupoid::new(z2_point());
    let z2 = Arc::clone(gpd.group());
    let hom = GroupHom::new(Arc::clone(&z2), z2, vec![0, 0]).unwrap();
    EquivariantMap::from_vertex_map(gpd.clone(), gpd, hom, vec![0]).unwrap()
}

/// Inclusion of a point into the freely swapped pair, then the quotient
/// back down to a point.
fn point_to_pair_and_back() -> (EquivariantMap, EquivariantMap) {
    let e = trivial();
    let z2 = cyclic(2);
    let pt = point_with(Arc::clone(&e));
    let embedding = GroupHom::new(e, z2, vec![0]).unwrap();
    let (pair, incl) = induce_space(&embedding, &pt).unwrap();
    let full = Subgroup::full(Arc::clone(pair.group()));
    let (_, quot) = quotient_complex(&pair, &full).unwrap();
    (incl, quot)
}

fn corpus() -> Vec<(&'static str, EquivariantMap)> {
    let q = octagon_quotient_map();
    let j = square_induce_map();
    let (incl, quot) = point_to_pair_and_back();
    vec![
        ("id-octagon", EquivariantMap::identity(q.source().clone())),
        ("id-square", EquivariantMap::identity(q.target().clone())),
        ("octagon-quotient", q.clone()),
        ("square-induce", j.clone()),
        ("quotient-then-induce", q.then(&j).unwrap()),
        ("point-include", incl),
        ("pair-quotient", quot),
        ("free-collapse", collapse_map()),
        ("constant-endo", constant_endo()),
        ("two-points-id", EquivariantMap::identity(TranslationGroupoid::new(two_points_swapped()))),
    ]
}

#[test]
fn morita_matches_essential_equivalence_on_the_whole_corpus() {
    for (name, m) in corpus() {
        let bundle = bundle_from_hom(&m).unwrap();
        assert_eq!(
            is_morita(&bundle),
            is_essential_equivalence(&m).ok,
            "Morita/essential-equivalence disagreement on {name}"
        );
    }
}

#[test]
fn two_for_three_has_no_single_failure_pattern() {
    let maps = corpus();
    let mut composable = 0;
    for (n1, phi) in &maps {
        for (n2, psi) in &maps {
            if phi.target() != psi.source() {
                continue;
            }
            composable += 1;
            let report = two_for_three(phi, psi).unwrap();
            assert!(report.law_holds(), "forbidden 2-for-3 pattern on {n1} ; {n2}: {report:?}");
        }
    }
    assert!(composable >= 8, "corpus too small: {composable} composable pairs");
}

#[test]
fn unit_absorption_holds_for_every_corpus_bundle() {
    for (name, m) in corpus() {
        let b = bundle_from_hom(&m).unwrap();
        let left = tensor_compose(&unit_bundle(m.source()).unwrap(), &b).unwrap();
        let right = tensor_compose(&b, &unit_bundle(m.target()).unwrap()).unwrap();
        assert!(find_bundle_isomorphism(&left, &b).is_some(), "U absorption fails on {name}");
        assert!(find_bundle_isomorphism(&right, &b).is_some(), "absorption U fails on {name}");
    }
}

#[test]
fn tensor_composition_matches_composite_homomorphisms() {
    let maps = corpus();
    for (n1, phi) in &maps {
        for (n2, psi) in &maps {
            if phi.target() != psi.source() {
                continue;
            }
            let composite = phi.then(psi).unwrap();
            let lhs = bundle_from_hom(&composite).unwrap();
            let rhs = tensor_compose(
                &bundle_from_hom(phi).unwrap(),
                &bundle_from_hom(psi).unwrap(),
            )
            .unwrap();
            assert!(
                find_bundle_isomorphism(&lhs, &rhs).is_some(),
                "functoriality fails on {n1} ; {n2}"
            );
        }
    }
}

#[test]
fn fibre_products_carry_product_structure_groups() {
    let q = octagon_quotient_map();
    let id = EquivariantMap::identity(q.target().clone());
    for (phi, psi) in [(&q, &q), (&q, &id), (&id, &q)] {
        let fp = fibre_product(phi, psi).unwrap();
        let expected =
            psi.source().group().order() * phi.source().group().order();
        assert_eq!(fp.groupoid.group().order(), expected);
        // projections over the group projections: check on a few arrows
        let nb = phi.source().group().order();
        for gh in fp.groupoid.group().elements() {
            assert_eq!(fp.to_x.hom().apply(gh), gh / nb);
            assert_eq!(fp.to_y.hom().apply(gh), gh % nb);
        }
    }
}

#[test]
fn pullbacks_of_essential_equivalences_are_essential_equivalences() {
    // a cospan into the reflection square: the forgetful map from the
    // trivial-group square on one side, the octagon quotient on the other
    let q = octagon_quotient_map();
    let plain = orbigpd::gspace::samples::square_trivial();
    let z2_square = q.target().clone();
    let e_to_z2 =
        GroupHom::new(Arc::clone(plain.group()), Arc::clone(z2_square.group()), vec![0]).unwrap();
    let forget = EquivariantMap::from_vertex_map(
        TranslationGroupoid::new(plain),
        z2_square,
        e_to_z2,
        vec![0, 1, 2, 3],
    )
    .unwrap();
    assert!(!is_essential_equivalence(&forget).ok);
    let fp = fibre_product(&forget, &q).unwrap();
    // psi = q is an essential equivalence, so its pullback (the projection
    // onto phi's source) is one as well
    assert!(is_essential_equivalence(&fp.to_y).ok);
    // while the pullback of the non-equivalence stays a non-equivalence here
    assert!(!is_essential_equivalence(&fp.to_x).ok);
}

#[test]
fn composing_spans_keeps_the_left_leg_weakly_invertible() {
    let q = octagon_quotient_map();
    let j = square_induce_map();
    let a = GeneralizedMap::from_map(&q);
    let b = GeneralizedMap::from_map(&j);
    let ab = compose_generalized(&a, &b).unwrap();
    assert!(is_essential_equivalence(ab.left()).ok);
    assert_eq!(ab.domain(), a.domain());
    assert_eq!(ab.codomain(), b.codomain());
}

#[test]
fn inclusion_form_then_quotient_form_composite_span() {
    // reflection point up into the Klein group acting on the swapped pair,
    // then divide by the other reflection
    let d2 = klein();
    let s1 = Subgroup::new(Arc::clone(&d2), vec![0, 1]).unwrap();
    let (h, embedding) = s1.as_group();
    let pt = point_with(h);
    let (pair, incl) = induce_space(&embedding, &pt).unwrap();
    let other = Subgroup::new(Arc::clone(&d2), vec![0, 2]).unwrap();
    let (_, quot) = quotient_complex(&pair, &other).unwrap();
    let composite =
        compose_generalized(&GeneralizedMap::from_map(&incl), &GeneralizedMap::from_map(&quot))
            .unwrap();
    assert!(is_essential_equivalence(composite.left()).ok);
    assert!(is_essential_equivalence(composite.right()).ok);
}

#[test]
fn unit_and_associativity_two_cells_validate() {
    let q = octagon_quotient_map();
    let span = GeneralizedMap::from_map(&q);
    left_unit_two_cell(&span).unwrap();
    right_unit_two_cell(&span).unwrap();

    let (incl, quot) = point_to_pair_and_back();
    let a = GeneralizedMap::from_map(&incl);
    let b = GeneralizedMap::from_map(&quot);
    let c = GeneralizedMap::identity_span(quot.target().clone());
    associativity_two_cell(&a, &b, &c).unwrap();
}

#[test]
fn decomposition_recomposes_exactly_on_five_equivalences() {
    let q = octagon_quotient_map();
    let j = square_induce_map();
    let (incl, quot) = point_to_pair_and_back();
    let cases = vec![
        ("octagon-quotient", q.clone()),
        ("square-induce", j.clone()),
        ("quotient-then-induce", q.then(&j).unwrap()),
        ("point-include", incl.clone()),
        ("include-then-quotient", incl.then(&quot).unwrap()),
        ("id-square", EquivariantMap::identity(q.target().clone())),
    ];
    assert!(cases.len() >= 5);
    for (name, m) in cases {
        assert!(is_essential_equivalence(&m).ok, "{name} must be an essential equivalence");
        let d = decompose_essential_equivalence(&m).unwrap();
        let recomposed =
            d.quotient_form.then(&d.inclusion_form).unwrap().then(&d.iso).unwrap();
        assert_eq!(recomposed.hom().map(), m.hom().map(), "group part differs on {name}");
        assert_eq!(recomposed.vertex_map(), m.vertex_map(), "vertex part differs on {name}");
        // factor shapes: surjective quotient part with free kernel,
        // injective inclusion part, isomorphism on the group for the last leg
        assert!(d.quotient_form.hom().is_surjective());
        assert!(d.inclusion_form.hom().is_injective());
        assert!(d.iso.hom().is_injective() && d.iso.hom().is_surjective());
        assert!(is_essential_equivalence(&d.quotient_form).ok);
        assert!(is_essential_equivalence(&d.inclusion_form).ok);
        assert!(is_essential_equivalence(&d.iso).ok);
    }
}

#[test]
fn quotient_factor_matches_the_canonical_quotient() {
    // for the octagon quotient map, the quotient-form factor is the
    // canonical quotient up to relabeling: same kernel, same orbit count
    let q = octagon_quotient_map();
    let d = decompose_essential_equivalence(&q).unwrap();
    let kernel_members: Vec<usize> = q
        .hom()
        .domain()
        .elements()
        .filter(|&g| q.hom().apply(g) == q.hom().codomain().identity())
        .collect();
    let kernel = Subgroup::new(Arc::clone(q.hom().domain()), kernel_members).unwrap();
    let (canonical, _) = quotient_complex(q.source().space(), &kernel).unwrap();
    assert_eq!(
        d.quotient_form.target().space().complex().simplex_count(),
        canonical.complex().simplex_count()
    );
    assert_eq!(d.quotient_form.target().group().order(), canonical.group().order());
}

#[test]
fn roundtrips_satisfy_the_comparison_identities() {
    let q = octagon_quotient_map();
    let j = square_induce_map();
    let (incl, _) = point_to_pair_and_back();
    for (name, span) in [
        ("identity", GeneralizedMap::identity_span(q.source().clone())),
        ("octagon-quotient", GeneralizedMap::from_map(&q)),
        ("square-induce", GeneralizedMap::from_map(&j)),
        ("point-include", GeneralizedMap::from_map(&incl)),
    ] {
        let rt = span_bundle_roundtrip(&span).unwrap();
        assert!(rt.left_identity, "omega . theta != upsilon on {name}");
        assert!(rt.right_identity, "psi . theta != phi on {name}");
        assert!(is_essential_equivalence(rt.span.left()).ok);
    }
}

#[test]
fn spans_from_tensor_bundles_are_generalized_maps() {
    let q = octagon_quotient_map();
    let bundle = bundle_from_span(&GeneralizedMap::from_map(&q)).unwrap();
    let span = span_from_bundle(&bundle).unwrap();
    assert!(is_essential_equivalence(span.left()).ok);
    assert!(is_morita(&bundle));
}

#[test]
fn klein_octagon_fixture_shape() {
    // pin the counts the other tests rely on
    let x = octagon_klein();
    assert_eq!(x.complex().simplex_count(), 16);
    assert_eq!(x.group().order(), 4);
    assert!(x.is_admissible());
    let gpd = TranslationGroupoid::new(x);
    assert_eq!(gpd.transporter(0, 0), vec![0, 1]);
}
