//! Acceptance suite: one test per criterion, each printing a pass line.
//! All arithmetic is exact, so every assertion is equality of integers or
//! invariant factors. Run with `--nocapture` to see the pass lines.

use orbigpd::bredon::{
    bredon_cohomology, compare_presentations, is_orbifold_system, oracle_cohomology,
    padded_cohomology, pullback_inclusion, pushforward_inclusion, pushforward_quotient,
    restrict_system, systems_equal, BredonInput, CoefficientSystem, OrbifoldViolation, PathStep,
};
use orbigpd::gpd::{
    associativity_two_cell, decompose_essential_equivalence, fibre_product,
    is_essential_equivalence, left_unit_two_cell, two_for_three, EquivariantMap, GeneralizedMap,
    NaturalTransformation, TranslationGroupoid,
};
use orbigpd::grp::{GroupHom, Subgroup};
use orbigpd::gspace::{induce_space, isotropy_lineage, quotient_complex};
use orbigpd::hs::{
    bundle_from_hom, find_bundle_isomorphism, is_morita, span_bundle_roundtrip, tensor_compose,
    unit_bundle,
};
use orbigpd::FGAbGroup;
use orbigpd_cli::scenario::matching_pairs;
use orbigpd_cli::{parse_scenario, Scenario};
use std::sync::Arc;

fn fixture(name: &str) -> Scenario {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).expect("fixture exists");
    parse_scenario(&text, orbigpd::DEFAULT_MAX_GROUP_ORDER).expect("fixture is valid")
}

fn fixtures() -> Vec<(&'static str, Scenario)> {
    ["d2_circle", "z4_tower", "s3_points"]
        .into_iter()
        .map(|n| (n, fixture(n)))
        .collect()
}

fn input(scenario: &Scenario, complex: &str, system: &str) -> BredonInput {
    BredonInput::new(
        TranslationGroupoid::new(scenario.complex(complex).unwrap().clone()),
        scenario.system(system).unwrap().clone(),
    )
    .unwrap()
}

fn shapes(h: &[FGAbGroup]) -> Vec<String> {
    h.iter().map(|g| g.describe()).collect()
}

fn pass(criterion: usize, detail: &str) {
    println!("[PASS] criterion {criterion}: {detail}");
}

#[test]
fn criterion_01_counterexample_scenario() {
    let scenario = fixture("d2_circle");
    let octagon = scenario.complex("octagon").unwrap();

    // (a) the isotropy lineage is exactly {e}, <s1>, <s2>
    let lineage = isotropy_lineage(octagon).unwrap();
    let members: Vec<Vec<usize>> =
        lineage.subgroups().iter().map(|s| s.members().to_vec()).collect();
    assert_eq!(members, vec![vec![0], vec![0, 1], vec![0, 2]]);

    // (b) the quotient by <s1 s2> is a Z/2-complex with exactly two fixed
    // vertices
    let kernel = Subgroup::new(Arc::clone(octagon.group()), vec![0, 3]).unwrap();
    let (quotient, _) = quotient_complex(octagon, &kernel).unwrap();
    assert_eq!(quotient.group().order(), 2);
    let fixed: Vec<usize> = (0..quotient.complex().vertex_count())
        .filter(|&v| quotient.vertex_image(1, v) == v)
        .collect();
    assert_eq!(fixed.len(), 2);

    // (c) distinct labels at the two reflections fail with exactly that
    // witness pair
    let check =
        is_orbifold_system(octagon, scenario.system("distinct_sigma").unwrap()).unwrap();
    assert!(!check.ok);
    let value_pairs: Vec<(Vec<usize>, Vec<usize>)> = check
        .violations
        .iter()
        .filter_map(|v| match v {
            OrbifoldViolation::ValueMismatch { left, right, .. } => {
                Some((left.clone(), right.clone()))
            }
            _ => None,
        })
        .collect();
    assert_eq!(value_pairs, vec![(vec![0, 1], vec![0, 2])]);
    assert_eq!(check.violations.len(), 1);

    // (d) the constant and representation systems pass
    assert!(is_orbifold_system(octagon, scenario.system("constZ_d2").unwrap()).unwrap().ok);
    assert!(is_orbifold_system(octagon, scenario.system("rep_d2").unwrap()).unwrap().ok);

    pass(1, "octagon counterexample: lineage, quotient, witness pair, passing systems");
}

#[test]
fn criterion_02_presentation_invariance() {
    let scenario = fixture("d2_circle");
    let octagon = scenario.complex("octagon").unwrap().clone();
    let kernel = Subgroup::new(Arc::clone(octagon.group()), vec![0, 3]).unwrap();
    let (qspace, _) = quotient_complex(&octagon, &kernel).unwrap();

    // quotient step, constant and representation coefficients
    for (base_system, expect_system) in [("pi_constZ", "constZ_z2"), ("pi_rep", "rep_z2")] {
        let base = input(&scenario, "octagon", base_system);
        let expect = BredonInput::new(
            TranslationGroupoid::new(qspace.clone()),
            scenario.system(expect_system).unwrap().clone(),
        )
        .unwrap();
        let report = compare_presentations(
            &base,
            &[PathStep::Quotient { kernel: kernel.clone() }],
            &expect,
            2,
        )
        .unwrap();
        assert!(report.ok(), "{base_system}: {:?}", report.first_failure());
    }

    // inclusion step 1: reflection point into the Klein group
    let s1_entry = scenario.group("s1grp").unwrap();
    let (_, embedding) = s1_entry.embedding.as_ref().unwrap();
    let pt = scenario.complex("pt_s1").unwrap().clone();
    let (induced, _) = induce_space(embedding, &pt).unwrap();
    for system_name in ["constZ_s1", "rep_s1"] {
        let a = scenario.system(system_name).unwrap().clone();
        let base = BredonInput::new(TranslationGroupoid::new(pt.clone()), a.clone()).unwrap();
        let expect_system = pushforward_inclusion(&a, embedding, &pt).unwrap();
        let expect = BredonInput::new(TranslationGroupoid::new(induced.clone()), expect_system)
            .unwrap();
        let report = compare_presentations(
            &base,
            &[PathStep::Induce { embedding: embedding.clone() }],
            &expect,
            2,
        )
        .unwrap();
        assert!(report.ok(), "{system_name}: {:?}", report.first_failure());
    }

    // inclusion step 2: trivial-group circle into Z/2
    let e = Arc::clone(&scenario.group("e").unwrap().group);
    let z2 = Arc::clone(&scenario.group("z2").unwrap().group);
    let square_e = scenario.complex("square_e").unwrap().clone();
    let embedding = GroupHom::new(e, z2, vec![0]).unwrap();
    let (two_squares, _) = induce_space(&embedding, &square_e).unwrap();
    let a = scenario.system("constZ_e").unwrap().clone();
    let base = BredonInput::new(TranslationGroupoid::new(square_e.clone()), a.clone()).unwrap();
    let expect_system = pushforward_inclusion(&a, &embedding, &square_e).unwrap();
    let expect =
        BredonInput::new(TranslationGroupoid::new(two_squares), expect_system).unwrap();
    let report =
        compare_presentations(&base, &[PathStep::Induce { embedding }], &expect, 2).unwrap();
    assert!(report.ok(), "{:?}", report.first_failure());

    pass(2, "quotient and two inclusion steps agree degreewise in degrees 0..2");
}

#[test]
fn criterion_03_oracle_equivalence_on_every_fixture() {
    let mut pairs = 0;
    for (fname, scenario) in fixtures() {
        for (cname, sname) in matching_pairs(&scenario) {
            let case = input(&scenario, &cname, &sname);
            let assembled = bredon_cohomology(&case).unwrap();
            let oracle = oracle_cohomology(&case).unwrap();
            assert_eq!(
                shapes(&assembled),
                shapes(&oracle),
                "oracle mismatch on {fname}:{cname}/{sname}"
            );
            pairs += 1;
        }
    }
    assert!(pairs >= 6, "need at least 6 groupoid/system pairs, found {pairs}");
    pass(3, &format!("assembled and oracle pipelines agree on {pairs} pairs"));
}

#[test]
fn criterion_04_restriction_laws() {
    let mut pairs = 0;
    for (fname, scenario) in fixtures() {
        for (cname, sname) in matching_pairs(&scenario) {
            let case = input(&scenario, &cname, &sname);
            let restricted =
                restrict_system(&case.system, case.groupoid.space()).unwrap();
            let small = BredonInput::new(case.groupoid.clone(), restricted).unwrap();
            assert_eq!(
                shapes(&bredon_cohomology(&case).unwrap()),
                shapes(&bredon_cohomology(&small).unwrap()),
                "restriction law fails on {fname}:{cname}/{sname}"
            );
            assert_eq!(
                shapes(&oracle_cohomology(&case).unwrap()),
                shapes(&oracle_cohomology(&small).unwrap()),
                "oracle restriction law fails on {fname}:{cname}/{sname}"
            );
            pairs += 1;
        }
    }

    // two systems with equal lineage restrictions give equal cohomology:
    // the pulled-back constant agrees with the native constant on the
    // octagon lineage but differs off it
    let scenario = fixture("d2_circle");
    let octagon = scenario.complex("octagon").unwrap();
    let a = scenario.system("constZ_d2").unwrap();
    let b = scenario.system("pi_constZ").unwrap();
    let ra = restrict_system(a, octagon).unwrap();
    let rb = restrict_system(b, octagon).unwrap();
    assert!(systems_equal(&ra, &rb));
    assert_eq!(
        shapes(&bredon_cohomology(&input(&scenario, "octagon", "constZ_d2")).unwrap()),
        shapes(&bredon_cohomology(&input(&scenario, "octagon", "pi_constZ")).unwrap()),
    );
    pass(4, &format!("full-category and lineage cohomology agree on {pairs} pairs"));
}

#[test]
fn criterion_05_decomposition_of_essential_equivalences() {
    let d2 = fixture("d2_circle");
    let z4 = fixture("z4_tower");
    let quot = d2.map("quot").unwrap().clone();
    let incl = d2.map("incl_pt").unwrap().clone();
    let q1 = z4.map("q1").unwrap().clone();
    let q2 = z4.map("q2").unwrap().clone();
    let cases = vec![
        ("quot", quot.clone()),
        ("incl_pt", incl),
        ("q1", q1.clone()),
        ("q2", q2.clone()),
        ("q1.q2", q1.then(&q2).unwrap()),
        ("id_oct", d2.map("id_oct").unwrap().clone()),
    ];
    assert!(cases.len() >= 5);
    for (name, m) in &cases {
        assert!(is_essential_equivalence(m).ok, "{name}");
        let d = decompose_essential_equivalence(m).unwrap();
        // quotient form: surjective onto the middle group with free kernel;
        // inclusion form: the canonical inclusion into an induced space
        assert!(d.quotient_form.hom().is_surjective(), "{name}");
        assert!(d.inclusion_form.hom().is_injective(), "{name}");
        assert!(d.iso.hom().is_injective() && d.iso.hom().is_surjective(), "{name}");
        let recomposed =
            d.quotient_form.then(&d.inclusion_form).unwrap().then(&d.iso).unwrap();
        assert_eq!(recomposed.hom().map(), m.hom().map(), "{name}");
        assert_eq!(recomposed.vertex_map(), m.vertex_map(), "{name}");
    }
    pass(5, &format!("{} essential equivalences factor and recompose exactly", cases.len()));
}

fn map_corpus() -> Vec<(String, EquivariantMap)> {
    let mut out = Vec::new();
    for (fname, scenario) in fixtures() {
        for (name, map) in &scenario.maps {
            out.push((format!("{fname}:{name}"), map.clone()));
        }
        // the identity of every declared groupoid participates as well
        for (name, space) in &scenario.complexes {
            let id = EquivariantMap::identity(TranslationGroupoid::new(space.clone()));
            assert!(is_essential_equivalence(&id).ok, "identity on {fname}:{name}");
            out.push((format!("{fname}:id:{name}"), id));
        }
    }
    out
}

#[test]
fn criterion_06_morita_instances_and_roundtrips() {
    let corpus = map_corpus();
    for (name, m) in &corpus {
        let bundle = bundle_from_hom(m).unwrap();
        assert_eq!(
            is_morita(&bundle),
            is_essential_equivalence(m).ok,
            "Morita mismatch on {name}"
        );
    }
    let mut spans = 0;
    for (fname, scenario) in fixtures() {
        for (name, span) in &scenario.spans {
            let rt = span_bundle_roundtrip(span).unwrap();
            assert!(rt.left_identity, "omega.theta != upsilon on {fname}:{name}");
            assert!(rt.right_identity, "psi.theta != phi on {fname}:{name}");
            spans += 1;
        }
    }
    assert!(spans >= 3);
    pass(
        6,
        &format!(
            "Morita detection matches on {} maps; {} roundtrips satisfy the 2-iso identities",
            corpus.len(),
            spans
        ),
    );
}

#[test]
fn criterion_07_unit_and_functoriality_laws() {
    let corpus = map_corpus();
    for (name, m) in &corpus {
        let b = bundle_from_hom(m).unwrap();
        let left = tensor_compose(&unit_bundle(m.source()).unwrap(), &b).unwrap();
        let right = tensor_compose(&b, &unit_bundle(m.target()).unwrap()).unwrap();
        assert!(find_bundle_isomorphism(&left, &b).is_some(), "U.R on {name}");
        assert!(find_bundle_isomorphism(&right, &b).is_some(), "R.U on {name}");
    }
    let mut composites = 0;
    for (n1, phi) in &corpus {
        for (n2, psi) in &corpus {
            if phi.target() != psi.source() {
                continue;
            }
            let lhs = bundle_from_hom(&phi.then(psi).unwrap()).unwrap();
            let rhs = tensor_compose(
                &bundle_from_hom(phi).unwrap(),
                &bundle_from_hom(psi).unwrap(),
            )
            .unwrap();
            assert!(find_bundle_isomorphism(&lhs, &rhs).is_some(), "{n1};{n2}");
            composites += 1;
        }
    }
    assert!(composites >= 8);
    pass(
        7,
        &format!(
            "unit absorption on {} bundles, functoriality on {composites} composites",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_08_two_for_three() {
    let corpus = map_corpus();
    let mut pairs = 0;
    for (n1, phi) in &corpus {
        for (n2, psi) in &corpus {
            if phi.target() != psi.source() {
                continue;
            }
            let report = two_for_three(phi, psi).unwrap();
            assert!(report.law_holds(), "forbidden pattern on {n1};{n2}: {report:?}");
            pairs += 1;
        }
    }
    assert!(pairs >= 8);
    pass(8, &format!("no single-failure pattern over {pairs} composable pairs"));
}

#[test]
fn criterion_09_fibre_products() {
    let scenario = fixture("d2_circle");
    let quot = scenario.map("quot").unwrap();
    let id_square = scenario.map("id_square").unwrap();
    let collapse = scenario.map("collapse").unwrap();
    let mut checked = 0;
    for (phi, psi) in [(quot, quot), (quot, id_square), (id_square, quot)] {
        let fp = fibre_product(phi, psi).unwrap();
        // structure group is the product, projections over the projections
        let g_order = psi.source().group().order();
        let h_order = phi.source().group().order();
        assert_eq!(fp.groupoid.group().order(), g_order * h_order);
        for gh in fp.groupoid.group().elements() {
            assert_eq!(fp.to_x.hom().apply(gh), gh / h_order);
            assert_eq!(fp.to_y.hom().apply(gh), gh % h_order);
        }
        // the witness survives revalidation as a natural transformation
        NaturalTransformation::new(
            fp.witness.source_map().clone(),
            fp.witness.target_map().clone(),
            fp.witness.elements().to_vec(),
        )
        .unwrap();
        // pullbacks of essential equivalences are essential equivalences
        if is_essential_equivalence(phi).ok {
            assert!(is_essential_equivalence(&fp.to_x).ok);
        }
        if is_essential_equivalence(psi).ok {
            assert!(is_essential_equivalence(&fp.to_y).ok);
        }
        checked += 1;
    }
    // a cospan with a non-equivalence left leg still pulls the essential
    // equivalence back to an essential equivalence
    let z2pt_id = EquivariantMap::identity(collapse.target().clone());
    let fp = fibre_product(collapse, &z2pt_id).unwrap();
    assert!(is_essential_equivalence(&fp.to_y).ok);

    // span composition and coherence witnesses stay valid
    let span = GeneralizedMap::from_map(quot);
    left_unit_two_cell(&span).unwrap();
    let id_span = GeneralizedMap::identity_span(quot.target().clone());
    associativity_two_cell(&GeneralizedMap::identity_span(quot.source().clone()), &span, &id_span)
        .unwrap();
    pass(9, &format!("fibre products verified on {checked} cospans plus coherence cells"));
}

#[test]
fn criterion_10_representation_ring_coherence() {
    let scenario = fixture("d2_circle");
    let octagon = scenario.complex("octagon").unwrap();
    // restrict(pi^* R_{Z/2}) = restrict(R_{D2}), label-exactly
    let lhs = restrict_system(scenario.system("pi_rep").unwrap(), octagon).unwrap();
    let rhs = restrict_system(scenario.system("rep_d2").unwrap(), octagon).unwrap();
    assert!(systems_equal(&lhs, &rhs));

    // i^* R_{D2} = R_{<s1>} on the inclusion fixture
    let i_rep = scenario.system("i_rep_s1").unwrap();
    let own = scenario.system("rep_s1").unwrap();
    assert!(systems_equal(i_rep, own));

    // and the same through the transport api
    let (_, embedding) = scenario.group("s1grp").unwrap().embedding.as_ref().unwrap();
    let pulled = pullback_inclusion(scenario.system("rep_d2").unwrap(), embedding).unwrap();
    assert!(systems_equal(&pulled, own));
    pass(10, "representation systems correspond label-exactly under both transports");
}

#[test]
fn criterion_11_point_and_trivial_group_sanity() {
    let scenario = fixture("d2_circle");
    for sname in ["constZ_d2", "rep_d2"] {
        let system = scenario.system(sname).unwrap();
        let full = system.category().object_index(&[0, 1, 2, 3]).unwrap();
        let expected = system.value(full).rank;
        let h = padded_cohomology(&input(&scenario, "point_d2", sname), 2).unwrap();
        assert_eq!(h[0].rank, expected);
        assert!(h[0].torsion.is_empty());
        assert!(h[1].is_zero() && h[2].is_zero());
    }
    let h = bredon_cohomology(&input(&scenario, "square_e", "constZ_e")).unwrap();
    assert_eq!(shapes(&h), vec!["Z", "Z"]);
    pass(11, "fixed point concentrates in degree 0; trivial-group circle gives (Z, Z)");
}

#[test]
fn pushforwards_are_available_from_the_fixture_systems() {
    // not a numbered criterion: the quotient pushforward on fixture data,
    // exercised here so the acceptance suite covers all four transports
    let scenario = fixture("d2_circle");
    let octagon = scenario.complex("octagon").unwrap();
    let kernel = Subgroup::new(Arc::clone(octagon.group()), vec![0, 3]).unwrap();
    let b =
        pushforward_quotient(scenario.system("rep_d2").unwrap(), &kernel, octagon).unwrap();
    let (qspace, _) = quotient_complex(octagon, &kernel).unwrap();
    let lhs = restrict_system(&b, &qspace).unwrap();
    let rhs = restrict_system(scenario.system("rep_z2").unwrap(), &qspace).unwrap();
    assert!(systems_equal(&lhs, &rhs));

    let zero = CoefficientSystem::zero(
        scenario.system("constZ_d2").unwrap().category().clone(),
    );
    let zb = pushforward_quotient(&zero, &kernel, octagon).unwrap();
    assert!(zb.values().iter().all(|v| v.is_zero()));
}
