//! Cross-ratio layer tests: signs, matrix values against the quadratic,
//! local moves, chain identities, discriminant classification,
//! reconstruction from a squarefree discriminant, and global root
//! propagation.

mod common;

use std::collections::BTreeMap;

use common::*;
use detform::exactmat::{enumerate_subsets, ExactMatrix, SubsetIndex};
use detform::expansion::{chi_triple, ChiTriple, TermMap};
use detform::fixtures;
use detform::laurent::{
    parse_poly, rat, rat_int, ExponentVector, LaurentPoly, QuadExtScalar, RationalFunction,
};
use detform::yalg::{
    ab_terms, b_function, check_identities, cross_ratio_sign, disambiguate_roots,
    reconstruct_from_d, resonance_check, transform_y, y_from_matrix, y_roots, CandidateClass,
    ClassHint, Classification, RadicalKind, RootAssignment, SeedBranch, YTransform,
};
use rand_chacha::ChaCha8Rng;

fn subset(members: &[usize]) -> SubsetIndex {
    SubsetIndex::from_members(members).unwrap()
}

fn poly(s: &str, nvars: usize) -> LaurentPoly {
    parse_poly(s, nvars).unwrap()
}

fn scalar(s: &str, nvars: usize) -> QuadExtScalar {
    QuadExtScalar::from_poly(poly(s, nvars))
}

fn triple(central: QuadExtScalar, direct: QuadExtScalar, crossed: QuadExtScalar) -> ChiTriple {
    ChiTriple {
        central,
        split_direct: direct,
        split_crossed: crossed,
    }
}

/// Random matrix with polynomial entries whose maximal row minors are
/// all nonzero.
fn generic_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, nvars: usize) -> ExactMatrix {
    loop {
        let data: Vec<Vec<RationalFunction>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| RationalFunction::from_poly(random_poly(r, nvars, 2, 0, 2)))
                    .collect()
            })
            .collect();
        let m = ExactMatrix::from_ratfun_rows(data).unwrap();
        if enumerate_subsets(rows, cols)
            .into_iter()
            .all(|s| !m.row_minor(&s).unwrap().is_zero())
        {
            return m;
        }
    }
}

/// Multiset equality of two triples up to one shared monomial unit.
fn matches_up_to_unit(cand: &[LaurentPoly; 3], expected: &[LaurentPoly; 3]) -> bool {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    'outer: for perm in perms {
        let mut unit: Option<LaurentPoly> = None;
        for slot in 0..3 {
            let Some(q) = cand[slot].divide_exact(&expected[perm[slot]]) else {
                continue 'outer;
            };
            if !q.is_monomial() {
                continue 'outer;
            }
            match &unit {
                None => unit = Some(q),
                Some(u) => {
                    if *u != q {
                        continue 'outer;
                    }
                }
            }
        }
        return true;
    }
    false
}

#[test]
fn cross_ratio_sign_matches_the_index_pattern() {
    assert_eq!(cross_ratio_sign(0, 1, 2, 3), -1);
    assert_eq!(cross_ratio_sign(0, 2, 1, 3), 1);
    assert_eq!(cross_ratio_sign(0, 3, 1, 2), -1);
    // A repeated index in either slot makes the product a square.
    assert_eq!(cross_ratio_sign(1, 1, 2, 3), -1);
    assert_eq!(cross_ratio_sign(0, 1, 4, 4), -1);
}

#[test]
fn matrix_values_are_roots_of_the_quadratic_and_admissible() {
    let mut rg = rng(962);
    for _ in 0..3 {
        let lt = generic_matrix(&mut rg, 6, 2, 1);
        let l = lt.transpose();
        let r = generic_matrix(&mut rg, 6, 2, 1);
        let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
        let base = subset(&[0, 1]);
        for (a, b) in [(2, 3), (2, 4), (3, 5)] {
            let chi = chi_triple(&terms, &base, 0, 1, a, b).unwrap();
            let y = y_from_matrix(&r, &base, 0, 1, a, b).unwrap();
            assert!(y.is_admissible(), "matrix value -1 at distinct indices");
            // The matrix value solves crossed·Y² − A·Y + direct = 0.
            let a_term = chi
                .central
                .sub(&chi.split_direct)
                .sub(&chi.split_crossed);
            let residual = chi
                .split_crossed
                .mul(&y.value.square())
                .sub(&a_term.mul(&y.value))
                .add(&chi.split_direct);
            assert!(residual.is_zero(), "matrix value is not a root");
            // It is one of the two computed roots, and Vieta holds.
            let (p, m) = y_roots(&chi).unwrap();
            assert!(
                y.value == p.value || y.value == m.value,
                "matrix value missing from the root pair"
            );
            assert_eq!(
                p.value.mul(&m.value),
                chi.split_direct.div(&chi.split_crossed).unwrap(),
                "root product breaks Vieta"
            );
            assert_eq!(
                p.value.add(&m.value),
                a_term.div(&chi.split_crossed).unwrap(),
                "root sum breaks Vieta"
            );
        }
    }
}

#[test]
fn roots_in_a_fresh_extension_satisfy_vieta() {
    let one = scalar("1", 1);
    let chi = triple(one.clone(), one.clone(), one.clone());
    let (p, m) = y_roots(&chi).unwrap();
    assert!(!p.value.rad_part().is_zero(), "roots should be radical");
    assert_eq!(p.value.add(&m.value), scalar("-1", 1));
    assert_eq!(p.value.mul(&m.value), one);
}

#[test]
fn degenerate_contexts_evaluate_to_minus_one() {
    let mut rg = rng(960);
    let r = generic_matrix(&mut rg, 5, 2, 1);
    let base = subset(&[0, 1]);
    let one = QuadExtScalar::one(1);
    let y = y_from_matrix(&r, &base, 0, 0, 2, 3).unwrap();
    assert!(y.value.add(&one).is_zero());
    assert!(y.is_admissible(), "degenerate -1 is expected, not flagged");
    let y = y_from_matrix(&r, &base, 0, 1, 4, 4).unwrap();
    assert!(y.value.add(&one).is_zero());
    assert_eq!(y.sign(), Some(-1));
}

#[test]
fn identities_hold_on_generic_matrices_and_degenerate_windows() {
    let mut rg = rng(960);
    for _ in 0..3 {
        let r = generic_matrix(&mut rg, 7, 3, 1);
        let base = subset(&[0, 2, 4]);
        for incoming in [(1, 3, 5), (1, 5, 6), (3, 5, 6), (1, 1, 6)] {
            let report = check_identities(&r, &base, (0, 2, 4), incoming).unwrap();
            assert!(
                report.all_zero(),
                "identity residual survives at incoming {incoming:?}"
            );
        }
        // A repeated outgoing index closes the chains through the
        // degenerate value.
        let report = check_identities(&r, &base, (0, 0, 4), (1, 3, 5)).unwrap();
        assert!(report.all_zero(), "degenerate outgoing chain fails");
    }
}

#[test]
fn identities_hold_inside_the_quadratic_extension() {
    let (_, r) = fixtures::demo_pair("5.9").unwrap();
    let base = subset(&[0, 1]);
    let report = check_identities(&r, &base, (0, 1, 1), (2, 3, 4)).unwrap();
    assert!(report.all_zero(), "extension residual survives");
    let report = check_identities(&r, &base, (0, 1, 0), (2, 4, 5)).unwrap();
    assert!(report.all_zero(), "extension residual survives");
}

#[test]
fn transforms_match_matrix_recomputation() {
    let mut rg = rng(961);
    let r = generic_matrix(&mut rg, 6, 3, 1);
    let base = subset(&[0, 1, 2]);
    let y = y_from_matrix(&r, &base, 0, 1, 3, 4).unwrap();

    // Inversion swaps the incoming pair.
    let inv = transform_y(&y, YTransform::Invert).unwrap();
    let direct = y_from_matrix(&r, &base, 0, 1, 4, 3).unwrap();
    assert_eq!(inv.value, direct.value);
    assert_eq!(inv.context, direct.context);

    // The vertical move relocates the context across the base.
    let vert = transform_y(&y, YTransform::Vertical).unwrap();
    let ctx = vert.context.unwrap();
    let recomputed = y_from_matrix(
        &r,
        &ctx.base,
        ctx.outgoing.0,
        ctx.outgoing.1,
        ctx.incoming.0,
        ctx.incoming.1,
    )
    .unwrap();
    assert_eq!(vert.value, recomputed.value, "vertical value drifts");

    // The diagonal move is invert, vertical, invert.
    let diag = transform_y(&y, YTransform::Diagonal).unwrap();
    let composed = transform_y(
        &transform_y(&transform_y(&y, YTransform::Invert).unwrap(), YTransform::Vertical).unwrap(),
        YTransform::Invert,
    )
    .unwrap();
    assert_eq!(diag.value, composed.value);
    assert_eq!(diag.context, composed.context);
    let ctx = diag.context.unwrap();
    let recomputed = y_from_matrix(
        &r,
        &ctx.base,
        ctx.outgoing.0,
        ctx.outgoing.1,
        ctx.incoming.0,
        ctx.incoming.1,
    )
    .unwrap();
    assert_eq!(diag.value, recomputed.value, "diagonal value drifts");
}

#[test]
fn classification_separates_the_radical_classes() {
    // Proportional triple: the discriminant vanishes.
    let chi = triple(
        scalar("12*t1^2", 1),
        scalar("3*t1^2", 1),
        scalar("3*t1^2", 1),
    );
    let ab = ab_terms(&chi).unwrap();
    assert!(ab.b.is_zero());
    assert_eq!(ab.classification, Classification::ConstantY);
    assert_eq!(ab.ground, ExponentVector::new(vec![2]));

    // Constant triple with a negative constant discriminant: still
    // constant roots, in a constant extension.
    let one = scalar("1", 1);
    let ab = ab_terms(&triple(one.clone(), one.clone(), one.clone())).unwrap();
    assert_eq!(ab.b, poly("-3", 1));
    assert_eq!(ab.classification, Classification::ConstantY);

    // Perfect square discriminant with moving roots.
    let chi = triple(
        scalar("t1^2 + 2*t1 + 1", 1),
        scalar("t1", 1),
        scalar("t1", 1),
    );
    let ab = ab_terms(&chi).unwrap();
    assert_eq!(ab.q, poly("t1^2 - 1", 1));
    assert!(ab.d.is_one());
    assert_eq!(ab.classification, Classification::RationalY);

    // Two support points in the squarefree part.
    let quarter_t = QuadExtScalar::from_poly(LaurentPoly::monomial(
        rat(1, 4),
        ExponentVector::new(vec![1]),
    ));
    let chi = triple(quarter_t.clone(), quarter_t, scalar("-1", 1));
    let ab = ab_terms(&chi).unwrap();
    assert_eq!(ab.d, poly("t1 + 1", 1));
    assert_eq!(
        ab.classification,
        Classification::Radical(RadicalKind::SType)
    );

    // Two different triples over the same squarefree part, both with a
    // monomial repeated factor.
    for (c, d, x) in [("t1", "2*t1", "1"), ("t1", "2", "1")] {
        let ab = ab_terms(&triple(scalar(c, 1), scalar(d, 1), scalar(x, 1))).unwrap();
        assert_eq!(ab.d, poly("t1^2 - 6*t1 + 1", 1));
        assert_eq!(
            ab.classification,
            Classification::Radical(RadicalKind::GTypeI)
        );
        assert!(ab.resonance.is_none());
    }

    // Binomial repeated factor with resonance data.
    let chi = triple(
        scalar("t1^2", 2),
        scalar("4*t1*t2", 2),
        scalar("t2^2", 2),
    );
    let ab = ab_terms(&chi).unwrap();
    assert_eq!(ab.q, poly("t1 - t2", 2));
    assert_eq!(ab.d, poly("t1^2 - 6*t1*t2 + t2^2", 2));
    assert_eq!(
        ab.classification,
        Classification::Radical(RadicalKind::GTypeII)
    );
    let res = ab.resonance.expect("resonant configuration");
    assert_eq!(res.rho, rat(1, 2));
    assert_eq!(res.rho0, rat(1, 2));
    assert_eq!(
        res.r_unit,
        LaurentPoly::monomial(rat_int(1), ExponentVector::new(vec![1, -1]))
    );

    // Unobservable and radical-valued triples are rejected.
    let zero = QuadExtScalar::zero(1);
    assert!(ab_terms(&triple(zero.clone(), zero.clone(), zero)).is_err());
    let radical = QuadExtScalar::sqrt_of_poly(&poly("t1", 1)).unwrap();
    assert!(ab_terms(&triple(radical, scalar("1", 1), scalar("1", 1))).is_err());
}

#[test]
fn resonance_criterion_accepts_and_rejects() {
    let e1 = poly("t1^2", 2);
    let e2 = poly("4*t1*t2", 2);
    let e3 = poly("t2^2", 2);
    assert!(resonance_check(&e1, &e2, &e3, 2, 1).unwrap());
    let off = poly("5*t1*t2", 2);
    assert!(!resonance_check(&e1, &off, &e3, 2, 1).unwrap());
    // Exponent imbalance fails before any coefficient comparison.
    let high = poly("4*t1^2*t2", 2);
    assert!(!resonance_check(&e1, &high, &e3, 2, 1).unwrap());
    // Longer ladder with its own constant.
    let e1 = poly("16*t1^3", 1);
    let e2 = poly("9*t1", 1);
    let e3 = poly("1", 1);
    assert!(resonance_check(&e1, &e2, &e3, 3, 1).unwrap());
    assert!(resonance_check(&e1, &e2, &e3, 1, 1).is_err());
    assert!(resonance_check(&poly("t1 + 1", 1), &e2, &e3, 2, 1).is_err());
}

#[test]
fn squarefree_input_reconstructs_the_known_planted_families() {
    let d = poly("t1^2 - 6*t1*t2 + t2^2", 2);
    let rec = reconstruct_from_d(&d, None).unwrap();
    assert_eq!(rec.candidates.len(), 3, "exactly three families");

    let pair_top = [poly("t1", 2), poly("2*t1", 2), poly("t2", 2)];
    let pair_bottom = [poly("t1", 2), poly("t2", 2), poly("2*t2", 2)];
    let squares = [poly("t1^2", 2), poly("4*t1*t2", 2), poly("t2^2", 2)];
    for expected in [&pair_top, &pair_bottom, &squares] {
        assert!(
            rec.candidates
                .iter()
                .any(|c| matches_up_to_unit(&c.triple, expected)),
            "missing family {expected:?}"
        );
    }
    let monomial_q = rec
        .candidates
        .iter()
        .filter(|c| c.class == CandidateClass::GTypeI)
        .count();
    assert_eq!(monomial_q, 2);
    let binomial = rec
        .candidates
        .iter()
        .find(|c| c.class == CandidateClass::GTypeII)
        .expect("one binomial-factor family");
    assert_eq_up_to_monomial_unit(&binomial.square_factor, &poly("t1 - t2", 2), "square factor");

    // Every candidate round-trips through the public classification.
    for c in &rec.candidates {
        let chi = triple(
            QuadExtScalar::from_poly(c.triple[0].clone()),
            QuadExtScalar::from_poly(c.triple[1].clone()),
            QuadExtScalar::from_poly(c.triple[2].clone()),
        );
        let ab = ab_terms(&chi).unwrap();
        assert_eq_up_to_monomial_unit(&ab.d, &d, "candidate discriminant");
    }

    // The hint restricts the output to one family.
    let rec = reconstruct_from_d(&d, Some(ClassHint::GTypeII)).unwrap();
    assert_eq!(rec.candidates.len(), 1);
    assert!(matches_up_to_unit(&rec.candidates[0].triple, &squares));
}

#[test]
fn two_point_discriminant_yields_the_table_rows() {
    let d = poly("4*t1^2 + 9*t2^4", 2);
    let rec = reconstruct_from_d(&d, None).unwrap();
    assert_eq!(rec.candidates.len(), 4, "all four table rows");
    assert!(rec
        .candidates
        .iter()
        .all(|c| matches!(c.class, CandidateClass::SType { .. })));
    let signed = [poly("t1", 2), poly("-t1", 2), poly("3*t2^2", 2)];
    assert!(rec
        .candidates
        .iter()
        .any(|c| matches_up_to_unit(&c.triple, &signed)));

    // A negative term ratio kills the unit-discriminant rows.
    let d = poly("4*t1^2 - 9*t2^4", 2);
    let rec = reconstruct_from_d(&d, None).unwrap();
    assert_eq!(rec.candidates.len(), 2, "only the quarter rows remain");
    assert!(!rec.skipped.is_empty(), "the skipped rows leave a note");
}

#[test]
fn long_ladder_family_round_trips_through_its_discriminant() {
    let chi = triple(scalar("16*t1^3", 1), scalar("9*t1", 1), scalar("1", 1));
    let ab = ab_terms(&chi).unwrap();
    assert_eq!(
        ab.classification,
        Classification::Radical(RadicalKind::GTypeII)
    );
    let res = ab.resonance.expect("planted resonance");
    assert_eq!(res.rho, rat(1, 3));
    assert_eq!(res.rho0, rat(1, 3));
    assert_eq!(ab.b, ab.q.mul(&ab.q).mul(&ab.d), "b = q^2 d fails");

    let rec = reconstruct_from_d(&ab.d, None).unwrap();
    let expected = [poly("16*t1^3", 1), poly("9*t1", 1), poly("1", 1)];
    assert!(
        rec.candidates
            .iter()
            .any(|c| matches_up_to_unit(&c.triple, &expected)),
        "planted ladder family not recovered: {:?}",
        rec.candidates
    );
}

#[test]
fn reconstruction_rejects_improper_inputs() {
    assert!(reconstruct_from_d(&LaurentPoly::zero(1), None).is_err());
    assert!(reconstruct_from_d(&poly("t1^2 + 2*t1 + 1", 1), None).is_err());
    assert!(reconstruct_from_d(&poly("7*t1", 1), None).is_err());
}

fn branch_matches(assignment: &RootAssignment, m: &ExactMatrix) -> bool {
    assignment.roots.iter().all(|(ctx, v)| {
        let y = y_from_matrix(
            m,
            &ctx.base,
            ctx.outgoing.0,
            ctx.outgoing.1,
            ctx.incoming.0,
            ctx.incoming.1,
        )
        .unwrap();
        y.value == *v
    })
}

#[test]
fn root_choice_propagates_from_one_seed_on_a_generic_family() {
    let mut rg = rng(963);
    let lt = generic_matrix(&mut rg, 6, 3, 1);
    let l = lt.transpose();
    let r = generic_matrix(&mut rg, 6, 3, 1);
    let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
    let matroid = terms.support_matroid().unwrap();
    assert!(matroid.is_uniform(), "generic factors fill the support");

    let plus = disambiguate_roots(&terms, &matroid, SeedBranch::Plus).unwrap();
    let minus = disambiguate_roots(&terms, &matroid, SeedBranch::Minus).unwrap();
    // Every context is covered: 20 bases, 3 outgoing pairs, 3 incoming.
    assert_eq!(plus.roots.len(), 180);
    assert_eq!(minus.roots.len(), 180);
    assert!(plus.seed.is_some());
    assert_eq!(plus.seed, minus.seed);
    let one = QuadExtScalar::one(1);
    for v in plus.roots.values().chain(minus.roots.values()) {
        assert!(!v.is_zero(), "assigned root 0");
        assert!(!v.add(&one).is_zero(), "assigned root -1");
    }

    // One branch reads the right factor, the other the left factor.
    let right_plus = branch_matches(&plus, &r);
    let right_minus = branch_matches(&minus, &r);
    assert!(
        right_plus != right_minus,
        "exactly one branch follows the right factor"
    );
    let left_plus = branch_matches(&plus, &lt);
    let left_minus = branch_matches(&minus, &lt);
    assert!(
        left_plus != left_minus,
        "exactly one branch follows the left factor"
    );
    assert!(
        right_plus != left_plus,
        "the two branches split the two factors"
    );
}

#[test]
fn root_choice_works_inside_a_quadratic_extension() {
    let (l, r) = fixtures::demo_pair("5.9").unwrap();
    let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
    let matroid = terms.support_matroid().unwrap();
    let plus = disambiguate_roots(&terms, &matroid, SeedBranch::Plus).unwrap();
    let minus = disambiguate_roots(&terms, &matroid, SeedBranch::Minus).unwrap();
    assert_eq!(plus.roots.len(), 90);
    assert_eq!(minus.roots.len(), 90);
    let right_plus = branch_matches(&plus, &r);
    let right_minus = branch_matches(&minus, &r);
    assert!(
        right_plus != right_minus,
        "exactly one branch follows the right factor"
    );
}

#[test]
fn corrupted_family_is_rejected_by_propagation() {
    let mut rg = rng(964);
    let lt = generic_matrix(&mut rg, 5, 2, 1);
    let l = lt.transpose();
    let r = generic_matrix(&mut rg, 5, 2, 1);
    let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
    let mut values = BTreeMap::new();
    for (s, v) in terms.iter() {
        values.insert(*s, v.clone());
    }
    // Scale one term: the products stop being cross-ratio consistent.
    let target = subset(&[0, 1]);
    let v = values.get(&target).unwrap().clone();
    values.insert(target, v.scale(&rat_int(2)));
    let corrupted = TermMap::from_values(2, 5, 1, values).unwrap();
    let matroid = corrupted.support_matroid().unwrap();
    assert!(
        disambiguate_roots(&corrupted, &matroid, SeedBranch::Plus).is_err(),
        "corruption slips through propagation"
    );
}

#[test]
fn single_basis_family_has_no_contexts() {
    let mut rg = rng(965);
    let lt = generic_matrix(&mut rg, 3, 3, 1);
    let l = lt.transpose();
    let r = generic_matrix(&mut rg, 3, 3, 1);
    let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
    let matroid = terms.support_matroid().unwrap();
    let out = disambiguate_roots(&terms, &matroid, SeedBranch::Plus).unwrap();
    assert!(out.seed.is_none());
    assert!(out.roots.is_empty());
    assert!(out.ambiguous.is_empty());
}

#[test]
fn mismatched_matroid_is_rejected() {
    let mut rg = rng(965);
    let lt = generic_matrix(&mut rg, 5, 2, 1);
    let l = lt.transpose();
    let r = generic_matrix(&mut rg, 5, 2, 1);
    let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
    let other = detform::matroid::Matroid::from_bases(
        5,
        2,
        [subset(&[0, 1]), subset(&[0, 2]), subset(&[1, 2])]
            .into_iter()
            .collect(),
    )
    .unwrap();
    assert!(disambiguate_roots(&terms, &other, SeedBranch::Plus).is_err());
}

#[test]
fn value_of_b_function_is_fully_symmetric() {
    let x = scalar("t1", 1);
    let y = scalar("t1 + 1", 1);
    let z = scalar("3", 1);
    let reference = b_function(&x, &y, &z);
    for (a, b, c) in [
        (&x, &z, &y),
        (&y, &x, &z),
        (&y, &z, &x),
        (&z, &x, &y),
        (&z, &y, &x),
    ] {
        assert_eq!(b_function(a, b, c), reference);
    }
    let flipped = b_function(&x.negate(), &y.negate(), &z.negate());
    assert_eq!(flipped, reference);
}
