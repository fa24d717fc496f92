//! Expansion-layer tests: term maps against direct minor products, the
//! built-in example pairs, exchange triples, the monomial condition, and
//! curvature evaluation.

mod common;

use std::collections::BTreeMap;

use common::*;
use detform::exactmat::{enumerate_subsets, ExactMatrix, SubsetIndex};
use detform::expansion::{
    chi_triple, curvature, monomial_condition, monomial_exponent, scan_curvature,
    Curvature, MonomialCheck, TermMap,
};
use detform::fixtures;
use detform::laurent::{
    parse_poly, rat_int, LaurentPoly, QuadExtScalar, Rational, RationalFunction,
};
use rand_chacha::ChaCha8Rng;

fn random_poly_matrix(
    r: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    nvars: usize,
) -> ExactMatrix {
    let data: Vec<Vec<RationalFunction>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| RationalFunction::from_poly(random_poly(r, nvars, 2, 0, 2)))
                .collect()
        })
        .collect();
    ExactMatrix::from_ratfun_rows(data).unwrap()
}

fn subset(members: &[usize]) -> SubsetIndex {
    SubsetIndex::from_members(members).unwrap()
}

fn q_mono(c: i64, e: &[i64]) -> QuadExtScalar {
    QuadExtScalar::from_poly(LaurentPoly::monomial(
        rat_int(c),
        detform::laurent::ExponentVector::new(e.to_vec()),
    ))
}

#[test]
fn terms_match_direct_minor_products_and_sum_to_the_determinant() {
    let mut r = rng(950);
    for _ in 0..4 {
        let l = random_poly_matrix(&mut r, 2, 5, 1);
        let rr = random_poly_matrix(&mut r, 5, 2, 1);
        let terms = TermMap::cauchy_binet_terms(&l, &rr).unwrap();
        for s in enumerate_subsets(5, 2) {
            let direct = l.col_minor(&s).unwrap().mul(&rr.row_minor(&s).unwrap());
            assert_eq!(terms.get(&s), direct, "term at {s}");
        }
        assert_eq!(terms.total(), l.mat_mul(&rr).unwrap().det().unwrap());
    }
}

#[test]
fn term_construction_rejects_bad_shapes() {
    let mut r = rng(951);
    let l = random_poly_matrix(&mut r, 2, 5, 1);
    let tall = random_poly_matrix(&mut r, 4, 2, 1);
    assert!(TermMap::cauchy_binet_terms(&l, &tall).is_err());
    let two_var = random_poly_matrix(&mut r, 5, 2, 2);
    assert!(TermMap::cauchy_binet_terms(&l, &two_var).is_err());
}

#[test]
fn paired_complement_example_has_monomial_terms_of_degree_at_most_one() {
    let (l, r) = fixtures::demo_pair("1.2").unwrap();
    let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
    // The support sits inside the paired-complement family.
    for (s, _) in terms.iter() {
        let members = s.members();
        let low: Vec<usize> = members.iter().copied().filter(|x| *x < 6).collect();
        let high: Vec<usize> = members
            .iter()
            .copied()
            .filter(|x| *x >= 6)
            .map(|x| x - 6)
            .collect();
        let missing: Vec<usize> = (0..6).filter(|x| !low.contains(x)).collect();
        assert_eq!(high, missing, "support member {s} breaks the pairing");
    }
    assert_eq!(monomial_condition(&terms), MonomialCheck::AllMonomial);
    let zero = Rational::from(detform::laurent::Integer::from(0));
    let one = Rational::from(detform::laurent::Integer::from(1));
    for (s, v) in terms.iter() {
        let e = monomial_exponent(v).unwrap();
        assert!(
            e[0] == zero || e[0] == one,
            "term at {s} has degree {}",
            e[0]
        );
    }
}

#[test]
fn paired_complement_example_has_the_known_negative_curvature() {
    let (l, r) = fixtures::demo_pair("1.2").unwrap();
    let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
    let core = subset(&[2, 3, 4, 5]);
    let c = curvature(&terms, &core, (0, 1), (6, 7)).unwrap();
    let minus_two = Rational::from(detform::laurent::Integer::from(-2));
    assert_eq!(c, Curvature::Value(vec![minus_two]));
}

#[test]
fn radical_example_has_monomial_products_and_nonzero_curvature() {
    let (l, r) = fixtures::demo_pair("5.9").unwrap();
    // Every maximal minor of the right factor is nonzero.
    for s in enumerate_subsets(6, 2) {
        assert!(
            !r.row_minor(&s).unwrap().is_zero(),
            "right minor at {s} vanishes"
        );
    }
    let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
    assert_eq!(terms.num_terms(), 15, "all products survive");
    assert_eq!(monomial_condition(&terms), MonomialCheck::AllMonomial);
    // The products are conjugate pairs, so each term is radical-free.
    for (s, v) in terms.iter() {
        assert!(v.rad_part().is_zero(), "term at {s} keeps a radical");
    }
    let witnesses = scan_curvature(&terms).unwrap();
    assert!(!witnesses.is_empty(), "some curvature quadruple is nonzero");
}

#[test]
fn replicated_column_example_supports_only_single_swaps() {
    let (l, r) = fixtures::demo_pair("4.1").unwrap();
    let terms = TermMap::cauchy_binet_terms(&l, &r).unwrap();
    let base = subset(&[0, 1, 2]);
    let mut expected = vec![base];
    for i in 0..3 {
        for a in 3..7 {
            expected.push(base.swap(i, a).unwrap());
        }
    }
    expected.sort();
    let support: Vec<SubsetIndex> = terms.support().into_iter().collect();
    assert_eq!(support, expected);
    assert_eq!(monomial_condition(&terms), MonomialCheck::AllMonomial);
    let matroid = terms.support_matroid().unwrap();
    assert_eq!(matroid.find_generic_columns(), None);
    let witnesses = scan_curvature(&terms).unwrap();
    assert!(!witnesses.is_empty(), "the exponent pattern is not affine");
}

#[test]
fn chi_triple_products_match_hand_computation() {
    let mut r = rng(952);
    let l = random_poly_matrix(&mut r, 2, 6, 1);
    let rr = random_poly_matrix(&mut r, 6, 2, 1);
    let terms = TermMap::cauchy_binet_terms(&l, &rr).unwrap();
    let base = subset(&[0, 1]);
    let t = chi_triple(&terms, &base, 0, 1, 2, 3).unwrap();
    let h = |m: &[usize]| terms.get(&subset(m));
    assert_eq!(t.central, h(&[0, 1]).mul(&h(&[2, 3])));
    assert_eq!(t.split_direct, h(&[1, 2]).mul(&h(&[0, 3])));
    assert_eq!(t.split_crossed, h(&[1, 3]).mul(&h(&[0, 2])));

    assert!(chi_triple(&terms, &base, 0, 0, 2, 3).is_err(), "i = j");
    assert!(chi_triple(&terms, &base, 0, 2, 2, 3).is_err(), "j outside");
    assert!(chi_triple(&terms, &base, 0, 1, 1, 3).is_err(), "a inside");
}

#[test]
fn chi_triple_observability_and_integrability() {
    // Terms on a uniform support with controlled exponents.
    let mut values = BTreeMap::new();
    for s in enumerate_subsets(4, 2) {
        values.insert(s, q_mono(1, &[s.members()[0] as i64]));
    }
    let terms = TermMap::from_values(2, 4, 1, values).unwrap();
    let t = chi_triple(&terms, &subset(&[0, 1]), 0, 1, 2, 3).unwrap();
    assert!(t.is_observable());
    // Exponents: central 0+2, direct 1+0, crossed 1+0: two distinct.
    assert!(!t.is_integrable());

    // Constant terms everywhere: single shared exponent.
    let mut flat = BTreeMap::new();
    for s in enumerate_subsets(4, 2) {
        flat.insert(s, q_mono(2, &[0]));
    }
    let terms = TermMap::from_values(2, 4, 1, flat).unwrap();
    let t = chi_triple(&terms, &subset(&[0, 1]), 0, 1, 2, 3).unwrap();
    assert!(t.is_observable());
    assert!(t.is_integrable());

    // Missing entries produce an unobservable triple.
    let mut sparse = BTreeMap::new();
    sparse.insert(subset(&[0, 1]), q_mono(1, &[0]));
    sparse.insert(subset(&[0, 2]), q_mono(1, &[0]));
    let terms = TermMap::from_values(2, 4, 1, sparse).unwrap();
    let t = chi_triple(&terms, &subset(&[0, 1]), 0, 1, 2, 3).unwrap();
    assert!(!t.is_observable());
}

#[test]
fn curvature_reports_vanishing_and_non_monomial_terms() {
    let mut values = BTreeMap::new();
    for s in enumerate_subsets(4, 2) {
        values.insert(s, q_mono(1, &[0]));
    }
    // Leave {0,1} out entirely: its term vanishes.
    values.remove(&subset(&[0, 1]));
    let terms = TermMap::from_values(2, 4, 1, values).unwrap();
    let c = curvature(&terms, &SubsetIndex::empty(), (0, 1), (2, 3)).unwrap();
    assert!(matches!(c, Curvature::NotEvaluable(_)));

    let mut values = BTreeMap::new();
    for s in enumerate_subsets(4, 2) {
        values.insert(s, q_mono(1, &[0]));
    }
    let binomial_term =
        QuadExtScalar::from_poly(parse_poly("t1 + 1", 1).unwrap());
    values.insert(subset(&[0, 1]), binomial_term);
    let terms = TermMap::from_values(2, 4, 1, values).unwrap();
    let c = curvature(&terms, &SubsetIndex::empty(), (0, 1), (2, 3)).unwrap();
    assert!(matches!(c, Curvature::NotEvaluable(_)));
    match monomial_condition(&terms) {
        MonomialCheck::FirstFailure(s) => assert_eq!(s, subset(&[0, 1])),
        MonomialCheck::AllMonomial => panic!("binomial term accepted"),
    }

    // Index validation.
    let c = curvature(&terms, &SubsetIndex::empty(), (0, 1), (1, 3));
    assert!(c.is_err(), "repeated column");
    let c = curvature(&terms, &subset(&[0]), (0, 1), (2, 3));
    assert!(c.is_err(), "core overlaps inserted columns");
}

#[test]
fn monomial_exponent_handles_radical_monomials() {
    // Plain monomial.
    let v = q_mono(3, &[2]);
    let two = Rational::from(detform::laurent::Integer::from(2));
    assert_eq!(monomial_exponent(&v), Some(vec![two]));

    // Pure radical over a monomial discriminant: exponent 3/2.
    let disc = parse_poly("t1", 1).unwrap();
    let rad = RationalFunction::from_poly(parse_poly("t1", 1).unwrap());
    let v = QuadExtScalar::with_parts(
        RationalFunction::zero(1),
        rad,
        Some(disc.clone()),
    )
    .unwrap();
    let three_halves = Rational::new(3.into(), 2.into());
    assert_eq!(monomial_exponent(&v), Some(vec![three_halves]));

    // Mixed rational and radical parts are not monomials.
    let v = QuadExtScalar::with_parts(
        RationalFunction::one(1),
        RationalFunction::one(1),
        Some(disc),
    )
    .unwrap();
    assert_eq!(monomial_exponent(&v), None);

    // Binomials are not monomials.
    let v = QuadExtScalar::from_poly(parse_poly("t1 + 1", 1).unwrap());
    assert_eq!(monomial_exponent(&v), None);

    assert_eq!(monomial_exponent(&QuadExtScalar::zero(1)), None);
}
