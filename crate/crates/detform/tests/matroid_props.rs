//! Basis-family tests: exchange-axiom validation, shortest exchange
//! chains against a breadth-first oracle, and the generic-column search.

mod common;

use std::collections::BTreeSet;

use common::*;
use detform::exactmat::{binomial, ExactMatrix, SubsetIndex};
use detform::laurent::{rat_int, RationalFunction};
use detform::matroid::Matroid;
use rand::Rng;

fn subset(members: &[usize]) -> SubsetIndex {
    SubsetIndex::from_members(members).unwrap()
}

/// Rank-2 matroid on 4 points where columns 1 and 2 are parallel, so
/// {1,2} is the only dependent pair.
fn parallel_pair_matroid() -> Matroid {
    let cols = [[1i64, 0], [1, 0], [0, 1], [1, 1]];
    let data: Vec<Vec<RationalFunction>> = (0..2)
        .map(|i| {
            (0..4)
                .map(|j| RationalFunction::from_rational(0, rat_int(cols[j][i])))
                .collect()
        })
        .collect();
    let m = ExactMatrix::from_ratfun_rows(data).unwrap();
    Matroid::from_minor_map(4, 2, |s| !m.col_minor(s).unwrap().is_zero()).unwrap()
}

#[test]
fn minor_map_of_a_generic_matrix_is_uniform() {
    let mut r = rng(940);
    let data: Vec<Vec<RationalFunction>> = (0..2)
        .map(|_| {
            (0..5)
                .map(|_| RationalFunction::from_rational(0, random_nonzero_rational(&mut r)))
                .collect()
        })
        .collect();
    let m = ExactMatrix::from_ratfun_rows(data).unwrap();
    let matroid = Matroid::from_minor_map(5, 2, |s| !m.col_minor(s).unwrap().is_zero());
    // A random rational matrix is generic with overwhelming probability;
    // if a minor happened to vanish the family is still a matroid.
    let matroid = matroid.unwrap();
    if matroid.is_uniform() {
        assert_eq!(matroid.num_bases(), binomial(5, 2));
    }
}

#[test]
fn parallel_columns_give_a_proper_matroid() {
    let m = parallel_pair_matroid();
    assert!(!m.is_uniform());
    assert_eq!(m.num_bases(), binomial(4, 2) - 1);
    assert!(!m.is_basis(&subset(&[0, 1])));
    assert!(m.is_basis(&subset(&[0, 2])));
}

#[test]
fn exchange_axiom_violations_are_rejected() {
    // {1,2} and {3,4} alone: no single swap of 1 lands on a member.
    let bases: BTreeSet<SubsetIndex> =
        [subset(&[0, 1]), subset(&[2, 3])].into_iter().collect();
    let err = Matroid::from_bases(4, 2, bases).unwrap_err();
    assert!(matches!(err, detform::Error::Inconsistent(_)));

    let empty: BTreeSet<SubsetIndex> = BTreeSet::new();
    assert!(Matroid::from_bases(4, 2, empty).is_err());

    let wrong_size: BTreeSet<SubsetIndex> = [subset(&[0])].into_iter().collect();
    assert!(Matroid::from_bases(4, 2, wrong_size).is_err());

    let out_of_range: BTreeSet<SubsetIndex> = [subset(&[0, 5])].into_iter().collect();
    assert!(Matroid::from_bases(4, 2, out_of_range).is_err());
}

#[test]
fn exchange_chain_has_minimal_length_and_valid_steps() {
    let m = parallel_pair_matroid();
    for from in m.bases() {
        for to in m.bases() {
            let chain = m.exchange_chain(from, to).unwrap();
            assert_eq!(chain.len(), from.difference(to).len() + 1);
            assert_eq!(chain.first(), Some(from));
            assert_eq!(chain.last(), Some(to));
            for w in chain.windows(2) {
                assert!(m.is_basis(&w[0]) && m.is_basis(&w[1]));
                assert_eq!(w[0].difference(&w[1]).len(), 1, "one swap per step");
                // Each step moves toward the target.
                assert_eq!(
                    w[1].difference(to).len() + 1,
                    w[0].difference(to).len()
                );
            }
        }
    }
}

#[test]
fn exchange_chain_on_a_random_uniform_matroid() {
    let mut r = rng(941);
    let m = Matroid::from_minor_map(7, 3, |_| true).unwrap();
    let all: Vec<SubsetIndex> = m.bases().copied().collect();
    for _ in 0..20 {
        let a = all[r.random_range(0..all.len())];
        let b = all[r.random_range(0..all.len())];
        let chain = m.exchange_chain(&a, &b).unwrap();
        assert_eq!(chain.len(), a.difference(&b).len() + 1);
    }
    let a = all[0];
    assert_eq!(m.exchange_chain(&a, &a).unwrap(), vec![a]);
}

#[test]
fn exchange_chain_rejects_non_bases() {
    let m = parallel_pair_matroid();
    let bad = subset(&[0, 1]);
    let good = subset(&[0, 2]);
    assert!(m.exchange_chain(&bad, &good).is_err());
    assert!(m.exchange_chain(&good, &bad).is_err());
}

#[test]
fn generic_columns_prefer_the_lex_least_witness() {
    let m = Matroid::from_minor_map(5, 2, |_| true).unwrap();
    assert_eq!(m.find_generic_columns(), Some((subset(&[0, 1]), 2, 3)));
}

#[test]
fn generic_columns_skip_blocked_double_swaps() {
    // All pairs except {1,2} are bases. Any witness must avoid a swap
    // landing on the excluded pair; the least surviving one anchors at
    // {1,3} with both inserted columns above the excluded elements.
    let blocked = subset(&[0, 1]);
    let m = Matroid::from_minor_map(5, 2, |s| *s != blocked).unwrap();
    assert_eq!(m.find_generic_columns(), Some((subset(&[0, 2]), 3, 4)));
}

#[test]
fn generic_columns_absent_for_single_swap_families() {
    // Bases: {1,2,3} and its single swaps into the tail. A double swap
    // into two tail columns always leaves the family, so no witness
    // exists.
    let mut bases: BTreeSet<SubsetIndex> = BTreeSet::new();
    bases.insert(subset(&[0, 1, 2]));
    for i in 0..3 {
        for a in 3..7 {
            bases.insert(subset(&[0, 1, 2]).swap(i, a).unwrap());
        }
    }
    let m = Matroid::from_bases(7, 3, bases).unwrap();
    assert_eq!(m.find_generic_columns(), None);
}

#[test]
fn generic_columns_absent_for_paired_complement_families() {
    // Bases on 12 elements: a subset A of the first six together with
    // the shifted complement (6 + ([6] \ A)). Single swaps must respect
    // the pairing, so no fixed column pair can serve every member.
    let m = Matroid::from_minor_map(12, 6, |s| {
        let members = s.members();
        let low: Vec<usize> = members.iter().copied().filter(|x| *x < 6).collect();
        let high: Vec<usize> = members
            .iter()
            .copied()
            .filter(|x| *x >= 6)
            .map(|x| x - 6)
            .collect();
        let missing: Vec<usize> = (0..6).filter(|x| !low.contains(x)).collect();
        high == missing
    })
    .unwrap();
    assert_eq!(m.num_bases(), 64);
    assert_eq!(m.find_generic_columns(), None);
}
