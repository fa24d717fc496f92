//! Shared test oracles, independent of the library's internal
//! algorithms: determinants by permutation expansion, random exact
//! scalars with seeded generators, and equality up to monomial units.

#![allow(dead_code)]

use detform::laurent::{
    ExponentVector, LaurentPoly, QuadExtScalar, Rational, RationalFunction,
};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for a named test.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random rational with nonzero denominator.
pub fn random_rational(r: &mut ChaCha8Rng) -> Rational {
    let num = r.random_range(-9i64..=9);
    let den = r.random_range(1i64..=4);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Small random nonzero rational.
pub fn random_nonzero_rational(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = random_rational(r);
        if !num_traits::Zero::is_zero(&c) {
            return c;
        }
    }
}

/// Random sparse Laurent polynomial.
pub fn random_poly(
    r: &mut ChaCha8Rng,
    nvars: usize,
    max_terms: usize,
    exp_lo: i64,
    exp_hi: i64,
) -> LaurentPoly {
    let nterms = r.random_range(0..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let e: Vec<i64> = (0..nvars).map(|_| r.random_range(exp_lo..=exp_hi)).collect();
        terms.push((ExponentVector::new(e), random_rational(r)));
    }
    LaurentPoly::from_terms(nvars, terms)
}

/// Random nonzero sparse Laurent polynomial.
pub fn random_nonzero_poly(
    r: &mut ChaCha8Rng,
    nvars: usize,
    max_terms: usize,
    exp_lo: i64,
    exp_hi: i64,
) -> LaurentPoly {
    loop {
        let p = random_poly(r, nvars, max_terms, exp_lo, exp_hi);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random evaluation point with all coordinates nonzero.
pub fn random_point(r: &mut ChaCha8Rng, nvars: usize) -> Vec<Rational> {
    (0..nvars).map(|_| random_nonzero_rational(r)).collect()
}

/// Asserts `a = c·t^e·b` for some nonzero rational `c` and exponent `e`.
pub fn assert_eq_up_to_monomial_unit(a: &LaurentPoly, b: &LaurentPoly, context: &str) {
    if a.is_zero() || b.is_zero() {
        assert!(
            a.is_zero() && b.is_zero(),
            "{context}: one side is zero, the other is not"
        );
        return;
    }
    let q = a
        .divide_exact(b)
        .unwrap_or_else(|| panic!("{context}: quotient does not exist"));
    assert!(
        q.is_monomial(),
        "{context}: quotient {q} is not a monomial unit"
    );
}

/// All k-element subsets of {0, .., n-1} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for x in start..=(n - need) {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        go(0, n, k, &mut cur, &mut out);
    }
    out
}

/// Sign of a permutation given as images of 0..n-1, by inversion count.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Determinant by the permutation expansion, over rational functions.
pub fn leibniz_det_ratfun(m: &[Vec<RationalFunction>]) -> RationalFunction {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix required");
    if n == 0 {
        panic!("empty determinant");
    }
    let d = m[0][0].nvars();
    let mut total = RationalFunction::zero(d);
    for perm in permutations(n) {
        let mut prod = RationalFunction::one(d);
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(&m[i][j]);
        }
        let signed = if permutation_sign(&perm) < 0 {
            prod.negate()
        } else {
            prod
        };
        total = total.add(&signed);
    }
    total
}

/// Determinant by the permutation expansion, over the quadratic
/// extension.
pub fn leibniz_det_quadext(m: &[Vec<QuadExtScalar>]) -> QuadExtScalar {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix required");
    if n == 0 {
        panic!("empty determinant");
    }
    let d = m[0][0].nvars();
    let mut total = QuadExtScalar::zero(d);
    for perm in permutations(n) {
        let mut prod = QuadExtScalar::one(d);
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(&m[i][j]);
        }
        let signed = if permutation_sign(&perm) < 0 {
            prod.negate()
        } else {
            prod
        };
        total = total.add(&signed);
    }
    total
}
