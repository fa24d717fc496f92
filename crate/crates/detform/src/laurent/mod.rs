//! Exact multivariate Laurent polynomials over the rationals, their
//! fraction field, and one quadratic extension of it.
//!
//! Every scalar in the crate bottoms out here. The carrier types are:
//!
//! * [`ExponentVector`] — an element of ℤ^d addressing one monomial;
//! * [`LaurentPoly`] — a finite map from exponent vectors to nonzero
//!   rational coefficients;
//! * [`RationalFunction`] — a canonical quotient of two Laurent
//!   polynomials;
//! * [`QuadExtScalar`] — `a + b·√disc` over the fraction field, with one
//!   shared squarefree discriminant per computation context.
//!
//! Also provided: gcd and squarefree decomposition ([`gcd`],
//! [`squarefree_decompose`]), ground monomials, unimodular variable
//! changes, and an exact text syntax with a round-tripping parser and
//! printer ([`parse_poly`], `Display`).

mod gcd;
mod parse;
mod quadext;
mod ratfun;
mod sqrt;
mod squarefree;

pub use gcd::gcd;
pub use parse::{parse_poly, parse_quadext, parse_ratfun};
pub use quadext::{canonical_disc, QuadExtScalar};
pub use ratfun::RationalFunction;
pub use squarefree::{squarefree_decompose, SquarefreeParts};
pub(crate) use sqrt::rational_sqrt;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational, the coefficient field.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// Convenience constructor for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for an integer rational.
pub fn rat_int(num: i64) -> Rational {
    Rational::from(BigInt::from(num))
}

/// Exponent vector of one monomial: an element of ℤ^d.
///
/// The length d is the number of indeterminates and is fixed per
/// computation context; mixing lengths is a caller error surfaced by the
/// operations that combine vectors. The derived `Ord` is lexicographic
/// with `t1` as the highest-priority variable, matching
/// [`MonomialOrder::Lex`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    /// Builds from explicit entries.
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    /// The zero vector in dimension `d`.
    pub fn zero(d: usize) -> Self {
        ExponentVector(vec![0; d])
    }

    /// The standard unit vector `e_v` in dimension `d`.
    pub fn unit(d: usize, v: usize) -> Self {
        let mut e = vec![0; d];
        e[v] = 1;
        ExponentVector(e)
    }

    /// Number of indeterminates.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Entry accessor.
    pub fn get(&self, v: usize) -> i64 {
        self.0[v]
    }

    /// All entries.
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "exponent dimension mismatch");
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "exponent dimension mismatch");
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise negation.
    pub fn neg(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    /// Scales every entry.
    pub fn scale(&self, c: i64) -> Self {
        ExponentVector(self.0.iter().map(|a| a * c).collect())
    }

    /// Componentwise minimum.
    pub fn min_with(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "exponent dimension mismatch");
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (*a).min(*b))
                .collect(),
        )
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Total order on monomials, compatible with multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum MonomialOrder {
    /// Pure lexicographic order, `t1` most significant.
    #[default]
    Lex,
    /// Total degree first, ties broken lexicographically.
    GradedLex,
}

impl MonomialOrder {
    /// Compares two exponent vectors under this order.
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> std::cmp::Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GradedLex => {
                let da: i64 = a.entries().iter().sum();
                let db: i64 = b.entries().iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
        }
    }
}

/// Exact multivariate Laurent polynomial over ℚ.
///
/// Invariants: no stored zero coefficient; every key has length
/// [`LaurentPoly::nvars`]. The zero polynomial is the empty map and has
/// empty support by definition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPoly {
    /// The zero polynomial in `d` variables.
    pub fn zero(d: usize) -> Self {
        LaurentPoly {
            nvars: d,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one(d: usize) -> Self {
        Self::constant(d, Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(d: usize, c: Rational) -> Self {
        let mut p = Self::zero(d);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zero(d), c);
        }
        p
    }

    /// A single monomial `c · t^e`.
    pub fn monomial(c: Rational, e: ExponentVector) -> Self {
        let mut p = Self::zero(e.dim());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The variable `t_{v+1}` (0-based index `v`).
    pub fn var(d: usize, v: usize) -> Self {
        Self::monomial(Rational::one(), ExponentVector::unit(d, v))
    }

    /// Builds from (exponent, coefficient) pairs, summing duplicates.
    pub fn from_terms<I>(d: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(d);
        for (e, c) in terms {
            assert_eq!(e.dim(), d, "exponent dimension mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let s = slot.get() + &c;
                if s.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    /// Number of indeterminates.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials in the support.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates the support in ascending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of `e` (zero if absent).
    pub fn coeff(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// The exponent set Ψ(P); empty for the zero polynomial.
    pub fn exponent_set(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// True when the support has exactly one monomial.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The unique term, when the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(Rational, ExponentVector)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), e.clone()))
        } else {
            None
        }
    }

    /// True when constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    /// The constant value, when constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    /// True when the polynomial is `1`.
    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Largest exponent under `order`, with its coefficient.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(ExponentVector, Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.compare(a, b))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Componentwise minimum of all exponents: the ground monomial of
    /// this single polynomial. `None` for zero.
    pub fn ground_exponent(&self) -> Option<ExponentVector> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.min_with(e)))
    }

    /// Adds two polynomials.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Subtracts `other`.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    /// Negation.
    pub fn negate(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    /// Multiplies by a single monomial `c · t^e`.
    pub fn mul_monomial(&self, c: &Rational, e: &ExponentVector) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e0, c0)| (e0.add(e), c0 * c))
                .collect(),
        }
    }

    /// Scales by a rational constant.
    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_monomial(c, &ExponentVector::zero(self.nvars))
    }

    /// Integer power (exponent ≥ 0).
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `v` (0-based).
    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.get(v);
            if k != 0 {
                let mut e2 = e.clone();
                e2.0[v] = k - 1;
                out.add_term(e2, c * Rational::from(Integer::from(k)));
            }
        }
        out
    }

    /// Minimal and maximal degree in variable `v`; `None` for zero.
    pub fn degree_range(&self, v: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e.get(v));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// Evaluates at a rational point. Coordinates hit by a negative
    /// exponent must be nonzero.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "eval point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in e.entries().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if point[v].is_zero() {
                    if k < 0 {
                        return Err(Error::DivisionByZero(format!(
                            "negative exponent of t{} at a zero coordinate",
                            v + 1
                        )));
                    }
                    term = Rational::zero();
                    break;
                }
                term *= rational_pow(&point[v], k);
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes `t^e ↦ s^{V·e}` for a unimodular integer matrix `V`.
    ///
    /// This is a ring isomorphism of the Laurent ring, hence a bijection
    /// on supports.
    pub fn unimodular_substitute(&self, v: &[Vec<i64>]) -> Result<Self> {
        let d = self.nvars;
        if v.len() != d || v.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "substitution matrix must be {d}x{d}"
            )));
        }
        let det = int_matrix_det(v);
        if det != 1 && det != -1 {
            return Err(Error::Inconsistent(format!(
                "substitution matrix has determinant {det}, expected ±1"
            )));
        }
        let mut out = Self::zero(d);
        for (e, c) in &self.terms {
            let new_e: Vec<i64> = (0..d)
                .map(|i| (0..d).map(|j| v[i][j] * e.get(j)).sum())
                .collect();
            out.add_term(ExponentVector::new(new_e), c.clone());
        }
        Ok(out)
    }

    /// Views the polynomial as univariate in `v` with polynomial
    /// coefficients (variable `v` zeroed inside each coefficient).
    pub(crate) fn as_univar(&self, v: usize) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.get(v);
            let mut rest = e.clone();
            rest.0[v] = 0;
            out.entry(k)
                .or_insert_with(|| LaurentPoly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Splits into `unit_coeff · t^{unit_exp} · core` with `core`
    /// ground-free (componentwise-minimal exponents all zero), integer
    /// coefficients with gcd 1, and positive leading coefficient under
    /// `order`. Zero splits as `(0, 0-vector, 0)`.
    pub fn unit_normal(&self, order: MonomialOrder) -> (Rational, ExponentVector, LaurentPoly) {
        if self.is_zero() {
            return (
                Rational::zero(),
                ExponentVector::zero(self.nvars),
                self.clone(),
            );
        }
        let ground = self.ground_exponent().unwrap();
        // Rational content: gcd of numerators over lcm of denominators.
        let mut num_gcd = Integer::zero();
        let mut den_lcm = Integer::one();
        for c in self.terms.values() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, &c.numer().abs());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut unit = Rational::new(num_gcd, den_lcm);
        let core0 = self.mul_monomial(&unit.recip(), &ground.neg());
        let (_, lead) = core0.leading_term(order).unwrap();
        if lead.is_negative() {
            unit = -unit;
        }
        let core = if lead.is_negative() {
            core0.negate()
        } else {
            core0
        };
        (unit, ground, core)
    }

    /// Exact division: `Some(q)` with `self = q·divisor` when the
    /// quotient exists in the Laurent ring, else `None`.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        // Reduce to ground-free polynomial division; monomial units are
        // always invertible in the Laurent ring.
        let gs = self.ground_exponent().unwrap();
        let gd = divisor.ground_exponent().unwrap();
        let p = self.mul_monomial(&Rational::one(), &gs.neg());
        let d = divisor.mul_monomial(&Rational::one(), &gd.neg());
        let mut rem = p;
        let mut quot = Self::zero(self.nvars);
        let (de, dc) = d.leading_term(MonomialOrder::Lex).unwrap();
        while !rem.is_zero() {
            let (re, rc) = rem.leading_term(MonomialOrder::Lex).unwrap();
            let qe = re.sub(&de);
            // An exact polynomial quotient has only nonnegative exponents.
            if qe.entries().iter().any(|&x| x < 0) {
                return None;
            }
            let qc = &rc / &dc;
            let mono = Self::monomial(qc.clone(), qe.clone());
            rem = rem.sub(&d.mul_monomial(&qc, &qe));
            quot = quot.add(&mono);
        }
        Some(quot.mul_monomial(&Rational::one(), &gs.sub(&gd)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::print_poly(self))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negate()
    }
}

/// Exact rational power with signed exponent.
pub fn rational_pow(base: &Rational, k: i64) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let mut b = if k < 0 { base.recip() } else { base.clone() };
    let mut k = k.unsigned_abs();
    let mut acc = Rational::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &b;
        }
        k >>= 1;
        if k > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Determinant of a small integer matrix by cofactor expansion.
fn int_matrix_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0i64;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let sub: Vec<Vec<i64>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c]).collect())
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        det += s * m[0][j] * int_matrix_det(&sub);
    }
    det
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = m.len();
    let det = int_matrix_det(m);
    if det != 1 && det != -1 {
        return Err(Error::Inconsistent(format!(
            "matrix has determinant {det}, expected ±1"
        )));
    }
    // Adjugate divided by the determinant; entries stay integral.
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let sub: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c])
                        .collect::<Vec<_>>()
                })
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[i][j] = s * int_matrix_det(&sub) / det;
        }
    }
    Ok(inv)
}

/// Ground monomial of a family of nonzero values: the monic monomial
/// `∏ t_c^{min over all terms of all values}`. Dividing every value by it
/// leaves quotients whose componentwise-minimal exponents are all zero,
/// with the minimum attained.
pub fn ground_monomial(values: &[LaurentPoly]) -> Result<ExponentVector> {
    if values.is_empty() {
        return Err(Error::Inconsistent(
            "ground monomial of an empty family".into(),
        ));
    }
    let mut acc: Option<ExponentVector> = None;
    for p in values {
        let Some(g) = p.ground_exponent() else {
            return Err(Error::DivisionByZero(
                "ground monomial requires nonzero values".into(),
            ));
        };
        acc = Some(match acc {
            None => g,
            Some(a) => a.min_with(&g),
        });
    }
    Ok(acc.unwrap())
}
