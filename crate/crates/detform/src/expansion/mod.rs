//! Term-by-term expansion of det(L·R) over column subsets.
//!
//! For a k×n matrix L and an n×k matrix R the determinant of the product
//! splits as a sum over k-subsets of column/row minor products. This
//! module materializes that expansion, extracts exchange triples, and
//! tests the monomial shape of the terms together with its second-order
//! obstruction (the curvature of the exponent map).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactmat::{enumerate_subsets, ExactMatrix, SubsetIndex};
use crate::laurent::{
    ExponentVector, LaurentPoly, QuadExtScalar, Rational, RationalFunction,
};
use crate::matroid::Matroid;

/// The nonzero minor products h(I) of one matrix pair, keyed by column
/// subset. Zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermMap {
    k: usize,
    n: usize,
    nvars: usize,
    disc: Option<LaurentPoly>,
    terms: BTreeMap<SubsetIndex, QuadExtScalar>,
}

impl TermMap {
    /// Builds the expansion from an explicit pair, verifying the total
    /// against an independent determinant of the product matrix. Column
    /// minors of `l` are computed first so that row minors of `r` are
    /// only evaluated where they can contribute.
    pub fn cauchy_binet_terms(l: &ExactMatrix, r: &ExactMatrix) -> Result<TermMap> {
        let k = l.rows();
        let n = l.cols();
        if k == 0 || k > n {
            return Err(Error::DimensionMismatch(format!(
                "expansion of a {k}x{n} by {}x{} pair",
                r.rows(),
                r.cols()
            )));
        }
        if r.rows() != n || r.cols() != k {
            return Err(Error::DimensionMismatch(format!(
                "left factor is {k}x{n} but right factor is {}x{}",
                r.rows(),
                r.cols()
            )));
        }
        if l.nvars() != r.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "left factor has {} variables but right factor has {}",
                l.nvars(),
                r.nvars()
            )));
        }
        let nvars = l.nvars();
        let ltab = l.col_minor_table()?;
        let mut terms = BTreeMap::new();
        let mut total = QuadExtScalar::zero(nvars);
        let mut disc: Option<LaurentPoly> = l.disc().cloned();
        for s in enumerate_subsets(n, k) {
            let dl = ltab.get(&s)?;
            if dl.is_zero() {
                continue;
            }
            let dr = r.row_minor(&s)?;
            if dr.is_zero() {
                continue;
            }
            let h = dl.mul(&dr);
            total = total.add(&h);
            if disc.is_none() {
                disc = h.disc().cloned();
            }
            terms.insert(s, h);
        }
        let check = l.mat_mul(r)?.det()?;
        if total != check {
            return Err(Error::Inconsistent(
                "minor-product terms do not sum to the product determinant".into(),
            ));
        }
        Ok(TermMap {
            k,
            n,
            nvars,
            disc,
            terms,
        })
    }

    /// Wraps an externally produced family of terms; zero values are
    /// dropped, subsets are validated against the announced shape.
    pub fn from_values(
        k: usize,
        n: usize,
        nvars: usize,
        values: BTreeMap<SubsetIndex, QuadExtScalar>,
    ) -> Result<TermMap> {
        if k == 0 || k > n {
            return Err(Error::DimensionMismatch(format!(
                "term map with k = {k} on {n} columns"
            )));
        }
        let mut terms = BTreeMap::new();
        let mut disc: Option<LaurentPoly> = None;
        for (s, v) in values {
            if s.len() != k {
                return Err(Error::IndexError(format!(
                    "term subset {s} does not have {k} elements"
                )));
            }
            if s.members().last().copied().unwrap_or(0) >= n {
                return Err(Error::IndexError(format!(
                    "term subset {s} exceeds {n} columns"
                )));
            }
            if v.is_zero() {
                continue;
            }
            if v.nvars() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "term at {s} has {} variables, expected {nvars}",
                    v.nvars()
                )));
            }
            if disc.is_none() {
                disc = v.disc().cloned();
            }
            terms.insert(s, v);
        }
        if terms.is_empty() {
            return Err(Error::Inconsistent("all terms vanish".into()));
        }
        Ok(TermMap {
            k,
            n,
            nvars,
            disc,
            terms,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn disc(&self) -> Option<&LaurentPoly> {
        self.disc.as_ref()
    }

    /// The term at `s`, zero when `s` is outside the support.
    pub fn get(&self, s: &SubsetIndex) -> QuadExtScalar {
        self.terms
            .get(s)
            .cloned()
            .unwrap_or_else(|| QuadExtScalar::zero(self.nvars))
    }

    pub fn get_nonzero(&self, s: &SubsetIndex) -> Option<&QuadExtScalar> {
        self.terms.get(s)
    }

    pub fn support(&self) -> BTreeSet<SubsetIndex> {
        self.terms.keys().copied().collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SubsetIndex, &QuadExtScalar)> {
        self.terms.iter()
    }

    /// Interprets the support as a basis family, validating exchange.
    pub fn support_matroid(&self) -> Result<Matroid> {
        Matroid::from_bases(self.n, self.k, self.support())
    }

    /// Sum of all terms.
    pub fn total(&self) -> QuadExtScalar {
        let mut acc = QuadExtScalar::zero(self.nvars);
        for v in self.terms.values() {
            acc = acc.add(v);
        }
        acc
    }
}

/// The three minor products attached to one double exchange: the central
/// product h(I)·h(I with i,j replaced by a,b) followed by the two split
/// products h(I^i_a)·h(I^j_b) and h(I^i_b)·h(I^j_a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiTriple {
    pub central: QuadExtScalar,
    pub split_direct: QuadExtScalar,
    pub split_crossed: QuadExtScalar,
}

impl ChiTriple {
    pub fn values(&self) -> [&QuadExtScalar; 3] {
        [&self.central, &self.split_direct, &self.split_crossed]
    }

    /// At least one product is nonzero.
    pub fn is_observable(&self) -> bool {
        self.values().iter().any(|v| !v.is_zero())
    }

    /// Every nonzero product is a monomial and they all share a single
    /// exponent.
    pub fn is_integrable(&self) -> bool {
        let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for v in self.values() {
            if v.is_zero() {
                continue;
            }
            match monomial_exponent(v) {
                Some(e) => {
                    seen.insert(e);
                }
                None => return false,
            }
        }
        seen.len() <= 1 && !seen.is_empty()
    }
}

/// Computes the exchange triple for basis `base`, outgoing indices i, j
/// and incoming indices a, b.
pub fn chi_triple(
    terms: &TermMap,
    base: &SubsetIndex,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
) -> Result<ChiTriple> {
    if i == j || a == b {
        return Err(Error::IndexError(
            "exchange indices must be distinct in each slot".into(),
        ));
    }
    if !base.contains(i) || !base.contains(j) {
        return Err(Error::IndexError(format!(
            "outgoing indices {},{} must lie in {base}",
            i + 1,
            j + 1
        )));
    }
    if base.contains(a) || base.contains(b) {
        return Err(Error::IndexError(format!(
            "incoming indices {},{} must avoid {base}",
            a + 1,
            b + 1
        )));
    }
    let both = base.swap(i, a)?.swap(j, b)?;
    let ia = base.swap(i, a)?;
    let jb = base.swap(j, b)?;
    let ib = base.swap(i, b)?;
    let ja = base.swap(j, a)?;
    Ok(ChiTriple {
        central: terms.get(base).mul(&terms.get(&both)),
        split_direct: terms.get(&ia).mul(&terms.get(&jb)),
        split_crossed: terms.get(&ib).mul(&terms.get(&ja)),
    })
}

/// Exponent of a term that is a monomial over the coefficient ring:
/// either the radical part vanishes and the rational part is a Laurent
/// monomial, or the square is one (a pure radical multiple of a monomial
/// discriminant), in which case the exponent is half-integral.
pub fn monomial_exponent(v: &QuadExtScalar) -> Option<Vec<Rational>> {
    if v.is_zero() {
        return None;
    }
    if v.rad_part().is_zero() {
        return ratfun_monomial_exponent(v.rat_part())
            .map(|e| e.entries().iter().map(|x| Rational::from(crate::laurent::Integer::from(*x))).collect());
    }
    if !v.rat_part().is_zero() {
        return None;
    }
    let sq = v.square();
    if !sq.rad_part().is_zero() {
        return None;
    }
    let e = ratfun_monomial_exponent(sq.rat_part())?;
    let half = Rational::new(1.into(), 2.into());
    Some(
        e.entries()
            .iter()
            .map(|x| Rational::from(crate::laurent::Integer::from(*x)) * &half)
            .collect(),
    )
}

fn ratfun_monomial_exponent(rf: &RationalFunction) -> Option<ExponentVector> {
    if !rf.den().is_one() {
        return None;
    }
    rf.num().as_monomial().map(|(_, e)| e)
}

/// Whether every term of the expansion is a monomial over the
/// coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialCheck {
    AllMonomial,
    /// Lex-least subset whose term is not a monomial.
    FirstFailure(SubsetIndex),
}

pub fn monomial_condition(terms: &TermMap) -> MonomialCheck {
    for (s, v) in terms.iter() {
        if monomial_exponent(v).is_none() {
            return MonomialCheck::FirstFailure(*s);
        }
    }
    MonomialCheck::AllMonomial
}

/// Second difference of the exponent map across a pair of double
/// exchanges: Psi(H+a1+a2) + Psi(H+b1+b2) - Psi(H+a1+b2) - Psi(H+b1+a2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Curvature {
    Value(Vec<Rational>),
    /// Some participating term vanishes or is not a monomial.
    NotEvaluable(String),
}

impl Curvature {
    pub fn as_value(&self) -> Option<&[Rational]> {
        match self {
            Curvature::Value(v) => Some(v),
            Curvature::NotEvaluable(_) => None,
        }
    }

    pub fn is_nonzero(&self) -> bool {
        match self {
            Curvature::Value(v) => v.iter().any(|x| !num_traits::Zero::is_zero(x)),
            Curvature::NotEvaluable(_) => false,
        }
    }
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curvature::Value(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Curvature::NotEvaluable(why) => write!(f, "not evaluable: {why}"),
        }
    }
}

pub fn curvature(
    terms: &TermMap,
    h: &SubsetIndex,
    alphas: (usize, usize),
    betas: (usize, usize),
) -> Result<Curvature> {
    let (a1, a2) = alphas;
    let (b1, b2) = betas;
    let four = [a1, a2, b1, b2];
    for (idx, x) in four.iter().enumerate() {
        if *x >= terms.n() {
            return Err(Error::IndexError(format!(
                "column {} is outside the ground set",
                x + 1
            )));
        }
        if h.contains(*x) {
            return Err(Error::IndexError(format!(
                "column {} already lies in the core {h}",
                x + 1
            )));
        }
        if four[..idx].contains(x) {
            return Err(Error::IndexError(
                "the four inserted columns must be distinct".into(),
            ));
        }
    }
    if h.len() + 2 != terms.k() {
        return Err(Error::DimensionMismatch(format!(
            "core {h} must have {} elements",
            terms.k().saturating_sub(2)
        )));
    }
    let psi = |x: usize, y: usize| -> std::result::Result<Vec<Rational>, String> {
        let s = h.with(x).unwrap().with(y).unwrap();
        let v = terms.get(&s);
        if v.is_zero() {
            return Err(format!("term at {s} vanishes"));
        }
        monomial_exponent(&v).ok_or_else(|| format!("term at {s} is not a monomial"))
    };
    let p13 = psi(a1, a2);
    let p24 = psi(b1, b2);
    let p14 = psi(a1, b2);
    let p23 = psi(b1, a2);
    match (p13, p24, p14, p23) {
        (Ok(p13), Ok(p24), Ok(p14), Ok(p23)) => {
            let v: Vec<Rational> = (0..terms.nvars())
                .map(|t| &p13[t] + &p24[t] - &p14[t] - &p23[t])
                .collect();
            Ok(Curvature::Value(v))
        }
        (a, b, c, d) => {
            let why = [a.err(), b.err(), c.err(), d.err()]
                .into_iter()
                .flatten()
                .next()
                .unwrap();
            Ok(Curvature::NotEvaluable(why))
        }
    }
}

/// One evaluable curvature quadruple with a nonzero value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureWitness {
    pub core: SubsetIndex,
    pub alphas: (usize, usize),
    pub betas: (usize, usize),
    pub value: Vec<Rational>,
}

/// Enumerates every supported quadruple and returns those with nonzero
/// curvature, in lexicographic order of (core, alphas, betas). For each
/// unordered pair of disjoint column pairs both crossing patterns are
/// inspected.
pub fn scan_curvature(terms: &TermMap) -> Result<Vec<CurvatureWitness>> {
    let n = terms.n();
    let k = terms.k();
    if k < 2 {
        return Err(Error::DimensionMismatch(
            "curvature needs at least two exchangeable columns".into(),
        ));
    }
    let mut out = Vec::new();
    for core in enumerate_subsets(n, k - 2) {
        let free: Vec<usize> = core.complement(n).members();
        let m = free.len();
        for p1 in 0..m {
            for p2 in (p1 + 1)..m {
                for q1 in (p1 + 1)..m {
                    if q1 == p2 {
                        continue;
                    }
                    for q2 in (q1 + 1)..m {
                        if q2 == p2 {
                            continue;
                        }
                        let (a1, a2) = (free[p1], free[p2]);
                        for betas in [(free[q1], free[q2]), (free[q2], free[q1])] {
                            let c = curvature(terms, &core, (a1, a2), betas)?;
                            if c.is_nonzero() {
                                if let Curvature::Value(v) = c {
                                    out.push(CurvatureWitness {
                                        core,
                                        alphas: (a1, a2),
                                        betas,
                                        value: v,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// An affine exponent law: a global offset plus one exponent per column.
/// The law is reported in the gauge where the first participating column
/// carries the zero exponent; shifting every column exponent by a common
/// vector c while subtracting k·c from the offset describes the same law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAssignment {
    pub offset: ExponentVector,
    pub per_column: Vec<ExponentVector>,
}

impl MonomialAssignment {
    pub fn predicted_exponent(&self, s: &SubsetIndex) -> ExponentVector {
        let mut e = self.offset.clone();
        for c in s.members() {
            e = e.add(&self.per_column[c]);
        }
        e
    }
}
