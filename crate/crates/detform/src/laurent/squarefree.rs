//! Squarefree decomposition `P = unit · Q² · D` over the rationals.
//!
//! `D` is squarefree, ground-free, integer-primitive with positive
//! lexicographic leading coefficient. Square factors hiding in the
//! monomial unit (an even ground exponent, a square integer content)
//! are folded into `Q`, so the residual unit exponent is 0/1 per
//! variable and the residual coefficient is squarefree as an integer up
//! to the trial-division bound.

use super::{gcd, ExponentVector, Integer, LaurentPoly, MonomialOrder, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};

/// Result of [`squarefree_decompose`]: `input = unit_coeff · t^{unit_exp}
/// · square² · squarefree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeParts {
    /// Rational unit coefficient; integer square parts are moved into
    /// `square` up to the trial-division bound.
    pub unit_coeff: Rational,
    /// Monomial unit exponent; entries are 0 or 1 after folding doubled
    /// exponents into `square`.
    pub unit_exp: ExponentVector,
    /// The repeated part `Q`, possibly carrying a monomial unit from the
    /// folding step.
    pub square: LaurentPoly,
    /// The squarefree part `D`: ground-free, integer-primitive, positive
    /// lexicographic leading coefficient.
    pub squarefree: LaurentPoly,
}

impl SquarefreeParts {
    /// Reassembles the original polynomial.
    pub fn reassemble(&self) -> LaurentPoly {
        self.square
            .mul(&self.square)
            .mul(&self.squarefree)
            .mul_monomial(&self.unit_coeff, &self.unit_exp)
    }
}

/// Splits off the largest square factor: `p = unit · Q² · D` with `D`
/// squarefree. Zero input is an error.
pub fn squarefree_decompose(p: &LaurentPoly) -> Result<SquarefreeParts> {
    if p.is_zero() {
        return Err(Error::DivisionByZero(
            "squarefree decomposition of zero".into(),
        ));
    }
    let d = p.nvars();
    let (unit_coeff, unit_exp, core) = p.unit_normal(MonomialOrder::Lex);
    let mut remaining = core;
    let mut square = LaurentPoly::one(d);
    loop {
        let mut g = remaining.clone();
        for v in 0..d {
            let dv = remaining.derivative(v);
            if !dv.is_zero() {
                g = gcd(&g, &dv);
            }
            if g.is_one() {
                break;
            }
        }
        if g.is_constant() {
            break;
        }
        let s = remaining
            .divide_exact(&g)
            .expect("gcd with derivatives divides");
        let t = gcd(&g, &s);
        debug_assert!(
            !t.is_constant(),
            "repeated part detected but no repeated factor found"
        );
        square = square.mul(&t);
        let t2 = t.mul(&t);
        remaining = remaining
            .divide_exact(&t2)
            .expect("square of repeated factor divides");
    }
    // Pull square factors out of the monomial unit and fold them into Q.
    let (q_coeff, q_exp, rem_coeff, rem_exp) = split_unit_square(&unit_coeff, &unit_exp);
    Ok(SquarefreeParts {
        unit_coeff: rem_coeff,
        unit_exp: rem_exp,
        square: square.mul_monomial(&q_coeff, &q_exp),
        squarefree: remaining,
    })
}

/// Writes `c · t^e = (qc · t^{qe})² · (rc · t^{re})` with `re ∈ {0,1}^d`
/// and the integer parts of `rc` squarefree up to the trial-division
/// bound. The sign of `c` stays in `rc`.
fn split_unit_square(
    c: &Rational,
    e: &ExponentVector,
) -> (Rational, ExponentVector, Rational, ExponentVector) {
    let d = e.dim();
    let mut qe = vec![0i64; d];
    let mut re = vec![0i64; d];
    for (v, &k) in e.entries().iter().enumerate() {
        qe[v] = k.div_euclid(2);
        re[v] = k.rem_euclid(2);
    }
    let (nsq, nfree) = integer_square_split(&c.numer().abs());
    let (dsq, dfree) = integer_square_split(c.denom());
    let sign = if c.is_negative() {
        -Rational::one()
    } else {
        Rational::one()
    };
    let qc = Rational::new(nsq, dsq);
    let rc = sign * Rational::new(nfree, dfree);
    (qc, ExponentVector::new(qe), rc, ExponentVector::new(re))
}

/// Trial-division bound for splitting integer square parts. A prime
/// square above the bound stays in the squarefree slot.
const SQUARE_SPLIT_BOUND: u64 = 1_000_000;

/// Writes `n = s² · f` with `f` squarefree up to the trial-division
/// bound. `n` must be positive.
pub(crate) fn integer_square_split(n: &Integer) -> (Integer, Integer) {
    let mut s = Integer::one();
    let mut f = Integer::one();
    let mut m = n.clone();
    let bound = Integer::from(SQUARE_SPLIT_BOUND);
    let mut p = Integer::from(2u32);
    while &p * &p <= m && p <= bound {
        if (&m % &p).is_zero() {
            let mut count = 0u32;
            while (&m % &p).is_zero() {
                m /= &p;
                count += 1;
            }
            for _ in 0..count / 2 {
                s *= &p;
            }
            if count % 2 == 1 {
                f *= &p;
            }
        }
        p = if p == Integer::from(2u32) {
            Integer::from(3u32)
        } else {
            p + 2
        };
    }
    f *= &m;
    (s, f)
}
