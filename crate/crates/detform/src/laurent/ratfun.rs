//! Rational functions: canonical quotients of Laurent polynomials.
//!
//! Canonical form: numerator and denominator are coprime, the
//! denominator is a ground-free polynomial whose lexicographically
//! largest monomial has coefficient 1, and monomial units live in the
//! numerator. Zero is `0/1`. Equality of canonical forms is structural.

use super::{gcd, ExponentVector, LaurentPoly, MonomialOrder, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::fmt;

/// Canonical quotient of two Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    /// Builds `num/den`, canonicalizing. Zero denominator is an error.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(
                "rational function with zero denominator".into(),
            ));
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        let d = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: LaurentPoly::one(d),
            };
        }
        // Fast path: denominator already a monomial unit.
        if let Some((dc, de)) = den.as_monomial() {
            let num = num.mul_monomial(&dc.recip(), &de.neg());
            return RationalFunction {
                num,
                den: LaurentPoly::one(d),
            };
        }
        let (un, en, ncore) = num.unit_normal(MonomialOrder::Lex);
        let (ud, ed, dcore) = den.unit_normal(MonomialOrder::Lex);
        let g = gcd(&ncore, &dcore);
        let (nred, dred) = if g.is_one() {
            (ncore, dcore)
        } else {
            (
                ncore.divide_exact(&g).expect("gcd divides the numerator"),
                dcore.divide_exact(&g).expect("gcd divides the denominator"),
            )
        };
        if let Some((dc, de)) = dred.as_monomial() {
            let unit = un / (ud * dc);
            let shift = en.sub(&ed).sub(&de);
            return RationalFunction {
                num: nred.mul_monomial(&unit, &shift),
                den: LaurentPoly::one(d),
            };
        }
        // Scale so the denominator's lex-leading coefficient is 1.
        let (_, lead) = dred.leading_term(MonomialOrder::Lex).unwrap();
        let unit = un / (ud * &lead);
        let shift = en.sub(&ed);
        RationalFunction {
            num: nred.mul_monomial(&unit, &shift),
            den: dred.scale(&lead.recip()),
        }
    }

    /// Canonicalizes a quotient whose parts are already coprime: only
    /// the unit normalization of [`Self::canonical`] runs, no gcd.
    fn assemble(num: LaurentPoly, den: LaurentPoly) -> Self {
        let d = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: LaurentPoly::one(d),
            };
        }
        if let Some((dc, de)) = den.as_monomial() {
            return RationalFunction {
                num: num.mul_monomial(&dc.recip(), &de.neg()),
                den: LaurentPoly::one(d),
            };
        }
        let (ud, ed, dcore) = den.unit_normal(MonomialOrder::Lex);
        let (_, lead) = dcore.leading_term(MonomialOrder::Lex).unwrap();
        RationalFunction {
            num: num.mul_monomial(&(ud * &lead).recip(), &ed.neg()),
            den: dcore.scale(&lead.recip()),
        }
    }

    /// Builds `num/den` from parts known to be coprime, skipping the
    /// reduction pass. Zero denominator is an error.
    pub(crate) fn from_reduced(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(
                "rational function with zero denominator".into(),
            ));
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        Ok(Self::assemble(num, den))
    }

    /// Divides the common polynomial factor out of a pair.
    fn cancel(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        // A canonical denominator is ground-free, so a monomial on the
        // other side shares no factor with it.
        if b.is_one() || a.as_monomial().is_some() {
            return (a.clone(), b.clone());
        }
        let g = gcd(a, b);
        if g.is_one() {
            (a.clone(), b.clone())
        } else {
            (
                a.divide_exact(&g).expect("gcd divides the first entry"),
                b.divide_exact(&g).expect("gcd divides the second entry"),
            )
        }
    }

    /// Embeds a polynomial.
    pub fn from_poly(p: LaurentPoly) -> Self {
        let d = p.nvars();
        RationalFunction {
            num: p,
            den: LaurentPoly::one(d),
        }
    }

    /// Embeds a rational constant.
    pub fn from_rational(d: usize, c: Rational) -> Self {
        RationalFunction {
            num: LaurentPoly::constant(d, c),
            den: LaurentPoly::one(d),
        }
    }

    /// The zero function.
    pub fn zero(d: usize) -> Self {
        RationalFunction {
            num: LaurentPoly::zero(d),
            den: LaurentPoly::one(d),
        }
    }

    /// The constant one.
    pub fn one(d: usize) -> Self {
        RationalFunction {
            num: LaurentPoly::one(d),
            den: LaurentPoly::one(d),
        }
    }

    /// Number of indeterminates.
    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// Canonical numerator.
    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// Canonical denominator.
    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True for one.
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// True when constant.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// The constant value, when constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Sum. Reduction only ever divides by factors of the shared
    /// denominator gcd, so the full reduction pass is skipped.
    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            };
        }
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den.is_one() {
            // gcd(a·d + c, d) = gcd(c, d) = 1: already canonical.
            return RationalFunction {
                num: self.num.mul(&other.den).add(&other.num),
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            return RationalFunction {
                num: self.num.add(&other.num.mul(&self.den)),
                den: self.den.clone(),
            };
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            let (num, den) = Self::cancel(&num, &self.den);
            return Self::assemble(num, den);
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self
                .num
                .mul(&other.den)
                .add(&other.num.mul(&self.den));
            // Coprime parts and a product of monic ground-free
            // denominators: the pair is already canonical.
            return RationalFunction {
                num,
                den: self.den.mul(&other.den),
            };
        }
        let dg = other.den.divide_exact(&g).expect("gcd divides");
        let bg = self.den.divide_exact(&g).expect("gcd divides");
        let num = self.num.mul(&dg).add(&other.num.mul(&bg));
        // Any common factor of the sum and the combined denominator
        // divides the denominator gcd.
        let (num, g2) = Self::cancel(&num, &g);
        if g2 == g {
            Self::assemble(num, self.den.mul(&dg))
        } else {
            let den = bg.mul(&dg).mul(&g2);
            Self::assemble(num, den)
        }
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    /// Negation.
    pub fn negate(&self) -> Self {
        RationalFunction {
            num: self.num.negate(),
            den: self.den.clone(),
        }
    }

    /// Product. Each stored pair is coprime, so the product reduces by
    /// exactly the two cross gcds.
    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction {
                num: self.num.mul(&other.num),
                den: self.den.clone(),
            };
        }
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero(self.nvars());
        }
        let (n1, d2) = Self::cancel(&self.num, &other.den);
        let (n2, d1) = Self::cancel(&other.num, &self.den);
        Self::assemble(n1.mul(&n2), d1.mul(&d2))
    }

    /// Square. The canonical pair squares to a canonical pair, so no
    /// normalization runs at all.
    pub fn square(&self) -> Self {
        RationalFunction {
            num: self.num.mul(&self.num),
            den: self.den.mul(&self.den),
        }
    }

    /// Multiplicative inverse; zero is an error. The stored pair is
    /// coprime, so only unit normalization runs.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(
                "inverse of the zero rational function".into(),
            ));
        }
        Ok(Self::assemble(self.den.clone(), self.num.clone()))
    }

    /// Quotient; zero divisor is an error.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Signed integer power; negative powers invert (zero base errors).
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.nvars());
        let mut b = base;
        let mut k = k.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b.clone());
            }
        }
        Ok(acc)
    }

    /// Scales by a rational constant.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplies by the monomial `c · t^e`.
    pub fn mul_monomial(&self, c: &Rational, e: &ExponentVector) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction {
            num: self.num.mul_monomial(c, e),
            den: self.den.clone(),
        }
    }

    /// Evaluates at a rational point; the denominator must not vanish.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let dv = self.den.eval(point)?;
        if dv.is_zero() {
            return Err(Error::DivisionByZero(
                "denominator vanishes at the evaluation point".into(),
            ));
        }
        Ok(self.num.eval(point)? / dv)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print_ratfun(self))
    }
}
