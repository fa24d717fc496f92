//! Scalars in a quadratic extension of the rational-function field:
//! `a + b·√disc` with one shared discriminant per computation context.
//!
//! The stored discriminant is canonical: squarefree, ground-free up to
//! a 0/1 exponent per variable, integer content squarefree up to the
//! trial-division bound, sign preserved. A declared discriminant that is
//! a perfect square folds into the rational part at construction, so a
//! stored discriminant is never a square and the norm `a² − b²·disc`
//! vanishes only at zero. Negative constant discriminants are kept as
//! formal imaginary quantities; no ordering is ever applied to these
//! scalars.
//!
//! Mixing two different discriminants in arithmetic is a programming
//! error and panics; data entering from files is validated against the
//! context discriminant at the parsing seam.

use super::{
    squarefree_decompose, LaurentPoly, MonomialOrder, Rational, RationalFunction,
};
use crate::error::{Error, Result};
use num_traits::One;
use std::fmt;

/// Element `rat + rad·√disc` of the quadratic extension.
///
/// `disc` is `None` exactly when `rad` is zero, so purely rational
/// values compare equal across contexts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadExtScalar {
    rat: RationalFunction,
    rad: RationalFunction,
    disc: Option<LaurentPoly>,
}

impl QuadExtScalar {
    /// Zero.
    pub fn zero(d: usize) -> Self {
        Self::from_ratfun(RationalFunction::zero(d))
    }

    /// One.
    pub fn one(d: usize) -> Self {
        Self::from_ratfun(RationalFunction::one(d))
    }

    /// Embeds a rational function.
    pub fn from_ratfun(rat: RationalFunction) -> Self {
        let d = rat.nvars();
        QuadExtScalar {
            rat,
            rad: RationalFunction::zero(d),
            disc: None,
        }
    }

    /// Embeds a polynomial.
    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::from_ratfun(RationalFunction::from_poly(p))
    }

    /// Embeds a rational constant.
    pub fn from_rational(d: usize, c: Rational) -> Self {
        Self::from_ratfun(RationalFunction::from_rational(d, c))
    }

    /// Builds `rat + rad·√disc`, canonicalizing the discriminant. The
    /// declared discriminant may be any nonzero polynomial; its square
    /// part is folded into `rad` and a perfect square folds entirely
    /// into the rational part. A nonzero `rad` with no discriminant is
    /// an error, as is a zero discriminant.
    pub fn with_parts(
        rat: RationalFunction,
        rad: RationalFunction,
        disc: Option<LaurentPoly>,
    ) -> Result<Self> {
        if rad.is_zero() {
            return Ok(Self::from_ratfun(rat));
        }
        let Some(disc) = disc else {
            return Err(Error::Inconsistent(
                "radical part present but no discriminant declared".into(),
            ));
        };
        if disc.is_zero() {
            return Err(Error::Inconsistent("zero discriminant".into()));
        }
        let (canonical, scale) = canonical_disc(&disc)?;
        let rad = rad.mul(&scale);
        match canonical {
            None => {
                // Perfect square: √disc is the canonical root `scale`.
                Ok(Self::from_ratfun(rat.add(&rad)))
            }
            Some(canonical) => Ok(QuadExtScalar {
                rat,
                rad,
                disc: Some(canonical),
            }),
        }
    }

    /// The square root of a polynomial, as a canonical radical element.
    pub fn sqrt_of_poly(p: &LaurentPoly) -> Result<Self> {
        let d = p.nvars();
        if p.is_zero() {
            return Ok(Self::zero(d));
        }
        Self::with_parts(
            RationalFunction::zero(d),
            RationalFunction::one(d),
            Some(p.clone()),
        )
    }

    /// The square root of a rational function: `√(n/d) = √(n·d)/d`.
    pub fn sqrt_of_ratfun(f: &RationalFunction) -> Result<Self> {
        let d = f.nvars();
        if f.is_zero() {
            return Ok(Self::zero(d));
        }
        let prod = f.num().mul(f.den());
        let root = Self::sqrt_of_poly(&prod)?;
        let den_inv = RationalFunction::from_poly(f.den().clone()).inverse()?;
        Ok(root.scale_ratfun(&den_inv))
    }

    /// Number of indeterminates.
    pub fn nvars(&self) -> usize {
        self.rat.nvars()
    }

    /// Rational part `a`.
    pub fn rat_part(&self) -> &RationalFunction {
        &self.rat
    }

    /// Radical coefficient `b`.
    pub fn rad_part(&self) -> &RationalFunction {
        &self.rad
    }

    /// Canonical discriminant, present exactly when `b ≠ 0`.
    pub fn disc(&self) -> Option<&LaurentPoly> {
        self.disc.as_ref()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    /// True when the radical part vanishes.
    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    /// True for one.
    pub fn is_one(&self) -> bool {
        self.rad.is_zero()
            && self
                .rat
                .as_constant()
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// True when the two values may appear in one arithmetic expression.
    pub fn compatible(a: &Self, b: &Self) -> bool {
        match (&a.disc, &b.disc) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        }
    }

    fn merged_disc(&self, other: &Self) -> Option<LaurentPoly> {
        match (&self.disc, &other.disc) {
            (Some(x), Some(y)) => {
                assert_eq!(
                    x, y,
                    "mixed discriminants in quadratic-extension arithmetic"
                );
                Some(x.clone())
            }
            (Some(x), None) => Some(x.clone()),
            (None, y) => y.clone(),
        }
    }

    fn normalized(rat: RationalFunction, rad: RationalFunction, disc: Option<LaurentPoly>) -> Self {
        if rad.is_zero() {
            Self::from_ratfun(rat)
        } else {
            QuadExtScalar { rat, rad, disc }
        }
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let disc = self.merged_disc(other);
        Self::normalized(self.rat.add(&other.rat), self.rad.add(&other.rad), disc)
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.negate())
    }

    /// Negation.
    pub fn negate(&self) -> Self {
        QuadExtScalar {
            rat: self.rat.negate(),
            rad: self.rad.negate(),
            disc: self.disc.clone(),
        }
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        let disc = self.merged_disc(other);
        let cross = self
            .rat
            .mul(&other.rad)
            .add(&self.rad.mul(&other.rat));
        let mut plain = self.rat.mul(&other.rat);
        if !self.rad.is_zero() && !other.rad.is_zero() {
            let dpoly = disc
                .clone()
                .expect("nonzero radical parts share a discriminant");
            plain = plain.add(
                &self
                    .rad
                    .mul(&other.rad)
                    .mul(&RationalFunction::from_poly(dpoly)),
            );
        }
        Self::normalized(plain, cross, disc)
    }

    /// Square.
    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Conjugate `a − b·√disc`.
    pub fn conjugate(&self) -> Self {
        QuadExtScalar {
            rat: self.rat.clone(),
            rad: self.rad.negate(),
            disc: self.disc.clone(),
        }
    }

    /// Field norm `a² − b²·disc`, a rational function.
    pub fn norm(&self) -> RationalFunction {
        let a2 = self.rat.square();
        if self.rad.is_zero() {
            return a2;
        }
        let dpoly = self.disc.clone().expect("radical part has a discriminant");
        a2.sub(&self.rad.square().mul(&RationalFunction::from_poly(dpoly)))
    }

    /// Multiplicative inverse via the conjugate; zero is an error.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(
                "inverse of zero in the quadratic extension".into(),
            ));
        }
        if self.rad.is_zero() {
            return Ok(Self::from_ratfun(self.rat.inverse()?));
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero(
                "inverse of zero in the quadratic extension".into(),
            ));
        }
        let ninv = n.inverse()?;
        Ok(Self::normalized(
            self.rat.mul(&ninv),
            self.rad.negate().mul(&ninv),
            self.disc.clone(),
        ))
    }

    /// Quotient.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Signed integer power.
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
                b = b.square();
            }
        }
        Ok(acc)
    }

    /// Scales by a rational function.
    pub fn scale_ratfun(&self, c: &RationalFunction) -> Self {
        Self::normalized(self.rat.mul(c), self.rad.mul(c), self.disc.clone())
    }

    /// Scales by a rational constant.
    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.rat.scale(c), self.rad.scale(c), self.disc.clone())
    }
}

impl fmt::Display for QuadExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print_quadext(self))
    }
}

/// Canonicalizes a nonzero discriminant: returns `(Some(disc'), scale)`
/// with `√disc = scale·√disc'` and `disc'` squarefree with squarefree
/// unit parts, or `(None, scale)` when the input is a perfect square
/// with canonical root `scale`.
pub fn canonical_disc(disc: &LaurentPoly) -> Result<(Option<LaurentPoly>, RationalFunction)> {
    if disc.is_zero() {
        return Err(Error::Inconsistent("zero discriminant".into()));
    }
    let parts = squarefree_decompose(disc)?;
    let scale = RationalFunction::from_poly(parts.square.clone());
    let residue = parts
        .squarefree
        .mul_monomial(&parts.unit_coeff, &parts.unit_exp);
    if residue.is_one() {
        return Ok((None, scale));
    }
    debug_assert!(
        {
            let (_, _, core) = residue.unit_normal(MonomialOrder::Lex);
            core == parts.squarefree
        },
        "canonical discriminant must be stable under re-normalization"
    );
    Ok((Some(residue), scale))
}
