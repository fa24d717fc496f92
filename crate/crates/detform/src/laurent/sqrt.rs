//! Exact square roots of perfect-square Laurent polynomials.
//!
//! The root is built by leading-term long division under the lex
//! order: once the leading term of the root is fixed, every further
//! term is forced by the current leading term of the residual. Inputs
//! that are not squares fail fast, either on a forced non-square
//! coefficient or by escaping the support box available to a root.

use super::{ExponentVector, Integer, LaurentPoly, MonomialOrder, Rational};
use num_traits::{One, Signed, Zero};

/// Exact square root of a nonnegative rational, when one exists.
pub(crate) fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_zero() {
        return Some(r.clone());
    }
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn: Integer = n.sqrt();
    let sd: Integer = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

impl LaurentPoly {
    /// Exact square root: `Some(q)` with `q·q == self` when a root
    /// exists in the Laurent ring over ℚ, else `None`. The root is
    /// normalized to a positive lex-leading coefficient.
    pub fn sqrt_exact(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let ground = self.ground_exponent().unwrap();
        if ground.entries().iter().any(|e| e.rem_euclid(2) != 0) {
            return None;
        }
        let half_ground = ExponentVector::new(ground.entries().iter().map(|e| e / 2).collect());
        let shifted = self.mul_monomial(&Rational::one(), &ground.neg());
        // Any root of `shifted` has per-variable exponents in [0, cap],
        // because the extreme slices of a square are squares of slices.
        let mut caps = Vec::with_capacity(self.nvars());
        let mut budget: u64 = 1;
        for v in 0..self.nvars() {
            let (_, hi) = shifted.degree_range(v).unwrap();
            if hi % 2 != 0 {
                return None;
            }
            caps.push(hi / 2);
            budget = budget.saturating_mul(hi as u64 / 2 + 1);
        }
        let budget = budget.min(1 << 20);
        let (lead_e, lead_c) = shifted.leading_term(MonomialOrder::Lex).unwrap();
        if lead_e.entries().iter().any(|e| e % 2 != 0) {
            return None;
        }
        let root_c = rational_sqrt(&lead_c)?;
        let root_e = ExponentVector::new(lead_e.entries().iter().map(|e| e / 2).collect());
        let mut root = LaurentPoly::monomial(root_c.clone(), root_e.clone());
        let mut residual = shifted.sub(&root.mul(&root));
        let double_lead = Rational::from_integer(2.into()) * &root_c;
        let two = Rational::from_integer(2.into());
        let mut steps: u64 = 0;
        while !residual.is_zero() {
            steps += 1;
            if steps > budget {
                return None;
            }
            let (re, rc) = residual.leading_term(MonomialOrder::Lex).unwrap();
            let te = re.sub(&root_e);
            if te
                .entries()
                .iter()
                .zip(&caps)
                .any(|(e, cap)| *e < 0 || e > cap)
            {
                return None;
            }
            let tc = rc / &double_lead;
            let tau = LaurentPoly::monomial(tc.clone(), te.clone());
            let update = root.scale(&two).add(&tau).mul_monomial(&tc, &te);
            residual = residual.sub(&update);
            root = root.add(&tau);
        }
        Some(root.mul_monomial(&Rational::one(), &half_ground))
    }
}
