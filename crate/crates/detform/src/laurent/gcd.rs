//! Multivariate gcd by content–primitive-part recursion with a
//! subresultant polynomial remainder sequence on the primitive parts.
//!
//! All arithmetic stays exact: pseudo-division keeps coefficients
//! integral and the subresultant divisor `g·h^δ` is removed by exact
//! division at every step.

use super::{LaurentPoly, MonomialOrder};

/// Greatest common divisor, returned in unit-normal form: ground-free,
/// integer coefficients with gcd 1, positive lexicographic leading
/// coefficient. `gcd(0, q)` is the unit-normal core of `q`; `gcd(0, 0)`
/// is zero. Monomial units never appear in the result.
pub fn gcd(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    assert_eq!(p.nvars(), q.nvars(), "variable count mismatch");
    if p.is_zero() {
        return q.unit_normal(MonomialOrder::Lex).2;
    }
    if q.is_zero() {
        return p.unit_normal(MonomialOrder::Lex).2;
    }
    let (_, _, pc) = p.unit_normal(MonomialOrder::Lex);
    let (_, _, qc) = q.unit_normal(MonomialOrder::Lex);
    gcd_core(&pc, &qc)
}

/// Core gcd: both arguments nonzero unit-normal cores.
fn gcd_core(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let d = p.nvars();
    if p.is_one() || q.is_one() {
        return LaurentPoly::one(d);
    }
    if p == q {
        return p.clone();
    }
    // Last variable that occurs in either argument. Cores are
    // ground-free with nonnegative exponents, so positive max degree
    // means the variable occurs.
    let v = (0..d)
        .rev()
        .find(|&v| deg_or_zero(p, v) > 0 || deg_or_zero(q, v) > 0);
    let Some(v) = v else {
        // Both constants; unit-normal nonzero constants are 1.
        return LaurentPoly::one(d);
    };
    let dp = deg_or_zero(p, v);
    let dq = deg_or_zero(q, v);
    if dp == 0 {
        return gcd_core(p, &content_in(q, v));
    }
    if dq == 0 {
        return gcd_core(&content_in(p, v), q);
    }
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let pp = p.divide_exact(&cp).expect("content divides");
    let qq = q.divide_exact(&cq).expect("content divides");
    let cont_gcd = gcd_core(&cp, &cq);
    let prim_gcd = subresultant_prs(&pp, &qq, v);
    cont_gcd.mul(&prim_gcd).unit_normal(MonomialOrder::Lex).2
}

fn deg_or_zero(p: &LaurentPoly, v: usize) -> i64 {
    p.degree_range(v).map(|(_, hi)| hi).unwrap_or(0)
}

/// Leading coefficient in `v`: the coefficient polynomial of the top
/// power, with `v` zeroed out.
fn leading_coeff_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let coeffs = p.as_univar(v);
    coeffs
        .into_iter()
        .next_back()
        .map(|(_, c)| c)
        .unwrap_or_else(|| LaurentPoly::zero(p.nvars()))
}

/// Content in `v`: gcd of the univariate coefficients.
fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero(p.nvars());
    for (_, c) in p.as_univar(v) {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part in `v`.
fn primitive_part_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let c = content_in(p, v);
    p.divide_exact(&c)
        .expect("content divides")
        .unit_normal(MonomialOrder::Lex)
        .2
}

/// Pseudo-remainder `lc_v(b)^{deg_a - deg_b + 1} · a  mod  b` in `v`.
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = deg_or_zero(b, v);
    let lcb = leading_coeff_in(b, v);
    let mut r = a.clone();
    let mut e = deg_or_zero(a, v) - db + 1;
    while !r.is_zero() && deg_or_zero(&r, v) >= db {
        let dr = deg_or_zero(&r, v);
        let lcr = leading_coeff_in(&r, v);
        let shift = LaurentPoly::monomial(
            num_traits::One::one(),
            super::ExponentVector::unit(a.nvars(), v).scale(dr - db),
        );
        r = lcb.mul(&r).sub(&lcr.mul(&shift).mul(b));
        e -= 1;
    }
    if e > 0 {
        let mut scale = LaurentPoly::one(a.nvars());
        for _ in 0..e {
            scale = scale.mul(&lcb);
        }
        r = scale.mul(&r);
    }
    r
}

/// Subresultant remainder sequence on `v`-primitive inputs; returns the
/// primitive part of the last nonzero remainder (the gcd of the
/// primitive parts), or 1 when they are coprime in `v`.
fn subresultant_prs(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let d = a.nvars();
    let (mut a, mut b) = if deg_or_zero(a, v) >= deg_or_zero(b, v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = LaurentPoly::one(d);
    let mut h = LaurentPoly::one(d);
    loop {
        let delta = deg_or_zero(&a, v) - deg_or_zero(&b, v);
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if deg_or_zero(&r, v) == 0 {
            // Nonzero remainder constant in v: the primitive parts are
            // coprime in v.
            return LaurentPoly::one(d);
        }
        let mut divisor = g.clone();
        for _ in 0..delta {
            divisor = divisor.mul(&h);
        }
        let r = r
            .divide_exact(&divisor)
            .expect("subresultant divisor divides the pseudo-remainder");
        a = b;
        b = r;
        g = leading_coeff_in(&a, v);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => {
                let mut num = LaurentPoly::one(d);
                for _ in 0..delta {
                    num = num.mul(&g);
                }
                let mut den = LaurentPoly::one(d);
                for _ in 0..(delta - 1) {
                    den = den.mul(&h);
                }
                num.divide_exact(&den)
                    .expect("subresultant h-update divides exactly")
            }
        };
    }
}
