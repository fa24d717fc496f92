//! Reconstruction of monomial exchange triples from a squarefree
//! discriminant.
//!
//! Given a squarefree Laurent polynomial `d`, this module enumerates
//! the triples of monomials `(x, y, z)` whose discriminant
//! `(x − y − z)² − 4yz` equals `d` times a square, organized by the
//! support size of `d`: two points admit the split-type table, larger
//! collinear supports admit the two generic-type families. Every
//! emitted candidate is round-tripped through the discriminant and the
//! squarefree decomposition before it is reported; candidates are
//! reported once per multiset, in a canonical normalization.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{
    rat, rat_int, rational_sqrt, squarefree_decompose, ExponentVector, Integer, LaurentPoly,
    Rational,
};

use super::{b_poly, position_on_line, primitive_direction};

/// Restricts [`reconstruct_from_d`] to one family of candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassHint {
    SType,
    GTypeI,
    GTypeII,
}

/// Family a reconstructed candidate belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateClass {
    /// Split type from the two-point table; `c_s` records which sign
    /// row of the table produced it.
    SType { c_s: i8 },
    /// Generic type with a monomial repeated factor.
    GTypeI,
    /// Generic type with a binomial repeated factor.
    GTypeII,
}

/// One reconstructed triple. The entries are sorted canonically; the
/// discriminant is symmetric in the three entries, so the order carries
/// no information. `square_factor` is the square part picked up in the
/// round trip: discriminant(triple) = square_factor² · d.
#[derive(Clone, Debug)]
pub struct ChiCandidate {
    pub triple: [LaurentPoly; 3],
    pub class: CandidateClass,
    pub square_factor: LaurentPoly,
}

/// Result of a reconstruction: the verified candidates, one per
/// multiset up to a monomial unit and a global sign, and notes about
/// branches that were skipped with the structural reason.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub candidates: Vec<ChiCandidate>,
    pub skipped: Vec<String>,
}

/// Enumerates the monomial triples whose discriminant is the squarefree
/// polynomial `d` up to a square factor and a unit.
///
/// `d` must be squarefree up to a monomial unit; a repeated factor is
/// an error, as is a support of fewer than two points. The optional
/// hint restricts the search to one family. Candidates are normalized:
/// unit-free ground, integer-primitive coefficients, canonical sign,
/// entries sorted.
pub fn reconstruct_from_d(d: &LaurentPoly, hint: Option<ClassHint>) -> Result<Reconstruction> {
    if d.is_zero() {
        return Err(Error::Inconsistent(
            "zero discriminant admits no reconstruction".into(),
        ));
    }
    let parts = squarefree_decompose(d)?;
    if !parts.square.is_one() {
        return Err(Error::Inconsistent(
            "discriminant has a repeated factor; reconstruction expects a squarefree input".into(),
        ));
    }
    let dsf = parts.squarefree.clone();
    let omega = dsf.num_terms();
    if omega < 2 {
        return Err(Error::Inconsistent(
            "discriminant support has fewer than two points; the radical classes are empty".into(),
        ));
    }

    let allow = |k: ClassHint| hint.is_none() || hint == Some(k);
    let mut raw: Vec<([LaurentPoly; 3], CandidateClass)> = Vec::new();
    let mut skipped: Vec<String> = Vec::new();

    if omega == 2 {
        if allow(ClassHint::SType) {
            split_type_table(&dsf, &mut raw, &mut skipped);
        }
    } else {
        match line_geometry(&dsf) {
            None => skipped.push(
                "support points are not collinear; no monomial configuration exists".into(),
            ),
            Some(geo) => {
                if allow(ClassHint::GTypeI) {
                    generic_type_one(&geo, &mut raw, &mut skipped);
                }
                if allow(ClassHint::GTypeII) {
                    generic_type_two(&dsf, &geo, &mut raw, &mut skipped);
                }
            }
        }
    }

    let mut candidates: Vec<ChiCandidate> = Vec::new();
    for (triple, class) in raw {
        let Some(canonical) = canonical_triple(triple) else {
            skipped.push("candidate with a vanishing entry dropped".into());
            continue;
        };
        let Some(square_factor) = verify_candidate(&canonical, &dsf) else {
            skipped.push("candidate rejected by the discriminant round trip".into());
            continue;
        };
        if !candidates.iter().any(|c| c.triple == canonical) {
            candidates.push(ChiCandidate {
                triple: canonical,
                class,
                square_factor,
            });
        }
    }
    Ok(Reconstruction {
        candidates,
        skipped,
    })
}

/// Two-point table: the four split-type rows over `d = termA + termB`.
fn split_type_table(
    dsf: &LaurentPoly,
    raw: &mut Vec<([LaurentPoly; 3], CandidateClass)>,
    skipped: &mut Vec<String>,
) {
    let mut terms: Vec<(&ExponentVector, &Rational)> = dsf.terms().collect();
    terms.sort_by(|l, r| r.0.cmp(l.0));
    let (pa, ma) = (terms[0].0.clone(), terms[0].1.clone());
    let (pb, mb) = (terms[1].0.clone(), terms[1].1.clone());
    let ta = LaurentPoly::monomial(ma.clone(), pa.clone());
    let tb = LaurentPoly::monomial(mb.clone(), pb.clone());
    let quarter = rat(1, 4);

    // Rows with a repeated quarter entry exist unconditionally; their
    // discriminant is the opposite term times d.
    raw.push((
        [ta.scale(&quarter), ta.scale(&quarter), tb.negate()],
        CandidateClass::SType { c_s: 1 },
    ));
    raw.push((
        [ta.negate(), tb.scale(&quarter), tb.scale(&quarter)],
        CandidateClass::SType { c_s: 1 },
    ));

    // Rows whose discriminant is d itself need the ratio of the two
    // terms to be a square in the Laurent lattice.
    let delta = pb.sub(&pa);
    if delta.entries().iter().any(|e| e % 2 != 0) {
        skipped.push(
            "split rows with unit discriminant skipped: the support gap is odd".into(),
        );
        return;
    }
    let ratio = &mb / &ma;
    let Some(w) = rational_sqrt(&ratio) else {
        skipped.push(
            "split rows with unit discriminant skipped: the coefficient ratio is not a rational square"
                .into(),
        );
        return;
    };
    let half_delta = ExponentVector::new(delta.entries().iter().map(|&e| e / 2).collect());
    let nvars = dsf.nvars();
    let half = rat(1, 2);
    let w_mono = LaurentPoly::monomial(w.clone(), half_delta.clone());
    raw.push((
        [
            LaurentPoly::constant(nvars, half.clone()),
            LaurentPoly::constant(nvars, -half.clone()),
            w_mono.clone(),
        ],
        CandidateClass::SType { c_s: -1 },
    ));
    raw.push((
        [
            LaurentPoly::one(nvars),
            LaurentPoly::monomial(&w * &half, half_delta.clone()),
            LaurentPoly::monomial(-(&w * &half), half_delta),
        ],
        CandidateClass::SType { c_s: -1 },
    ));
}

/// Collinear support geometry: the primitive direction, the lowest
/// support point, and the terms with their integer positions along the
/// line, sorted by descending position.
pub(crate) struct LineGeometry {
    pub f: ExponentVector,
    pub base: ExponentVector,
    /// `(coefficient, point, position)`, position strictly decreasing,
    /// last position 0.
    pub terms: Vec<(Rational, ExponentVector, i64)>,
}

/// Detects a collinear support on an integer line. Returns `None` when
/// the support is not collinear or leaves the lattice of the primitive
/// direction.
pub(crate) fn line_geometry(dsf: &LaurentPoly) -> Option<LineGeometry> {
    let mut pts: Vec<(&ExponentVector, &Rational)> = dsf.terms().collect();
    pts.sort_by(|l, r| r.0.cmp(l.0));
    let top = pts[0].0.clone();
    let base = pts[pts.len() - 1].0.clone();
    let f = primitive_direction(&top.sub(&base))?;
    let mut terms = Vec::with_capacity(pts.len());
    for (e, c) in pts {
        let s = position_on_line(&e.sub(&base), &f)?;
        if s < 0 {
            return None;
        }
        terms.push(((*c).clone(), e.clone(), s));
    }
    // Lex order along a lex-positive direction is monotone in the
    // position, so the positions are already strictly decreasing.
    Some(LineGeometry { f, base, terms })
}

/// Generic-type class I: monomial repeated factor.
fn generic_type_one(
    geo: &LineGeometry,
    raw: &mut Vec<([LaurentPoly; 3], CandidateClass)>,
    skipped: &mut Vec<String>,
) {
    let omega = geo.terms.len();
    if omega >= 4 {
        // The four extremal support points determine the triple: the
        // two cross products sit strictly inside the pure squares.
        let (m1, p1, _) = &geo.terms[0];
        let (m2, p2, _) = &geo.terms[1];
        let (mw, pw, _) = &geo.terms[omega - 2];
        let (mo, po, _) = &geo.terms[omega - 1];
        let e1 = LaurentPoly::one(geo.f.dim());
        let e2 = LaurentPoly::monomial(-(m2 / m1) * rat(1, 2), p2.sub(p1));
        let e3 = LaurentPoly::monomial((m2 * mo) / (m1 * mw), p2.add(po).sub(&p1.add(pw)));
        raw.push(([e1, e2, e3], CandidateClass::GTypeI));
        return;
    }
    // Three support points: the candidate carries a proportional pair,
    // and the middle point must be the exact midpoint.
    let (m1, p1, _) = &geo.terms[0];
    let (m2, p2, _) = &geo.terms[1];
    let (m3, p3, _) = &geo.terms[2];
    if p2.scale(2) != p1.add(p3) {
        skipped.push(
            "class I with three support points skipped: the middle point is not the midpoint"
                .into(),
        );
        return;
    }
    let rho = (m2 * m2) / (m1 * m3);
    if rho.is_negative() {
        skipped.push("class I skipped: the coefficient pattern admits no real pair ratio".into());
        return;
    }
    let Some(s) = rational_sqrt(&rho) else {
        skipped.push("class I skipped: the pair ratio is not a rational square".into());
        return;
    };
    let delta = p3.sub(p1);
    if delta.entries().iter().any(|e| e % 2 != 0) {
        skipped.push("class I skipped: the support gap is odd".into());
        return;
    }
    let half_delta = ExponentVector::new(delta.entries().iter().map(|&e| e / 2).collect());
    let nvars = geo.f.dim();
    let half = rat(1, 2);
    for w in [&s * &half, -(&s * &half)] {
        let w_plus = &w + rat_int(1);
        let w_minus = &w - rat_int(1);
        if w_plus.is_zero() || w_minus.is_zero() {
            continue;
        }
        let c = &w_minus / &w_plus;
        let one_minus = rat_int(1) - &c;
        let one_plus = rat_int(1) + &c;
        // Proportional pair sitting at the top support point.
        let r_top = -(m2 / m1) * (&one_minus * &one_minus) / (rat_int(2) * &one_plus);
        raw.push((
            [
                LaurentPoly::one(nvars),
                LaurentPoly::constant(nvars, c.clone()),
                LaurentPoly::monomial(r_top, half_delta.clone()),
            ],
            CandidateClass::GTypeI,
        ));
        // Proportional pair sitting at the bottom support point.
        let r_bot = -(m2 / m1) / (rat_int(2) * &one_plus);
        raw.push((
            [
                LaurentPoly::one(nvars),
                LaurentPoly::monomial(&c * &r_bot, half_delta.clone()),
                LaurentPoly::monomial(r_bot, half_delta.clone()),
            ],
            CandidateClass::GTypeI,
        ));
    }
}

/// Generic-type class II: binomial repeated factor.
fn generic_type_two(
    dsf: &LaurentPoly,
    geo: &LineGeometry,
    raw: &mut Vec<([LaurentPoly; 3], CandidateClass)>,
    skipped: &mut Vec<String>,
) {
    let omega = geo.terms.len();
    let span = geo.terms[0].2;
    let mut gap = span;
    for w in geo.terms.windows(2) {
        gap = gap.min(w[0].2 - w[1].2);
    }
    if span % 2 != 0 {
        skipped.push("class II skipped: the support span is odd".into());
        return;
    }
    let d1 = gap + span / 2;
    if d1 % gap != 0 {
        skipped.push("class II skipped: the degree ladder leaves the gap lattice".into());
        return;
    }
    let p = d1 / gap;
    if p < 2 {
        skipped.push("class II skipped: the degree ladder is too short".into());
        return;
    }

    if p == 2 {
        // Lowest admissible ladder: three support points with a fixed
        // coefficient pattern, emitted literally at the support.
        let (m1, p1, _) = &geo.terms[0];
        let (m2, p2, _) = &geo.terms[1];
        let (m3, p3, _) = &geo.terms[omega - 1];
        if omega != 3
            || p2.scale(2) != p1.add(p3)
            || (m2 * m2) != (m1 * m3) * rat_int(36)
        {
            skipped.push(
                "class II skipped: the three-point pattern for the shortest ladder fails".into(),
            );
            return;
        }
        raw.push((
            [
                LaurentPoly::monomial(m1.clone(), p1.clone()),
                LaurentPoly::monomial(-(m2 * rat(2, 3)), p2.clone()),
                LaurentPoly::monomial(m3.clone(), p3.clone()),
            ],
            CandidateClass::GTypeII,
        ));
        return;
    }

    // Longer ladders: the binomial factor (σ^gap − s0) is read off one
    // end of the support, and the triple is read back from the product
    // d·(σ^gap − s0)².
    let mut any = false;
    if geo.terms[0].2 - geo.terms[1].2 == gap {
        let s0 = &geo.terms[1].0 / (&geo.terms[0].0 * rat_int(2));
        any = true;
        emit_long_ladder(dsf, geo, gap, p, 1, &s0, raw, skipped);
    }
    if geo.terms[omega - 2].2 == gap {
        let s0 = (&geo.terms[omega - 1].0 * rat_int(2)) / &geo.terms[omega - 2].0;
        any = true;
        emit_long_ladder(dsf, geo, gap, p, p - 1, &s0, raw, skipped);
    }
    if !any {
        skipped.push(
            "class II skipped: neither end of the support exposes the binomial factor".into(),
        );
    }
}

/// Emits one long-ladder class II candidate: multiply `d` by the
/// squared binomial, then read the three products off fixed positions
/// of the result.
#[allow(clippy::too_many_arguments)]
fn emit_long_ladder(
    dsf: &LaurentPoly,
    geo: &LineGeometry,
    gap: i64,
    p: i64,
    d2_steps: i64,
    s0: &Rational,
    raw: &mut Vec<([LaurentPoly; 3], CandidateClass)>,
    skipped: &mut Vec<String>,
) {
    let nvars = geo.f.dim();
    if s0.is_zero() {
        skipped.push("class II ladder skipped: degenerate binomial factor".into());
        return;
    }
    let sigma = LaurentPoly::monomial(rat_int(1), geo.f.scale(gap));
    let lin = sigma.sub(&LaurentPoly::constant(nvars, s0.clone()));
    let product = dsf.mul(&lin).mul(&lin);
    let coeff_at = |steps: i64| -> Rational {
        product.coeff(&geo.base.add(&geo.f.scale(steps * gap)))
    };
    let leading = geo.terms[0].0.clone();
    let cross_high = coeff_at(p + d2_steps);
    let cross_low = coeff_at(p);
    if cross_high.is_zero() || cross_low.is_zero() {
        skipped.push("class II ladder skipped: a required cross product vanishes".into());
        return;
    }
    let half = rat(1, 2);
    raw.push((
        [
            LaurentPoly::monomial(leading, geo.f.scale(p * gap)),
            LaurentPoly::monomial(-(&cross_high * &half), geo.f.scale(d2_steps * gap)),
            LaurentPoly::monomial(-(&cross_low * &half), ExponentVector::zero(nvars)),
        ],
        CandidateClass::GTypeII,
    ));
}

/// Deterministic total order on Laurent polynomials: compare descending
/// term lists, exponents first.
fn cmp_poly(a: &LaurentPoly, b: &LaurentPoly) -> Ordering {
    let mut at: Vec<(&ExponentVector, &Rational)> = a.terms().collect();
    let mut bt: Vec<(&ExponentVector, &Rational)> = b.terms().collect();
    at.sort_by(|l, r| r.0.cmp(l.0));
    bt.sort_by(|l, r| r.0.cmp(l.0));
    for (l, r) in at.iter().zip(bt.iter()) {
        match l.0.cmp(r.0).then_with(|| l.1.cmp(r.1)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    at.len().cmp(&bt.len())
}

/// Canonical multiset representative of a triple with nonzero entries:
/// ground shifted away, coefficients scaled integer-primitive, sign
/// fixed, entries sorted. Returns `None` when an entry vanishes.
fn canonical_triple(triple: [LaurentPoly; 3]) -> Option<[LaurentPoly; 3]> {
    if triple.iter().any(LaurentPoly::is_zero) {
        return None;
    }
    let ground = crate::laurent::ground_monomial(&triple).ok()?;
    let shift = ground.neg();
    let one = rat_int(1);
    let mut shifted: Vec<LaurentPoly> = triple
        .iter()
        .map(|p| p.mul_monomial(&one, &shift))
        .collect();
    // Scale all coefficients to a primitive integer family.
    let mut den_lcm = Integer::from(1);
    let mut num_gcd = Integer::from(0);
    for p in &shifted {
        for (_, c) in p.terms() {
            den_lcm = num_integer::lcm(den_lcm.clone(), c.denom().clone());
            num_gcd = num_integer::gcd(num_gcd.clone(), c.numer().abs());
        }
    }
    if num_gcd.is_zero() {
        return None;
    }
    let scale = Rational::new(den_lcm, num_gcd);
    for p in shifted.iter_mut() {
        *p = p.scale(&scale);
    }
    let sort_key = |v: &mut Vec<LaurentPoly>| v.sort_by(cmp_poly);
    let mut direct = shifted.clone();
    sort_key(&mut direct);
    let mut negated: Vec<LaurentPoly> = shifted.iter().map(LaurentPoly::negate).collect();
    sort_key(&mut negated);
    let pick = |l: &Vec<LaurentPoly>, r: &Vec<LaurentPoly>| -> Ordering {
        for (a, b) in l.iter().zip(r.iter()) {
            match cmp_poly(a, b) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    };
    let chosen = if pick(&direct, &negated) == Ordering::Less {
        negated
    } else {
        direct
    };
    let mut it = chosen.into_iter();
    Some([it.next()?, it.next()?, it.next()?])
}

/// Round trip: the discriminant of the candidate must decompose as
/// square² times exactly the target squarefree part.
fn verify_candidate(triple: &[LaurentPoly; 3], dsf: &LaurentPoly) -> Option<LaurentPoly> {
    let b = b_poly(&triple[0], &triple[1], &triple[2]);
    if b.is_zero() {
        return None;
    }
    let parts = squarefree_decompose(&b).ok()?;
    if parts.squarefree == *dsf {
        Some(parts.square)
    } else {
        None
    }
}
