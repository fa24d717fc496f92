//! Cross-ratio terms of a determinantal term family and the quadratic
//! algebra that governs them.
//!
//! For a basis subset `I`, outgoing indices `i, j ∈ I` and incoming
//! indices `a, b ∉ I`, the cross-ratio `Y(I)^{ij}_{ab}` of right-factor
//! minors controls how a term map extends from single to double
//! exchanges. Every observable exchange triple `χ = (central, direct,
//! crossed)` yields a quadratic `F(X) = crossed·X² − A·X + direct` whose
//! two roots are the cross-ratios of the two matrix factors; the
//! discriminant `B = A² − 4·direct·crossed` and its squarefree part `D`
//! drive everything else in this module:
//!
//! * [`ab_terms`] — classification of the radical behaviour of the
//!   roots from `(A, B, Q, D)`;
//! * [`y_roots`], [`y_from_matrix`] — the roots from a triple, and the
//!   cross-ratio directly from a matrix;
//! * [`transform_y`], [`check_identities`] — local moves between
//!   contexts and the multiplicative chain identities;
//! * [`resonance_check`] — the exact rational criterion for a repeated
//!   factor of `B` on monomial configurations;
//! * [`reconstruct_from_d`] — enumeration of the monomial
//!   configurations compatible with a given squarefree `D`;
//! * [`disambiguate_roots`] — global selection of one root per context,
//!   consistent under all chain identities.

mod reconstruct;
mod roots;

pub use reconstruct::{
    reconstruct_from_d, CandidateClass, ChiCandidate, ClassHint, Reconstruction,
};
pub use roots::{disambiguate_roots, RootAssignment, SeedBranch};

use crate::error::{Error, Result};
use crate::exactmat::{ExactMatrix, SubsetIndex};
use crate::expansion::ChiTriple;
use crate::laurent::{
    ground_monomial, rat, rat_int, rational_pow, squarefree_decompose, ExponentVector,
    LaurentPoly, QuadExtScalar, Rational, RationalFunction,
};

/// Sign `c₁·c₂` attached to the cross-ratio at indices `(i, j | a, b)`:
/// `−sign[(i−a)·(i−b)·(j−a)·(j−b)]`. Equals −1 whenever `i = j` or
/// `a = b`; the degenerate cross-ratio value is then −1 as well.
pub fn cross_ratio_sign(i: usize, j: usize, a: usize, b: usize) -> i64 {
    let (i, j, a, b) = (i as i64, j as i64, a as i64, b as i64);
    -((i - a) * (i - b) * (j - a) * (j - b)).signum()
}

/// Location of one cross-ratio: the base subset, the ordered outgoing
/// pair drawn from the base and the ordered incoming pair from its
/// complement.
///
/// The pairs are ordered: swapping either pair inverts the value, so two
/// contexts that differ by one swap address reciprocal quantities. The
/// sign `c₁·c₂` is a function of the four indices, exposed by
/// [`YContext::sign`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct YContext {
    pub base: SubsetIndex,
    pub outgoing: (usize, usize),
    pub incoming: (usize, usize),
}

impl YContext {
    /// Builds a context, checking that the outgoing indices lie in the
    /// base and the incoming indices outside it. Repeated indices within
    /// a pair are allowed and address the degenerate value −1.
    pub fn new(
        base: SubsetIndex,
        outgoing: (usize, usize),
        incoming: (usize, usize),
    ) -> Result<Self> {
        for o in [outgoing.0, outgoing.1] {
            if !base.contains(o) {
                return Err(Error::IndexError(format!(
                    "outgoing index {} must lie in {base}",
                    o + 1
                )));
            }
        }
        for i in [incoming.0, incoming.1] {
            if base.contains(i) {
                return Err(Error::IndexError(format!(
                    "incoming index {} must avoid {base}",
                    i + 1
                )));
            }
        }
        Ok(YContext {
            base,
            outgoing,
            incoming,
        })
    }

    /// The sign `c₁·c₂` of this context.
    pub fn sign(&self) -> i64 {
        cross_ratio_sign(
            self.outgoing.0,
            self.outgoing.1,
            self.incoming.0,
            self.incoming.1,
        )
    }

    /// True when an index repeats within a pair; the value at such a
    /// context is identically −1.
    pub fn is_degenerate(&self) -> bool {
        self.outgoing.0 == self.outgoing.1 || self.incoming.0 == self.incoming.1
    }
}

/// One cross-ratio value, optionally tagged with the context it was
/// computed at.
///
/// Invariant on genuine families: the value is a root of the context's
/// quadratic `F`, and it differs from −1 whenever all four context
/// indices are distinct.
#[derive(Clone, Debug)]
pub struct YTerm {
    pub value: QuadExtScalar,
    pub context: Option<YContext>,
}

impl YTerm {
    /// The sign `c₁·c₂` of the attached context, if any.
    pub fn sign(&self) -> Option<i64> {
        self.context.as_ref().map(YContext::sign)
    }

    /// False exactly when the value is −1 at a context with four
    /// distinct indices. Context-free terms are vacuously admissible.
    pub fn is_admissible(&self) -> bool {
        match &self.context {
            None => true,
            Some(ctx) => {
                if ctx.is_degenerate() {
                    true
                } else {
                    !self
                        .value
                        .add(&QuadExtScalar::one(self.value.nvars()))
                        .is_zero()
                }
            }
        }
    }
}

/// Discriminant data of one exchange triple, together with the
/// classification of its root behaviour.
///
/// `b = a² − 4·direct·crossed` and `b = q²·d` with `d` squarefree, both
/// exact. `ground` is the monic componentwise-minimal monomial of the
/// nonzero triple entries; dividing the triple by it normalizes monomial
/// configurations without changing `d` beyond a unit.
#[derive(Clone, Debug)]
pub struct ABData {
    /// Linear coefficient `central − direct − crossed` of the quadratic.
    pub a: LaurentPoly,
    /// Discriminant of the quadratic.
    pub b: LaurentPoly,
    /// Monic ground monomial of the nonzero triple entries.
    pub ground: ExponentVector,
    /// Repeated factor: `b = q²·d`.
    pub q: LaurentPoly,
    /// Squarefree part of `b`, unit included.
    pub d: LaurentPoly,
    /// Root behaviour implied by `d` and the roots themselves.
    pub classification: Classification,
    /// Present for generic-type class II monomial configurations.
    pub resonance: Option<ResonanceData>,
}

/// Root behaviour of the quadratic attached to an exchange triple.
///
/// When `d` has at most one support point the roots stay inside a
/// constant extension of the scalar field and are classified by
/// constancy; otherwise they are genuinely radical and the support size
/// of `d` separates the split type (two points) from the generic type
/// (more), the latter subdivided by whether the repeated factor `q` is a
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Both roots are constants (possibly in a constant extension).
    ConstantY,
    /// The roots are non-constant but stay rational over the working
    /// field; no new non-constant radical appears.
    RationalY,
    /// The roots generate a non-constant quadratic extension.
    Radical(RadicalKind),
}

/// Subdivision of the radical case by the squarefree part `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalKind {
    /// `d` has exactly two support points.
    SType,
    /// `d` has more than two support points and `q` is a monomial.
    GTypeI,
    /// `d` has more than two support points and `q` is not a monomial.
    /// On genuine monomial configurations `q` is then a binomial and
    /// [`ABData::resonance`] is populated.
    GTypeII,
}

/// Resonance parameters of a generic-type class II monomial
/// configuration: the degree ratio `ρ = d₂/d₁` along the support line,
/// its reduced form `ρ₀ = gcd(d₁,d₂)/d₁`, and the monomial unit `r` with
/// `q ∝ r − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceData {
    pub rho: Rational,
    pub rho0: Rational,
    pub r_unit: LaurentPoly,
}

/// The symmetric discriminant function `(x − y − z)² − 4yz`. It is
/// invariant under every permutation of its three arguments and under a
/// global sign flip.
pub fn b_function(x: &QuadExtScalar, y: &QuadExtScalar, z: &QuadExtScalar) -> QuadExtScalar {
    let lin = x.sub(y).sub(z);
    lin.square().sub(&y.mul(z).scale(&rat_int(4)))
}

/// Polynomial form of [`b_function`].
pub(crate) fn b_poly(x: &LaurentPoly, y: &LaurentPoly, z: &LaurentPoly) -> LaurentPoly {
    let lin = x.sub(y).sub(z);
    lin.mul(&lin).sub(&y.mul(z).scale(&rat_int(4)))
}

fn value_as_poly(v: &QuadExtScalar, what: &str) -> Result<LaurentPoly> {
    if v.is_zero() {
        return Ok(LaurentPoly::zero(v.nvars()));
    }
    if !v.rad_part().is_zero() {
        return Err(Error::Inconsistent(format!(
            "{what} has a radical part; discriminant classification works over polynomial triples"
        )));
    }
    match v.rat_part().as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::Inconsistent(format!(
            "{what} has a nontrivial denominator; discriminant classification works over polynomial triples"
        ))),
    }
}

/// Computes the discriminant data and classification of an observable
/// exchange triple with polynomial entries.
///
/// The classification depends only on the unit class of the triple:
/// scaling by a monomial unit shifts `ground` and leaves `d` unchanged
/// up to a unit.
pub fn ab_terms(chi: &ChiTriple) -> Result<ABData> {
    if !chi.is_observable() {
        return Err(Error::Inconsistent(
            "exchange triple vanishes identically; nothing to classify".into(),
        ));
    }
    let central = value_as_poly(&chi.central, "central product")?;
    let direct = value_as_poly(&chi.split_direct, "direct split product")?;
    let crossed = value_as_poly(&chi.split_crossed, "crossed split product")?;
    let nvars = central.nvars();

    let a = central.sub(&direct).sub(&crossed);
    let b = b_poly(&central, &direct, &crossed);
    let nonzero: Vec<LaurentPoly> = [&central, &direct, &crossed]
        .into_iter()
        .filter(|p| !p.is_zero())
        .cloned()
        .collect();
    let ground = ground_monomial(&nonzero)?;

    if b.is_zero() {
        // Double root a/(2·crossed), or no finite root at all when the
        // quadratic degenerates to a nonzero constant.
        if crossed.is_zero() {
            return Err(Error::Inconsistent(
                "quadratic degenerates to a nonzero constant; the triple admits no value".into(),
            ));
        }
        let classification = if RationalFunction::new(a.clone(), crossed.clone())?.is_constant() {
            Classification::ConstantY
        } else {
            Classification::RationalY
        };
        return Ok(ABData {
            a,
            b,
            ground,
            q: LaurentPoly::zero(nvars),
            d: LaurentPoly::one(nvars),
            classification,
            resonance: None,
        });
    }

    let parts = squarefree_decompose(&b)?;
    let q = parts.square.clone();
    let d = parts
        .squarefree
        .mul_monomial(&parts.unit_coeff, &parts.unit_exp);
    let omega = d.num_terms();

    let mut resonance = None;
    let classification = if omega <= 1 {
        // Monomial squarefree part: the radical is a constant or a
        // monomial, so the roots live in a constant extension and only
        // their constancy matters.
        if crossed.is_zero() {
            // b = a² is a perfect square; the quadratic is linear with
            // root direct/a.
            if RationalFunction::new(direct.clone(), a.clone())?.is_constant() {
                Classification::ConstantY
            } else {
                Classification::RationalY
            }
        } else {
            let linear = RationalFunction::new(a.clone(), crossed.clone())?;
            let radical = RationalFunction::new(
                q.mul(&q).mul(&d),
                crossed.mul(&crossed),
            )?;
            if linear.is_constant() && radical.is_constant() {
                Classification::ConstantY
            } else {
                Classification::RationalY
            }
        }
    } else if omega == 2 {
        Classification::Radical(RadicalKind::SType)
    } else if q.is_monomial() {
        Classification::Radical(RadicalKind::GTypeI)
    } else {
        resonance = resonance_data(&central, &direct, &crossed, &q);
        Classification::Radical(RadicalKind::GTypeII)
    };

    Ok(ABData {
        a,
        b,
        ground,
        q,
        d,
        classification,
        resonance,
    })
}

/// Resonance parameters of a monomial triple whose repeated factor is a
/// binomial. Returns `None` when the triple is not a collinear monomial
/// configuration or the exact resonance criterion fails.
fn resonance_data(
    central: &LaurentPoly,
    direct: &LaurentPoly,
    crossed: &LaurentPoly,
    q: &LaurentPoly,
) -> Option<ResonanceData> {
    if q.num_terms() != 2 {
        return None;
    }
    let monos: Vec<(Rational, ExponentVector)> = [central, direct, crossed]
        .into_iter()
        .map(LaurentPoly::as_monomial)
        .collect::<Option<Vec<_>>>()?;
    // Order the three monomials by position along their common support
    // line; distinct positions are required for a strict degree ladder.
    let mut pts: Vec<&(Rational, ExponentVector)> = monos.iter().collect();
    pts.sort_by(|l, r| r.1.cmp(&l.1));
    if pts[0].1 == pts[1].1 || pts[1].1 == pts[2].1 {
        return None;
    }
    let dir = pts[0].1.sub(&pts[2].1);
    let f = primitive_direction(&dir)?;
    let d1 = position_on_line(&pts[0].1.sub(&pts[2].1), &f)?;
    let d2 = position_on_line(&pts[1].1.sub(&pts[2].1), &f)?;
    if d1 <= d2 || d2 <= 0 {
        return None;
    }
    let e1 = LaurentPoly::monomial(pts[0].0.clone(), pts[0].1.clone());
    let e2 = LaurentPoly::monomial(pts[1].0.clone(), pts[1].1.clone());
    let e3 = LaurentPoly::monomial(pts[2].0.clone(), pts[2].1.clone());
    match resonance_check(&e1, &e2, &e3, d1, d2) {
        Ok(true) => {}
        _ => return None,
    }
    let g = num_integer::gcd(d1, d2);
    let rho = rat(d2, d1);
    let rho0 = rat(g, d1);
    // q has two terms; the unit r with q ∝ r − 1 is minus the ratio of
    // its leading term over its trailing term.
    let mut qt: Vec<(&ExponentVector, &Rational)> = q.terms().collect();
    qt.sort_by(|l, r| r.0.cmp(l.0));
    let r_unit = LaurentPoly::monomial(-(qt[0].1 / qt[1].1), qt[0].0.sub(qt[1].0));
    Some(ResonanceData { rho, rho0, r_unit })
}

/// Primitive integer vector along `dir`, or `None` for the zero vector.
pub(crate) fn primitive_direction(dir: &ExponentVector) -> Option<ExponentVector> {
    let mut g: i64 = 0;
    for &e in dir.entries() {
        g = num_integer::gcd(g, e.abs());
    }
    if g == 0 {
        return None;
    }
    Some(ExponentVector::new(
        dir.entries().iter().map(|&e| e / g).collect(),
    ))
}

/// Integer `s` with `delta = s·f`, or `None` when `delta` is off the
/// line through the origin spanned by `f`.
pub(crate) fn position_on_line(delta: &ExponentVector, f: &ExponentVector) -> Option<i64> {
    let idx = f.entries().iter().position(|&e| e != 0)?;
    let fe = f.get(idx);
    let de = delta.get(idx);
    if de % fe != 0 {
        return None;
    }
    let s = de / fe;
    if *delta == f.scale(s) {
        Some(s)
    } else {
        None
    }
}

/// Exact criterion for the discriminant of a monomial degree ladder
/// `(E₁, E₂, E₃)` with strictly decreasing positions `d₁ > d₂ > 0 = d₃`
/// to acquire a repeated factor: the monomial ratio
/// `E₂^{d₁} / (E₃^{d₁−d₂}·E₁^{d₂})` must equal the rational constant
/// `((d₁−d₂)/d₁)^{−2(d₁−d₂)} · (d₂/d₁)^{−2d₂}`.
pub fn resonance_check(
    e1: &LaurentPoly,
    e2: &LaurentPoly,
    e3: &LaurentPoly,
    d1: i64,
    d2: i64,
) -> Result<bool> {
    if !(d1 > d2 && d2 > 0) {
        return Err(Error::IndexError(
            "degree parameters must satisfy d1 > d2 > 0".into(),
        ));
    }
    let (c1, p1) = e1
        .as_monomial()
        .ok_or_else(|| Error::Inconsistent("resonance test needs monomial arguments".into()))?;
    let (c2, p2) = e2
        .as_monomial()
        .ok_or_else(|| Error::Inconsistent("resonance test needs monomial arguments".into()))?;
    let (c3, p3) = e3
        .as_monomial()
        .ok_or_else(|| Error::Inconsistent("resonance test needs monomial arguments".into()))?;
    // The exponents must cancel exactly for the ratio to be a constant.
    if p2.scale(d1) != p3.scale(d1 - d2).add(&p1.scale(d2)) {
        return Ok(false);
    }
    let lhs = rational_pow(&c2, d1) * rational_pow(&c3, -(d1 - d2)) * rational_pow(&c1, -d2);
    let rhs = rational_pow(&rat(d1 - d2, d1), -2 * (d1 - d2)) * rational_pow(&rat(d2, d1), -2 * d2);
    Ok(lhs == rhs)
}

/// Exact square root of a rational function, when one exists over the
/// rationals. A reduced quotient is a square exactly when numerator and
/// denominator are separately squares in the Laurent ring.
fn ratfun_sqrt_exact(f: &RationalFunction) -> Option<RationalFunction> {
    if f.is_zero() {
        return Some(f.clone());
    }
    let num = f.num().sqrt_exact()?;
    let den = f.den().sqrt_exact()?;
    Some(RationalFunction::from_reduced(num, den).expect("root of a nonzero denominator"))
}

/// Square root of a scalar, kept inside the working field: the
/// rationals extended by at most the declared discriminant.
///
/// With `strict` set, a root that would need a new extension is an
/// error; otherwise a rational input may adopt its own canonical
/// discriminant. A root of a genuinely radical input is searched inside
/// the input's own extension, never outside it.
pub(crate) fn sqrt_in_field(
    b: &QuadExtScalar,
    field_disc: Option<&LaurentPoly>,
    strict: bool,
) -> Result<QuadExtScalar> {
    let nvars = b.nvars();
    if b.is_zero() {
        return Ok(QuadExtScalar::zero(nvars));
    }
    if b.rad_part().is_zero() {
        let f = b.rat_part();
        if let Some(r) = ratfun_sqrt_exact(f) {
            return Ok(QuadExtScalar::from_ratfun(r));
        }
        if let Some(dd) = field_disc {
            // Try a pure radical representative s·√disc inside the
            // declared extension.
            let quotient = f.div(&RationalFunction::from_poly(dd.clone()))?;
            if let Some(s) = ratfun_sqrt_exact(&quotient) {
                return QuadExtScalar::with_parts(
                    RationalFunction::zero(nvars),
                    s,
                    Some(dd.clone()),
                );
            }
            return Err(Error::NeedsComplexPhases(
                "square root lies outside the working quadratic extension".into(),
            ));
        }
        if strict {
            return Err(Error::Inconsistent(
                "square root lies outside the base field".into(),
            ));
        }
        return QuadExtScalar::sqrt_of_ratfun(f);
    }
    // Genuinely radical input x + y·√disc: solve (u + v·√disc)² = input
    // inside the same extension. The norm must be a rational square.
    let dd = b
        .disc()
        .expect("radical part present implies a discriminant")
        .clone();
    if let Some(fd) = field_disc {
        if *fd != dd {
            return Err(Error::MixedDiscriminant(fd.to_string(), dd.to_string()));
        }
    }
    let norm = b.norm();
    let Some(nu) = ratfun_sqrt_exact(&norm) else {
        return Err(Error::NeedsComplexPhases(
            "square root needs a second quadratic extension".into(),
        ));
    };
    let half = rat(1, 2);
    for signed in [nu.clone(), nu.negate()] {
        let usq = b.rat_part().add(&signed).scale(&half);
        let Some(u) = ratfun_sqrt_exact(&usq) else {
            continue;
        };
        if u.is_zero() {
            continue;
        }
        let v = b.rad_part().div(&u.scale(&rat_int(2)))?;
        let cand = QuadExtScalar::with_parts(u, v, Some(dd.clone()))?;
        if cand.square().sub(b).is_zero() {
            return Ok(cand);
        }
    }
    Err(Error::NeedsComplexPhases(
        "square root needs a second quadratic extension".into(),
    ))
}

/// First declared discriminant among the triple entries, if any.
fn chi_field_disc(chi: &ChiTriple) -> Option<LaurentPoly> {
    chi.values().into_iter().find_map(|v| v.disc().cloned())
}

/// The two roots of the quadratic of an exchange triple, searched
/// inside the working field described by `field`.
///
/// With `strict` set, roots are required to exist inside that field; a
/// discriminant that is not a square there is an error. Otherwise a
/// rational triple may produce roots in a fresh quadratic extension.
pub(crate) fn quad_roots(
    chi: &ChiTriple,
    field: Option<&LaurentPoly>,
    strict: bool,
) -> Result<(QuadExtScalar, QuadExtScalar)> {
    if !chi.is_observable() {
        return Err(Error::Inconsistent(
            "exchange triple vanishes identically; the quadratic has no content".into(),
        ));
    }
    let central = &chi.central;
    let direct = &chi.split_direct;
    let crossed = &chi.split_crossed;
    let a = central.sub(direct).sub(crossed);
    if crossed.is_zero() {
        if a.is_zero() {
            return Err(Error::Inconsistent(
                "quadratic degenerates to a nonzero constant; no finite root exists".into(),
            ));
        }
        let root = direct.div(&a)?;
        return Ok((root.clone(), root));
    }
    let b = b_function(central, direct, crossed);
    let s = sqrt_in_field(&b, field, strict)?;
    let inv2x = crossed.scale(&rat_int(2)).inverse()?;
    let plus = a.add(&s).mul(&inv2x);
    let minus = a.sub(&s).mul(&inv2x);
    Ok((plus, minus))
}

/// The two roots of `F(X) = crossed·X² − A·X + direct` for an observable
/// exchange triple, with the canonical square-root branch listed first.
///
/// By Vieta the product of the two roots is `direct/crossed` and their
/// sum is `A/crossed`. When `crossed = 0` the quadratic is linear and
/// its unique root is returned twice.
pub fn y_roots(chi: &ChiTriple) -> Result<(YTerm, YTerm)> {
    let field = chi_field_disc(chi);
    let (plus, minus) = quad_roots(chi, field.as_ref(), false)?;
    Ok((
        YTerm {
            value: plus,
            context: None,
        },
        YTerm {
            value: minus,
            context: None,
        },
    ))
}

/// Cross-ratio of right-factor minors at a context:
/// `c₁c₂ · Δ(I_a^i)·Δ(I_b^j) / (Δ(I_b^i)·Δ(I_a^j))` where `I_a^i`
/// replaces `i` by `a` in the base and minors are row minors of the
/// `n×k` matrix `r`.
///
/// The two denominator minors must be nonzero; vanishing numerator
/// minors are allowed and produce the value 0.
pub fn y_from_matrix(
    r: &ExactMatrix,
    base: &SubsetIndex,
    i: usize,
    j: usize,
    a: usize,
    b: usize,
) -> Result<YTerm> {
    let n = r.rows();
    let k = r.cols();
    if base.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "base {base} has {} elements, matrix has {k} columns",
            base.len()
        )));
    }
    for x in [i, j, a, b] {
        if x >= n {
            return Err(Error::IndexError(format!(
                "index {} outside the ground set of size {n}",
                x + 1
            )));
        }
    }
    let context = YContext::new(*base, (i, j), (a, b))?;
    let num1 = r.row_minor(&base.swap(i, a)?)?;
    let num2 = r.row_minor(&base.swap(j, b)?)?;
    let den1 = r.row_minor(&base.swap(i, b)?)?;
    let den2 = r.row_minor(&base.swap(j, a)?)?;
    if den1.is_zero() || den2.is_zero() {
        return Err(Error::SingularPivot(format!(
            "denominator minor of the cross-ratio at {base} vanishes; the matrix is not generic at this window"
        )));
    }
    let value = num1
        .mul(&num2)
        .div(&den1.mul(&den2))?
        .scale(&rat_int(context.sign()));
    Ok(YTerm {
        value,
        context: Some(context),
    })
}

/// Local moves on cross-ratio terms.
///
/// * `Invert` swaps the incoming pair and inverts the value.
/// * `Vertical` moves the first outgoing index out and the first
///   incoming index in, sending the value to `−1 − Y`.
/// * `Diagonal` is the composition invert ∘ vertical ∘ invert, sending
///   the value to `−Y/(1 + Y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YTransform {
    Invert,
    Vertical,
    Diagonal,
}

/// Applies a local move. On genuine matrices the transformed term
/// equals [`y_from_matrix`] at the transformed context.
///
/// `Invert` requires a nonzero value; `Diagonal` requires a value
/// outside `{0, −1}`. Context-free terms transform by value alone.
pub fn transform_y(y: &YTerm, op: YTransform) -> Result<YTerm> {
    let one = QuadExtScalar::one(y.value.nvars());
    match op {
        YTransform::Invert => {
            let value = y.value.inverse().map_err(|_| {
                Error::DivisionByZero("cannot invert a vanishing cross-ratio".into())
            })?;
            let context = match &y.context {
                None => None,
                Some(ctx) => Some(YContext::new(
                    ctx.base,
                    ctx.outgoing,
                    (ctx.incoming.1, ctx.incoming.0),
                )?),
            };
            Ok(YTerm { value, context })
        }
        YTransform::Vertical => {
            let value = y.value.add(&one).negate();
            let context = match &y.context {
                None => None,
                Some(ctx) => {
                    let (i, j) = ctx.outgoing;
                    let (a, b) = ctx.incoming;
                    let base = ctx.base.swap(i, a)?;
                    Some(YContext::new(base, (a, j), (i, b))?)
                }
            };
            Ok(YTerm { value, context })
        }
        YTransform::Diagonal => {
            let denom = y.value.add(&one);
            if y.value.is_zero() || denom.is_zero() {
                return Err(Error::DivisionByZero(
                    "diagonal move is undefined at values 0 and -1".into(),
                ));
            }
            let value = y.value.negate().div(&denom)?;
            let context = match &y.context {
                None => None,
                Some(ctx) => {
                    let (i, j) = ctx.outgoing;
                    let (a, b) = ctx.incoming;
                    let base = ctx.base.swap(i, b)?;
                    Some(YContext::new(base, (b, j), (a, i))?)
                }
            };
            Ok(YTerm { value, context })
        }
    }
}

/// Which multiplicative chain identity a residual belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    /// `Y^{ij}_{ab}·Y^{ij}_{bc} + Y^{ij}_{ac}` over a chain of incoming
    /// indices.
    IncomingChain,
    /// `Y^{im}_{ab}·Y^{mj}_{ab} + Y^{ij}_{ab}` over a chain of outgoing
    /// indices.
    OutgoingChain,
    /// The four-factor decomposition through an intermediate outgoing
    /// and an intermediate incoming index.
    Quadrilateral,
}

/// Exact residuals of the chain identities at one window.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub residuals: Vec<(IdentityKind, QuadExtScalar)>,
}

impl IdentityReport {
    /// True when every residual vanishes exactly.
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

/// Evaluates the chain identities on the matrix `r` at base `base`, for
/// the outgoing triple `(u₁, u₂, u₃)` and incoming triple `(l₁, l₂,
/// l₃)`. Repeated indices inside a triple are allowed; the degenerate
/// value −1 then closes the chains. All residuals are exact.
pub fn check_identities(
    r: &ExactMatrix,
    base: &SubsetIndex,
    outgoing: (usize, usize, usize),
    incoming: (usize, usize, usize),
) -> Result<IdentityReport> {
    let (u1, u2, u3) = outgoing;
    let (l1, l2, l3) = incoming;
    let y = |i: usize, j: usize, a: usize, b: usize| -> Result<QuadExtScalar> {
        Ok(y_from_matrix(r, base, i, j, a, b)?.value)
    };

    let y13_12 = y(u1, u3, l1, l2)?;
    let y13_23 = y(u1, u3, l2, l3)?;
    let y13_13 = y(u1, u3, l1, l3)?;
    let incoming_chain = y13_12.mul(&y13_23).add(&y13_13);

    let y12_13 = y(u1, u2, l1, l3)?;
    let y23_13 = y(u2, u3, l1, l3)?;
    let outgoing_chain = y12_13.mul(&y23_13).add(&y13_13);

    let y12_12 = y(u1, u2, l1, l2)?;
    let y23_12 = y(u2, u3, l1, l2)?;
    let y12_23 = y(u1, u2, l2, l3)?;
    let y23_23 = y(u2, u3, l2, l3)?;
    let quadrilateral = y13_13.add(
        &y12_12.mul(&y23_12).mul(&y12_23).mul(&y23_23),
    );

    Ok(IdentityReport {
        residuals: vec![
            (IdentityKind::IncomingChain, incoming_chain),
            (IdentityKind::OutgoingChain, outgoing_chain),
            (IdentityKind::Quadrilateral, quadrilateral),
        ],
    })
}
