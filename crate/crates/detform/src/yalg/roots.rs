//! Global selection of one cross-ratio root per context.
//!
//! Every observable exchange triple of a term family pins its
//! cross-ratio down to the two roots of a quadratic. Locally the two
//! roots are interchangeable; globally the chain identities couple the
//! choices across contexts. This module picks a root at one seed
//! context and transports the choice everywhere through the incoming
//! chains, the outgoing chains and the vertical moves between bases,
//! verifying every relation on the way. Contexts whose quadratic
//! degenerates have at most one admissible root and are assigned up
//! front; a family that forces an inadmissible value, or contradicts
//! one of the identities, is rejected.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::expansion::{chi_triple, ChiTriple, TermMap};
use crate::laurent::{rat_int, LaurentPoly, QuadExtScalar};
use crate::matroid::Matroid;

use super::{b_function, quad_roots, YContext};

/// Which root is adopted at the seed context: `Plus` takes the root on
/// the canonical square-root branch, `Minus` the other one. The two
/// branches correspond to reading the cross-ratios off the two matrix
/// factors of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedBranch {
    Plus,
    Minus,
}

/// Outcome of the propagation: one value per observable context.
///
/// `ambiguous` lists the contexts whose quadratic had two admissible
/// roots; their entries in `roots` were determined by the seed choice
/// through the chain identities. `seed` is the context where the branch
/// was applied, absent when every context was forced.
#[derive(Clone, Debug)]
pub struct RootAssignment {
    pub seed: Option<YContext>,
    pub branch: SeedBranch,
    pub roots: BTreeMap<YContext, QuadExtScalar>,
    pub ambiguous: BTreeSet<YContext>,
}

struct CtxInfo {
    roots: (QuadExtScalar, QuadExtScalar),
    ambiguous: bool,
}

struct PropState {
    ctxs: BTreeMap<YContext, CtxInfo>,
    assigned: BTreeMap<YContext, QuadExtScalar>,
    queue: VecDeque<YContext>,
}

/// Assigns one cross-ratio root to every observable context of the term
/// family, consistently under the chain identities.
///
/// `matroid` must equal the support matroid of `h`. Roots are taken
/// strictly inside the field of the family: a discriminant that is not
/// a square there means the family is not a product of minor families
/// and is rejected. The same holds for a forced value 0 or −1 at
/// distinct indices, a propagated value that is not a local root, and
/// any violated chain relation.
pub fn disambiguate_roots(
    h: &TermMap,
    matroid: &Matroid,
    branch: SeedBranch,
) -> Result<RootAssignment> {
    let support = h.support_matroid()?;
    if support.n() != matroid.n()
        || support.k() != matroid.k()
        || support.num_bases() != matroid.num_bases()
        || !support.bases().all(|b| matroid.is_basis(b))
    {
        return Err(Error::Inconsistent(
            "matroid does not match the support of the term family".into(),
        ));
    }
    let n = h.n();

    let mut state = PropState {
        ctxs: BTreeMap::new(),
        assigned: BTreeMap::new(),
        queue: VecDeque::new(),
    };
    let mut ambiguous = BTreeSet::new();

    for base in matroid.bases() {
        let members = base.members();
        let comp = base.complement(n).members();
        for (ii, &i) in members.iter().enumerate() {
            for &j in &members[ii + 1..] {
                for (ai, &a) in comp.iter().enumerate() {
                    for &b in &comp[ai + 1..] {
                        let chi = chi_triple(h, base, i, j, a, b)?;
                        if !chi.is_observable() {
                            continue;
                        }
                        let ctx = YContext::new(*base, (i, j), (a, b))?;
                        let (info, forced) = analyze_context(&chi, h.disc())?;
                        if info.ambiguous {
                            ambiguous.insert(ctx);
                        }
                        state.ctxs.insert(ctx, info);
                        if let Some(v) = forced {
                            state.assigned.insert(ctx, v);
                            state.queue.push_back(ctx);
                        }
                    }
                }
            }
        }
    }

    // Transport everything the forced contexts determine, then apply
    // the branch at the lex-least still-open ambiguous context and
    // transport again.
    drain(&mut state, matroid, n)?;
    let mut seed = None;
    if let Some(ctx) = first_unassigned(&state) {
        let info = &state.ctxs[&ctx];
        let value = match branch {
            SeedBranch::Plus => info.roots.0.clone(),
            SeedBranch::Minus => info.roots.1.clone(),
        };
        seed = Some(ctx);
        state.assigned.insert(ctx, value);
        state.queue.push_back(ctx);
        drain(&mut state, matroid, n)?;
    }
    let open = state
        .ctxs
        .keys()
        .filter(|c| !state.assigned.contains_key(c))
        .count();
    if open > 0 {
        return Err(Error::Inconsistent(format!(
            "propagation left {open} contexts undetermined; the exchange structure is not connected enough from one seed"
        )));
    }

    Ok(RootAssignment {
        seed,
        branch,
        roots: state.assigned,
        ambiguous,
    })
}

fn first_unassigned(state: &PropState) -> Option<YContext> {
    state
        .ctxs
        .keys()
        .find(|c| !state.assigned.contains_key(c))
        .copied()
}

/// Local root data of one observable context, and the forced value when
/// at most one root is admissible. Admissible means different from 0
/// and from −1; a context that admits no value at all is rejected.
fn analyze_context(
    chi: &ChiTriple,
    field: Option<&LaurentPoly>,
) -> Result<(CtxInfo, Option<QuadExtScalar>)> {
    let central = &chi.central;
    let direct = &chi.split_direct;
    let crossed = &chi.split_crossed;
    let nvars = central.nvars();
    let one = QuadExtScalar::one(nvars);
    let zero = QuadExtScalar::zero(nvars);
    let is_neg_one = |v: &QuadExtScalar| v.add(&one).is_zero();

    if crossed.is_zero() {
        // Linear quadratic: a unique root direct/(central − direct).
        let a = central.sub(direct);
        if a.is_zero() {
            return Err(Error::Inconsistent(
                "quadratic degenerates to a nonzero constant; the context admits no cross-ratio"
                    .into(),
            ));
        }
        let v = direct.div(&a)?;
        if v.is_zero() {
            return Err(Error::Inconsistent(
                "context forces the cross-ratio 0, which no minor product attains".into(),
            ));
        }
        if is_neg_one(&v) {
            return Err(Error::Inconsistent(
                "context forces the cross-ratio -1 at distinct indices".into(),
            ));
        }
        return Ok((
            CtxInfo {
                roots: (v.clone(), v.clone()),
                ambiguous: false,
            },
            Some(v),
        ));
    }

    if direct.is_zero() && central.is_zero() {
        // Roots {0, -1}: neither is admissible.
        return Err(Error::Inconsistent(
            "context admits only the cross-ratios 0 and -1; the family is not a minor product"
                .into(),
        ));
    }
    if direct.is_zero() {
        // Roots {0, a/crossed}; only the nonzero one is admissible.
        let a = central.sub(crossed);
        if a.is_zero() {
            return Err(Error::Inconsistent(
                "context forces the cross-ratio 0, which no minor product attains".into(),
            ));
        }
        let v = a.div(crossed)?;
        if is_neg_one(&v) {
            return Err(Error::Inconsistent(
                "context forces the cross-ratio -1 at distinct indices".into(),
            ));
        }
        return Ok((
            CtxInfo {
                roots: (zero, v.clone()),
                ambiguous: false,
            },
            Some(v),
        ));
    }
    if central.is_zero() {
        // Roots {-1, -direct/crossed}; only the second can be admissible.
        let v = direct.div(crossed)?.negate();
        if is_neg_one(&v) {
            return Err(Error::Inconsistent(
                "context forces the cross-ratio -1 at distinct indices".into(),
            ));
        }
        return Ok((
            CtxInfo {
                roots: (one.negate(), v.clone()),
                ambiguous: false,
            },
            Some(v),
        ));
    }

    // All three products nonzero. A vanishing discriminant forces the
    // double root; otherwise both roots are admissible and the choice
    // is global, not local.
    let a = central.sub(direct).sub(crossed);
    let b = b_function(central, direct, crossed);
    if b.is_zero() {
        let v = a.mul(&crossed.scale(&rat_int(2)).inverse()?);
        if v.is_zero() || is_neg_one(&v) {
            return Err(Error::Inconsistent(
                "context forces an inadmissible double root".into(),
            ));
        }
        return Ok((
            CtxInfo {
                roots: (v.clone(), v.clone()),
                ambiguous: false,
            },
            Some(v),
        ));
    }
    let (plus, minus) = quad_roots(chi, field, true).map_err(|e| {
        Error::Inconsistent(format!(
            "discriminant of an observable context is not a square over the family's field ({e}); the family is not a product of minor families"
        ))
    })?;
    Ok((
        CtxInfo {
            roots: (plus, minus),
            ambiguous: true,
        },
        None,
    ))
}

/// Canonical key and inversion flag of a literal context.
fn canonical_key(
    base: crate::exactmat::SubsetIndex,
    out: (usize, usize),
    inc: (usize, usize),
) -> Result<(YContext, bool)> {
    let (out_s, so) = if out.0 <= out.1 {
        (out, false)
    } else {
        ((out.1, out.0), true)
    };
    let (inc_s, si) = if inc.0 <= inc.1 {
        (inc, false)
    } else {
        ((inc.1, inc.0), true)
    };
    Ok((YContext::new(base, out_s, inc_s)?, so ^ si))
}

/// Assigned value at a literal context, if any. Swapping one pair
/// addresses the reciprocal value.
fn literal_get(
    state: &PropState,
    base: crate::exactmat::SubsetIndex,
    out: (usize, usize),
    inc: (usize, usize),
) -> Result<Option<QuadExtScalar>> {
    let (key, inverted) = canonical_key(base, out, inc)?;
    match state.assigned.get(&key) {
        None => Ok(None),
        Some(v) => {
            if inverted {
                Ok(Some(v.inverse()?))
            } else {
                Ok(Some(v.clone()))
            }
        }
    }
}

/// Local root pair at a literal context, when the context is observable
/// and both roots survive the reorientation.
fn literal_roots(
    state: &PropState,
    base: crate::exactmat::SubsetIndex,
    out: (usize, usize),
    inc: (usize, usize),
) -> Option<(QuadExtScalar, QuadExtScalar)> {
    let (key, inverted) = canonical_key(base, out, inc).ok()?;
    let info = state.ctxs.get(&key)?;
    if inverted {
        let r0 = info.roots.0.inverse().ok()?;
        let r1 = info.roots.1.inverse().ok()?;
        Some((r0, r1))
    } else {
        Some(info.roots.clone())
    }
}

/// Whether a literal context is observable, i.e. carried by the family.
fn literal_known(
    state: &PropState,
    base: crate::exactmat::SubsetIndex,
    out: (usize, usize),
    inc: (usize, usize),
) -> bool {
    canonical_key(base, out, inc)
        .map(|(key, _)| state.ctxs.contains_key(&key))
        .unwrap_or(false)
}

/// Records a propagated value at a literal context. The value must be a
/// root of the local quadratic and agree with any earlier assignment.
/// Unobservable targets are skipped. Returns whether the assignment is
/// new.
fn assign_literal(
    state: &mut PropState,
    base: crate::exactmat::SubsetIndex,
    out: (usize, usize),
    inc: (usize, usize),
    value: QuadExtScalar,
) -> Result<bool> {
    let (key, inverted) = canonical_key(base, out, inc)?;
    let Some(info) = state.ctxs.get(&key) else {
        return Ok(false);
    };
    let canonical_value = if inverted { value.inverse()? } else { value };
    // Stored scalars are canonical forms, so equality is structural.
    if canonical_value == info.roots.0 || canonical_value == info.roots.1 {
        match state.assigned.get(&key) {
            Some(existing) => {
                if *existing == canonical_value {
                    Ok(false)
                } else {
                    Err(Error::Inconsistent(
                        "conflicting cross-ratio values propagate to one context; the family violates a chain identity".into(),
                    ))
                }
            }
            None => {
                state.assigned.insert(key, canonical_value);
                state.queue.push_back(key);
                Ok(true)
            }
        }
    } else {
        Err(Error::Inconsistent(
            "propagated cross-ratio is not a root of the local quadratic; the family violates a chain identity".into(),
        ))
    }
}

/// Fixpoint loop: pop a context, push its value through every incoming
/// chain, outgoing chain and vertical move that touches it.
fn drain(state: &mut PropState, matroid: &Matroid, n: usize) -> Result<()> {
    while let Some(ctx) = state.queue.pop_front() {
        let v = state.assigned[&ctx].clone();
        let (i, j) = ctx.outgoing;
        let (a, b) = ctx.incoming;
        let comp = ctx.base.complement(n).members();
        for &g in comp.iter() {
            if g != a && g != b {
                resolve_incoming_chain(state, ctx.base, (i, j), a, b, g, &v)?;
            }
        }
        for m in ctx.base.members() {
            if m != i && m != j {
                resolve_outgoing_chain(state, ctx.base, i, j, m, (a, b), &v)?;
            }
        }
        vertical_moves(state, matroid, &ctx, &v)?;
    }
    Ok(())
}

/// Relation `Y_{ab}·Y_{bg} = −Y_{ag}` inside one base, for a third
/// incoming index `g`. Checks it when both unknowns are assigned,
/// derives the missing one when one is, and pairs the local roots when
/// neither is and only one pairing is consistent.
fn resolve_incoming_chain(
    state: &mut PropState,
    base: crate::exactmat::SubsetIndex,
    out: (usize, usize),
    a: usize,
    b: usize,
    g: usize,
    v: &QuadExtScalar,
) -> Result<()> {
    if !literal_known(state, base, out, (b, g)) || !literal_known(state, base, out, (a, g)) {
        return Ok(());
    }
    let val_bg = literal_get(state, base, out, (b, g))?;
    let val_ag = literal_get(state, base, out, (a, g))?;
    match (val_bg, val_ag) {
        (Some(p), Some(q)) => {
            if v.mul(&p) != q.negate() {
                return Err(Error::Inconsistent(
                    "incoming chain identity fails on assigned values".into(),
                ));
            }
            Ok(())
        }
        (Some(p), None) => {
            assign_literal(state, base, out, (a, g), v.mul(&p).negate())?;
            Ok(())
        }
        (None, Some(q)) => {
            assign_literal(state, base, out, (b, g), q.div(v)?.negate())?;
            Ok(())
        }
        (None, None) => {
            let Some(roots_bg) = literal_roots(state, base, out, (b, g)) else {
                return Ok(());
            };
            let Some(roots_ag) = literal_roots(state, base, out, (a, g)) else {
                return Ok(());
            };
            let mut matches: Vec<(QuadExtScalar, QuadExtScalar)> = Vec::new();
            for s in [&roots_bg.0, &roots_bg.1] {
                let t = v.mul(s).negate();
                if (t == roots_ag.0 || t == roots_ag.1)
                    && !matches.iter().any(|(ms, _)| ms == s)
                {
                    matches.push((s.clone(), t));
                }
            }
            match matches.len() {
                0 => Err(Error::Inconsistent(
                    "no pairing of local roots satisfies the incoming chain identity".into(),
                )),
                1 => {
                    let (s, t) = matches.pop().expect("one element checked");
                    assign_literal(state, base, out, (b, g), s)?;
                    assign_literal(state, base, out, (a, g), t)?;
                    Ok(())
                }
                _ => Ok(()),
            }
        }
    }
}

/// Relation `Y^{im}·Y^{mj} = −Y^{ij}` inside one base, for a third
/// outgoing index `m`. Same resolution scheme as the incoming chain.
fn resolve_outgoing_chain(
    state: &mut PropState,
    base: crate::exactmat::SubsetIndex,
    i: usize,
    j: usize,
    m: usize,
    inc: (usize, usize),
    v: &QuadExtScalar,
) -> Result<()> {
    if !literal_known(state, base, (i, m), inc) || !literal_known(state, base, (m, j), inc) {
        return Ok(());
    }
    let val_im = literal_get(state, base, (i, m), inc)?;
    let val_mj = literal_get(state, base, (m, j), inc)?;
    match (val_im, val_mj) {
        (Some(p), Some(q)) => {
            if p.mul(&q) != v.negate() {
                return Err(Error::Inconsistent(
                    "outgoing chain identity fails on assigned values".into(),
                ));
            }
            Ok(())
        }
        (Some(p), None) => {
            assign_literal(state, base, (m, j), inc, v.div(&p)?.negate())?;
            Ok(())
        }
        (None, Some(q)) => {
            assign_literal(state, base, (i, m), inc, v.div(&q)?.negate())?;
            Ok(())
        }
        (None, None) => {
            let Some(roots_im) = literal_roots(state, base, (i, m), inc) else {
                return Ok(());
            };
            let Some(roots_mj) = literal_roots(state, base, (m, j), inc) else {
                return Ok(());
            };
            let mut matches: Vec<(QuadExtScalar, QuadExtScalar)> = Vec::new();
            for s in [&roots_im.0, &roots_im.1] {
                if s.is_zero() {
                    continue;
                }
                let t = v.div(s)?.negate();
                if (t == roots_mj.0 || t == roots_mj.1)
                    && !matches.iter().any(|(ms, _)| ms == s)
                {
                    matches.push((s.clone(), t));
                }
            }
            match matches.len() {
                0 => Err(Error::Inconsistent(
                    "no pairing of local roots satisfies the outgoing chain identity".into(),
                )),
                1 => {
                    let (s, t) = matches.pop().expect("one element checked");
                    assign_literal(state, base, (i, m), inc, s)?;
                    assign_literal(state, base, (m, j), inc, t)?;
                    Ok(())
                }
                _ => Ok(()),
            }
        }
    }
}

/// Vertical moves: in each of the four orientations of the context, the
/// first outgoing index leaves the base, the first incoming index
/// enters, and the value maps to `−1 − Y` (with `Y` read in that
/// orientation).
fn vertical_moves(
    state: &mut PropState,
    matroid: &Matroid,
    ctx: &YContext,
    v: &QuadExtScalar,
) -> Result<()> {
    let one = QuadExtScalar::one(v.nvars());
    let (i, j) = ctx.outgoing;
    let (a, b) = ctx.incoming;
    let orientations = [
        (i, j, a, b, false),
        (j, i, b, a, false),
        (j, i, a, b, true),
        (i, j, b, a, true),
    ];
    for (oi, oj, oa, ob, inverted) in orientations {
        let w = if inverted { v.inverse()? } else { v.clone() };
        let new_base = ctx.base.swap(oi, oa)?;
        if !matroid.is_basis(&new_base) {
            continue;
        }
        let target = w.add(&one).negate();
        assign_literal(state, new_base, (oa, oj), (oi, ob), target)?;
    }
    Ok(())
}
