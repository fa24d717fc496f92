//! Recovers every cross-ratio of a factorization from its Cauchy-Binet
//! terms alone.
//!
//! The term map `h(I) = Δ_L(I)·Δ_R(I)` does not expose the factors, yet
//! each observable exchange context carries a quadratic whose two roots
//! are the cross-ratios of the right factor and of the transposed left
//! factor. One seeded choice propagates through the chain and
//! conjugation identities to all contexts; the two seeds recover the
//! two factors.
//!
//! Run with: `cargo run --example root_disambiguation`

use detform::expansion::TermMap;
use detform::fixtures;
use detform::yalg::{disambiguate_roots, y_from_matrix, SeedBranch};
use detform::Result;

fn main() -> Result<()> {
    // A 2×6 pair whose minors live in a quadratic extension.
    let (l, r) = fixtures::demo_pair("5.9")?;
    let h = TermMap::cauchy_binet_terms(&l, &r)?;
    let matroid = h.support_matroid()?;
    println!(
        "term map: k = {}, n = {}, {} bases in the support",
        h.k(),
        h.n(),
        matroid.num_bases()
    );

    let lt = l.transpose();
    for branch in [SeedBranch::Plus, SeedBranch::Minus] {
        let assignment = disambiguate_roots(&h, &matroid, branch)?;
        let mut match_r = 0usize;
        let mut match_lt = 0usize;
        for (ctx, value) in &assignment.roots {
            let (i, j) = ctx.outgoing;
            let (a, b) = ctx.incoming;
            if y_from_matrix(&r, &ctx.base, i, j, a, b)?.value == *value {
                match_r += 1;
            }
            if y_from_matrix(&lt, &ctx.base, i, j, a, b)?.value == *value {
                match_lt += 1;
            }
        }
        let total = assignment.roots.len();
        println!(
            "seed {:?}: {total} contexts assigned, {match_r}/{total} match R, \
             {match_lt}/{total} match transposed L",
            branch
        );
    }
    Ok(())
}
