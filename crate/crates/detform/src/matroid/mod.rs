//! Basis families of nonvanishing minor products.
//!
//! The support of a minor-product expansion is a collection of k-subsets
//! closed under basis exchange. This module validates that structure,
//! produces shortest exchange chains between bases, and searches for a
//! pair of columns whose insertions never leave the support of a given
//! minor predicate.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::exactmat::{binomial, enumerate_subsets, SubsetIndex};

/// A nonempty family of k-subsets of {0,..,n-1} satisfying the basis
/// exchange axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    k: usize,
    bases: BTreeSet<SubsetIndex>,
}

impl Matroid {
    /// Builds a matroid from an explicit basis list, checking the exchange
    /// axiom pairwise. The check is skipped when every k-subset is present.
    pub fn from_bases(n: usize, k: usize, bases: BTreeSet<SubsetIndex>) -> Result<Self> {
        if k == 0 || k > n || n > 64 {
            return Err(Error::DimensionMismatch(format!(
                "basis family with k = {k} on {n} elements"
            )));
        }
        if bases.is_empty() {
            return Err(Error::Inconsistent("empty basis family".into()));
        }
        for b in &bases {
            if b.len() != k {
                return Err(Error::DimensionMismatch(format!(
                    "basis {b} does not have {k} elements"
                )));
            }
            if b.members().last().copied().unwrap_or(0) >= n {
                return Err(Error::IndexError(format!(
                    "basis {b} exceeds the ground set of {n} elements"
                )));
            }
        }
        let m = Matroid { n, k, bases };
        if !m.is_uniform() {
            m.check_exchange_axiom()?;
        }
        Ok(m)
    }

    /// Collects the k-subsets on which `nonzero` holds and validates them
    /// as a basis family.
    pub fn from_minor_map<F>(n: usize, k: usize, nonzero: F) -> Result<Self>
    where
        F: Fn(&SubsetIndex) -> bool,
    {
        if k == 0 || k > n || n > 64 {
            return Err(Error::DimensionMismatch(format!(
                "basis family with k = {k} on {n} elements"
            )));
        }
        let bases: BTreeSet<SubsetIndex> = enumerate_subsets(n, k)
            .into_iter()
            .filter(|s| nonzero(s))
            .collect();
        Self::from_bases(n, k, bases)
    }

    fn check_exchange_axiom(&self) -> Result<()> {
        for i_set in &self.bases {
            for j_set in &self.bases {
                for i in i_set.difference(j_set).members() {
                    let found = j_set
                        .difference(i_set)
                        .members()
                        .into_iter()
                        .any(|j| self.bases.contains(&i_set.swap(i, j).unwrap()));
                    if !found {
                        return Err(Error::Inconsistent(format!(
                            "exchange axiom fails for bases {i_set} and {j_set} \
                             at element {}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn bases(&self) -> impl Iterator<Item = &SubsetIndex> {
        self.bases.iter()
    }

    pub fn is_basis(&self, s: &SubsetIndex) -> bool {
        self.bases.contains(s)
    }

    /// True when every k-subset of the ground set is a basis.
    pub fn is_uniform(&self) -> bool {
        self.bases.len() == binomial(self.n, self.k)
    }

    /// Shortest chain of single-element exchanges from `from` to `to`,
    /// staying inside the basis family. Every step removes one element of
    /// `from \ to` and inserts one element of `to \ from`, so the chain
    /// has exactly `#(from \ to) + 1` entries including both endpoints.
    pub fn exchange_chain(
        &self,
        from: &SubsetIndex,
        to: &SubsetIndex,
    ) -> Result<Vec<SubsetIndex>> {
        if !self.is_basis(from) || !self.is_basis(to) {
            return Err(Error::IndexError(format!(
                "exchange chain endpoints {from} and {to} must both be bases"
            )));
        }
        if from == to {
            return Ok(vec![*from]);
        }
        let steps = from.difference(to).len();
        let mut parent: HashMap<SubsetIndex, SubsetIndex> = HashMap::new();
        let mut queue = VecDeque::new();
        queue.push_back(*from);
        parent.insert(*from, *from);
        while let Some(cur) = queue.pop_front() {
            if cur == *to {
                let mut chain = vec![cur];
                let mut at = cur;
                while at != *from {
                    at = parent[&at];
                    chain.push(at);
                }
                chain.reverse();
                debug_assert_eq!(chain.len(), steps + 1);
                return Ok(chain);
            }
            for x in cur.difference(to).members() {
                for y in to.difference(&cur).members() {
                    let next = cur.swap(x, y).unwrap();
                    if self.bases.contains(&next) && !parent.contains_key(&next) {
                        parent.insert(next, cur);
                        queue.push_back(next);
                    }
                }
            }
        }
        Err(Error::Inconsistent(format!(
            "no monotone exchange chain connects {from} to {to}"
        )))
    }

    /// Searches for a basis I and two outside columns a1 < a2 such that
    /// every k-subset J with J \ I contained in {a1, a2} is again a
    /// basis: I itself, every single swap I^m_{a_u}, and every double
    /// swap I^{m1,m2}_{a1,a2}. Returns the lexicographically least
    /// witness (I, a1, a2), or None when no triple qualifies.
    pub fn find_generic_columns(&self) -> Option<(SubsetIndex, usize, usize)> {
        for base in &self.bases {
            let outside = base.complement(self.n).members();
            for (p, &a1) in outside.iter().enumerate() {
                for &a2 in &outside[(p + 1)..] {
                    if self.triple_is_generic(base, a1, a2) {
                        return Some((*base, a1, a2));
                    }
                }
            }
        }
        None
    }

    fn triple_is_generic(&self, base: &SubsetIndex, a1: usize, a2: usize) -> bool {
        let members = base.members();
        for &m in &members {
            if !self.bases.contains(&base.swap(m, a1).unwrap())
                || !self.bases.contains(&base.swap(m, a2).unwrap())
            {
                return false;
            }
        }
        for (p, &m1) in members.iter().enumerate() {
            for &m2 in &members[(p + 1)..] {
                let j = base.swap(m1, a1).unwrap().swap(m2, a2).unwrap();
                if !self.bases.contains(&j) {
                    return false;
                }
            }
        }
        true
    }
}
