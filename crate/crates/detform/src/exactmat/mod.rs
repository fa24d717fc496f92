//! Exact matrices over the quadratic extension, their minors, and the
//! minor-level operations the expansion layer is built on: signed
//! minors, three-term Plücker residuals, gauge normalization, and the
//! complement dual of a matrix pair.
//!
//! Index subsets are bitmask-backed ([`SubsetIndex`]) and ordered
//! lexicographically by their sorted member lists. All indices are
//! 0-based internally; `Display` output is 1-based.

pub mod io;

use crate::error::{Error, Result};
use crate::laurent::{
    canonical_disc, LaurentPoly, QuadExtScalar, Rational, RationalFunction,
};
use std::collections::BTreeMap;
use std::fmt;

/// A subset of {0, .., n-1} for n ≤ 64, stored as a bitmask.
///
/// The `Ord` instance is lexicographic on sorted member lists, so
/// enumeration order of equal-size subsets matches the usual
/// combinatorial ordering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SubsetIndex(u64);

impl SubsetIndex {
    /// The empty subset.
    pub fn empty() -> Self {
        SubsetIndex(0)
    }

    /// Builds from member indices; duplicates are an error.
    pub fn from_members(members: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &x in members {
            if x >= 64 {
                return Err(Error::IndexError(format!("index {x} out of range")));
            }
            if mask & (1 << x) != 0 {
                return Err(Error::IndexError(format!(
                    "duplicate index {} in subset",
                    x + 1
                )));
            }
            mask |= 1 << x;
        }
        Ok(SubsetIndex(mask))
    }

    /// Builds from a raw bitmask.
    pub fn from_mask(mask: u64) -> Self {
        SubsetIndex(mask)
    }

    /// The raw bitmask.
    pub fn mask(&self) -> u64 {
        self.0
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// True for the empty subset.
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Membership test.
    pub fn contains(&self, x: usize) -> bool {
        x < 64 && self.0 & (1 << x) != 0
    }

    /// Members in ascending order.
    pub fn members(&self) -> Vec<usize> {
        (0..64).filter(|&x| self.contains(x)).collect()
    }

    /// Adds a member; already present is an error.
    pub fn with(&self, x: usize) -> Result<Self> {
        if x >= 64 {
            return Err(Error::IndexError(format!("index {x} out of range")));
        }
        if self.contains(x) {
            return Err(Error::IndexError(format!(
                "index {} already in subset {self}",
                x + 1
            )));
        }
        Ok(SubsetIndex(self.0 | (1 << x)))
    }

    /// Removes a member; absence is an error.
    pub fn without(&self, x: usize) -> Result<Self> {
        if !self.contains(x) {
            return Err(Error::IndexError(format!(
                "index {} not in subset {self}",
                x + 1
            )));
        }
        Ok(SubsetIndex(self.0 & !(1 << x)))
    }

    /// Single exchange: removes `out_x` and inserts `in_x`.
    pub fn swap(&self, out_x: usize, in_x: usize) -> Result<Self> {
        self.without(out_x)?.with(in_x)
    }

    /// Complement within {0, .., n-1}.
    pub fn complement(&self, n: usize) -> Self {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        SubsetIndex(!self.0 & full)
    }

    /// Set union.
    pub fn union(&self, other: &Self) -> Self {
        SubsetIndex(self.0 | other.0)
    }

    /// Set intersection.
    pub fn intersection(&self, other: &Self) -> Self {
        SubsetIndex(self.0 & other.0)
    }

    /// Set difference `self ∖ other`.
    pub fn difference(&self, other: &Self) -> Self {
        SubsetIndex(self.0 & !other.0)
    }

    /// True when every member of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Number of members strictly below `x`.
    pub fn rank_below(&self, x: usize) -> usize {
        let below = if x == 0 { 0 } else { self.0 & ((1u64 << x) - 1) };
        below.count_ones() as usize
    }
}

impl PartialOrd for SubsetIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Lexicographic on sorted member lists: compare from the lowest
        // bit upward; the first index present in one side only decides.
        let mut a = self.0;
        let mut b = other.0;
        while a != 0 || b != 0 {
            let la = a.trailing_zeros();
            let lb = b.trailing_zeros();
            match (a == 0, b == 0) {
                (true, true) => break,
                (true, false) => return std::cmp::Ordering::Less,
                (false, true) => return std::cmp::Ordering::Greater,
                (false, false) => match la.cmp(&lb) {
                    std::cmp::Ordering::Equal => {
                        a &= a - 1;
                        b &= b - 1;
                    }
                    other => return other,
                },
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.members().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "}}")
    }
}

/// All k-subsets of {0, .., n-1} in lexicographic member order.
pub fn enumerate_subsets(n: usize, k: usize) -> Vec<SubsetIndex> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut members: Vec<usize> = (0..k).collect();
    loop {
        out.push(SubsetIndex::from_members(&members).expect("distinct members"));
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if members[i] < n - (k - i) {
                members[i] += 1;
                for j in (i + 1)..k {
                    members[j] = members[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Binomial coefficient as usize.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Whether a minor table indexes row subsets or column subsets.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MinorAxis {
    /// k-subsets of rows of a tall matrix.
    Rows,
    /// k-subsets of columns of a wide matrix.
    Cols,
}

/// Dense row-major matrix over the quadratic extension with one shared
/// discriminant context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    disc: Option<LaurentPoly>,
    entries: Vec<QuadExtScalar>,
}

impl ExactMatrix {
    /// Builds from row-major entries. Every entry's discriminant must
    /// match the declared context (purely rational entries always do).
    /// A declared discriminant is canonicalized; its square part is not
    /// reapplied to entries, which are expected to be canonical already.
    pub fn new(
        rows: usize,
        cols: usize,
        nvars: usize,
        disc: Option<LaurentPoly>,
        entries: Vec<QuadExtScalar>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let disc = match disc {
            None => None,
            Some(dp) => canonical_disc(&dp)?.0,
        };
        for (idx, e) in entries.iter().enumerate() {
            if e.nvars() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "entry {idx} has {} variables, context has {nvars}",
                    e.nvars()
                )));
            }
            if let Some(edisc) = e.disc() {
                match &disc {
                    Some(ctx) if ctx == edisc => {}
                    Some(ctx) => {
                        return Err(Error::MixedDiscriminant(
                            ctx.to_string(),
                            edisc.to_string(),
                        ))
                    }
                    None => {
                        return Err(Error::MixedDiscriminant(
                            "none declared".into(),
                            edisc.to_string(),
                        ))
                    }
                }
            }
        }
        Ok(ExactMatrix {
            rows,
            cols,
            nvars,
            disc,
            entries,
        })
    }

    /// Builds from rational-function entries, no radical context.
    pub fn from_ratfun_rows(rows_data: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let rows = rows_data.len();
        let cols = rows_data.first().map(|r| r.len()).unwrap_or(0);
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if rows_data.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let nvars = rows_data[0][0].nvars();
        let entries = rows_data
            .into_iter()
            .flatten()
            .map(QuadExtScalar::from_ratfun)
            .collect();
        Self::new(rows, cols, nvars, None, entries)
    }

    /// Builds from rational constants.
    pub fn from_rational_rows(nvars: usize, rows_data: Vec<Vec<Rational>>) -> Result<Self> {
        let data = rows_data
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| RationalFunction::from_rational(nvars, c))
                    .collect()
            })
            .collect();
        Self::from_ratfun_rows(data)
    }

    /// Identity matrix.
    pub fn identity(k: usize, nvars: usize) -> Self {
        let mut entries = vec![QuadExtScalar::zero(nvars); k * k];
        for i in 0..k {
            entries[i * k + i] = QuadExtScalar::one(nvars);
        }
        ExactMatrix {
            rows: k,
            cols: k,
            nvars,
            disc: None,
            entries,
        }
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of indeterminates in the scalar context.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Canonical discriminant context, if any.
    pub fn disc(&self) -> Option<&LaurentPoly> {
        self.disc.as_ref()
    }

    /// Entry accessor.
    pub fn entry(&self, i: usize, j: usize) -> &QuadExtScalar {
        assert!(i < self.rows && j < self.cols, "entry index out of range");
        &self.entries[i * self.cols + j]
    }

    /// Replaces one entry; the discriminant must stay compatible.
    pub fn set_entry(&mut self, i: usize, j: usize, value: QuadExtScalar) -> Result<()> {
        if let Some(edisc) = value.disc() {
            match &self.disc {
                Some(ctx) if ctx == edisc => {}
                Some(ctx) => {
                    return Err(Error::MixedDiscriminant(
                        ctx.to_string(),
                        edisc.to_string(),
                    ))
                }
                None => self.disc = Some(edisc.clone()),
            }
        }
        self.entries[i * self.cols + j] = value;
        Ok(())
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            nvars: self.nvars,
            disc: self.disc.clone(),
            entries,
        }
    }

    /// Matrix product.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = QuadExtScalar::zero(self.nvars);
                for l in 0..self.cols {
                    let a = self.entry(i, l);
                    let b = other.entry(l, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                entries.push(acc);
            }
        }
        let disc = match (&self.disc, &other.disc) {
            (Some(x), Some(y)) if x != y => {
                return Err(Error::MixedDiscriminant(x.to_string(), y.to_string()))
            }
            (Some(x), _) => Some(x.clone()),
            (None, y) => y.clone(),
        };
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            nvars: self.nvars,
            disc,
            entries,
        })
    }

    /// Submatrix by explicit row and column index lists.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let entries = row_idx
            .iter()
            .flat_map(|&i| col_idx.iter().map(move |&j| self.entry(i, j).clone()))
            .collect();
        ExactMatrix {
            rows: row_idx.len(),
            cols: col_idx.len(),
            nvars: self.nvars,
            disc: self.disc.clone(),
            entries,
        }
    }

    /// Determinant by dynamic programming over column subsets: no
    /// divisions, so sparse polynomial entries stay small.
    pub fn det(&self) -> Result<QuadExtScalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let k = self.rows;
        if k == 0 {
            return Err(Error::DimensionMismatch("empty determinant".into()));
        }
        if k > 20 {
            return Err(Error::DimensionMismatch(format!(
                "determinant size {k} exceeds the supported limit"
            )));
        }
        let mut dp: Vec<Option<QuadExtScalar>> = vec![None; 1 << k];
        dp[0] = Some(QuadExtScalar::one(self.nvars));
        for row in 0..k {
            let mut next: Vec<Option<QuadExtScalar>> = vec![None; 1 << k];
            for mask in 0..(1u32 << k) {
                let Some(acc) = dp[mask as usize].take() else {
                    continue;
                };
                if acc.is_zero() {
                    continue;
                }
                for j in 0..k {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let e = self.entry(row, j);
                    if e.is_zero() {
                        continue;
                    }
                    // Earlier rows holding a column above j each contribute
                    // one inversion to the permutation sign.
                    let above = (mask >> (j + 1)).count_ones();
                    let term = if above % 2 == 0 {
                        acc.mul(e)
                    } else {
                        acc.mul(e).negate()
                    };
                    let slot = (mask | (1 << j)) as usize;
                    next[slot] = Some(match next[slot].take() {
                        None => term,
                        Some(prev) => prev.add(&term),
                    });
                }
            }
            dp = next;
        }
        Ok(dp[(1usize << k) - 1]
            .take()
            .unwrap_or_else(|| QuadExtScalar::zero(self.nvars)))
    }

    /// Inverse by Gauss-Jordan elimination over the extension field.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let k = self.rows;
        let mut work = self.clone();
        let mut inv = Self::identity(k, self.nvars);
        inv.disc = self.disc.clone();
        for col in 0..k {
            let pivot_row = (col..k).find(|&i| !work.entry(i, col).is_zero());
            let Some(pivot_row) = pivot_row else {
                return Err(Error::SingularPivot(format!(
                    "matrix is singular at column {}",
                    col + 1
                )));
            };
            if pivot_row != col {
                for j in 0..k {
                    work.entries.swap(pivot_row * k + j, col * k + j);
                    inv.entries.swap(pivot_row * k + j, col * k + j);
                }
            }
            let pivot_inv = work.entry(col, col).inverse()?;
            for j in 0..k {
                work.entries[col * k + j] = work.entries[col * k + j].mul(&pivot_inv);
                inv.entries[col * k + j] = inv.entries[col * k + j].mul(&pivot_inv);
            }
            for i in 0..k {
                if i == col || work.entry(i, col).is_zero() {
                    continue;
                }
                let factor = work.entry(i, col).clone();
                for j in 0..k {
                    let w = work.entries[col * k + j].mul(&factor);
                    work.entries[i * k + j] = work.entries[i * k + j].sub(&w);
                    let v = inv.entries[col * k + j].mul(&factor);
                    inv.entries[i * k + j] = inv.entries[i * k + j].sub(&v);
                }
            }
        }
        Ok(inv)
    }

    /// Minor on a column subset of a wide matrix: `det M[:, S]`.
    pub fn col_minor(&self, s: &SubsetIndex) -> Result<QuadExtScalar> {
        let members = s.members();
        if members.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "column minor needs {} columns, subset {s} has {}",
                self.rows,
                members.len()
            )));
        }
        if members.iter().any(|&j| j >= self.cols) {
            return Err(Error::IndexError(format!(
                "subset {s} exceeds {} columns",
                self.cols
            )));
        }
        let all_rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all_rows, &members).det()
    }

    /// Minor on a row subset of a tall matrix: `det M[S, :]`.
    pub fn row_minor(&self, s: &SubsetIndex) -> Result<QuadExtScalar> {
        let members = s.members();
        if members.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row minor needs {} rows, subset {s} has {}",
                self.cols,
                members.len()
            )));
        }
        if members.iter().any(|&i| i >= self.rows) {
            return Err(Error::IndexError(format!(
                "subset {s} exceeds {} rows",
                self.rows
            )));
        }
        let all_cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&members, &all_cols).det()
    }

    /// All column minors of a wide k×n matrix.
    pub fn col_minor_table(&self) -> Result<MinorTable> {
        let k = self.rows;
        let mut minors = BTreeMap::new();
        for s in enumerate_subsets(self.cols, k) {
            minors.insert(s, self.col_minor(&s)?);
        }
        Ok(MinorTable {
            ground_size: self.cols,
            subset_size: k,
            axis: MinorAxis::Cols,
            minors,
        })
    }

    /// All row minors of a tall n×k matrix.
    pub fn row_minor_table(&self) -> Result<MinorTable> {
        let k = self.cols;
        let mut minors = BTreeMap::new();
        for s in enumerate_subsets(self.rows, k) {
            minors.insert(s, self.row_minor(&s)?);
        }
        Ok(MinorTable {
            ground_size: self.rows,
            subset_size: k,
            axis: MinorAxis::Rows,
            minors,
        })
    }
}

/// Cache of all k-subset minors of one matrix along one axis.
#[derive(Clone, Debug)]
pub struct MinorTable {
    ground_size: usize,
    subset_size: usize,
    axis: MinorAxis,
    minors: BTreeMap<SubsetIndex, QuadExtScalar>,
}

impl MinorTable {
    /// Builds directly from precomputed values.
    pub fn from_values(
        ground_size: usize,
        subset_size: usize,
        axis: MinorAxis,
        minors: BTreeMap<SubsetIndex, QuadExtScalar>,
    ) -> Result<Self> {
        if minors.len() != binomial(ground_size, subset_size) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} minors, got {}",
                binomial(ground_size, subset_size),
                minors.len()
            )));
        }
        for s in minors.keys() {
            if s.len() != subset_size || s.members().iter().any(|&x| x >= ground_size) {
                return Err(Error::IndexError(format!("bad subset {s} in minor table")));
            }
        }
        Ok(MinorTable {
            ground_size,
            subset_size,
            axis,
            minors,
        })
    }

    /// Ground-set size n.
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Subset size k.
    pub fn subset_size(&self) -> usize {
        self.subset_size
    }

    /// The indexing axis.
    pub fn axis(&self) -> MinorAxis {
        self.axis
    }

    /// Value lookup; the subset must have the table's size.
    pub fn get(&self, s: &SubsetIndex) -> Result<&QuadExtScalar> {
        self.minors
            .get(s)
            .ok_or_else(|| Error::IndexError(format!("subset {s} not in minor table")))
    }

    /// Iterates (subset, value) in lexicographic subset order.
    pub fn iter(&self) -> impl Iterator<Item = (&SubsetIndex, &QuadExtScalar)> {
        self.minors.iter()
    }
}

/// Signed minor `Δ(α,β|H) = Δ(H∪{α,β}) · (−1)^{1+S(α,H)+S(β,H)} ·
/// sign(α−β)` where `S(x,H)` counts members of `H` below `x`. It is
/// antisymmetric in `(α,β)` and vanishes when `α = β` would be required;
/// `α` and `β` must not lie in `H`.
pub fn signed_minor(
    table: &MinorTable,
    alpha: usize,
    beta: usize,
    h: &SubsetIndex,
) -> Result<QuadExtScalar> {
    if alpha == beta {
        return Err(Error::IndexError(
            "signed minor needs two distinct extra indices".into(),
        ));
    }
    if h.contains(alpha) || h.contains(beta) {
        return Err(Error::IndexError(format!(
            "extra indices {},{} must avoid the base set {h}",
            alpha + 1,
            beta + 1
        )));
    }
    if h.len() + 2 != table.subset_size() {
        return Err(Error::DimensionMismatch(format!(
            "base set {h} needs {} members for this table",
            table.subset_size().saturating_sub(2)
        )));
    }
    let subset = h.with(alpha)?.with(beta)?;
    let value = table.get(&subset)?;
    let s_alpha = h.rank_below(alpha);
    let s_beta = h.rank_below(beta);
    let mut sign_negative = (1 + s_alpha + s_beta) % 2 == 1;
    if alpha < beta {
        sign_negative = !sign_negative;
    }
    Ok(if sign_negative {
        value.negate()
    } else {
        value.clone()
    })
}

/// Three-term Plücker residual
/// `Δ(δ1,δ2|H)Δ(δ3,δ4|H) − Δ(δ1,δ3|H)Δ(δ2,δ4|H) + Δ(δ1,δ4|H)Δ(δ2,δ3|H)`,
/// identically zero for minors of an actual matrix.
pub fn plucker_residual(
    table: &MinorTable,
    deltas: &[usize; 4],
    h: &SubsetIndex,
) -> Result<QuadExtScalar> {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if deltas[i] == deltas[j] {
                return Err(Error::IndexError(
                    "Plücker residual needs four distinct indices".into(),
                ));
            }
        }
    }
    let [d1, d2, d3, d4] = *deltas;
    let t12 = signed_minor(table, d1, d2, h)?;
    let t34 = signed_minor(table, d3, d4, h)?;
    let t13 = signed_minor(table, d1, d3, h)?;
    let t24 = signed_minor(table, d2, d4, h)?;
    let t14 = signed_minor(table, d1, d4, h)?;
    let t23 = signed_minor(table, d2, d3, h)?;
    Ok(t12.mul(&t34).sub(&t13.mul(&t24)).add(&t14.mul(&t23)))
}

/// Result of gauge normalization of a tall matrix: `normalized =
/// diag(row_scale) · input · chart`.
#[derive(Clone, Debug)]
pub struct GaugeForm {
    /// The normalized matrix: identity on top, ones in the pivot row,
    /// ones in the first column below it.
    pub normalized: ExactMatrix,
    /// Diagonal row scaling, length n.
    pub row_scale: Vec<QuadExtScalar>,
    /// Right chart change, k×k.
    pub chart: ExactMatrix,
}

/// Normalizes a tall n×k matrix (n ≥ k+1) into the chart where the top
/// k×k block is the identity, row k+1 is all ones, and the first column
/// below the top block is all ones. The surviving entries in rows k+2..n,
/// columns 2..k are minor cross-ratios; every right chart change and
/// diagonal row scaling leaves them fixed. Vanishing pivots are
/// reported as errors.
pub fn gauge_normalize(r: &ExactMatrix) -> Result<GaugeForm> {
    let n = r.rows();
    let k = r.cols();
    if n < k + 1 {
        return Err(Error::DimensionMismatch(format!(
            "gauge normalization needs at least {} rows, matrix has {n}",
            k + 1
        )));
    }
    let top_rows: Vec<usize> = (0..k).collect();
    let all_cols: Vec<usize> = (0..k).collect();
    let top = r.submatrix(&top_rows, &all_cols);
    let t0 = top.inverse().map_err(|_| {
        Error::SingularPivot("top k×k block is singular".into())
    })?;
    let rprime = r.mat_mul(&t0)?;
    // Pivot entries that must not vanish.
    for j in 0..k {
        if rprime.entry(k, j).is_zero() {
            return Err(Error::SingularPivot(format!(
                "pivot row entry in column {} vanishes",
                j + 1
            )));
        }
    }
    for alpha in (k + 1)..n {
        if rprime.entry(alpha, 0).is_zero() {
            return Err(Error::SingularPivot(format!(
                "first-column entry in row {} vanishes",
                alpha + 1
            )));
        }
    }
    // chart = t0 · diag(1 / R'[k, j]).
    let mut chart = t0.clone();
    let mut col_inv = Vec::with_capacity(k);
    for j in 0..k {
        col_inv.push(rprime.entry(k, j).inverse()?);
    }
    for i in 0..k {
        for j in 0..k {
            let v = chart.entry(i, j).mul(&col_inv[j]);
            chart.set_entry(i, j, v)?;
        }
    }
    // Row scaling.
    let mut row_scale = Vec::with_capacity(n);
    for i in 0..k {
        row_scale.push(rprime.entry(k, i).clone());
    }
    row_scale.push(QuadExtScalar::one(r.nvars()));
    let ref_pivot = rprime.entry(k, 0).clone();
    for alpha in (k + 1)..n {
        row_scale.push(ref_pivot.mul(&rprime.entry(alpha, 0).inverse()?));
    }
    let scaled = r.mat_mul(&chart)?;
    let mut entries = Vec::with_capacity(n * k);
    for i in 0..n {
        for j in 0..k {
            entries.push(row_scale[i].mul(scaled.entry(i, j)));
        }
    }
    let normalized = ExactMatrix::new(n, k, r.nvars(), r.disc().cloned(), entries)?;
    Ok(GaugeForm {
        normalized,
        row_scale,
        chart,
    })
}

/// Complements a full pair: returns `(L̂, R̂)` of shapes (n−k)×n and
/// n×(n−k) whose minors on complements are proportional to the input
/// minors, `Δ_{L̂}(Jᶜ)·Δ_{R̂}(Jᶜ) = c · Δ_L(J)·Δ_R(J)` with one global
/// nonzero constant c. Both charts (leading k×k block of L, top k×k
/// block of R) must be invertible.
pub fn dual_pair(l: &ExactMatrix, r: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    let k = l.rows();
    let n = l.cols();
    if r.rows() != n || r.cols() != k {
        return Err(Error::DimensionMismatch(format!(
            "pair shapes {}x{} and {}x{} are incompatible",
            l.rows(),
            l.cols(),
            r.rows(),
            r.cols()
        )));
    }
    if n <= k {
        return Err(Error::DimensionMismatch(
            "dual pair needs strictly more columns than rows in the left factor".into(),
        ));
    }
    let m = n - k;
    let d = l.nvars();
    let head: Vec<usize> = (0..k).collect();
    let tail: Vec<usize> = (k..n).collect();
    let all_l_rows: Vec<usize> = (0..k).collect();

    // Left factor: chart (I | b) with b = A⁻¹·B.
    let a = l.submatrix(&all_l_rows, &head);
    let b = l.submatrix(&all_l_rows, &tail);
    let chart_l = a.inverse()?.mat_mul(&b)?;
    // Dual rows: (bᵀ | −I), then alternate column signs.
    let mut lhat_entries = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let raw = if j < k {
                chart_l.entry(j, i).clone()
            } else if j - k == i {
                QuadExtScalar::one(d).negate()
            } else {
                QuadExtScalar::zero(d)
            };
            lhat_entries.push(if j % 2 == 1 { raw.negate() } else { raw });
        }
    }
    let lhat = ExactMatrix::new(m, n, d, l.disc().cloned(), lhat_entries)?;

    // Right factor: chart (I | cᵀ)ᵀ with c the bottom block.
    let top_rows: Vec<usize> = (0..k).collect();
    let bot_rows: Vec<usize> = (k..n).collect();
    let all_r_cols: Vec<usize> = (0..k).collect();
    let t = r.submatrix(&top_rows, &all_r_cols);
    let c = r.submatrix(&bot_rows, &all_r_cols);
    let chart_r = c.mat_mul(&t.inverse()?)?;
    let mut rhat_entries = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            let raw = if i < k {
                chart_r.entry(j, i).clone()
            } else if i - k == j {
                QuadExtScalar::one(d).negate()
            } else {
                QuadExtScalar::zero(d)
            };
            rhat_entries.push(if i % 2 == 1 { raw.negate() } else { raw });
        }
    }
    let rhat = ExactMatrix::new(n, m, d, r.disc().cloned(), rhat_entries)?;
    Ok((lhat, rhat))
}
