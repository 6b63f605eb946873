//! Wide subcategories of `M_{n,d}` via non-interlacing collections of admissible sets.
//!
//! A collection `Σ` corresponds to the subcategory generated by the `M_x` with `x ∈ X_S` for
//! `S ∈ Σ`. This module closes tuple sets under the wide-closure, recognizes wide sets of
//! tuples, and counts or enumerates all of them.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::tuples::{generate_tuples, masks_interlace, tuples_of_set, AdmissibleSet, Context, IncTuple};

pub mod count;
pub mod enumerate;
pub mod graph;

pub use count::{count_independent_sets, count_wide, count_wide_with, CountOptions, CountReport};
pub use enumerate::{enumerate_collections, Collections};
pub use graph::InterlaceGraph;

/// All admissible subsets of `{1, ..., n+d}`, by size and then lexicographically.
pub fn admissible_sets(n: u32, d: u32) -> Result<Vec<AdmissibleSet>> {
    let ctx = Context::category(n, d)?;
    let universe: Vec<u32> = (1..=ctx.top()).collect();
    let mut out = Vec::new();
    for size in ctx.len()..=universe.len() {
        for members in universe.iter().copied().combinations(size) {
            out.push(AdmissibleSet::new(ctx, &members)?);
        }
    }
    Ok(out)
}

/// A set of admissible sets over a common context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Collection {
    ctx: Context,
    members: BTreeSet<AdmissibleSet>,
}

impl Collection {
    pub fn new(ctx: Context, sets: impl IntoIterator<Item = AdmissibleSet>) -> Result<Self> {
        let members: BTreeSet<AdmissibleSet> = sets.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| s.context() != ctx) {
            let c = bad.context();
            return Err(Error::ContextMismatch(c.n, c.m, ctx.n, ctx.m));
        }
        Ok(Collection { ctx, members })
    }

    pub(crate) fn from_sets_unchecked(ctx: Context, sets: impl IntoIterator<Item = AdmissibleSet>) -> Self {
        Collection { ctx, members: sets.into_iter().collect() }
    }

    pub fn empty(ctx: Context) -> Self {
        Collection { ctx, members: BTreeSet::new() }
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn members(&self) -> &BTreeSet<AdmissibleSet> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted arrays of sorted integers, e.g. `[[1,2,3,4,6]]`.
    pub fn to_json(&self) -> String {
        let arrays: Vec<Vec<u32>> = self.members.iter().map(AdmissibleSet::members).collect();
        serde_json::to_string(&arrays).expect("collection serializes")
    }

    /// Parses the JSON form; the members must lie in `ctx`.
    pub fn from_json(ctx: Context, text: &str) -> Result<Self> {
        let arrays: Vec<Vec<u32>> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("collection json: {e}")))?;
        let sets = arrays.iter().map(|a| AdmissibleSet::new(ctx, a)).collect::<Result<Vec<_>>>()?;
        Collection::new(ctx, sets)
    }
}

impl fmt::Display for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.iter().join(","))
    }
}

/// No two distinct members interlace.
pub fn is_noninterlacing(c: &Collection) -> bool {
    let len = c.ctx.len();
    let masks: Vec<u64> = c.members.iter().map(AdmissibleSet::mask).collect();
    masks.iter().enumerate().all(|(i, &a)| masks[i + 1..].iter().all(|&b| !masks_interlace(a, b, len)))
}

/// The indecomposables `⋃ X_S` of the subcategory attached to a non-interlacing collection.
pub fn subcategory_of(c: &Collection) -> Result<BTreeSet<IncTuple>> {
    if !is_noninterlacing(c) {
        return Err(Error::Precondition(format!("collection {c} is interlacing")));
    }
    Ok(c.members.iter().flat_map(tuples_of_set).collect())
}

/// Smallest non-interlacing collection whose subcategory contains `xs`: start from the sets
/// `S_x` and merge interlacing pairs until none remain.
pub fn wide_closure(ctx: Context, xs: &[IncTuple]) -> Result<Collection> {
    wide_closure_by(ctx, xs, |_| 0)
}

/// [`wide_closure`] where `choose(k)` picks which of the `k` currently interlacing pairs to
/// merge next. The result does not depend on the choices.
pub fn wide_closure_by(
    ctx: Context,
    xs: &[IncTuple],
    mut choose: impl FnMut(usize) -> usize,
) -> Result<Collection> {
    for x in xs {
        if x.context() != ctx {
            let c = x.context();
            return Err(Error::ContextMismatch(c.n, c.m, ctx.n, ctx.m));
        }
    }
    let len = ctx.len();
    let mut sets: Vec<u64> = xs.iter().map(IncTuple::mask).collect();
    sets.sort_unstable();
    sets.dedup();
    loop {
        let pairs: Vec<(usize, usize)> = (0..sets.len())
            .tuple_combinations()
            .filter(|&(i, j)| masks_interlace(sets[i], sets[j], len))
            .collect();
        if pairs.is_empty() {
            break;
        }
        let (i, j) = pairs[choose(pairs.len()) % pairs.len()];
        sets[i] |= sets[j];
        sets.swap_remove(j);
        sets.sort_unstable();
        sets.dedup();
    }
    let members = sets.into_iter().map(|m| AdmissibleSet::from_mask(ctx, m)).collect::<Result<Vec<_>>>()?;
    Collection::new(ctx, members)
}

/// If `xs` is the set of indecomposables of a wide subcategory, its collection: the maximal
/// admissible `S` with `X_S ⊆ xs`. `None` if `xs` is not wide.
pub fn recognize_wide(ctx: Context, xs: &BTreeSet<IncTuple>) -> Result<Option<Collection>> {
    for x in xs {
        if x.context() != ctx {
            let c = x.context();
            return Err(Error::ContextMismatch(c.n, c.m, ctx.n, ctx.m));
        }
    }
    let present: HashSet<u64> = xs.iter().map(IncTuple::mask).collect();
    let universe = present.iter().fold(0u64, |acc, m| acc | m);
    let len = ctx.len();
    let covered = |s: u64| -> bool {
        crate::tuples::mask_members(s)
            .into_iter()
            .combinations(len)
            .all(|c| present.contains(&c.iter().fold(0u64, |acc, &e| acc | (1 << e))))
    };
    // Candidates in decreasing size; a candidate is maximal unless a kept set contains it.
    let mut candidates: Vec<u64> = submasks(universe).filter(|s| s.count_ones() as usize >= len).collect();
    candidates.sort_unstable_by_key(|s| std::cmp::Reverse(s.count_ones()));
    let mut maximal: Vec<u64> = Vec::new();
    for s in candidates {
        if maximal.iter().any(|&m| s & !m == 0) {
            continue;
        }
        if covered(s) {
            maximal.push(s);
        }
    }
    let members =
        maximal.into_iter().map(|m| AdmissibleSet::from_mask(ctx, m)).collect::<Result<Vec<_>>>()?;
    let sigma = Collection::new(ctx, members)?;
    if !is_noninterlacing(&sigma) || subcategory_of(&sigma)? != *xs {
        return Ok(None);
    }
    Ok(Some(sigma))
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// The order-preserving relabeling `N_{n',d} -> S` applied entrywise, `n' = |S| - d`.
pub fn relabel(s: &AdmissibleSet, x: &IncTuple) -> Result<IncTuple> {
    let ctx = s.context();
    let small = x.context();
    let expected_n = s.len() as u32 - ctx.m;
    if small.m != ctx.m || small.n != expected_n {
        return Err(Error::Precondition(format!(
            "tuple context (n={}, m={}) does not match |S| - d = {expected_n}, d = {}",
            small.n, small.m, ctx.m
        )));
    }
    let members = s.members();
    let entries = x.entries().iter().map(|&e| members[e as usize - 1]).collect();
    IncTuple::new(ctx, entries)
}

/// Known values of `w_{n,d}`: the Catalan numbers for `d = 1`, `2` for `n = 1`, the
/// recurrence `w_{2,d} = w_{2,d-1} + w_{2,d-2} - 1`, and the published table otherwise.
pub fn reference_counts(n: u32, d: u32) -> Option<BigUint> {
    if n == 0 || d == 0 {
        return None;
    }
    if n == 1 {
        return Some(BigUint::from(2u32));
    }
    if d == 1 {
        // C(2n+2, n+1) / (n+2)
        let (a, b) = (2 * n as u64 + 2, n as u64 + 1);
        let mut binom = BigUint::from(1u32);
        for i in 0..b {
            binom = binom * BigUint::from(a - i) / BigUint::from(i + 1);
        }
        return Some(binom / BigUint::from(n + 2));
    }
    if n == 2 {
        let (mut prev, mut cur) = (BigUint::from(5u32), BigUint::from(8u32));
        for _ in 2..d {
            let next = &cur + &prev - 1u32;
            prev = std::mem::replace(&mut cur, next);
        }
        return Some(cur);
    }
    let value: u64 = match (n, d) {
        (3, 2) => 47,
        (4, 2) => 374,
        (5, 2) => 4_083,
        (6, 2) => 62_824,
        (7, 2) => 1_376_012,
        (8, 2) => 42_579_642,
        (3, 3) => 237,
        (4, 3) => 16_830,
        (5, 3) => 4_597_078,
        (3, 4) => 1_724,
        (4, 4) => 3_499_884,
        (3, 5) => 17_934,
        (3, 6) => 273_092,
        (3, 7) => 5_732_137,
        _ => return None,
    };
    Some(BigUint::from(value))
}

/// All tuples of `V_{n,d}` as a set, handy for closure tests.
pub fn all_tuples(ctx: Context) -> BTreeSet<IncTuple> {
    generate_tuples(ctx).into_iter().collect()
}
