//! Increasing tuples, admissible sets and the interlacing relations between them.
//!
//! A [`Context`] `(n, m)` fixes the ambient set `{1, ..., n+m}`; an [`IncTuple`] is a strictly
//! increasing `(m+1)`-tuple over it. The category `M_{n,d}` lives at `m = d`, the modules
//! realizing it live over the quiver at `m = d - 1`. Tuples carry their context and
//! operations refuse to mix contexts.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest supported `n + m`; admissible sets are stored as `u64` bitmasks.
pub const MAX_TOP: u32 = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    pub n: u32,
    pub m: u32,
}

#[allow(clippy::len_without_is_empty)]
impl Context {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParams(format!("n must be >= 1, got {n}")));
        }
        if n + m > MAX_TOP {
            return Err(Error::InvalidParams(format!(
                "n + m = {} exceeds the supported maximum {MAX_TOP}",
                n + m
            )));
        }
        Ok(Context { n, m })
    }

    /// The category level `(n, d)`, indexing the indecomposables of `M_{n,d}`.
    pub fn category(n: u32, d: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParams(format!("d must be >= 1, got {d}")));
        }
        Self::new(n, d)
    }

    /// The module level `(n, d-1)`: vertices of the quiver the modules `M_x` live on.
    pub fn module_level(self) -> Result<Self> {
        if self.m < 1 {
            return Err(Error::InvalidParams("module level needs d >= 1".into()));
        }
        Ok(Context { n: self.n, m: self.m - 1 })
    }

    /// The category level one step up, `(n, m+1)`.
    pub fn category_level(self) -> Result<Self> {
        Self::new(self.n, self.m + 1)
    }

    /// `n + m`, the largest admissible entry.
    pub fn top(self) -> u32 {
        self.n + self.m
    }

    /// Tuple length `m + 1`.
    pub fn len(self) -> usize {
        self.m as usize + 1
    }

    fn check_same(self, other: Context) -> Result<()> {
        if self != other {
            Err(Error::ContextMismatch(self.n, self.m, other.n, other.m))
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncTuple {
    ctx: Context,
    entries: Vec<u32>,
}

impl IncTuple {
    pub fn new(ctx: Context, entries: Vec<u32>) -> Result<Self> {
        let ok = entries.len() == ctx.len()
            && entries.first().is_some_and(|&e| e >= 1)
            && entries.last().is_some_and(|&e| e <= ctx.top())
            && entries.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::InvalidTuple { entries, n: ctx.n, m: ctx.m });
        }
        Ok(IncTuple { ctx, entries })
    }

    pub(crate) fn new_unchecked(ctx: Context, entries: Vec<u32>) -> Self {
        debug_assert!(IncTuple::new(ctx, entries.clone()).is_ok());
        IncTuple { ctx, entries }
    }

    /// Parses `"1,3,6"`.
    pub fn parse(ctx: Context, text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad tuple entry {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, entries)
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// The tuple `(1, 2, ..., m+1)`.
    pub fn initial(ctx: Context) -> Self {
        IncTuple { ctx, entries: (1..=ctx.len() as u32).collect() }
    }

    /// `S_x`, the set of entries, as a bitmask (bit `i` for entry `i`).
    pub fn mask(&self) -> u64 {
        self.entries.iter().fold(0, |acc, &e| acc | (1u64 << e))
    }

    /// Concatenated entries, e.g. `136`; comma separated when an entry has two digits.
    pub fn compact(&self) -> String {
        if self.entries.iter().all(|&e| e < 10) {
            self.entries.iter().join("")
        } else {
            self.entries.iter().join(",")
        }
    }

    /// `σ_k^±`: shift coordinate `k` by one, `None` if the result leaves `V_{n,m}`.
    pub fn sigma(&self, k: usize, dir: Direction) -> Result<Option<IncTuple>> {
        if k >= self.ctx.len() {
            return Err(Error::CoordOutOfRange { k, m: self.ctx.m });
        }
        Ok(self.shift(k, dir))
    }

    pub(crate) fn shift(&self, k: usize, dir: Direction) -> Option<IncTuple> {
        let e = &self.entries;
        let v = match dir {
            Direction::Up => {
                let v = e[k] + 1;
                let upper = e.get(k + 1).copied().unwrap_or(self.ctx.top() + 1);
                (v < upper).then_some(v)?
            }
            Direction::Down => {
                let v = e[k].checked_sub(1)?;
                let lower = if k == 0 { 0 } else { e[k - 1] };
                (v > lower).then_some(v)?
            }
        };
        let mut entries = e.clone();
        entries[k] = v;
        Some(IncTuple { ctx: self.ctx, entries })
    }

    fn check_same(&self, other: &IncTuple) -> Result<()> {
        self.ctx.check_same(other.ctx)
    }
}

impl PartialOrd for IncTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IncTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.cmp(&other.entries).then(self.ctx.cmp(&other.ctx))
    }
}

impl fmt::Display for IncTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(","))
    }
}

/// All of `V_{n,m}` in lexicographic order.
pub fn generate_tuples(ctx: Context) -> Vec<IncTuple> {
    (1..=ctx.top()).combinations(ctx.len()).map(|entries| IncTuple { ctx, entries }).collect()
}

/// `x E_Hom y`: `x_0 <= y_0 < x_1 <= y_1 < ... < x_m <= y_m`.
pub fn e_hom(x: &IncTuple, y: &IncTuple) -> Result<bool> {
    x.check_same(y)?;
    Ok(hom_chain(&x.entries, &y.entries))
}

/// `x E_Ext y`: `x_0 < y_0 <= x_1 < y_1 <= ... <= x_m < y_m`.
pub fn e_ext(x: &IncTuple, y: &IncTuple) -> Result<bool> {
    x.check_same(y)?;
    Ok(ext_chain(&x.entries, &y.entries))
}

pub(crate) fn hom_chain(x: &[u32], y: &[u32]) -> bool {
    x.iter().zip(y).enumerate().all(|(i, (&a, &b))| a <= b && x.get(i + 1).is_none_or(|&n| b < n))
}

pub(crate) fn ext_chain(x: &[u32], y: &[u32]) -> bool {
    x.iter().zip(y).enumerate().all(|(i, (&a, &b))| a < b && x.get(i + 1).is_none_or(|&n| b <= n))
}

pub fn tuples_interlace(x: &IncTuple, y: &IncTuple) -> Result<bool> {
    x.check_same(y)?;
    let (a, b) = (&x.entries[..], &y.entries[..]);
    Ok(hom_chain(a, b) || hom_chain(b, a) || ext_chain(a, b) || ext_chain(b, a))
}

/// Witness on the kernel side: for `x E_Hom y` and `x_{k-1} < y_{k-1} < x_k`, the tuple
/// `x` with `x_k` replaced by `y_{k-1}`.
pub fn kernel_witness(x: &IncTuple, y: &IncTuple, k: usize) -> Result<Option<IncTuple>> {
    if !e_hom(x, y)? {
        return Err(Error::Precondition(format!("({x}) E_Hom ({y}) does not hold")));
    }
    let d = x.ctx.m as usize;
    if k < 1 || k > d {
        return Err(Error::CoordOutOfRange { k, m: x.ctx.m });
    }
    let (xe, ye) = (&x.entries, &y.entries);
    if xe[k - 1] < ye[k - 1] && ye[k - 1] < xe[k] {
        let mut entries = xe.clone();
        entries[k] = ye[k - 1];
        Ok(Some(IncTuple::new_unchecked(x.ctx, entries)))
    } else {
        Ok(None)
    }
}

/// Dual witness on the cokernel side: for `x E_Hom y` and `y_k < x_{k+1} < y_{k+1}`, the tuple
/// `y` with `y_k` replaced by `x_{k+1}`.
pub fn cokernel_witness(x: &IncTuple, y: &IncTuple, k: usize) -> Result<Option<IncTuple>> {
    if !e_hom(x, y)? {
        return Err(Error::Precondition(format!("({x}) E_Hom ({y}) does not hold")));
    }
    let d = x.ctx.m as usize;
    if d == 0 || k > d - 1 {
        return Err(Error::CoordOutOfRange { k, m: x.ctx.m });
    }
    let (xe, ye) = (&x.entries, &y.entries);
    if ye[k] < xe[k + 1] && xe[k + 1] < ye[k + 1] {
        let mut entries = ye.clone();
        entries[k] = xe[k + 1];
        Ok(Some(IncTuple::new_unchecked(x.ctx, entries)))
    } else {
        Ok(None)
    }
}

/// A subset of `{1, ..., n+d}` with at least `d+1` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissibleSet {
    ctx: Context,
    mask: u64,
}

impl AdmissibleSet {
    pub fn from_mask(ctx: Context, mask: u64) -> Result<Self> {
        let range = ((1u64 << (ctx.top() + 1)) - 1) & !1;
        if mask & !range != 0 {
            return Err(Error::InvalidSet(format!("members out of range 1..={}", ctx.top())));
        }
        if mask.count_ones() < ctx.len() as u32 {
            return Err(Error::InvalidSet(format!(
                "{} members, need at least {}",
                mask.count_ones(),
                ctx.len()
            )));
        }
        Ok(AdmissibleSet { ctx, mask })
    }

    pub fn new(ctx: Context, members: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &s in members {
            if s < 1 || s > ctx.top() {
                return Err(Error::InvalidSet(format!("member {s} out of range 1..={}", ctx.top())));
            }
            mask |= 1 << s;
        }
        Self::from_mask(ctx, mask)
    }

    /// Parses `"{1,2,3,4,6}"`, `"1,2,3,4,6"` or the range shorthand `"1-4,6"`.
    pub fn parse(ctx: Context, text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let bad = || Error::Parse(format!("bad set syntax {text:?}"));
        let mut members = Vec::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_once('-') {
                Some((a, b)) => {
                    let a: u32 = a.trim().parse().map_err(|_| bad())?;
                    let b: u32 = b.trim().parse().map_err(|_| bad())?;
                    if a > b {
                        return Err(bad());
                    }
                    members.extend(a..=b);
                }
                None => members.push(part.parse().map_err(|_| bad())?),
            }
        }
        Self::new(ctx, &members)
    }

    /// `S_x` of a category-level tuple.
    pub fn of_tuple(x: &IncTuple) -> Self {
        AdmissibleSet { ctx: x.ctx, mask: x.mask() }
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn members(&self) -> Vec<u32> {
        mask_members(self.mask)
    }

    pub fn contains(&self, v: u32) -> bool {
        v < 64 && self.mask & (1 << v) != 0
    }

    pub fn is_subset(&self, other: &AdmissibleSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &AdmissibleSet) -> Result<AdmissibleSet> {
        self.ctx.check_same(other.ctx)?;
        Ok(AdmissibleSet { ctx: self.ctx, mask: self.mask | other.mask })
    }
}

impl PartialOrd for AdmissibleSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AdmissibleSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members().cmp(&other.members()).then(self.ctx.cmp(&other.ctx))
    }
}

impl fmt::Display for AdmissibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members().iter().join(","))
    }
}

pub(crate) fn mask_members(mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    out
}

/// `X_S`: all increasing tuples with entries in `S`, lexicographic.
pub fn tuples_of_set(s: &AdmissibleSet) -> Vec<IncTuple> {
    s.members()
        .into_iter()
        .combinations(s.ctx.len())
        .map(|entries| IncTuple { ctx: s.ctx, entries })
        .collect()
}

/// Smallest member of `mask` that is `>= v`.
#[inline]
fn least_at_least(mask: u64, v: u32) -> Option<u32> {
    if v >= 64 {
        return None;
    }
    let rest = mask & (!0u64 << v);
    (rest != 0).then(|| rest.trailing_zeros())
}

/// Is there `x ∈ X_a`, `y ∈ X_b` (tuples of length `len`) with `x E_Hom y`?
///
/// Greedy: every coordinate takes the least member allowed by the previous one.
pub(crate) fn masks_hom(a: u64, b: u64, len: usize) -> bool {
    let mut floor = 0;
    for _ in 0..len {
        let Some(x) = least_at_least(a, floor) else { return false };
        let Some(y) = least_at_least(b, x) else { return false };
        floor = y + 1;
    }
    true
}

/// Same as [`masks_hom`] for `E_Ext`.
pub(crate) fn masks_ext(a: u64, b: u64, len: usize) -> bool {
    let mut floor = 0;
    for _ in 0..len {
        let Some(x) = least_at_least(a, floor) else { return false };
        let Some(y) = least_at_least(b, x + 1) else { return false };
        floor = y;
    }
    true
}

pub(crate) fn masks_interlace(a: u64, b: u64, len: usize) -> bool {
    masks_hom(a, b, len) || masks_hom(b, a, len) || masks_ext(a, b, len) || masks_ext(b, a, len)
}

/// Whether some tuple of `X_S` interlaces with some tuple of `X_{S'}`.
pub fn sets_interlace(s: &AdmissibleSet, t: &AdmissibleSet) -> Result<bool> {
    s.ctx.check_same(t.ctx)?;
    Ok(masks_interlace(s.mask, t.mask, s.ctx.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(ctx: Context, e: &[u32]) -> IncTuple {
        IncTuple::new(ctx, e.to_vec()).unwrap()
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(generate_tuples(Context::new(4, 2).unwrap()).len(), 20);
        assert_eq!(generate_tuples(Context::new(4, 1).unwrap()).len(), 10);
        let one = generate_tuples(Context::new(1, 3).unwrap());
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].entries(), &[1, 2, 3, 4]);
        assert!(Context::new(0, 2).is_err());
    }

    #[test]
    fn lexicographic_and_distinct() {
        let v = generate_tuples(Context::new(3, 2).unwrap());
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sigma_examples() {
        let c = Context::new(2, 1).unwrap();
        assert_eq!(t(c, &[1, 2]).sigma(1, Direction::Up).unwrap(), Some(t(c, &[1, 3])));
        assert_eq!(t(c, &[1, 3]).sigma(1, Direction::Up).unwrap(), None);
        assert_eq!(t(c, &[2, 3]).sigma(0, Direction::Down).unwrap(), Some(t(c, &[1, 3])));
        assert_eq!(t(c, &[1, 2]).sigma(0, Direction::Up).unwrap(), None);
        assert_eq!(t(c, &[1, 2]).sigma(0, Direction::Down).unwrap(), None);
        assert!(t(c, &[1, 2]).sigma(2, Direction::Up).is_err());
    }

    #[test]
    fn relation_examples() {
        let c = Context::new(4, 2).unwrap();
        let (x, y) = (t(c, &[1, 3, 6]), t(c, &[2, 4, 6]));
        assert!(e_hom(&x, &y).unwrap());
        assert!(!e_hom(&y, &x).unwrap());
        assert!(e_hom(&x, &x).unwrap());
        assert!(!e_ext(&x, &x).unwrap());
        assert!(e_ext(&t(c, &[1, 3, 5]), &t(c, &[2, 4, 6])).unwrap());
        assert!(tuples_interlace(&x, &y).unwrap());
        let c2 = Context::new(2, 1).unwrap();
        assert!(e_ext(&t(c2, &[1, 2]), &t(c2, &[2, 3])).unwrap());
        // (1,2) vs (3,4) at (3,1): none of the four chains hold.
        let c3 = Context::new(3, 1).unwrap();
        let (a, b) = (t(c3, &[1, 2]), t(c3, &[3, 4]));
        assert!(!e_hom(&a, &b).unwrap() && !e_hom(&b, &a).unwrap());
        assert!(!e_ext(&a, &b).unwrap() && !e_ext(&b, &a).unwrap());
        assert!(!tuples_interlace(&a, &b).unwrap());
        assert!(matches!(e_hom(&a, &x), Err(Error::ContextMismatch(..))));
    }

    #[test]
    fn set_examples() {
        let c = Context::new(4, 2).unwrap();
        let s = AdmissibleSet::parse(c, "{1,2,3,4,6}").unwrap();
        assert_eq!(tuples_of_set(&s).len(), 10);
        assert_eq!(AdmissibleSet::parse(c, "1-4,6").unwrap(), s);
        let x = t(c, &[1, 3, 6]);
        assert_eq!(tuples_of_set(&AdmissibleSet::of_tuple(&x)), vec![x.clone()]);
        let all = AdmissibleSet::parse(c, "1-6").unwrap();
        assert_eq!(tuples_of_set(&all), generate_tuples(c));
        let a = AdmissibleSet::new(c, &[1, 3, 6]).unwrap();
        let b = AdmissibleSet::new(c, &[2, 4, 6]).unwrap();
        assert!(sets_interlace(&a, &b).unwrap());
        assert!(sets_interlace(&a, &s).unwrap());
        let c3 = Context::new(3, 1).unwrap();
        let p = AdmissibleSet::new(c3, &[1, 2]).unwrap();
        let q = AdmissibleSet::new(c3, &[3, 4]).unwrap();
        assert!(!sets_interlace(&p, &q).unwrap());
        assert!(AdmissibleSet::new(c, &[1, 2]).is_err());
        assert!(AdmissibleSet::new(c, &[1, 2, 7]).is_err());
        assert!(AdmissibleSet::parse(c, "{1,x}").is_err());
    }

    #[test]
    fn witness_examples() {
        let c = Context::new(4, 2).unwrap();
        let (x, y) = (t(c, &[1, 3, 6]), t(c, &[2, 4, 6]));
        assert_eq!(kernel_witness(&x, &y, 1).unwrap(), Some(t(c, &[1, 2, 6])));
        assert_eq!(kernel_witness(&x, &y, 2).unwrap(), Some(t(c, &[1, 3, 4])));
        assert_eq!(cokernel_witness(&x, &y, 0).unwrap(), Some(t(c, &[3, 4, 6])));
        assert_eq!(cokernel_witness(&x, &y, 1).unwrap(), None);
        let (p, q) = (t(c, &[1, 3, 4]), t(c, &[1, 3, 6]));
        assert_eq!(cokernel_witness(&p, &q, 1).unwrap(), Some(t(c, &[1, 4, 6])));
        let z = t(c, &[1, 2, 3]);
        for k in 1..=2 {
            assert_eq!(kernel_witness(&z, &z, k).unwrap(), None);
        }
        for k in 0..2 {
            assert_eq!(cokernel_witness(&z, &z, k).unwrap(), None);
        }
        assert!(kernel_witness(&y, &x, 1).is_err());
        assert!(kernel_witness(&x, &y, 0).is_err());
        assert!(cokernel_witness(&x, &y, 2).is_err());
    }

    #[test]
    fn tuple_parse_rejects_garbage() {
        let c = Context::new(4, 2).unwrap();
        assert_eq!(IncTuple::parse(c, "1,3,6").unwrap().entries(), &[1, 3, 6]);
        assert!(IncTuple::parse(c, "3,1,6").is_err());
        assert!(IncTuple::parse(c, "1,3").is_err());
        assert!(IncTuple::parse(c, "1,3,7").is_err());
        assert!(IncTuple::parse(c, "a,b,c").is_err());
    }
}
