//! Counting independent sets of the interlacing graph.
//!
//! `count(G) = count(G - v) + count(G - N[v])` on a maximum-degree vertex `v`, with the
//! residual graph split into connected components at every node and results memoized by
//! residual vertex set. Counting first runs in `u128`; on overflow it is redone with `BigUint`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedMul, One};
use rustc_hash::FxBuildHasher;

use crate::classify::graph::InterlaceGraph;
use crate::error::{Error, Result};
use crate::par;

#[derive(Debug, Clone, Default)]
pub struct CountOptions {
    /// Worker threads; `Some(1)` forces the sequential path, `None` uses the default pool.
    pub jobs: Option<usize>,
    /// Wall-clock budget for the whole count.
    pub budget: Option<Duration>,
    /// Disable the residual-set memo table.
    pub no_memo: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub n: u32,
    pub d: u32,
    pub count: BigUint,
    /// Branching nodes visited (may vary between parallel runs; the count does not).
    pub nodes: u64,
    pub seconds: f64,
}

impl CountReport {
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "n": self.n,
            "d": self.d,
            "w": self.count.to_string(),
            "seconds": self.seconds,
            "nodes": self.nodes,
        })
        .to_string()
    }
}

/// `w_{n,d}`, the number of wide subcategories of `M_{n,d}`.
pub fn count_wide(n: u32, d: u32) -> Result<BigUint> {
    Ok(count_wide_with(n, d, &CountOptions::default())?.count)
}

pub fn count_wide_with(n: u32, d: u32, opts: &CountOptions) -> Result<CountReport> {
    let start = Instant::now();
    let deadline = opts.budget.map(|b| start + b);
    let graph = par::with_jobs(opts.jobs, || InterlaceGraph::new(n, d))?;
    let (count, nodes) = count_independent_sets(&graph, opts, deadline)?;
    Ok(CountReport { n, d, count, nodes, seconds: start.elapsed().as_secs_f64() })
}

/// Number of independent sets (including the empty one) of `graph`.
pub fn count_independent_sets(
    graph: &InterlaceGraph,
    opts: &CountOptions,
    deadline: Option<Instant>,
) -> Result<(BigUint, u64)> {
    let parallel = par::is_parallel() && opts.jobs != Some(1);
    let budget_secs = opts.budget.map_or(0.0, |b| b.as_secs_f64());
    // Recursion depth is bounded by the vertex count.
    let stack = STACK_BASE + STACK_PER_VERTEX * graph.vertex_count();
    let run = |engine_parallel| {
        par::with_stack(opts.jobs, stack, || {
            let fast = Engine::<u128>::new(graph, !opts.no_memo, deadline, engine_parallel);
            match fast.count_all() {
                Ok(v) => Ok((BigUint::from(v), fast.nodes())),
                Err(Abort::Budget) => Err(Error::BudgetExceeded(budget_secs)),
                Err(Abort::Overflow) => {
                    let slow = Engine::<BigUint>::new(graph, !opts.no_memo, deadline, engine_parallel);
                    match slow.count_all() {
                        Ok(v) => Ok((v, fast.nodes() + slow.nodes())),
                        Err(_) => Err(Error::BudgetExceeded(budget_secs)),
                    }
                }
            }
        })
    };
    run(parallel)
}

trait Tally: Clone + Send + Sync + Sized {
    fn small(v: u64) -> Self;
    fn plus(&self, other: &Self) -> Option<Self>;
    fn times(&self, other: &Self) -> Option<Self>;
}

impl Tally for u128 {
    fn small(v: u64) -> Self {
        v as u128
    }
    fn plus(&self, other: &Self) -> Option<Self> {
        self.checked_add(other)
    }
    fn times(&self, other: &Self) -> Option<Self> {
        self.checked_mul(other)
    }
}

impl Tally for BigUint {
    fn small(v: u64) -> Self {
        if v == 1 {
            BigUint::one()
        } else {
            BigUint::from(v)
        }
    }
    fn plus(&self, other: &Self) -> Option<Self> {
        CheckedAdd::checked_add(self, other)
    }
    fn times(&self, other: &Self) -> Option<Self> {
        CheckedMul::checked_mul(self, other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Abort {
    Overflow,
    Budget,
}

/// Residual sets smaller than this are recomputed rather than memoized.
const MEMO_MIN: u32 = 6;
/// Residual sets smaller than this are not split across threads.
const PAR_MIN: u32 = 48;
const DEADLINE_EVERY: u64 = 1 << 12;
const STACK_BASE: usize = 8 << 20;
const STACK_PER_VERTEX: usize = 64 << 10;

struct Engine<'g, T> {
    graph: &'g InterlaceGraph,
    words: usize,
    memo: Option<DashMap<Box<[u64]>, T, FxBuildHasher>>,
    nodes: AtomicU64,
    deadline: Option<Instant>,
    expired: AtomicBool,
    parallel: bool,
}

impl<'g, T: Tally> Engine<'g, T> {
    fn new(graph: &'g InterlaceGraph, memo: bool, deadline: Option<Instant>, parallel: bool) -> Self {
        Engine {
            graph,
            words: graph.words(),
            memo: memo.then(|| DashMap::with_hasher(FxBuildHasher)),
            nodes: AtomicU64::new(0),
            deadline,
            expired: AtomicBool::new(false),
            parallel,
        }
    }

    fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    fn count_all(&self) -> std::result::Result<T, Abort> {
        self.count(&self.graph.full())
    }

    fn tick(&self) -> std::result::Result<(), Abort> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if self.expired.load(Ordering::Relaxed) {
            return Err(Abort::Budget);
        }
        if n.is_multiple_of(DEADLINE_EVERY) {
            if let Some(dl) = self.deadline {
                if Instant::now() >= dl {
                    self.expired.store(true, Ordering::Relaxed);
                    return Err(Abort::Budget);
                }
            }
        }
        Ok(())
    }

    /// Vertices reachable from `start` inside `rest`.
    fn component(&self, start: usize, rest: &[u64]) -> Vec<u64> {
        let w = self.words;
        let mut comp = vec![0u64; w];
        comp[start / 64] |= 1 << (start % 64);
        let mut frontier = comp.clone();
        let mut next = vec![0u64; w];
        loop {
            next.fill(0);
            for_each_bit(&frontier, |v| {
                for (slot, nb) in next.iter_mut().zip(self.graph.neighbors(v)) {
                    *slot |= nb;
                }
            });
            let mut grew = false;
            for i in 0..w {
                next[i] &= rest[i] & !comp[i];
                comp[i] |= next[i];
                grew |= next[i] != 0;
            }
            if !grew {
                return comp;
            }
            std::mem::swap(&mut frontier, &mut next);
        }
    }

    fn pair(
        &self,
        a: &[u64],
        b: &[u64],
        size: u32,
    ) -> (std::result::Result<T, Abort>, std::result::Result<T, Abort>) {
        if self.parallel && size >= PAR_MIN {
            par::join(|| self.count(a), || self.count(b))
        } else {
            let left = self.count(a);
            if left.is_err() {
                return (left, Err(Abort::Budget));
            }
            (left, self.count(b))
        }
    }

    fn count(&self, rest: &[u64]) -> std::result::Result<T, Abort> {
        let size: u32 = rest.iter().map(|w| w.count_ones()).sum();
        match size {
            0 => return Ok(T::small(1)),
            1 => return Ok(T::small(2)),
            _ => {}
        }
        self.tick()?;
        let memo = self.memo.as_ref().filter(|_| size >= MEMO_MIN);
        if let Some(hit) = memo.and_then(|m| m.get(rest)) {
            return Ok(hit.clone());
        }

        let first = first_bit(rest).expect("nonempty");
        let comp = self.component(first, rest);
        let result = if comp.as_slice() != rest {
            let others: Vec<u64> = rest.iter().zip(&comp).map(|(r, c)| r & !c).collect();
            let (a, b) = self.pair(&comp, &others, size);
            a?.times(&b?).ok_or(Abort::Overflow)?
        } else {
            let (v, degree) = self.max_degree(rest);
            if degree + 1 == size {
                // Every other vertex is adjacent to v.
                let without: Vec<u64> = clear_bit(rest, v);
                self.count(&without)?.plus(&T::small(1)).ok_or(Abort::Overflow)?
            } else {
                let without = clear_bit(rest, v);
                let closed: Vec<u64> =
                    rest.iter().zip(self.graph.neighbors(v)).map(|(r, nb)| r & !nb).collect();
                let closed = clear_bit(&closed, v);
                let (a, b) = self.pair(&without, &closed, size);
                a?.plus(&b?).ok_or(Abort::Overflow)?
            }
        };
        if let Some(m) = memo {
            m.insert(rest.into(), result.clone());
        }
        Ok(result)
    }

    fn max_degree(&self, rest: &[u64]) -> (usize, u32) {
        let mut best = (usize::MAX, 0u32);
        for_each_bit(rest, |v| {
            let deg: u32 = self.graph.neighbors(v).iter().zip(rest).map(|(a, b)| (a & b).count_ones()).sum();
            if best.0 == usize::MAX || deg > best.1 {
                best = (v, deg);
            }
        });
        best
    }
}

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear_bit(set: &[u64], v: usize) -> Vec<u64> {
    let mut out = set.to_vec();
    out[v / 64] &= !(1 << (v % 64));
    out
}

pub(crate) fn for_each_bit(set: &[u64], mut f: impl FnMut(usize)) {
    for (i, &word) in set.iter().enumerate() {
        let mut w = word;
        while w != 0 {
            f(i * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
}
