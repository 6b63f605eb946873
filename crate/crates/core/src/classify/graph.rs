use std::collections::HashMap;

use crate::classify::admissible_sets;
use crate::error::Result;
use crate::par;
use crate::tuples::{masks_interlace, AdmissibleSet, Context};

/// Interlacing graph on all admissible subsets of `{1, ..., n+d}`, adjacency as bitset rows.
#[derive(Debug, Clone)]
pub struct InterlaceGraph {
    ctx: Context,
    sets: Vec<AdmissibleSet>,
    words: usize,
    adj: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl InterlaceGraph {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        let sets = admissible_sets(n, d)?;
        let ctx = Context::category(n, d)?;
        let len = ctx.len();
        let nv = sets.len();
        let words = nv.div_ceil(64).max(1);
        let masks: Vec<u64> = sets.iter().map(AdmissibleSet::mask).collect();
        let rows: Vec<Vec<u64>> = par::map(&masks, |&a| {
            let mut row = vec![0u64; words];
            for (j, &b) in masks.iter().enumerate() {
                if a != b && masks_interlace(a, b, len) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        });
        let adj = rows.concat();
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(InterlaceGraph { ctx, sets, words, adj, index })
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn vertex_count(&self) -> usize {
        self.sets.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn sets(&self) -> &[AdmissibleSet] {
        &self.sets
    }

    pub fn index_of(&self, s: &AdmissibleSet) -> Option<usize> {
        self.index.get(&s.mask()).copied()
    }

    /// Number of `u64` words per bitset row.
    pub fn words(&self) -> usize {
        self.words
    }

    pub fn neighbors(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors(u)[v / 64] >> (v % 64) & 1 == 1
    }

    /// Bitset with every vertex present.
    pub fn full(&self) -> Vec<u64> {
        let mut r = vec![!0u64; self.words];
        let extra = self.words * 64 - self.sets.len();
        if extra > 0 {
            r[self.words - 1] >>= extra;
        }
        if self.sets.is_empty() {
            r.fill(0);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let g = InterlaceGraph::new(2, 1).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        let g = InterlaceGraph::new(1, 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert_eq!(g.full(), vec![1]);
    }

    #[test]
    fn symmetric_loop_free() {
        let g = InterlaceGraph::new(3, 2).unwrap();
        for u in 0..g.vertex_count() {
            assert!(!g.adjacent(u, u));
            for v in 0..g.vertex_count() {
                assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
            }
        }
    }
}
