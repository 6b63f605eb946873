use std::sync::Arc;

use crate::classify::count::{count_independent_sets, for_each_bit, CountOptions};
use crate::classify::graph::InterlaceGraph;
use crate::classify::Collection;
use crate::error::{Error, Result};

/// Lazily yields every non-interlacing collection once: depth first, children in increasing
/// vertex order, so collections come out as index lists in lexicographic preorder.
pub struct Collections {
    graph: Arc<InterlaceGraph>,
    stack: Vec<(Vec<usize>, Vec<u64>)>,
}

impl Collections {
    pub fn new(graph: Arc<InterlaceGraph>) -> Self {
        let full = graph.full();
        Collections { graph, stack: vec![(Vec::new(), full)] }
    }
}

impl Iterator for Collections {
    type Item = Collection;

    fn next(&mut self) -> Option<Collection> {
        let (chosen, candidates) = self.stack.pop()?;
        let mut children = Vec::new();
        for_each_bit(&candidates, |v| children.push(v));
        for &v in children.iter().rev() {
            let mut next: Vec<u64> =
                candidates.iter().zip(self.graph.neighbors(v)).map(|(c, nb)| c & !nb).collect();
            // Keep only vertices after v.
            for (i, word) in next.iter_mut().enumerate() {
                let lo = i * 64;
                if lo + 64 <= v + 1 {
                    *word = 0;
                } else if lo <= v {
                    *word &= !0u64 << (v + 1 - lo);
                }
            }
            let mut with = chosen.clone();
            with.push(v);
            self.stack.push((with, next));
        }
        let sets = self.graph.sets();
        Some(Collection::from_sets_unchecked(self.graph.context(), chosen.iter().map(|&i| sets[i])))
    }
}

/// Every non-interlacing collection of `M_{n,d}`, refusing if there are more than `cap`.
pub fn enumerate_collections(n: u32, d: u32, cap: Option<u64>) -> Result<Collections> {
    let graph = Arc::new(InterlaceGraph::new(n, d)?);
    if let Some(cap) = cap {
        let (count, _) = count_independent_sets(&graph, &CountOptions::default(), None)?;
        if count > cap.into() {
            return Err(Error::CapExceeded { cap, count: count.to_string() });
        }
    }
    Ok(Collections::new(graph))
}
