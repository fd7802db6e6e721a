use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::Quiver;

/// `counts[n][v]` is the number of paths of length `n` ending at the vertex
/// with declaration index `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountTable {
    counts: Vec<Vec<BigUint>>,
}

impl PathCountTable {
    pub fn max_length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize, v: usize) -> &BigUint {
        &self.counts[n][v]
    }

    pub fn level(&self, n: usize) -> &[BigUint] {
        &self.counts[n]
    }
}

/// Path counts by length and range, up to length `n_max`.
pub fn path_counts(q: &Quiver, n_max: usize) -> PathCountTable {
    let n = q.vertex_count();
    let mut counts = vec![vec![BigUint::one(); n]];
    for len in 0..n_max {
        let prev = &counts[len];
        let mut next = vec![BigUint::zero(); n];
        for e in q.edges() {
            next[e.target] += &prev[e.source];
        }
        counts.push(next);
    }
    PathCountTable { counts }
}
